//! Line-oriented text format for starter records, expanded factorizations and
//! seating schedules.
//!
//! ```text
//! # comment
//! starter n=10 type=[4,2,2,2] kind=one
//! C: [6, [4, 1], 2, [4, 0], 7, [9, 1], 9, [9, 0]]
//! C: [5, [2, 0], 3, [2, 1]]
//! ...
//! ```
//!
//! A cycle line lists `v0, [d0,c0], v1, [d1,c1], ...` where `[d_i, c_i]` is
//! the edge from `v_i` to `v_{i+1}` (the last one closes back to `v0`). `d` is
//! the difference, `n - 1` standing for infinity; `c` is 0 pink, 2 blue, 1
//! black (undirected in one-starters, forward elsewhere), -1 black backward.
//! Factors of one record are separated by `--`, records by blank lines.
//!
//! `factorization` blocks use the same cycle lines with one factor per `--`
//! section. `seating` blocks hold one `round` per block and a parenthesized
//! guest sequence per table.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::catalog::CycleType;
use crate::error::{HopError, Result};
use crate::factor::{Cycle, Factorization, TwoFactor};
use crate::model::{arc_with_orientation, difference, ColouredEdge, Difference, Vertex};
use crate::verify::{LiftTable, SeatingSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarterKind {
    One,
    Two,
    Three,
}

impl StarterKind {
    /// Number of factors written in a record of this kind.
    pub fn factor_count(self) -> usize {
        match self {
            StarterKind::One => 1,
            StarterKind::Two | StarterKind::Three => 2,
        }
    }

    pub fn parity_ok(self, n: usize) -> bool {
        match self {
            StarterKind::One | StarterKind::Two => n.is_multiple_of(2),
            StarterKind::Three => n % 2 == 1,
        }
    }
}

impl fmt::Display for StarterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarterKind::One => "one",
            StarterKind::Two => "two",
            StarterKind::Three => "three",
        })
    }
}

impl FromStr for StarterKind {
    type Err = HopError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "one" | "1" => Ok(StarterKind::One),
            "two" | "2" => Ok(StarterKind::Two),
            "three" | "3" => Ok(StarterKind::Three),
            other => Err(HopError::InvalidArgument(format!("unknown starter kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RawEdgeCode {
    pub d: usize,
    pub c: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawCycle {
    pub vertices: Vec<Vertex>,
    pub codes: Vec<RawEdgeCode>,
}

impl RawCycle {
    pub fn from_cycle(c: &Cycle, n: usize) -> RawCycle {
        RawCycle {
            vertices: c.vertices.clone(),
            codes: c
                .edges
                .iter()
                .map(|e| RawEdgeCode {
                    d: e.difference(n).code(n),
                    c: e.orientation(n).code(),
                })
                .collect(),
        }
    }

    /// Coloured cycle; `oriented` selects arcs over undirected black edges for
    /// code 1.
    pub fn to_cycle(&self, n: usize, oriented: bool) -> Cycle {
        let len = self.vertices.len();
        let edges = (0..len)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % len];
                match (self.codes[i].c, oriented) {
                    (0, _) => ColouredEdge::pink(a, b),
                    (2, _) => ColouredEdge::blue(a, b),
                    (1, false) => ColouredEdge::black(a, b),
                    (c, _) => {
                        let (tail, head) = arc_with_orientation(a, b, c == 1, n);
                        ColouredEdge::arc(tail, head)
                    }
                }
            })
            .collect();
        Cycle::new(self.vertices.clone(), edges)
    }
}

impl fmt::Display for RawCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (v, code)) in self.vertices.iter().zip(&self.codes).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}, [{}, {}]", code.d, code.c)?;
        }
        f.write_str("]")
    }
}

/// A parsed starter record. For `Three`, the two factors are `F1` and `F3`;
/// `F2` is derived from `F1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarterRecord {
    pub n: usize,
    pub cycle_type: CycleType,
    pub kind: StarterKind,
    pub factors: Vec<Vec<RawCycle>>,
}

impl StarterRecord {
    pub fn from_factors(kind: StarterKind, cycle_type: CycleType, factors: &[TwoFactor]) -> StarterRecord {
        let n = cycle_type.n();
        StarterRecord {
            n,
            kind,
            cycle_type,
            factors: factors
                .iter()
                .map(|f| f.cycles.iter().map(|c| RawCycle::from_cycle(c, n)).collect())
                .collect(),
        }
    }

    pub fn id(&self) -> String {
        format!("n{}{}/{}", self.n, self.cycle_type, self.kind)
    }

    pub fn two_factors(&self) -> Vec<TwoFactor> {
        let oriented = self.kind != StarterKind::One;
        self.factors
            .iter()
            .map(|f| TwoFactor::new(self.n, f.iter().map(|c| c.to_cycle(self.n, oriented)).collect()))
            .collect()
    }
}

fn write_cycle_lines(out: &mut String, factors: &[Vec<RawCycle>]) {
    for (i, f) in factors.iter().enumerate() {
        if i > 0 {
            out.push_str("--\n");
        }
        for c in f {
            let _ = writeln!(out, "C: {c}");
        }
    }
}

pub fn serialize_starter(r: &StarterRecord) -> String {
    let mut out = format!("starter n={} type={} kind={}\n", r.n, r.cycle_type, r.kind);
    write_cycle_lines(&mut out, &r.factors);
    out
}

pub fn serialize_starters(records: &[StarterRecord]) -> String {
    records.iter().map(serialize_starter).collect::<Vec<_>>().join("\n")
}

pub fn serialize_factorization(d: &Factorization) -> String {
    let mut out = format!("factorization n={} type={}\n", d.n, d.cycle_type);
    let raw: Vec<Vec<RawCycle>> = d
        .factors
        .iter()
        .map(|f| f.cycles.iter().map(|c| RawCycle::from_cycle(c, d.n)).collect())
        .collect();
    write_cycle_lines(&mut out, &raw);
    out
}

pub fn serialize_seating(s: &SeatingSolution) -> String {
    let mut out = format!(
        "seating couples={} type={} table={}\n",
        s.n_couples, s.cycle_type, s.table
    );
    for (i, round) in s.rounds.iter().enumerate() {
        let _ = writeln!(out, "\nround {}", i + 1);
        for table in round {
            let guests: Vec<String> = table.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "({})", guests.join(" "));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Starter(StarterRecord),
    Factorization(Factorization),
    Seating(SeatingSolution),
}

/// Parses only starter records; any other block is a syntax error.
pub fn parse_starter_file(text: &str) -> Result<Vec<StarterRecord>> {
    parse_document(text)?
        .into_iter()
        .map(|b| match b {
            Block::Starter(r) => Ok(r),
            _ => Err(HopError::Syntax {
                line: 0,
                msg: "expected only starter records".into(),
            }),
        })
        .collect()
}

pub fn parse_document(text: &str) -> Result<Vec<Block>> {
    let mut parser = Parser::default();
    for (i, line) in text.lines().enumerate() {
        parser.line(i + 1, line)?;
    }
    parser.finish()?;
    Ok(parser.blocks)
}

#[derive(Debug)]
enum Pending {
    Starter {
        line: usize,
        n: usize,
        cycle_type: CycleType,
        kind: StarterKind,
        factors: Vec<Vec<(usize, RawCycle)>>,
    },
    Factorization {
        line: usize,
        n: usize,
        cycle_type: CycleType,
        factors: Vec<Vec<(usize, RawCycle)>>,
    },
    Seating {
        line: usize,
        n_couples: usize,
        cycle_type: CycleType,
        table: LiftTable,
        rounds: Vec<Vec<Vec<usize>>>,
    },
}

#[derive(Debug, Default)]
struct Parser {
    current: Option<Pending>,
    blocks: Vec<Block>,
}

fn syntax(line: usize, msg: impl Into<String>) -> HopError {
    HopError::Syntax { line, msg: msg.into() }
}

fn header_fields(line: usize, rest: &str) -> Result<Vec<(String, String)>> {
    rest.split_whitespace()
        .map(|field| {
            field
                .split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| syntax(line, format!("expected key=value, found {field:?}")))
        })
        .collect()
}

fn field<'a>(line: usize, fields: &'a [(String, String)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| syntax(line, format!("header is missing {key}=")))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| syntax(line, format!("expected an integer, found {s:?}")))
}

fn parse_type(line: usize, s: &str) -> Result<CycleType> {
    s.parse().map_err(|e: HopError| syntax(line, e.to_string()))
}

impl Parser {
    fn line(&mut self, no: usize, raw: &str) -> Result<()> {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            // blank lines end starter and factorization blocks; seating rounds
            // are themselves separated by blank lines
            if !matches!(self.current, Some(Pending::Seating { .. })) {
                self.flush()?;
            }
            return Ok(());
        }
        if let Some(rest) = line.strip_prefix("starter ") {
            self.flush()?;
            let fields = header_fields(no, rest)?;
            let n = parse_usize(no, field(no, &fields, "n")?)?;
            let cycle_type = parse_type(no, field(no, &fields, "type")?)?;
            let kind: StarterKind = field(no, &fields, "kind")?
                .parse()
                .map_err(|e: HopError| syntax(no, e.to_string()))?;
            check_header(no, n, &cycle_type)?;
            if !kind.parity_ok(n) {
                return Err(syntax(no, format!("kind={kind} does not fit n={n}")));
            }
            self.current = Some(Pending::Starter {
                line: no,
                n,
                cycle_type,
                kind,
                factors: vec![Vec::new()],
            });
        } else if let Some(rest) = line.strip_prefix("factorization ") {
            self.flush()?;
            let fields = header_fields(no, rest)?;
            let n = parse_usize(no, field(no, &fields, "n")?)?;
            let cycle_type = parse_type(no, field(no, &fields, "type")?)?;
            check_header(no, n, &cycle_type)?;
            self.current = Some(Pending::Factorization {
                line: no,
                n,
                cycle_type,
                factors: vec![Vec::new()],
            });
        } else if let Some(rest) = line.strip_prefix("seating ") {
            self.flush()?;
            let fields = header_fields(no, rest)?;
            let n_couples = parse_usize(no, field(no, &fields, "couples")?)?;
            let cycle_type = parse_type(no, field(no, &fields, "type")?)?;
            let table = match field(no, &fields, "table")? {
                "standard" => LiftTable::Standard,
                "swapped" => LiftTable::Swapped,
                other => return Err(syntax(no, format!("unknown table {other:?}"))),
            };
            self.current = Some(Pending::Seating {
                line: no,
                n_couples,
                cycle_type,
                table,
                rounds: Vec::new(),
            });
        } else if line == "--" {
            match &mut self.current {
                Some(Pending::Starter { factors, .. }) | Some(Pending::Factorization { factors, .. }) => {
                    factors.push(Vec::new())
                }
                _ => return Err(syntax(no, "factor separator outside a starter or factorization")),
            }
        } else if let Some(rest) = line.strip_prefix("C:") {
            match &mut self.current {
                Some(Pending::Starter { factors, .. }) | Some(Pending::Factorization { factors, .. }) => {
                    let cycle = parse_cycle(no, rest)?;
                    factors.last_mut().expect("at least one factor").push((no, cycle));
                }
                _ => return Err(syntax(no, "cycle line outside a starter or factorization")),
            }
        } else if let Some(rest) = line.strip_prefix("round") {
            match &mut self.current {
                Some(Pending::Seating { rounds, .. }) => {
                    let k = parse_usize(no, rest.trim())?;
                    if k != rounds.len() + 1 {
                        return Err(syntax(no, format!("expected round {}, found {k}", rounds.len() + 1)));
                    }
                    rounds.push(Vec::new());
                }
                _ => return Err(syntax(no, "round outside a seating block")),
            }
        } else if line.starts_with('(') {
            match &mut self.current {
                Some(Pending::Seating { rounds, .. }) => {
                    let round = rounds
                        .last_mut()
                        .ok_or_else(|| syntax(no, "table listed before the first round"))?;
                    round.push(parse_table(no, line)?);
                }
                _ => return Err(syntax(no, "table outside a seating block")),
            }
        } else {
            return Err(syntax(no, format!("unrecognised line {line:?}")));
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let Some(pending) = self.current.take() else {
            return Ok(());
        };
        let block = match pending {
            Pending::Starter {
                line,
                n,
                cycle_type,
                kind,
                factors,
            } => {
                if factors.len() != kind.factor_count() {
                    return Err(syntax(
                        line,
                        format!(
                            "kind={kind} needs {} factor(s), found {}",
                            kind.factor_count(),
                            factors.len()
                        ),
                    ));
                }
                let factors = factors
                    .into_iter()
                    .map(|f| check_factor(line, n, &cycle_type, Some(kind), f))
                    .collect::<Result<Vec<_>>>()?;
                Block::Starter(StarterRecord {
                    n,
                    cycle_type,
                    kind,
                    factors,
                })
            }
            Pending::Factorization {
                line,
                n,
                cycle_type,
                factors,
            } => {
                let factors = factors
                    .into_iter()
                    .map(|f| {
                        let raw = check_factor(line, n, &cycle_type, None, f)?;
                        Ok(TwoFactor::new(n, raw.iter().map(|c| c.to_cycle(n, true)).collect()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Block::Factorization(Factorization { n, cycle_type, factors })
            }
            Pending::Seating {
                line,
                n_couples,
                cycle_type,
                table,
                rounds,
            } => {
                if cycle_type.n() != 2 * n_couples {
                    return Err(syntax(
                        line,
                        format!("type {cycle_type} does not seat {n_couples} couples"),
                    ));
                }
                Block::Seating(SeatingSolution::new(n_couples, cycle_type, table, rounds))
            }
        };
        self.blocks.push(block);
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        self.flush()
    }
}

fn check_header(line: usize, n: usize, t: &CycleType) -> Result<()> {
    if n < 4 {
        return Err(syntax(line, format!("n={n} is below 4")));
    }
    if t.n() != n {
        return Err(syntax(line, format!("type {t} sums to {}, not n={n}", t.n())));
    }
    Ok(())
}

/// Range, code and difference checks for one factor, plus its cycle type.
/// `kind` is `None` for expanded factorizations.
fn check_factor(
    header_line: usize,
    n: usize,
    t: &CycleType,
    kind: Option<StarterKind>,
    cycles: Vec<(usize, RawCycle)>,
) -> Result<Vec<RawCycle>> {
    let max_finite = (n - 1) / 2;
    for (line, c) in &cycles {
        let line = *line;
        let len = c.vertices.len();
        if len < 2 {
            return Err(syntax(line, format!("cycle of length {len}")));
        }
        for i in 0..len {
            let a = c.vertices[i];
            let b = c.vertices[(i + 1) % len];
            let code = c.codes[i];
            for x in [a, b] {
                if x >= n {
                    return Err(syntax(line, format!("vertex {x} out of range for n={n}")));
                }
            }
            let allowed: &[i8] = match kind {
                Some(StarterKind::One) => &[0, 1],
                _ => &[-1, 0, 1, 2],
            };
            if !allowed.contains(&code.c) {
                return Err(syntax(line, format!("colour code {} not allowed here", code.c)));
            }
            let declared = if code.d == n - 1 {
                Difference::Infinity
            } else if (1..=max_finite).contains(&code.d) {
                Difference::Finite(code.d)
            } else {
                return Err(syntax(line, format!("difference {} out of range for n={n}", code.d)));
            };
            let computed = difference(a, b, n).map_err(|e| syntax(line, e.to_string()))?;
            if declared != computed {
                return Err(HopError::DifferenceMismatch {
                    line,
                    u: a,
                    v: b,
                    declared: code.d,
                    computed: computed.code(n),
                });
            }
        }
    }
    let mut lengths: Vec<usize> = cycles.iter().map(|(_, c)| c.vertices.len()).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    if lengths != t.parts() {
        let line = cycles.first().map_or(header_line, |(l, _)| *l);
        return Err(HopError::CycleTypeMismatch {
            line,
            expected: t.to_string(),
            found: format!("{lengths:?}").replace(' ', ""),
        });
    }
    Ok(cycles.into_iter().map(|(_, c)| c).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Open,
    Close,
    Comma,
    Int(i64),
}

fn tokenize(line: usize, s: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            '[' => {
                tokens.push(Token::Open);
                chars.next();
            }
            ']' => {
                tokens.push(Token::Close);
                chars.next();
            }
            ',' => {
                tokens.push(Token::Comma);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '-' | '0'..='9' => {
                let mut digits = String::new();
                digits.push(ch);
                chars.next();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let value = digits
                    .parse()
                    .map_err(|_| syntax(line, format!("bad integer {digits:?}")))?;
                tokens.push(Token::Int(value));
            }
            other => return Err(syntax(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Cursor {
    line: usize,
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            other => Err(syntax(self.line, format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        match self.peek() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            other => Err(syntax(self.line, format!("expected {what}, found {other:?}"))),
        }
    }
}

fn parse_cycle(line: usize, s: &str) -> Result<RawCycle> {
    let mut cur = Cursor {
        line,
        tokens: tokenize(line, s)?,
        pos: 0,
    };
    cur.expect(Token::Open)?;
    let mut vertices = Vec::new();
    let mut codes = Vec::new();
    loop {
        let v = cur.int("a vertex")?;
        cur.expect(Token::Comma)?;
        cur.expect(Token::Open)?;
        let d = cur.int("a difference")?;
        cur.expect(Token::Comma)?;
        let c = cur.int("a colour code")?;
        cur.expect(Token::Close)?;
        if v < 0 || d < 0 || !(-1..=2).contains(&c) {
            return Err(syntax(line, format!("bad entry {v}, [{d}, {c}]")));
        }
        vertices.push(v as usize);
        codes.push(RawEdgeCode {
            d: d as usize,
            c: c as i8,
        });
        match cur.peek() {
            Some(Token::Comma) => cur.pos += 1,
            Some(Token::Close) => {
                cur.pos += 1;
                break;
            }
            other => return Err(syntax(line, format!("expected ',' or ']', found {other:?}"))),
        }
    }
    if cur.pos != cur.tokens.len() {
        return Err(syntax(line, "trailing input after cycle"));
    }
    Ok(RawCycle { vertices, codes })
}

fn parse_table(line: usize, s: &str) -> Result<Vec<usize>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| syntax(line, "table must be written as (g0 g1 ...)"))?;
    inner.split_whitespace().map(|g| parse_usize(line, g)).collect()
}
