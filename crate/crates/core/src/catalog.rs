//! Cycle types for a given `n`, their classification against the known
//! existence results, and the per-`n` dispatch report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{HopError, Result};

/// Multiset of cycle lengths `m_i >= 2`, stored largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(HopError::InvalidArgument("empty cycle type".into()));
        }
        if let Some(&bad) = parts.iter().find(|&&m| m < 2) {
            return Err(HopError::InvalidArgument(format!("cycle length {bad} is below 2")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn smallest(&self) -> usize {
        *self.parts.last().expect("cycle type is non-empty")
    }

    /// Every length doubled: the table sizes of the seating problem.
    pub fn doubled(&self) -> CycleType {
        CycleType {
            parts: self.parts.iter().map(|m| 2 * m).collect(),
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CycleType {
    type Err = HopError;

    /// Accepts `4,2,2,2` or `[4, 2, 2, 2]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| HopError::InvalidArgument(format!("bad cycle length {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts)
    }
}

/// All partitions of `n` into parts `>= 2`, in reverse-lexicographic order.
pub fn cycle_types(n: usize) -> Result<Vec<CycleType>> {
    if n < 4 {
        return Err(HopError::InvalidArgument(format!("cycle types need n >= 4, got {n}")));
    }
    fn extend(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if remaining == 0 {
            out.push(CycleType { parts: current.clone() });
            return;
        }
        for part in (2..=max.min(remaining)).rev() {
            if remaining - part == 1 {
                continue;
            }
            current.push(part);
            extend(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarterHint {
    OneOrTwo,
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coverage {
    /// All cycle lengths equal.
    Uniform,
    /// Every length divisible by 4.
    AllPartsDiv4,
    /// Odd `n`, exactly two cycles.
    OddPair,
    /// Odd `n < 40`, every length at least 3.
    OddSmallAllGe3,
    /// `n <= 9`.
    SmallN,
    NeedsStarter(StarterHint),
}

impl Coverage {
    pub fn is_covered(self) -> bool {
        !matches!(self, Coverage::NeedsStarter(_))
    }
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coverage::Uniform => "uniform",
            Coverage::AllPartsDiv4 => "all-div4",
            Coverage::OddPair => "odd-pair",
            Coverage::OddSmallAllGe3 => "odd-small-min3",
            Coverage::SmallN => "small-n",
            Coverage::NeedsStarter(StarterHint::OneOrTwo) => "starter(one|two)",
            Coverage::NeedsStarter(StarterHint::Three) => "starter(three)",
        })
    }
}

/// First matching known result, in the fixed order uniform, all-div4,
/// odd-pair, odd-small-min3, small-n.
pub fn classify(t: &CycleType) -> Coverage {
    let n = t.n();
    let parts = t.parts();
    let odd = n % 2 == 1;
    if parts.iter().all(|&m| m == parts[0]) {
        Coverage::Uniform
    } else if parts.iter().all(|m| m % 4 == 0) {
        Coverage::AllPartsDiv4
    } else if odd && parts.len() == 2 {
        Coverage::OddPair
    } else if odd && n < 40 && t.smallest() >= 3 {
        Coverage::OddSmallAllGe3
    } else if n <= 9 {
        Coverage::SmallN
    } else if odd {
        Coverage::NeedsStarter(StarterHint::Three)
    } else {
        Coverage::NeedsStarter(StarterHint::OneOrTwo)
    }
}

/// How a row is settled in the published dispatch tables for `10 <= n <= 20`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Uniform,
    One,
    Two,
    Three,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Uniform => "uniform",
            Method::One => "one",
            Method::Two => "two",
            Method::Three => "three",
        })
    }
}

impl FromStr for Method {
    type Err = HopError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Method::Uniform),
            "one" => Ok(Method::One),
            "two" => Ok(Method::Two),
            "three" => Ok(Method::Three),
            other => Err(HopError::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

const DISPATCH: &str = include_str!("../data/dispatch.txt");

/// Reference dispatch rows for `n`; empty outside `10..=20`.
pub fn reference_table(n: usize) -> Vec<(CycleType, Method)> {
    DISPATCH
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| {
            let mut fields = l.split_whitespace();
            let row_n: usize = fields.next()?.parse().ok()?;
            if row_n != n {
                return None;
            }
            let t: CycleType = fields.next()?.parse().ok()?;
            let method: Method = fields.next()?.parse().ok()?;
            Some((t, method))
        })
        .collect()
}

pub fn reference_method(t: &CycleType) -> Option<Method> {
    reference_table(t.n()).into_iter().find(|(r, _)| r == t).map(|(_, m)| m)
}

/// Comparison of a literal classification with the reference table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Agreement {
    Agrees,
    /// Both settle the row, by different results. Reported, never corrected.
    Flagged(String),
    /// One side needs starters, the other does not, or the starter kinds differ.
    Conflicts(String),
}

pub fn compare(coverage: Coverage, method: Method) -> Agreement {
    use Coverage::NeedsStarter;
    match (method, coverage) {
        (Method::Uniform, Coverage::Uniform) => Agreement::Agrees,
        (Method::Uniform, NeedsStarter(_)) => {
            Agreement::Conflicts(format!("listed as uniform but classified {coverage}"))
        }
        (Method::Uniform, c) => Agreement::Flagged(format!("listed as uniform, literal statement gives {c}")),
        (Method::One | Method::Two, NeedsStarter(StarterHint::OneOrTwo)) => Agreement::Agrees,
        (Method::Three, NeedsStarter(StarterHint::Three)) => Agreement::Agrees,
        (m, NeedsStarter(_)) => Agreement::Conflicts(format!("listed with {m} starter(s) but classified {coverage}")),
        (m, c) => Agreement::Flagged(format!("listed with {m} starter(s), also covered by {c}")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureStatus {
    Verified,
    Failed(String),
    Missing,
    NotNeeded,
}

impl fmt::Display for FixtureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureStatus::Verified => f.write_str("verified"),
            FixtureStatus::Failed(_) => f.write_str("FAILED"),
            FixtureStatus::Missing => f.write_str("missing"),
            FixtureStatus::NotNeeded => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub cycle_type: CycleType,
    pub coverage: Coverage,
    pub method: Option<Method>,
    pub agreement: Option<Agreement>,
    pub fixture: FixtureStatus,
    pub search: String,
}

impl ReportRow {
    pub fn flag(&self) -> Option<&str> {
        match &self.agreement {
            Some(Agreement::Flagged(s)) | Some(Agreement::Conflicts(s)) => Some(s),
            _ => None,
        }
    }
}

/// One row per cycle type of `n`.
///
/// `fixtures` maps starter-needing types to their fixture status; types the
/// map does not mention are `missing` when they need a starter. `search`
/// holds rendered search outcomes, `-` where none ran.
pub fn report(
    n: usize,
    fixtures: &BTreeMap<CycleType, FixtureStatus>,
    search: &BTreeMap<CycleType, String>,
) -> Result<Vec<ReportRow>> {
    if !(4..=20).contains(&n) {
        return Err(HopError::InvalidArgument(format!(
            "reports cover 4 <= n <= 20, got {n}"
        )));
    }
    let reference: BTreeMap<CycleType, Method> = reference_table(n).into_iter().collect();
    cycle_types(n).map(|types| {
        types
            .into_iter()
            .map(|t| {
                let coverage = classify(&t);
                let method = reference.get(&t).copied();
                let fixture = match fixtures.get(&t) {
                    Some(status) => status.clone(),
                    None if coverage.is_covered() => FixtureStatus::NotNeeded,
                    None => FixtureStatus::Missing,
                };
                ReportRow {
                    agreement: method.map(|m| compare(coverage, m)),
                    search: search.get(&t).cloned().unwrap_or_else(|| "-".into()),
                    cycle_type: t,
                    coverage,
                    method,
                    fixture,
                }
            })
            .collect()
    })
}

pub fn render_text(n: usize, rows: &[ReportRow]) -> String {
    let width = rows
        .iter()
        .map(|r| r.cycle_type.to_string().len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = format!("n={n}: {} cycle types\n", rows.len());
    out.push_str(&format!(
        "{:<width$}  {:<17}  {:<9}  {:<10}  {}\n",
        "type", "coverage", "fixture", "search", "note"
    ));
    for r in rows {
        let note = match (&r.agreement, r.method) {
            (Some(Agreement::Agrees), _) | (None, _) => String::new(),
            (Some(Agreement::Flagged(s)), _) => format!("flag: {s}"),
            (Some(Agreement::Conflicts(s)), _) => format!("CONFLICT: {s}"),
        };
        out.push_str(
            format!(
                "{:<width$}  {:<17}  {:<9}  {:<10}  {}",
                r.cycle_type.to_string(),
                r.coverage.to_string(),
                r.fixture.to_string(),
                r.search,
                note
            )
            .trim_end(),
        );
        out.push('\n');
    }
    out
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("type,coverage,fixture,search\n");
    for r in rows {
        let parts: Vec<String> = r.cycle_type.parts().iter().map(usize::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{}\n",
            parts.join(" "),
            r.coverage,
            r.fixture,
            r.search
        ));
    }
    out
}
