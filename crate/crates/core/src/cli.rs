//! The `hop` command line.
//!
//! Exit status: 0 when everything checked passes, 1 when something fails
//! verification (or a search finds nothing), 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::catalog::{render_csv, render_text, report, CycleType};
use crate::chain::certify;
use crate::error::{HopError, Result};
use crate::expand::lift;
use crate::fixtures;
use crate::format::{
    parse_document, serialize_factorization, serialize_seating, serialize_starter, Block, StarterKind,
};
use crate::search::{kinds_for, search_all, search_starter, SearchBudget, SearchOutcome};
use crate::verify::{verify_alternating_factorization, verify_hop_factorization, verify_semi_uniform, Report};

#[derive(Debug, Parser)]
#[command(
    name = "hop",
    version,
    about = "Starter 2-factors for the Honeymoon Oberwolfach Problem"
)]
struct Cli {
    /// Emit `FAIL <id> <clause> <locus>` lines instead of prose.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every starter, factorization or seating block in a file.
    Verify { file: PathBuf },
    /// Expand starters into full factorizations.
    Expand {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Lift starters or factorizations to seating schedules.
    Lift {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Search for a starter; without --type, for every type of n that needs one.
    Search {
        /// Number of couples.
        #[arg(long)]
        n: usize,
        /// Cycle type, for example `4,3,3`.
        #[arg(long = "type")]
        cycle_type: Option<CycleType>,
        /// `one`, `two` or `three`; by default the kinds the catalog suggests.
        #[arg(long)]
        kind: Option<StarterKind>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Cycle types of n with their coverage and fixture status.
    Catalog {
        /// Number of couples, 4 to 20.
        #[arg(long)]
        n: usize,
        /// Comma-separated `type,coverage,fixture,search` rows.
        #[arg(long)]
        csv: bool,
        /// Also search every type that needs a starter.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the shipped fixtures through the whole chain.
    Selftest,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Node budget per cycle type.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    max_nodes: u64,
    /// Wall-clock budget per cycle type.
    #[arg(long, default_value_t = SearchBudget::default().max_seconds)]
    max_seconds: f64,
    /// Shuffle candidate order with this seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.max_nodes,
            max_seconds: self.max_seconds,
            seed: self.seed,
        }
    }
}

enum Failure {
    Usage(String),
    Failed,
}

impl From<HopError> for Failure {
    fn from(e: HopError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs one invocation, writing results to `out` and diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify { file } => verify(file, cli.porcelain, out),
        Command::Expand { file, out: dest } => expand(file, dest.as_deref(), cli.porcelain, out),
        Command::Lift { file, out: dest } => lift_file(file, dest.as_deref(), cli.porcelain, out),
        Command::Search {
            n,
            cycle_type,
            kind,
            budget,
        } => search(*n, cycle_type.as_ref(), *kind, &budget.budget(), out),
        Command::Catalog { n, csv, search, budget } => catalog(*n, *csv, search.then(|| budget.budget()), out),
        Command::Selftest => selftest(cli.porcelain, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Failed) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn read_blocks(path: &Path) -> Result<Vec<Block>> {
    let text = fs::read_to_string(path)?;
    parse_document(&text)
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> Outcome {
    match dest {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render(report: &Report, id: &str, porcelain: bool) -> String {
    if porcelain {
        report.render_porcelain(id)
    } else {
        report.render_text(id)
    }
}

fn check_block(block: &Block) -> (String, Report) {
    match block {
        Block::Starter(r) => {
            let cert = certify(r, false);
            (cert.id, cert.report)
        }
        Block::Factorization(d) => (
            format!("n{}{}/factorization", d.n, d.cycle_type),
            verify_hop_factorization(d),
        ),
        Block::Seating(s) => {
            let mut report = verify_alternating_factorization(s, &s.cycle_type);
            report.merge(verify_semi_uniform(
                &s.one_factorization(),
                2 * s.n_couples,
                &s.cycle_type,
            ));
            (format!("couples{}{}/seating", s.n_couples, s.cycle_type), report)
        }
    }
}

fn verify(file: &Path, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let blocks = read_blocks(file)?;
    let results: Vec<(String, Report)> = blocks.par_iter().map(check_block).collect();
    let failed = results.iter().filter(|(_, r)| !r.is_ok()).count();
    for (id, report) in &results {
        if !report.is_ok() {
            write!(out, "{}", render(report, id, porcelain))?;
        }
    }
    if failed > 0 {
        if !porcelain {
            writeln!(out, "{failed} of {} records failed", results.len())?;
        }
        return Err(Failure::Failed);
    }
    if !porcelain {
        writeln!(out, "{} records verified", results.len())?;
    }
    Ok(())
}

fn expand(file: &Path, dest: Option<&Path>, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let mut text = Vec::new();
    let mut failed = false;
    for block in read_blocks(file)? {
        let Block::Starter(r) = block else {
            return Err(Failure::Usage("expand takes starter records only".into()));
        };
        let cert = certify(&r, false);
        match cert.factorization {
            Some(d) if cert.report.is_ok() => text.push(serialize_factorization(&d)),
            _ => {
                eprint!("{}", render(&cert.report, &cert.id, porcelain));
                failed = true;
            }
        }
    }
    emit(out, dest, &text.join("\n"))?;
    if failed {
        Err(Failure::Failed)
    } else {
        Ok(())
    }
}

fn lift_file(file: &Path, dest: Option<&Path>, porcelain: bool, out: &mut dyn Write) -> Outcome {
    let mut text = Vec::new();
    let mut failed = false;
    for block in read_blocks(file)? {
        let (id, report, seating) = match block {
            Block::Starter(r) => {
                let cert = certify(&r, true);
                (cert.id, cert.report, cert.seating)
            }
            Block::Factorization(d) => {
                let id = format!("n{}{}/factorization", d.n, d.cycle_type);
                let mut report = verify_hop_factorization(&d);
                let mut seating = None;
                if report.is_ok() {
                    match lift(&d) {
                        Ok(s) => seating = Some(s),
                        Err(e) => report.push(crate::verify::Clause::Lift, e.to_string()),
                    }
                }
                (id, report, seating)
            }
            Block::Seating(_) => return Err(Failure::Usage("lift takes starters or factorizations".into())),
        };
        match seating {
            Some(s) if report.is_ok() => text.push(serialize_seating(&s)),
            _ => {
                eprint!("{}", render(&report, &id, porcelain));
                failed = true;
            }
        }
    }
    emit(out, dest, &text.join("\n"))?;
    if failed {
        Err(Failure::Failed)
    } else {
        Ok(())
    }
}

fn search(
    n: usize,
    cycle_type: Option<&CycleType>,
    kind: Option<StarterKind>,
    budget: &SearchBudget,
    out: &mut dyn Write,
) -> Outcome {
    let Some(t) = cycle_type else {
        let outcomes = search_all(n, budget)?;
        let mut all_found = true;
        for (t, outcome) in &outcomes {
            eprintln!("{t}: {outcome}");
            match outcome.record() {
                Some(r) => writeln!(out, "{}", serialize_starter(r))?,
                None => all_found = false,
            }
        }
        return if all_found { Ok(()) } else { Err(Failure::Failed) };
    };
    let kinds = kind.map_or_else(|| kinds_for(t), |k| vec![k]);
    for k in kinds {
        let outcome = search_starter(n, t, k, budget)?;
        eprintln!("{t} {k}: {outcome}");
        if let SearchOutcome::Found(r, _) = outcome {
            write!(out, "{}", serialize_starter(&r))?;
            return Ok(());
        }
    }
    Err(Failure::Failed)
}

fn catalog(n: usize, csv: bool, budget: Option<SearchBudget>, out: &mut dyn Write) -> Outcome {
    let fixtures = fixtures::fixture_index(n);
    let search = match budget {
        Some(b) => search_all(n, &b)?
            .into_iter()
            .map(|(t, o)| (t, o.to_string()))
            .collect(),
        None => Default::default(),
    };
    let rows = report(n, &fixtures, &search)?;
    let text = if csv { render_csv(&rows) } else { render_text(n, &rows) };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn selftest(porcelain: bool, out: &mut dyn Write) -> Outcome {
    let mut failed = 0;
    let mut total = 0;
    for (name, _) in fixtures::FILES {
        let records = fixtures::records(name).expect("listed fixture");
        let certs: Vec<_> = records.par_iter().map(|r| certify(r, true)).collect();
        let ok = certs.iter().filter(|c| c.is_ok()).count();
        total += certs.len();
        failed += certs.len() - ok;
        for c in certs.iter().filter(|c| !c.is_ok()) {
            write!(out, "{}", render(&c.report, &c.id, porcelain))?;
        }
        if !porcelain {
            writeln!(out, "{name}: {ok}/{} verified, expanded and lifted", certs.len())?;
        }
    }
    if !porcelain {
        writeln!(out, "selftest: {} of {total} records passed", total - failed)?;
    }
    if failed > 0 {
        Err(Failure::Failed)
    } else {
        Ok(())
    }
}
