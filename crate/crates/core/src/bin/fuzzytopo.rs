#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fuzzytopo::claims::{self, CheckConfig, Claim, ClaimId, MReading, Outcome};
use fuzzytopo::families::{self, Family, FamilySpec};
use fuzzytopo::search::{self, GraphClass, SearchTask};
use fuzzytopo::{exec, indices, io as gio, tables, Direction, Error, IndexKind};

/// Fuzzy graph topological indices: evaluation, reference tables,
/// extremal search and bound checking.
///
/// All CSV output has a header row, `\n` line endings and `.` decimals.
/// Set FUZZYTOPO_THREADS to cap worker threads (0 = automatic).
#[derive(Parser)]
#[command(name = "fuzzytopo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an index on a graph file.
    ///
    /// CSV columns: index, rounded, value.
    Compute {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an index on a uniform family member.
    ///
    /// CSV columns: family, n, m_mu, index, value, closed_form
    /// (closed_form is empty for indices without one).
    Family {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: f64,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Family comparison table.
    ///
    /// CSV columns: family, n, m_mu, index, computed, printed, agree.
    Table1 {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Index comparison table at n = 10, m_mu = 1.
    ///
    /// CSV columns: family, n, m_mu, index, computed, printed, agree.
    Table2 {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Long-format figure data.
    ///
    /// CSV columns: figure, family, n, index, value.
    Figures {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive extremal search over supports of a graph class.
    ///
    /// CSV columns: support_id, shape, edges, value, memberships, method,
    /// boundary, converged, rank, winner. A summary goes to stderr.
    Search {
        #[arg(long)]
        class: GraphClass,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: f64,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        direction: Direction,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a claim on random instances, a graph file, an extremal sweep
    /// or a family grid.
    ///
    /// CSV columns (random, graph, extremal): claim, instance, lhs, rhs,
    /// margin, holds, status. CSV columns (sweep): claim, family, n, m_mu,
    /// lhs, rhs, margin, holds. The summary goes to stdout.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct IndexArgs {
    /// so, so-alpha, m1, m2, randic, nirmala
    #[arg(long, default_value = "so")]
    index: String,
    /// Exponent for so-alpha (>= 1).
    #[arg(long)]
    alpha: Option<f64>,
}

impl IndexArgs {
    fn kind(&self) -> Result<IndexKind, Error> {
        if self.alpha.is_some() && !self.index.eq_ignore_ascii_case("so-alpha") {
            return Err(Error::InvalidTask("--alpha only applies to --index so-alpha".into()));
        }
        IndexKind::parse(&self.index, self.alpha)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Random,
    Extremal,
    Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingM {
    MMu,
    EdgeCount,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    claim: ClaimId,
    /// Single form (as-printed, degree-squared, long, reduced); all forms by default.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Random)]
    mode: Mode,
    /// Check a single graph file instead of generated instances.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Fuzzy size for extremal mode.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = ReadingM::MMu)]
    reading_m: ReadingM,
    /// Also count instances whose hypothesis is not met.
    #[arg(long)]
    include_unmet: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn closed_form(kind: IndexKind, family: Family, n: usize, m: f64) -> Result<Option<f64>, Error> {
    match kind {
        IndexKind::Sombor => families::closed_form_uniform(family, n, m).map(Some),
        IndexKind::SomborAlpha(a) if family == Family::Star && n >= 3 => {
            families::closed_form_star_alpha(n, m / (n - 1) as f64, a).map(Some)
        }
        _ => Ok(None),
    }
}

fn parse_variant(claim: ClaimId, name: &str) -> Result<Claim, Error> {
    let variant = claim
        .variants()
        .iter()
        .copied()
        .find(|v| v.name() == name)
        .ok_or_else(|| Error::InvalidTask(format!("claim {claim} has no '{name}' form")))?;
    Claim::with_variant(claim, variant)
}

fn default_extremal_range(claim: ClaimId) -> (usize, usize) {
    match claim {
        ClaimId::CycleMinUnicyclic | ClaimId::UnicyclicMax => (3, 7),
        ClaimId::KnMax | ClaimId::KnAlphaMax => (2, 5),
        _ => (2, 8),
    }
}

fn verify(args: &VerifyArgs) -> Result<(), Error> {
    if !(args.alpha >= 1.0) {
        return Err(Error::AlphaOutOfRange(args.alpha));
    }
    let forms = match &args.variant {
        Some(v) => vec![parse_variant(args.claim, v)?],
        None => Claim::all_forms(args.claim),
    };
    let cfg = CheckConfig {
        reading_m: match args.reading_m {
            ReadingM::MMu => MReading::FuzzySize,
            ReadingM::EdgeCount => MReading::EdgeCount,
        },
        alpha: args.alpha,
        include_unmet_hypothesis: args.include_unmet,
        ..Default::default()
    };
    let graph = args.graph.as_ref().map(gio::parse_graph).transpose()?;
    let mut csv_out: Vec<u8> = Vec::new();
    let mut summary = String::new();
    for (k, &claim) in forms.iter().enumerate() {
        let mut buf = Vec::new();
        if let Mode::Sweep = args.mode {
            let grid: Vec<FamilySpec> = Family::ALL
                .iter()
                .flat_map(|&f| {
                    tables::TABLE1_ORDERS
                        .iter()
                        .flat_map(move |&n| tables::TABLE1_SIZES.iter().map(move |&m| FamilySpec::uniform(f, n, m)))
                })
                .collect();
            let rows = claims::margin_sweep(claim, &grid, &cfg)?;
            let held = rows.iter().filter(|r| matches!(&r.outcome, Outcome::Evaluated(e) if e.holds)).count();
            let evaluated = rows.iter().filter(|r| r.outcome.evaluation().is_some()).count();
            summary.push_str(&format!("{}: {held}/{evaluated} grid points hold\n", claim.label()));
            claims::write_sweep_csv(claim, &rows, &mut buf)?;
        } else {
            let report = if let Some(g) = &graph {
                let name = args.graph.as_ref().unwrap().display().to_string();
                claims::verify_instances(claim, &[(name, g.clone())], &cfg)
            } else if let Mode::Extremal = args.mode {
                let (lo, hi) = default_extremal_range(args.claim);
                claims::verify_extremal(claim, (args.n_min.unwrap_or(lo), args.n_max.unwrap_or(hi)), args.m, &cfg)?
            } else {
                claims::verify_random(claim, args.samples, (args.n_min.unwrap_or(2), args.n_max.unwrap_or(12)), args.seed, &cfg)?
            };
            summary.push_str(&report.summary());
            report.write_csv(&mut buf)?;
        }
        // one header for all forms
        let text = if k == 0 { &buf[..] } else { &buf[buf.iter().position(|&b| b == b'\n').map_or(buf.len(), |p| p + 1)..] };
        csv_out.extend_from_slice(text);
    }
    print!("{summary}");
    if let Some(p) = &args.output {
        std::fs::write(p, csv_out)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Compute { graph, index, output } => {
            let kind = index.kind()?;
            let g = gio::parse_graph(&graph)?;
            let value = indices::evaluate(&g, kind);
            let mut w = csv::Writer::from_writer(sink(&output)?);
            w.write_record(["index", "rounded", "value"])?;
            w.write_record([kind.short_name(), format!("{:.4}", tables::round4(value)), value.to_string()])?;
            w.flush()?;
        }
        Command::Family { family, n, m, index, output } => {
            let kind = index.kind()?;
            let g = FamilySpec::uniform(family, n, m).build()?;
            let value = indices::evaluate(&g, kind);
            let cf = closed_form(kind, family, n, m)?;
            let mut w = csv::Writer::from_writer(sink(&output)?);
            w.write_record(["family", "n", "m_mu", "index", "value", "closed_form"])?;
            w.write_record([
                family.to_string(),
                n.to_string(),
                m.to_string(),
                kind.short_name(),
                value.to_string(),
                cf.map(|v| v.to_string()).unwrap_or_default(),
            ])?;
            w.flush()?;
        }
        Command::Table1 { output } => tables::emit_table1(sink(&output)?)?,
        Command::Table2 { output } => tables::emit_table2(sink(&output)?)?,
        Command::Figures { output } => tables::emit_figures(sink(&output)?)?,
        Command::Search { class, n, m, index, direction, seed, output } => {
            let mut task = SearchTask::new(class, n, m, index.kind()?, direction);
            task.optimizer.seed = seed;
            let result = search::extremal_search(&task)?;
            eprint!("{}", result.report());
            result.write_csv(sink(&output)?)?;
        }
        Command::Verify(args) => verify(&args)?,
    }
    Ok(())
}

fn is_validation(e: &Error) -> bool {
    !matches!(e, Error::Io(_) | Error::Infeasible(_))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Ok(v) = std::env::var("FUZZYTOPO_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(t) => exec::configure_threads(t),
            Err(_) => {
                eprintln!("error: FUZZYTOPO_THREADS must be a non-negative integer, got '{v}'");
                return ExitCode::from(1);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_validation(&e) { 1 } else { 2 })
        }
    }
}
