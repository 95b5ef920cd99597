use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use kzlab::algebra::DiagramSum;
use kzlab::diagrams::{enumerate_by_degree, enumerate_by_matrix};
use kzlab::invariants::{all_matrices, degree_sum_report, theorem_report, CrossingChange, VerificationReport};
use kzlab::qtangle::{corpus, integrate, linking_matrix, validate, LinkPresentation, QTangleWord};
use kzlab::rational::format as rfmt;
use kzlab::{ChordDiagram, Error, TypeMatrix};

#[derive(Parser)]
#[command(name = "kzlab", version, about = "Exact truncated Kontsevich integral of q-tangle words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word and print its diagram series degree by degree.
    Compute(ComputeArgs),
    /// Check identities between linking numbers and coefficient sums.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// List chord diagrams of a given degree or type matrix.
    Enumerate(EnumerateArgs),
    /// Check a word and print the boundary after every slice.
    Trace(TraceArgs),
    /// Run the acceptance checks.
    Selftest(SelftestArgs),
    /// List the shipped corpus words.
    Corpus,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Path to a .qtw file (a bare corpus file name also works).
    #[arg(long)]
    word: Option<PathBuf>,
    /// Name of a shipped corpus word.
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Component renumbering, 1-based: `2,1` swaps the first two.
    #[arg(long)]
    relabel: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    /// Truncation degree.
    #[arg(long, default_value_t = 3)]
    degree: usize,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Linking-number products against type sums.
    Theorem(TheoremArgs),
    /// Sum of all degree-k coefficients.
    DegreeSum(DegreeSumArgs),
    /// Crossing-change identities at one crossing.
    Recursion(RecursionArgs),
}

#[derive(Args)]
struct TheoremArgs {
    #[command(flatten)]
    common: Common,
    /// Type matrix as JSON, e.g. `[[0,2],[2,0]]`.
    #[arg(long = "S", conflicts_with = "all_s")]
    s: Option<String>,
    /// Every type matrix up to --max-degree.
    #[arg(long = "all-S")]
    all_s: bool,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Truncation degree (defaults to the largest degree needed).
    #[arg(long)]
    degree: Option<usize>,
    /// Include wall times in the reports.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct DegreeSumArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct RecursionArgs {
    #[command(flatten)]
    common: Common,
    /// 1-based index of the crossing slice.
    #[arg(long)]
    crossing: usize,
    #[arg(long = "S")]
    s: String,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    circles: usize,
    #[arg(long, conflicts_with = "s", required_unless_present = "s")]
    k: Option<usize>,
    #[arg(long = "S")]
    s: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    source: Source,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only these sections (repeatable).
    #[arg(long)]
    section: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Include timings in JSON output.
    #[arg(long)]
    timing: bool,
}

/// Everything that ends the run early, with its exit code.
enum Failure {
    Engine(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Engine(Error::Parse { .. }) | Failure::Usage(_) => 2,
            Failure::Engine(Error::Validate { .. }) => 3,
            Failure::Engine(Error::UnsupportedTruncation { .. } | Error::InsufficientTruncation { .. }) => 4,
            Failure::Engine(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Engine(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

type Run = Result<bool, Failure>;

/// Collected standard output; written in one go so a closed pipe ends the
/// run quietly.
#[derive(Default)]
struct Out(String);

macro_rules! say {
    ($out:expr) => { $out.0.push('\n') };
    ($out:expr, $($arg:tt)*) => {{ let _ = writeln!($out.0, $($arg)*); }};
}

fn load(source: &Source) -> Result<(String, String), Failure> {
    if let Some(name) = &source.corpus {
        return Ok((name.clone(), corpus::source(name)?));
    }
    let path = source.word.as_ref().expect("clap enforces one source");
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    match std::fs::read_to_string(path) {
        Ok(text) => Ok((stem, text)),
        Err(e) if path.components().count() == 1 => {
            corpus::source(&stem).map(|t| (stem, t)).map_err(|_| Failure::Usage(format!("{}: {e}", path.display())))
        }
        Err(e) => Err(Failure::Usage(format!("{}: {e}", path.display()))),
    }
}

fn link_from(common: &Common) -> Result<LinkPresentation, Failure> {
    let (name, text) = load(&common.source)?;
    let link = LinkPresentation::parse(name, &text)?;
    match &common.relabel {
        None => Ok(link),
        Some(p) => {
            let perm = p
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|x| x.trim().parse::<usize>().ok().and_then(|v| v.checked_sub(1)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Failure::Usage(format!("bad permutation `{p}`")))?;
            Ok(link.with_relabel(perm)?)
        }
    }
}

fn parse_matrix(text: &str) -> Result<TypeMatrix, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad type matrix `{text}`: {e}")))
}

fn render_diagram(d: &ChordDiagram) -> String {
    d.circles()
        .iter()
        .map(|c| if c.is_empty() { "-".to_string() } else { c.iter().map(u16::to_string).collect::<Vec<_>>().join(" ") })
        .collect::<Vec<_>>()
        .join(" | ")
}

fn matrix_json(rows: &[Vec<kzlab::Rational>]) -> Value {
    json!(rows.iter().map(|r| r.iter().map(rfmt).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn series_json(z: &DiagramSum) -> Value {
    let degrees: Vec<Value> = (0..=z.truncation())
        .map(|k| {
            let terms: Vec<Value> = z
                .terms()
                .iter()
                .filter(|(d, _)| d.degree() == k)
                .map(|(d, c)| json!({"diagram": d.to_json(), "coeff": rfmt(c)}))
                .collect();
            json!({"k": k, "sum": rfmt(&z.coefficient_sum(k)), "terms": terms})
        })
        .collect();
    json!(degrees)
}

fn compute(args: &ComputeArgs, out: &mut Out) -> Run {
    let link = link_from(&args.common)?;
    let z = integrate(&link, args.degree)?;
    let lk = linking_matrix(&link)?;
    match args.common.format {
        Format::Json => {
            let doc = json!({
                "word": link.name,
                "N": args.degree,
                "circles": z.circles(),
                "linking": matrix_json(&lk),
                "degrees": series_json(&z),
            });
            say!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            say!(out, "{}: {} component(s), N = {}", link.name, z.circles(), args.degree);
            for k in 0..=args.degree {
                say!(out, "degree {k} (sum {}):", rfmt(&z.coefficient_sum(k)));
                for (d, c) in z.terms().iter().filter(|(d, _)| d.degree() == k) {
                    say!(out, "  {:>12}  {}", rfmt(c), render_diagram(d));
                }
            }
        }
    }
    Ok(true)
}

fn emit(reports: Vec<VerificationReport>, format: Format, timing: bool, out: &mut Out) -> bool {
    let pass = reports.iter().all(|r| r.pass);
    match format {
        Format::Json => {
            let rows: Vec<VerificationReport> = reports
                .into_iter()
                .map(|mut r| {
                    if !timing {
                        r.ms = None;
                    }
                    r
                })
                .collect();
            say!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
        }
        Format::Text => {
            for r in &reports {
                match (timing, r.ms) {
                    (true, Some(ms)) => say!(out, "{} [{ms} ms]", r.line()),
                    _ => say!(out, "{}", r.line()),
                }
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            say!(out, "{} checks, {failed} failed", reports.len());
        }
    }
    pass
}

fn verify(cmd: &VerifyCommand, out: &mut Out) -> Run {
    match cmd {
        VerifyCommand::Theorem(a) => {
            let link = link_from(&a.common)?;
            let matrices = match (&a.s, a.all_s) {
                (Some(s), _) => vec![parse_matrix(s)?],
                (None, true) => all_matrices(link.component_count(), a.max_degree),
                (None, false) => return Err(Failure::Usage("give --S or --all-S".into())),
            };
            let needed = matrices.iter().map(TypeMatrix::degree).max().unwrap_or(0);
            let n = a.degree.unwrap_or(needed);
            let start = Instant::now();
            let z = integrate(&link, n)?;
            let lk = linking_matrix(&link)?;
            let reports = matrices
                .par_iter()
                .map(|s| theorem_report(&link, &z, &lk, s).map(|r| r.timed(start)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(emit(reports, a.common.format, a.timing, out))
        }
        VerifyCommand::DegreeSum(a) => {
            let link = link_from(&a.common)?;
            let start = Instant::now();
            let z = integrate(&link, a.degree.unwrap_or(a.k))?;
            let lk = linking_matrix(&link)?;
            let r = degree_sum_report(&link, &z, &lk, a.k)?.timed(start);
            Ok(emit(vec![r], a.common.format, a.timing, out))
        }
        VerifyCommand::Recursion(a) => {
            let link = link_from(&a.common)?;
            let s = parse_matrix(&a.s)?;
            let slice = a
                .crossing
                .checked_sub(1)
                .ok_or_else(|| Failure::Usage("crossing indices start at 1".into()))?;
            let start = Instant::now();
            let reports = CrossingChange::new(&link, slice, a.degree)?
                .reports(&s)?
                .into_iter()
                .map(|r| r.timed(start))
                .collect();
            Ok(emit(reports, a.common.format, a.timing, out))
        }
    }
}

fn enumerate(a: &EnumerateArgs, out: &mut Out) -> Run {
    let list: Vec<ChordDiagram> = match (&a.s, a.k) {
        (Some(s), _) => enumerate_by_matrix(a.circles, &parse_matrix(s)?)?.to_vec(),
        (None, Some(k)) => enumerate_by_degree(a.circles, k),
        (None, None) => return Err(Failure::Usage("give --k or --S".into())),
    };
    match a.format {
        Format::Json => {
            let diagrams: Vec<Value> = list.iter().map(|d| json!(d.to_json())).collect();
            let doc = json!({"circles": a.circles, "count": list.len(), "diagrams": diagrams});
            say!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            for d in &list {
                say!(out, "{}  S={}", render_diagram(d), d.type_matrix());
            }
            say!(out, "count: {}", list.len());
        }
    }
    Ok(true)
}

fn trace(a: &TraceArgs, out: &mut Out) -> Run {
    let (_, text) = load(&a.source)?;
    let word = QTangleWord::parse(&text)?;
    let (levels, _) = validate(&word)?;
    say!(out, "  {}", levels[0]);
    for (s, l) in word.slices.iter().zip(&levels[1..]) {
        say!(out, "{s:<10} {l}");
    }
    Ok(true)
}

fn selftest(a: &SelftestArgs, out: &mut Out) -> Run {
    let known = kzlab::suite::sections();
    if let Some(bad) = a.section.iter().find(|s| !known.contains(&s.as_str())) {
        return Err(Failure::Usage(format!("unknown section `{bad}`; known: {}", known.join(", "))));
    }
    let mut results = kzlab::suite::run(&a.section);
    let passed = results.iter().filter(|r| r.pass).count();
    let total = results.len();
    if a.json {
        if !a.timing {
            results.iter_mut().for_each(|r| r.ms = None);
        }
        let doc = json!({"passed": passed, "total": total, "results": results});
        say!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for r in &results {
            say!(out, "{} [{} ms]", r.line(), r.ms.unwrap_or(0));
        }
        say!(out, "{passed}/{total} passed");
    }
    Ok(passed == total)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::default();
    let run = match &cli.command {
        Command::Compute(a) => compute(a, &mut out),
        Command::Verify(v) => verify(v, &mut out),
        Command::Enumerate(a) => enumerate(a, &mut out),
        Command::Trace(a) => trace(a, &mut out),
        Command::Selftest(a) => selftest(a, &mut out),
        Command::Corpus => {
            for name in corpus::names() {
                say!(out, "{name}");
            }
            Ok(true)
        }
    };
    let _ = std::io::stdout().lock().write_all(out.0.as_bytes());
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("kzlab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
