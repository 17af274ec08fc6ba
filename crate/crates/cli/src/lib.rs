//! Argument handling and report rendering for the `fanoturan` binary. Kept
//! in a library so tests can drive [`run`] without spawning processes.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fanoturan::construct::{construct, Family};
use fanoturan::fano::{contains_clique, find_fano, DetectionMethod};
use fanoturan::multigraph::{
    extremal_4multigraph, f5_lower_constructions, max_edges_no_crossing_with, SearchOptions,
};
use fanoturan::search::{max_fano_free_edges, run_all, run_claim, Claim, Dedup, ExOptions, RunOptions};
use fanoturan::{io, Certificate, Error, Hypergraph, PMultigraph};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

/// Exit status plus everything the command wrote.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fanoturan", version, about = "Fano-plane Turán constructions, detectors and verifiers")]
struct Cli {
    /// Worker threads for the parallel engines.
    #[arg(long, global = true, env = "FANOTURAN_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named hypergraph.
    Construct {
        family: String,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test a hypergraph file (`-` for stdin) for a pattern.
    Check {
        file: String,
        #[arg(long, value_enum)]
        pattern: Pattern,
        /// Fano detector; only meaningful with `--pattern fano`.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Run one verification claim, or `all`.
    Verify(VerifyArgs),
    /// p-multigraph tools.
    #[command(subcommand)]
    Multigraph(MultigraphCommand),
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Exact ex(n, Fano) for 4 <= n <= 8.
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Skip complements that are not their own canonical form.
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    claim: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    long_run: bool,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum MultigraphCommand {
    /// Print a named p-multigraph as JSON.
    Construct { family: MultigraphFamily, n: usize },
    /// Look for three crossing pairs in a multigraph JSON file (`-` for stdin).
    Crossing { file: String },
    /// Exact f_p(n) by branch and bound.
    Max {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        long_run: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pattern {
    Fano,
    K4,
    K5,
    K6,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Embedding,
    Crossing,
    Pasch,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MultigraphFamily {
    /// The extremal 4-multigraph.
    Extremal4,
    /// Five copies of the K_4-free Turán graph.
    F5Turan,
    /// The extremal 4-multigraph with K(X,Y) as a fifth layer.
    F5Layered,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capability(_) | Error::BudgetExhausted { .. } => EXIT_CAPABILITY,
        Error::VerificationFailed(_) | Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS { Outcome::out(code, text) } else { Outcome::err(code, text) };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.map_or(0, usize::from)).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::err(EXIT_USAGE, format!("cannot start worker pool: {e}\n")),
    };
    pool.install(|| match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::err(exit_code(&e), format!("error: {e}\n")),
    })
}

fn dispatch(command: Command) -> fanoturan::Result<Outcome> {
    match command {
        Command::Construct { family, n, format } => {
            let h = construct(family.parse::<Family>()?, n)?;
            Ok(Outcome::out(EXIT_PASS, render_hypergraph(&h, format)))
        }
        Command::Check { file, pattern, method } => check(&file, pattern, method),
        Command::Search(SearchCommand::Ex { n, long_run, checkpoint, canonical, format }) => {
            let dedup = if canonical { Dedup::Canonical } else { Dedup::None };
            let r = max_fano_free_edges(n, &ExOptions { long_run, checkpoint, dedup })?;
            let mut s = String::new();
            match format {
                Format::Text => {
                    writeln!(s, "ex({n}, fano) = {}", r.max_edges).unwrap();
                    writeln!(s, "extremal classes: {}", r.classes.len()).unwrap();
                    writeln!(s, "extremal labelings: {}", r.extremal_complements.len()).unwrap();
                    writeln!(s, "states visited: {}", r.visited()).unwrap();
                    for c in &r.classes {
                        s.push('\n');
                        s.push_str(&io::to_text(&c.to_hypergraph()));
                    }
                }
                Format::Json => {
                    let classes: Vec<io::HypergraphJson> =
                        r.classes.iter().map(|c| (&c.to_hypergraph()).into()).collect();
                    let doc = serde_json::json!({
                        "n": n,
                        "max_edges": r.max_edges,
                        "extremal_labelings": r.extremal_complements.len(),
                        "visited": r.visited(),
                        "classes": classes,
                    });
                    writeln!(s, "{doc}").unwrap();
                }
            }
            Ok(Outcome::out(EXIT_PASS, s))
        }
        Command::Verify(args) => verify(args),
        Command::Multigraph(cmd) => multigraph(cmd),
    }
}

fn read_input(file: &str) -> fanoturan::Result<String> {
    if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn render_hypergraph(h: &Hypergraph, format: Format) -> String {
    match format {
        Format::Text => io::to_text(h),
        Format::Json => io::to_json(h) + "\n",
    }
}

fn check(file: &str, pattern: Pattern, method: Option<Method>) -> fanoturan::Result<Outcome> {
    let k = match pattern {
        Pattern::Fano => None,
        Pattern::K4 => Some(4),
        Pattern::K5 => Some(5),
        Pattern::K6 => Some(6),
    };
    if k.is_some() && method.is_some() {
        return Ok(Outcome::err(EXIT_USAGE, "error: --method applies only to --pattern fano\n".into()));
    }
    let h = io::parse_hypergraph(&read_input(file)?)?;
    if let Some(k) = k {
        let found = contains_clique(&h, k);
        let line = format!("k{k}: {}\n", if found { "present" } else { "absent" });
        return Ok(Outcome::out(if found { EXIT_PASS } else { EXIT_FAIL }, line));
    }
    let methods: Vec<DetectionMethod> = match method.unwrap_or(Method::Embedding) {
        Method::Embedding => vec![DetectionMethod::Embedding],
        Method::Crossing => vec![DetectionMethod::CrossingPairs],
        Method::Pasch => vec![DetectionMethod::PaschMatching],
        Method::All => DetectionMethod::ALL.to_vec(),
    };
    let mut s = String::new();
    let mut verdicts = Vec::new();
    for m in methods {
        let hit = find_fano(&h, m);
        match &hit {
            Some(e) => writeln!(s, "fano ({m}): present at {:?}", e.0).unwrap(),
            None => writeln!(s, "fano ({m}): absent").unwrap(),
        }
        verdicts.push(hit.is_some());
    }
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(Error::Internal(format!("fano detectors disagree:\n{s}")));
    }
    Ok(Outcome::out(if verdicts[0] { EXIT_PASS } else { EXIT_FAIL }, s))
}

fn verify(args: VerifyArgs) -> fanoturan::Result<Outcome> {
    let opts = RunOptions { seed: args.seed, long_run: args.long_run, checkpoint: args.checkpoint };
    let certs = if args.claim == "all" {
        run_all(&opts)?
    } else {
        vec![run_claim(args.claim.parse::<Claim>()?, &opts)?]
    };
    let code = if certs.iter().all(Certificate::is_pass) { EXIT_PASS } else { EXIT_FAIL };
    Ok(Outcome::out(code, emit_report(&certs, args.format)))
}

/// Renders certificates: one line per claim plus a summary in text mode, the
/// certificate array in JSON mode.
pub fn emit_report(certs: &[Certificate], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(certs).expect("plain data serializes") + "\n",
        Format::Text if certs.is_empty() => "no claims run\n".to_string(),
        Format::Text => {
            let width = certs.iter().map(|c| c.claim.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in certs {
                let verdict = if c.is_pass() { "pass" } else { "fail" };
                writeln!(
                    s,
                    "{verdict}  {:width$}  visited {}/{}  {} ms",
                    c.claim, c.visited, c.space, c.elapsed_ms
                )
                .unwrap();
            }
            let failed = certs.iter().filter(|c| !c.is_pass()).count();
            writeln!(s, "{} claims, {} passed, {failed} failed", certs.len(), certs.len() - failed).unwrap();
            s
        }
    }
}

fn multigraph(cmd: MultigraphCommand) -> fanoturan::Result<Outcome> {
    match cmd {
        MultigraphCommand::Construct { family, n } => {
            let g = match family {
                MultigraphFamily::Extremal4 => extremal_4multigraph(n)?,
                MultigraphFamily::F5Turan => f5_lower_constructions(n)?.0,
                MultigraphFamily::F5Layered => f5_lower_constructions(n)?.1,
            };
            Ok(Outcome::out(EXIT_PASS, g.to_json() + "\n"))
        }
        MultigraphCommand::Crossing { file } => {
            let g = PMultigraph::from_json(&read_input(&file)?)?;
            Ok(match g.has_three_crossing_pairs() {
                Some(w) => Outcome::out(
                    EXIT_PASS,
                    format!(
                        "crossing: layers {} {} {} on {{{}, {}, {}, {}}}\n",
                        w.i, w.j, w.k, w.w, w.x, w.y, w.z
                    ),
                ),
                None => Outcome::out(EXIT_FAIL, "crossing: none\n".into()),
            })
        }
        MultigraphCommand::Max { p, n, budget, long_run } => {
            let mut opts = SearchOptions { long_run, ..Default::default() };
            if let Some(b) = budget {
                opts.budget = b;
            }
            let out = max_edges_no_crossing_with(p, n, &opts)?;
            let s = format!(
                "f{p}({n}) = {}\nnodes: {}\n{}\n",
                out.max_edges,
                out.nodes,
                out.witness.to_json()
            );
            Ok(Outcome::out(EXIT_PASS, s))
        }
    }
}
