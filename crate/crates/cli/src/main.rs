//! `respom`: batch front end for the soft-CSP solvers and the law harness.
//!
//! Results go to standard output (or `--output`) as JSON. Failures print a
//! single-line JSON diagnostic on standard error and exit with 1 (a law or
//! reference check failed), 2 (invalid input) or 3 (resource limit).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use respom::algebra::{check_laws, Budget, DEFAULT_SEED};
use respom::csp::{parse_problem, Problem};
use respom::instances::algebra_from_json;
use respom::solve::{
    bucket_eliminate, compute_order, mini_bucket_eliminate, soft_dfbb, OrderPolicy, UbPolicy,
};
use respom::Error;
use serde_json::{json, Value as Json};

/// Pairs and triples drawn by a sampled law check.
const LAW_SAMPLES: usize = 500;

#[derive(Parser, Debug)]
#[command(name = "respom", version, about = "Soft constraint solving over residuated partially ordered monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a problem exactly with bucket elimination or branch-and-bound.
    Solve(SolveArgs),
    /// Bound the optimum with mini-bucket elimination.
    Bound(BoundArgs),
    /// Report the residuation distance between a bucket and its mini-buckets.
    Distance(DistanceArgs),
    /// Run the algebraic law suite against an algebra.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file.
    #[arg(long)]
    input: PathBuf,
    /// Algebra specification as inline JSON; overrides the problem file's.
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, value_enum, default_value_t = Order::NameLex)]
    order: Order,
    /// Recorded in the output for replay.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Algorithm::Be)]
    algorithm: Algorithm,
    /// Upper-bound policy for branch-and-bound.
    #[arg(long, value_enum, default_value_t = Ub::Trivial)]
    ub: Ub,
    /// Mini-bucket width; only with `--algorithm dfbb --ub mbe`.
    #[arg(long)]
    z: Option<usize>,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    z: usize,
    /// A result or value file whose bound must lie below the computed one.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    z: usize,
    /// The variable whose bucket is analysed.
    #[arg(long)]
    variable: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Algebra specification as inline JSON.
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    algebra: Option<String>,
    /// A problem file or a bare algebra specification file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Check every element instead of a seeded sample (finite carriers only).
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algorithm {
    Be,
    Dfbb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    NameLex,
    MinDegree,
}

impl From<Order> for OrderPolicy {
    fn from(o: Order) -> Self {
        match o {
            Order::NameLex => OrderPolicy::NameLex,
            Order::MinDegree => OrderPolicy::MinDegree,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ub {
    Trivial,
    Mbe,
}

/// A failed invocation: exit status plus a one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    details: Vec<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
            details: Vec::new(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "check-failed",
            message: message.into(),
            details: Vec::new(),
        }
    }

    fn to_json(&self) -> Json {
        let mut j = json!({"error": self.kind, "exit": self.code, "message": self.message});
        if !self.details.is_empty() {
            j["diagnostics"] = json!(self.details);
        }
        j
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Resource(_) => (3, "resource"),
            Error::Parse(_) => (2, "parse"),
            Error::Invalid(_) => (2, "invalid-problem"),
            Error::InfeasibleZ { .. } => (2, "infeasible-z"),
            Error::Unsupported(_) => (2, "unsupported"),
            _ => (2, "invalid-argument"),
        };
        let details = match &e {
            Error::Invalid(d) => d.clone(),
            _ => Vec::new(),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            details,
        }
    }
}

type Outcome = Result<(Json, Option<Failure>), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let message = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .collect::<Vec<_>>()
                .join(" ");
            return fail(Failure::usage(message.trim_start_matches("error: ")));
        }
    };
    let output = match &cli.command {
        Command::Solve(a) => a.common.output.clone(),
        Command::Bound(a) => a.common.output.clone(),
        Command::Distance(a) => a.common.output.clone(),
        Command::Check(a) => a.output.clone(),
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Check(a) => cmd_check(a),
    };
    match outcome {
        Ok((result, failure)) => {
            if let Err(f) = emit(&result, output.as_deref()) {
                return fail(f);
            }
            match failure {
                Some(f) => fail(f),
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("{}", f.to_json());
    ExitCode::from(f.code)
}

fn emit(result: &Json, path: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(result).expect("results serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: 3,
            kind: "io",
            message: format!("cannot write {}: {e}", p.display()),
            details: Vec::new(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        kind: "io",
        message: format!("cannot read {}: {e}", path.display()),
        details: Vec::new(),
    })
}

fn parse_json(text: &str, what: &str) -> Result<Json, Failure> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")).into())
}

fn load_problem(common: &Common) -> Result<Problem, Failure> {
    let text = read(&common.input)?;
    let text = match &common.algebra {
        Some(spec) => {
            let mut doc = parse_json(&text, "problem file")?;
            let obj = doc
                .as_object_mut()
                .ok_or_else(|| Failure::from(Error::Parse("problem file must be a JSON object".into())))?;
            obj.insert("algebra".into(), parse_json(spec, "--algebra")?);
            doc.to_string()
        }
        None => text,
    };
    Ok(parse_problem(&text)?)
}

fn cmd_solve(a: SolveArgs) -> Outcome {
    let ub = match (a.algorithm, a.ub, a.z) {
        (Algorithm::Dfbb, Ub::Mbe, Some(z)) => UbPolicy::Mbe(z),
        (Algorithm::Dfbb, Ub::Mbe, None) => return Err(Failure::usage("--ub mbe requires --z")),
        (_, _, Some(_)) => return Err(Failure::usage("--z is only accepted with --algorithm dfbb --ub mbe")),
        (_, Ub::Trivial, None) => UbPolicy::Trivial,
        (Algorithm::Be, Ub::Mbe, None) => return Err(Failure::usage("--ub applies to --algorithm dfbb only")),
    };
    let p = load_problem(&a.common)?;
    let order = compute_order(&p, a.common.order.into());
    let result = match a.algorithm {
        Algorithm::Be => {
            let e = bucket_eliminate(&p, &order)?;
            report::solve_be(&p, a.common.seed, &order, &e)
        }
        Algorithm::Dfbb => {
            let frontier = soft_dfbb(&p, &order, &[], ub)?;
            report::solve_dfbb(&p, a.common.seed, &order, ub, &frontier)
        }
    };
    Ok((result, None))
}

fn cmd_bound(a: BoundArgs) -> Outcome {
    let p = load_problem(&a.common)?;
    let order = compute_order(&p, a.common.order.into());
    let run = mini_bucket_eliminate(&p, &order, a.z)?;
    let mut result = report::bound(&p, a.common.seed, &order, a.z, &run);
    let mut failure = None;
    if let Some(path) = &a.reference {
        let doc = parse_json(&read(path)?, "reference")?;
        let literal = doc.get("bound").unwrap_or(&doc);
        let reference = p.alg().parse_value(literal)?;
        let dominated = respom::algebra::leq(p.alg(), &reference, &run.bound)?;
        result["reference"] = json!({"value": literal, "dominated": dominated});
        if !dominated {
            failure = Some(Failure::check(format!(
                "reference {} is not below the mini-bucket bound {}",
                literal,
                p.alg().value_to_json(&run.bound)
            )));
        }
    }
    Ok((result, failure))
}

fn cmd_distance(a: DistanceArgs) -> Outcome {
    let p = load_problem(&a.common)?;
    let v = p
        .var_index(&a.variable)
        .ok_or_else(|| Failure::from(Error::InvalidArgument(format!("unknown variable {:?}", a.variable))))?;
    let order = compute_order(&p, a.common.order.into());
    let run = mini_bucket_eliminate(&p, &order, a.z)?;
    let step = run.step(v).expect("every variable has a step");
    if step.bucket.constraints.is_empty() {
        return Err(Error::InvalidArgument(format!("the bucket of {} is empty", a.variable)).into());
    }
    Ok((report::distance(&p, a.common.seed, &order, a.z, &run, step)?, None))
}

fn cmd_check(a: CheckArgs) -> Outcome {
    let spec = match (&a.algebra, &a.input) {
        (Some(inline), _) => parse_json(inline, "--algebra")?,
        (None, Some(path)) => {
            let doc = parse_json(&read(path)?, "algebra file")?;
            doc.get("algebra").cloned().unwrap_or(doc)
        }
        (None, None) => unreachable!("clap requires one of --algebra and --input"),
    };
    let (_, alg) = algebra_from_json(&spec)?;
    let budget = if a.exhaustive {
        Budget::Exhaustive
    } else {
        Budget::Sampled {
            samples: LAW_SAMPLES,
            seed: a.seed,
        }
    };
    let report = check_laws(&*alg, budget)?;
    let failure = (!report.all_passed()).then(|| {
        let failed: Vec<&str> = report.failures().map(|l| l.law).collect();
        Failure::check(format!("laws failed: {}", failed.join(", ")))
    });
    let mut result = serde_json::to_value(&report).expect("reports serialize");
    result["seed"] = json!(a.seed);
    Ok((result, failure))
}
