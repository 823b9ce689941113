use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tamaripop::bracket::enumerate_vectors_with;
use tamaripop::pop::{delta_set, pop_image_with, pop_polynomial_with, trajectory};
use tamaripop::series::{a055151, h_series, motzkin};
use tamaripop::verify::{self, VerifyParams};
use tamaripop::{BracketVector, Error, Limits, NuContext, Permutation, SortabilityCensus};

#[derive(Parser)]
#[command(name = "tamaripop", version, about = "Pop-stack sorting on Tamari lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List Tam(ν) as JSON lines of paths and bracket vectors.
    Enum(EnumArgs),
    /// Pop trajectory of a bracket vector or a 312-avoiding permutation.
    Pop(PopArgs),
    /// Number of t-Pop-sortable elements of Tam_n.
    Sortable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        force: bool,
    },
    /// Coefficients 1..=terms of the generating function of t-sortable paths.
    Series {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        terms: usize,
    },
    /// Size of the Pop image of Tam_n.
    Image {
        #[arg(long)]
        n: usize,
        /// Include the up-cover histogram and the closed formula.
        #[arg(long)]
        qpoly: bool,
        #[arg(long)]
        force: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print per-check wall time to stderr.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "reference")]
struct EnumRef {
    /// Use ν = (NE)^n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    nu: Option<String>,
}

#[derive(Args)]
struct EnumArgs {
    #[command(flatten)]
    reference: EnumRef,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "input")]
struct PopInput {
    /// Comma-separated bracket vector.
    #[arg(long)]
    vector: Option<String>,
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args)]
struct PopArgs {
    #[command(flatten)]
    input: PopInput,
    /// Reference path for --vector; defaults to E(NE)^(n-1) for a vector of length 2n.
    #[arg(long, requires = "vector")]
    nu: Option<String>,
    /// Add per-step detail: Δ sets for vectors, the pop-stack intermediate for permutations.
    #[arg(long)]
    trace: bool,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn limits(force: bool) -> Limits {
    Limits::from_env().forced(force)
}

fn emit(value: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Enum(args) => cmd_enum(args),
        Command::Pop(args) => cmd_pop(args),
        Command::Sortable { n, t, force } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let census = SortabilityCensus::compute_with(n, &limits(force))?;
            emit(&json!({
                "n": n,
                "t": t,
                "count": census.count_sortable(t),
                "total": census.total(),
            }))
        }
        Command::Series { t, terms } => {
            if t == 0 {
                return Err(Failure::Usage("t must be at least 1".into()));
            }
            let h = h_series(t, terms);
            let coeffs: Vec<String> = (1..=terms).map(|k| h.coeff(k).to_string()).collect();
            emit(&json!(coeffs))
        }
        Command::Image { n, qpoly, force } => cmd_image(n, qpoly, force),
        Command::Verify {
            suite,
            max_n,
            max_t,
            seed,
            timings,
            force,
        } => cmd_verify(&suite, max_n, max_t, seed, timings, force),
    }
}

fn cmd_enum(args: EnumArgs) -> Result<(), Failure> {
    let limits = limits(args.force);
    let ctx = match (args.reference.n, args.reference.nu) {
        (Some(n), _) => NuContext::dyck(n)?,
        (None, Some(nu)) => NuContext::parse(&nu)?,
        (None, None) => unreachable!("clap requires one of --n and --nu"),
    };
    let ctx = Arc::new(ctx);
    let vectors = enumerate_vectors_with(&ctx, &limits)?;
    let mut out = BufWriter::new(io::stdout().lock());
    for v in vectors {
        let line = json!({ "path": v.to_path().to_string(), "vector": v.entries() });
        serde_json::to_writer(&mut out, &line).map_err(|e| Failure::Usage(e.to_string()))?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn parse_vector(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid vector entry {s:?}")))
        })
        .collect()
}

fn cmd_pop(args: PopArgs) -> Result<(), Failure> {
    if let Some(text) = args.input.perm {
        let p = Permutation::parse(&text)?;
        let mut states = vec![p];
        let mut steps = Vec::new();
        while !states.last().expect("nonempty").is_identity() {
            let cur = states.last().expect("nonempty");
            let next = cur.pop_tamari()?;
            steps.push(json!({ "pop_stack": cur.pop_stack(), "pi_down": next }));
            states.push(next);
        }
        let time = states.len() - 1;
        let mut obj = json!({ "trajectory": states, "sortability_time": time });
        if args.trace {
            obj["steps"] = json!(steps);
        }
        return emit(&obj);
    }
    let entries = parse_vector(args.input.vector.as_deref().expect("clap requires an input"))?;
    let ctx = match args.nu {
        Some(nu) => NuContext::parse(&nu)?,
        None if entries.len() % 2 == 0 && !entries.is_empty() => NuContext::east_dyck(entries.len() / 2)?,
        None => return Err(Failure::Usage("vector of odd length needs --nu".into())),
    };
    let v = BracketVector::new(Arc::new(ctx), entries)?;
    let traj = trajectory(&v)?;
    let rows: Vec<&[usize]> = traj.states.iter().map(|s| s.entries()).collect();
    let mut obj = json!({
        "nu": v.ctx().nu().to_string(),
        "trajectory": rows,
        "sortability_time": traj.sortability_time,
    });
    if args.trace {
        let steps: Vec<Value> = traj
            .states
            .iter()
            .map(|s| json!({ "path": s.to_path().to_string(), "delta": delta_set(s) }))
            .collect();
        obj["steps"] = json!(steps);
    }
    emit(&obj)
}

/// JSON number when exactly representable as a double, decimal string otherwise.
fn big(x: num_bigint::BigUint) -> Value {
    match u64::try_from(&x) {
        Ok(v) if v < 1 << 53 => json!(v),
        _ => json!(x.to_string()),
    }
}

fn cmd_image(n: usize, qpoly: bool, force: bool) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let limits = limits(force);
    let size = pop_image_with(n, &limits)?.len();
    let mut obj = json!({ "n": n, "size": size, "motzkin": big(motzkin(n - 1)) });
    if qpoly {
        let poly = pop_polynomial_with(n, &limits)?;
        let hist: BTreeMap<String, u64> = poly.coeffs.iter().map(|(e, c)| (e.to_string(), *c)).collect();
        let m = (n - 1) as u64;
        let formula: BTreeMap<String, String> = (0..=m / 2)
            .map(|k| ((m - k).to_string(), a055151(m, k).to_string()))
            .collect();
        obj["qpoly"] = json!(hist);
        obj["formula"] = json!(formula);
    }
    emit(&obj)
}

fn cmd_verify(
    suite: &str,
    max_n: Option<usize>,
    max_t: Option<usize>,
    seed: u64,
    timings: bool,
    force: bool,
) -> Result<(), Failure> {
    let suites = verify::parse_suites(suite)?;
    let params = VerifyParams {
        max_n,
        max_t,
        seed,
        limits: limits(force),
    };
    let reports: Vec<_> = suites.into_iter().map(|s| verify::run(s, &params)).collect();
    if timings {
        for check in reports.iter().flat_map(|r| &r.checks) {
            eprintln!("{:>10.3}s  {}", check.elapsed.as_secs_f64(), check.name);
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    emit(&json!({ "passed": passed, "reports": reports }))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
