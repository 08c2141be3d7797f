//! `tsym`: run verification suites and check individual symbols.
//!
//! Exit status is 0 when everything checked passes, 1 when a check fails
//! and 2 for bad arguments or unreadable input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use toeplitz_sym::io::{family_from_json, symbol_from_json};
use toeplitz_sym::sampling::{analytic_polynomial, unimodular};
use toeplitz_sym::suites::{registry, run_suite, Comparison, SuiteConfig};
use toeplitz_sym::symbol::LaurentSymbol;
use toeplitz_sym::symmetry::{clambda_symmetry_test, symbol_symmetry_residual};
use toeplitz_sym::winding::{nowhere_winding_check, winding_number, CurveSamples, DEFAULT_CURVE_GRID, DEFAULT_SWEEP};
use toeplitz_sym::{Error, C64};

#[derive(Parser)]
#[command(name = "tsym", version, about = "Complex symmetry checks for Toeplitz operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered verification suite.
    Verify(VerifyArgs),
    /// List registered suites with their defaults.
    Suites,
    /// Decide C_lambda-symmetry of a symbol, or test it against a given conjugation.
    CheckSym(CheckSymArgs),
    /// Winding number of a symbol curve at a point, or a sweep for nonzero indices.
    Winding(WindingArgs),
    #[command(hide = true)]
    Explore(ExploreArgs),
}

#[derive(Args)]
struct VerifyArgs {
    suite_id: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    /// Write the full report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    /// Per-check threshold overrides, `name=value`.
    #[arg(long = "tol", value_parser = parse_override)]
    tolerances: Vec<(String, f64)>,
}

#[derive(Args)]
struct CheckSymArgs {
    #[arg(long)]
    symbol: PathBuf,
    #[arg(long)]
    family: Option<PathBuf>,
    /// Section size for the matrix residual.
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct WindingArgs {
    #[arg(long)]
    symbol: PathBuf,
    #[arg(long, value_parser = parse_point, conflicts_with = "sweep", required_unless_present = "sweep")]
    point: Option<C64>,
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = DEFAULT_CURVE_GRID)]
    grid: usize,
    /// Lattice size per side for `--sweep`.
    #[arg(long, default_value_t = DEFAULT_SWEEP)]
    lattice: usize,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    degree: usize,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_) | Error::ConfigInvalid(_) | Error::InvalidArgument(_) => Self::Config(e.to_string()),
            other => Self::Runtime(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn parse_point(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or("expected `re,im`")?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t}: {e}"));
    Ok(C64::new(f(re)?, f(im)?))
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected `name=value`")?;
    Ok((k.to_string(), v.parse().map_err(|e| format!("{v}: {e}"))?))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn read_symbol(path: &Path) -> Result<LaurentSymbol, Failure> {
    symbol_from_json(&read(path)?).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn verify(args: VerifyArgs) -> Outcome {
    let mut cfg = SuiteConfig::new(&args.suite_id)?.with_seed(args.seed);
    if let Some(k) = args.cases {
        cfg = cfg.with_cases(k);
    }
    if let Some(n) = args.n {
        cfg = cfg.with_n(n);
    }
    if let Some(g) = args.grid {
        cfg.grid = g;
    }
    cfg.tol_scale = args.tol_scale;
    cfg.tolerances.extend(args.tolerances);
    let report = run_suite(&cfg)?;
    if let Some(path) = &args.json {
        fs::write(path, report.to_json()).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    }
    println!(
        "{} seed={} n={} grid={} cases={}",
        report.suite_id, cfg.seed, cfg.n, cfg.grid, cfg.case_count
    );
    for (name, (cmp, worst, count)) in report.check_summary() {
        let shown = match cmp {
            Comparison::Below => format!("max {worst:.3e}"),
            Comparison::Above => format!("min {worst:.3e}"),
            Comparison::Equal => format!("{worst} mismatches"),
        };
        println!("  {name:<32} {shown:>18}  over {count}");
    }
    for c in report.cases.iter().filter(|c| !c.passed) {
        let why = c.error.clone().unwrap_or_else(|| {
            let names: Vec<_> = c.checks.iter().filter(|k| !k.passed).map(|k| k.name.as_str()).collect();
            names.join(", ")
        });
        println!("  FAIL case {} ({}): {why}", c.index, c.label);
    }
    println!(
        "{}: {} passed, {} failed in {} ms",
        if report.all_passed() { "PASS" } else { "FAIL" },
        report.passed,
        report.failed,
        report.wall_time_ms
    );
    Ok(report.all_passed())
}

fn check_sym(args: CheckSymArgs) -> Outcome {
    let phi = read_symbol(&args.symbol)?;
    let Some(family) = &args.family else {
        let verdict = clambda_symmetry_test(&phi);
        print_json(&json!({ "family": "c_lambda", "verdict": verdict }));
        return Ok(verdict.is_symmetric());
    };
    let spec = family_from_json(&read(family)?)?;
    if args.n <= phi.bandwidth() {
        return Err(Failure::Config(format!("--n must exceed the symbol bandwidth {}", phi.bandwidth())));
    }
    let c = spec.build(args.n)?;
    let residual = symbol_symmetry_residual(&c, &phi)?;
    let symmetric = residual < args.tol;
    print_json(&json!({
        "family": spec,
        "n": args.n,
        "unitarity_residual": c.unitarity_residual(),
        "symmetry_residual": c.symmetry_residual(),
        "matrix_residual": residual,
        "tol": args.tol,
        "symmetric": symmetric,
    }));
    Ok(symmetric)
}

fn winding(args: WindingArgs) -> Outcome {
    let phi = read_symbol(&args.symbol)?;
    let curve = CurveSamples::from_symbol(&phi, args.grid)?;
    if let Some(s) = args.point {
        let index = winding_number(&curve, s)?;
        print_json(&json!({ "point": s, "grid": args.grid, "index": index }));
        return Ok(true);
    }
    let report = nowhere_winding_check(&curve, args.lattice);
    print_json(&json!({ "grid": args.grid, "lattice": args.lattice, "report": report }));
    Ok(report.nowhere_winding)
}

/// Random `f + conj(g)` with analytic `f, g`: prints every sample whose curve
/// winds nowhere although no `C_lambda` makes it symmetric.
fn explore(args: ExploreArgs) -> Outcome {
    if args.degree == 0 {
        return Err(Failure::Config("--degree must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut flagged = 0;
    for k in 0..args.samples {
        let df = rng.random_range(1..=args.degree);
        let dg = rng.random_range(1..=args.degree);
        let f = analytic_polynomial(&mut rng, df);
        let mut g = analytic_polynomial(&mut rng, dg);
        // bias towards matching moduli, where symmetric and near-symmetric symbols live
        if rng.random::<bool>() {
            g = LaurentSymbol::from_pairs(f.iter().map(|(n, a)| (n, a.conj() * unimodular(&mut rng))));
        }
        let phi = &f + &g.conj_reflect();
        let verdict = clambda_symmetry_test(&phi);
        let curve = CurveSamples::from_symbol(&phi, DEFAULT_CURVE_GRID)?;
        let sweep = nowhere_winding_check(&curve, DEFAULT_SWEEP);
        if sweep.nowhere_winding && !verdict.is_symmetric() {
            flagged += 1;
            let coeffs: Vec<_> = phi.iter().map(|(n, c)| (n, c.re, c.im)).collect();
            println!("{}", json!({ "sample": k, "coeffs": coeffs, "verdict": verdict.status, "tested": sweep.tested }));
        }
    }
    eprintln!("{flagged} of {} samples flagged", args.samples);
    Ok(true)
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().command {
        Command::Verify(a) => verify(a),
        Command::Suites => {
            for s in registry() {
                println!(
                    "{:<28} n={:<4} grid={:<5} cases={:<4} {}",
                    s.id, s.default_n, s.default_grid, s.default_cases, s.summary
                );
            }
            Ok(true)
        }
        Command::CheckSym(a) => check_sym(a),
        Command::Winding(a) => winding(a),
        Command::Explore(a) => explore(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
