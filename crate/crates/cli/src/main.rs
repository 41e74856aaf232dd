//! `umbra`: verify operator identities and log-derivative expansions for
//! monic polynomial families.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use umbra_core::family::{FamilySpec, BUILTINS};
use umbra_core::json::{poly_to_json, rat_to_json, series_to_json, table_to_json};
use umbra_core::logderiv::{dual_fn_logderiv, required_dual_size, required_size, run_logderiv};
use umbra_core::opcalc::{
    compare_ops, run_catalog, Calculus, CatalogConfig, Check, Report, Status, CATALOG,
};
use umbra_core::{dsl, Error, MonicFamily, Rat};

const DEFAULT_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "umbra",
    version,
    about = "Exact operator calculus for monic polynomial families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check catalog identities or an operator equation
    Verify(VerifyArgs),
    /// Expand x p_n'/(n p_n) in powers of 1/x and compare with long division
    Logderiv(LogArgs),
    /// Print a presentation of the family
    Show(ShowArgs),
    /// Expand (y/n) f*_n'/f*_n for the dual family
    DualLogderiv(LogArgs),
}

#[derive(Args)]
struct Common {
    /// builtin:<name> | binomial:<series> | file:<path>
    #[arg(long)]
    family: String,
    /// Operator dimension
    #[arg(long = "N", env = "UMBRA_DEFAULT_N")]
    n_dim: Option<usize>,
    /// Series order
    #[arg(long = "Ny", default_value_t = 16)]
    ny: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Catalog identity; all of them when omitted
    #[arg(long, conflicts_with = "expr")]
    id: Option<String>,
    /// Operator equation "LHS == RHS"
    #[arg(long)]
    expr: Option<String>,
    #[arg(long, default_value_t = umbra_core::opcalc::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct LogArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "n")]
    index: usize,
    #[arg(long = "H")]
    terms: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Polys,
    Fns,
    Xi,
    Dual,
}

#[derive(Args)]
struct ShowArgs {
    #[command(flatten)]
    common: Common,
    #[arg(value_enum)]
    what: What,
}

/// Exit status 2 covers input that never reached a computation.
enum Failure {
    Usage(Error),
    Compute(Error),
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e)
}

fn compute(e: Error) -> Failure {
    Failure::Compute(e)
}

struct Setup {
    spec: FamilySpec,
    dim: usize,
}

impl Common {
    fn setup(&self) -> Result<Setup, Failure> {
        let spec = FamilySpec::parse(&self.family).map_err(usage)?;
        let dim = self.n_dim.or(spec.dim).unwrap_or(DEFAULT_N);
        Ok(Setup { spec, dim })
    }

    fn build(&self, s: &Setup, size: usize) -> Result<MonicFamily, Failure> {
        s.spec.build(size, s.dim).map_err(compute)
    }
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

fn rats_text(v: &[Rat]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn check_json(c: &Check) -> Value {
    match &c.status {
        Status::Pass => json!({"name": c.name, "window": c.window, "status": "pass"}),
        Status::EmptyWindow => {
            json!({"name": c.name, "window": c.window, "status": "empty-window"})
        }
        Status::Mismatch {
            column,
            row,
            lhs,
            rhs,
        } => json!({
            "name": c.name, "window": c.window, "status": "fail",
            "mismatch": {"column": column, "row": row, "lhs": lhs, "rhs": rhs},
        }),
    }
}

fn status_text(c: &Check) -> String {
    match &c.status {
        Status::Pass => "pass".into(),
        Status::EmptyWindow => "FAIL (empty window)".into(),
        Status::Mismatch {
            column,
            row,
            lhs,
            rhs,
        } => {
            format!("FAIL at column {column}, row {row}: {lhs} != {rhs}")
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let c = &args.common;
    let setup = c.setup()?;
    let size = setup.dim.max(c.ny);
    let equation = match &args.expr {
        None => None,
        Some(text) => {
            let (l, r) = text
                .split_once("==")
                .ok_or_else(|| usage(Error::Invalid("expected an equation LHS == RHS".into())))?;
            if r.contains("==") {
                return Err(usage(Error::Invalid("expected a single ==".into())));
            }
            Some((
                dsl::parse_op(l).map_err(usage)?,
                dsl::parse_op(r).map_err(usage)?,
            ))
        }
    };
    let ids: Vec<&str> = match &args.id {
        Some(id) if CATALOG.contains(&id.as_str()) => vec![id.as_str()],
        Some(id) => return Err(usage(Error::UnknownIdentity(id.clone()))),
        None => CATALOG.to_vec(),
    };
    let fam = c.build(&setup, size)?;

    let reports: Vec<Report> = match equation {
        Some((lhs, rhs)) => {
            let calc = Calculus::new(&fam);
            let (l, r) = (
                lhs.eval(&calc).map_err(compute)?,
                rhs.eval(&calc).map_err(compute)?,
            );
            vec![Report {
                identity: "expr".into(),
                family: fam.label().to_string(),
                dim: fam.dim(),
                seed: None,
                checks: vec![compare_ops(format!("{lhs} == {rhs}"), &l, &r)],
            }]
        }
        None => {
            let partners = if ids.contains(&"change-of-basis") {
                BUILTINS
                    .iter()
                    .filter(|&&b| b != fam.label())
                    .map(|b| MonicFamily::builtin(b, size, fam.dim()).map_err(compute))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                Vec::new()
            };
            let cfg = CatalogConfig {
                seed: args.seed,
                partners,
                ..Default::default()
            };
            run_catalog(&ids, &fam, &cfg).map_err(compute)?
        }
    };
    let passed = reports.iter().all(Report::passed);
    if c.json {
        let reps: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "identity": r.identity,
                    "family": r.family,
                    "N": r.dim,
                    "seed": r.seed,
                    "status": if r.passed() { "pass" } else { "fail" },
                    "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let out = json!({
            "family": fam.label(),
            "N": fam.dim(),
            "Ny": c.ny,
            "seed": args.seed,
            "status": if passed { "pass" } else { "fail" },
            "reports": reps,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!(
            "family {}  N = {}  Ny = {}  seed = {}",
            fam.label(),
            fam.dim(),
            c.ny,
            args.seed
        );
        for r in &reports {
            let head = if r.family == fam.label() {
                r.identity.clone()
            } else {
                format!("{} [{}]", r.identity, r.family)
            };
            for chk in &r.checks {
                println!(
                    "{head:<32} {:<44} window {:>3}  {}",
                    chk.name,
                    chk.window,
                    status_text(chk)
                );
            }
        }
        println!(
            "{}",
            if passed {
                "all identities hold"
            } else {
                "FAILED"
            }
        );
    }
    Ok(passed)
}

fn logderiv(args: &LogArgs) -> Result<bool, Failure> {
    let c = &args.common;
    let setup = c.setup()?;
    let (n, h) = (args.index, args.terms);
    if n == 0 {
        return Err(usage(Error::Invalid("--n must be at least 1".into())));
    }
    let fam = c.build(&setup, setup.dim.max(c.ny).max(required_size(n, h)))?;
    let res = run_logderiv(&fam, n, h).map_err(compute)?;
    if c.json {
        let out = json!({
            "family": fam.label(),
            "n": n,
            "H": h,
            "engine": rats(&res.engine),
            "oracle": rats(&res.oracle),
            "match": res.matches(),
            "xi_degrees": res.xi_degrees,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("family {}  n = {n}  H = {h}", fam.label());
        println!("engine  {}", rats_text(&res.engine));
        println!("oracle  {}", rats_text(&res.oracle));
        let degs: Vec<String> = res
            .xi_degrees
            .iter()
            .map(|d| d.map_or("-".into(), |d| d.to_string()))
            .collect();
        println!("deg xi  {}", degs.join(", "));
        println!("{}", if res.matches() { "match" } else { "MISMATCH" });
    }
    Ok(res.matches())
}

fn dual_logderiv(args: &LogArgs) -> Result<bool, Failure> {
    let c = &args.common;
    let setup = c.setup()?;
    let (n, h) = (args.index, args.terms);
    if n == 0 {
        return Err(usage(Error::Invalid("--n must be at least 1".into())));
    }
    let fam = c.build(&setup, setup.dim.max(c.ny).max(required_dual_size(n, h)))?;
    let res = dual_fn_logderiv(&fam, n, h).map_err(compute)?;
    let valuation_ok = res.engine.valuation_violation(n).is_none();
    let ok = res.matches() && valuation_ok;
    if c.json {
        let out = json!({
            "family": fam.label(),
            "n": n,
            "H": h,
            "engine": rats(&res.engine.coeffs),
            "direct": rats(&res.direct),
            "match": res.matches(),
            "valuation_ok": valuation_ok,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("family {}  n = {n}  H = {h}", fam.label());
        println!("engine  {}", rats_text(&res.engine.coeffs));
        println!("direct  {}", rats_text(&res.direct));
        println!("{}", if ok { "match" } else { "MISMATCH" });
    }
    Ok(ok)
}

fn show(args: &ShowArgs) -> Result<bool, Failure> {
    let c = &args.common;
    let setup = c.setup()?;
    let fam = c.build(&setup, setup.dim)?;
    let m = fam.max_index();
    let (name, data, lines): (&str, Value, Vec<String>) = match args.what {
        What::Polys => (
            "polys",
            Value::Array(fam.polys().iter().map(poly_to_json).collect()),
            fam.polys()
                .iter()
                .enumerate()
                .map(|(n, p)| format!("p_{n} = {p}"))
                .collect(),
        ),
        What::Fns => (
            "fns",
            Value::Array(fam.fns().iter().map(series_to_json).collect()),
            fam.fns()
                .iter()
                .enumerate()
                .map(|(n, f)| format!("f_{n} = {f}"))
                .collect(),
        ),
        What::Xi => (
            "xi",
            table_to_json(fam.xi_table()),
            fam.xi_table()
                .iter()
                .enumerate()
                .map(|(n, row)| format!("xi[{n}] = {}", rats_text(row)))
                .collect(),
        ),
        What::Dual => {
            let mut lines: Vec<String> = fam
                .dual_polys()
                .iter()
                .enumerate()
                .map(|(n, p)| format!("p*_{n} = {p}"))
                .collect();
            lines.extend(
                fam.xi_star_table()
                    .iter()
                    .enumerate()
                    .map(|(n, row)| format!("xi*[{n}] = {}", rats_text(row))),
            );
            (
                "dual",
                json!({
                    "polys": fam.dual_polys().iter().map(poly_to_json).collect::<Vec<_>>(),
                    "xi_star": table_to_json(fam.xi_star_table()),
                }),
                lines,
            )
        }
    };
    if c.json {
        let out = json!({"family": fam.label(), "N": m, "what": name, "data": data});
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!("family {}  N = {m}", fam.label());
        for l in lines {
            println!("{l}");
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Logderiv(a) => logderiv(a),
        Command::Show(a) => show(a),
        Command::DualLogderiv(a) => dual_logderiv(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("umbra: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("umbra: {e}");
            ExitCode::from(1)
        }
    }
}
