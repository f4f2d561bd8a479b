//! Command-line interface: evaluate Legendre/Ferrers functions, verify
//! the transformation catalogue, dump the curve registry, compute
//! Laplace coefficients, and run the self-test suite.

use clap::{Args, Parser, Subcommand, ValueEnum};
use legell::curves::CurveId;
use legell::error::Error;
use legell::index::{index_from_rational, FunctionKind};
use legell::transform;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "legell", version, about = "Legendre/Ferrers functions of fractional degree via complete elliptic integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function value.
    Eval(EvalArgs),
    /// Sweep transformation identities over p-grids and report residuals.
    Verify(VerifyArgs),
    /// Dump the algebraic curve registry as JSON.
    Table(TableArgs),
    /// Laplace coefficient b_s^(m)(alpha).
    Laplace(LaplaceArgs),
    /// Run the full verification suite.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    LegendreP,
    LegendreQhat,
    FerrersP,
    FerrersQ,
    FerrersPbar,
    LegendrePtilde,
}

impl From<KindArg> for FunctionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::LegendreP => FunctionKind::LegendreP,
            KindArg::LegendreQhat => FunctionKind::LegendreQhat,
            KindArg::FerrersP => FunctionKind::FerrersP,
            KindArg::FerrersQ => FunctionKind::FerrersQ,
            KindArg::FerrersPbar => FunctionKind::FerrersPbar,
            KindArg::LegendrePtilde => FunctionKind::LegendrePtilde,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    /// Function kind.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Degree as an exact rational, e.g. -1/6 or 5/2.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// Order as an exact rational (integer for the elliptic route).
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Evaluation point (cosh xi for Legendre kinds, cos theta for
    /// Ferrers kinds).
    #[arg(long, allow_hyphen_values = true)]
    arg: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Use the radical closed form where one exists for this index.
    #[arg(long, default_value_t = false)]
    closed_form: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity label like "I6(i)", or "all".
    #[arg(long)]
    identity: String,
    /// Points per p-grid.
    #[arg(long, default_value_t = 20)]
    grid: usize,
    /// Comma-separated alpha values (defaults per record).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Comma-separated beta values (two-parameter identities).
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Write the CSV report here instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Suppress the timestamp header line.
    #[arg(long, default_value_t = false)]
    no_timestamp: bool,
    /// Residual threshold for the exit status.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct TableArgs {
    /// Restrict to one curve (C3, C3', C4, C4', C6, C6', M, W2, W4, X).
    #[arg(long)]
    curve: Option<String>,
}

#[derive(Args)]
struct LaplaceArgs {
    /// Exponent s as an exact rational, e.g. 3/2 or 1/4.
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Harmonic index m >= 0.
    #[arg(long)]
    m: i64,
    /// Radius ratio in (0, 1).
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_rational(s: &str) -> Result<(i64, i64), Error> {
    let parts: Vec<&str> = s.split('/').collect();
    let bad = |s: &str| Error::Domain(format!("cannot parse rational '{s}'"));
    match parts.as_slice() {
        [n] => Ok((n.trim().parse().map_err(|_| bad(s))?, 1)),
        [n, d] => {
            let num = n.trim().parse().map_err(|_| bad(s))?;
            let den: i64 = d.trim().parse().map_err(|_| bad(s))?;
            if den == 0 {
                return Err(bad(s));
            }
            Ok((num, den))
        }
        _ => Err(bad(s)),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("cannot parse number '{t}'")))
        })
        .collect()
}

fn run_eval(args: &EvalArgs) -> Result<(), Error> {
    let kind: FunctionKind = args.kind.into();
    let (nn, nd) = parse_rational(&args.nu)?;
    let (mn, md) = parse_rational(&args.mu)?;
    let idx = index_from_rational(kind, nn, nd, mn, md)?;
    let nu = idx.nu();
    let mu = idx.mu();

    if args.closed_form {
        let value = closed_form_value(kind, nu, mu, args.arg)?;
        return render_value(args.format, kind, nu, mu, args.arg, value, "radical closed form", &[]);
    }

    // aux kinds and non-reducible indices go through the series oracle
    let direct = match kind {
        FunctionKind::FerrersPbar | FunctionKind::LegendrePtilde => None,
        _ if idx.elliptic_reducible() => {
            match transform::eval_fractional(kind, &idx, args.arg) {
                Ok(form) => Some(form),
                Err(Error::Stability(e)) => {
                    return Err(Error::Stability(e));
                }
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };
    match direct {
        Some(form) => {
            let terms: Vec<(f64, f64, f64, f64, f64)> = form
                .terms
                .iter()
                .map(|t| (t.modulus.get(), t.coef_k.v, t.coef_e.v, t.coef_k.d, t.coef_e.d))
                .collect();
            render_value(
                args.format,
                kind,
                nu,
                mu,
                args.arg,
                form.value(),
                &form.trace.to_string(),
                &terms,
            )
        }
        None => {
            let v = legell::oracle_legendre(kind, &idx, args.arg)?;
            let trace = if v.reduced_precision {
                "hypergeometric series (order-extrapolated, reduced precision)"
            } else {
                "hypergeometric series"
            };
            render_value(args.format, kind, nu, mu, args.arg, v.value, trace, &[])
        }
    }
}

fn closed_form_value(kind: FunctionKind, nu: f64, mu: f64, x: f64) -> Result<f64, Error> {
    let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
    match kind {
        FunctionKind::FerrersP if close(nu, -1.0 / 6.0) && close(mu, -0.25) => {
            legell::closed_form::ferrers_p_m16_m14(x.acos())
        }
        FunctionKind::LegendreP if close(nu, -1.0 / 6.0) && close(mu, -0.25) => {
            legell::closed_form::legendre_p_m16_m14(x.acosh())
        }
        FunctionKind::LegendreQhat if close(nu, -0.25) && close(mu, -1.0 / 3.0) => {
            // argument coth xi
            if x <= 1.0 {
                return Err(Error::Domain(format!("argument must exceed 1, got {x}")));
            }
            legell::closed_form::qhat_m14_m13((1.0 / x).atanh())
        }
        FunctionKind::LegendreQhat if close(nu, -0.25) && close(mu, -0.5) => {
            legell::closed_form::qhat_m14_m12(x)
        }
        _ => Err(Error::UnsupportedIndex(format!(
            "no radical closed form catalogued for {} at ({nu}, {mu})",
            kind.name()
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn render_value(
    format: Format,
    kind: FunctionKind,
    nu: f64,
    mu: f64,
    arg: f64,
    value: f64,
    trace: &str,
    terms: &[(f64, f64, f64, f64, f64)],
) -> Result<(), Error> {
    match format {
        Format::Text => {
            println!("{}(nu={}, mu={}) at {} = {:.12}", kind.name(), nu, mu, arg, value);
            println!("method: {trace}");
            for (m0, a, b, da, db) in terms {
                println!(
                    "  term: {:.12} * K({m0:.12}) + {:.12} * E({m0:.12})   d/d(angle): {:.12}, {:.12}",
                    a, b, da, db
                );
            }
        }
        Format::Json => {
            let terms: Vec<serde_json::Value> = terms
                .iter()
                .map(|(m0, a, b, da, db)| {
                    serde_json::json!({
                        "modulus": m0, "coef_k": a, "coef_e": b,
                        "coef_k_deriv": da, "coef_e_deriv": db,
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "kind": kind.name(),
                "nu": nu,
                "mu": mu,
                "arg": arg,
                "value": value,
                "method": trace,
                "elliptic_terms": terms,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            println!("kind,nu,mu,arg,value");
            println!("{},{nu:.17e},{mu:.17e},{arg:.17e},{value:.17e}", kind.name());
        }
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let labels: Vec<&str> = if args.identity == "all" {
        transform::catalogue().iter().map(|r| r.label).collect()
    } else {
        vec![transform::record(&args.identity)?.label]
    };
    let alphas = args.alpha.as_deref().map(parse_list).transpose()?;
    let betas = args.beta.as_deref().map(parse_list).transpose()?;
    let mut rows = Vec::new();
    for label in labels {
        rows.extend(transform::verify_identity(
            label,
            args.grid,
            alphas.as_deref(),
            betas.as_deref(),
        )?);
    }
    let worst = rows.iter().map(|r| r.gap).fold(0.0f64, f64::max);
    let mut report = String::new();
    if !args.no_timestamp {
        let now = time::OffsetDateTime::now_utc()
            .format(&time::format_description::well_known::Rfc3339)
            .unwrap_or_default();
        report.push_str(&format!("# generated {now}\n"));
    }
    report.push_str(&transform::verification_csv(&rows));
    match &args.out {
        Some(path) => {
            std::fs::write(path, report)
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("{} rows, worst gap {worst:.3e}", rows.len());
        }
        None => {
            print!("{report}");
            let _ = std::io::stdout().flush();
            eprintln!("{} rows, worst gap {worst:.3e}", rows.len());
        }
    }
    Ok(worst <= args.tolerance)
}

fn run_table(args: &TableArgs) -> Result<(), Error> {
    let filter = match &args.curve {
        Some(name) => Some(
            CurveId::parse(name)
                .ok_or_else(|| Error::Domain(format!("unknown curve '{name}'")))?,
        ),
        None => None,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&legell::curves::registry_json(filter)).unwrap()
    );
    Ok(())
}

fn run_laplace(args: &LaplaceArgs) -> Result<(), Error> {
    let (sn, sd) = parse_rational(&args.s)?;
    let s = sn as f64 / sd as f64;
    let b = legell::applications::laplace_coefficient(s, args.m, args.alpha)?;
    match args.format {
        Format::Text => {
            println!(
                "# convention: b_s^(m)(alpha) = (1/pi) Int_0^(2 pi) cos(m phi) (1 + alpha^2 - 2 alpha cos phi)^(-s) d phi"
            );
            println!("b_{}^({})({}) = {:.12}", args.s, args.m, args.alpha, b);
        }
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "convention":
                    "b_s^(m)(alpha) = (1/pi) Int_0^(2 pi) cos(m phi) (1 + alpha^2 - 2 alpha cos phi)^(-s) d phi",
                "s": s, "m": args.m, "alpha": args.alpha, "value": b,
            })
        ),
        Format::Csv => {
            println!("s,m,alpha,value");
            println!("{s:.17e},{},{:.17e},{b:.17e}", args.m, args.alpha);
        }
    }
    Ok(())
}

fn run_selftest() -> bool {
    let results = legell::selftest::run_all();
    let mut ok = true;
    for r in &results {
        println!("{}", r.line());
        ok &= r.passed;
    }
    println!(
        "{}: {}/{} criteria passed",
        if ok { "PASS" } else { "FAIL" },
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(args) => run_eval(args).map(|()| true),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args).map(|()| true),
        Command::Laplace(args) => run_laplace(args).map(|()| true),
        Command::Selftest => Ok(run_selftest()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
