//! `hkbetti`: compute Betti distributions of hyperkähler families, analyse their shape,
//! and run the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hkbetti::arith::{ExactInt, UniLaurent};
use hkbetti::asymptotics::{airy_moments, fit_report, measure_from_betti, moments, rat_str, tree_saddle_identities, wright_constants, Reference};
use hkbetti::families::{self, BettiPoly};
use hkbetti::fq::{count_fiber_bruteforce, count_fiber_fourier, gl_order, FqConfig};
use hkbetti::io;
use hkbetti::suites::{run_suite, SUITES};
use hkbetti::Error;

#[derive(Parser)]
#[command(name = "hkbetti", version, about = "Betti numbers of semiprojective hyperkähler varieties")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Toric quiver variety of the complete graph K_n.
    ToricComplete {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=80))]
        n: u32,
    },
    /// Toric quiver variety of a graph given as JSON.
    Toric {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Hilbert scheme of n points on C^2.
    Hilbert {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4000))]
        n: u32,
    },
    /// Moduli of framed torsion-free sheaves (ADHM), rank m, charge n.
    Adhm {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=200))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=200))]
        m: u32,
    },
    /// Cotangent bundle of the Grassmannian Gr(k, n).
    Grassmann {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1000))]
        k: u32,
    },
    /// Nakajima quiver variety of a framed quiver.
    Nakajima {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Kac polynomial A_Q(v; q).
    Kac {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Quiver variety for an indivisible dimension vector.
    QuiverIndivisible {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Rank n, genus g Higgs moduli, Jacobian factor removed.
    Higgs {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=8))]
        g: u32,
    },
    /// Cotangent bundle of the Jacobian of a genus g curve.
    Torus {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=20000))]
        g: u32,
    },
    /// Moments of the E-polynomial measure of a Betti file (JSON or CSV).
    Moments {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        standardize: bool,
        /// Highest moment order.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(0..=64))]
        k: u32,
        /// Complex dimension for CSV input (default: half the top degree, rounded up).
        #[arg(long)]
        dim: Option<i64>,
    },
    /// Compare standardized moments with airy, gumbel or bspline:R.
    Fit {
        #[arg(long)]
        dist: Reference,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(3..=24))]
        k: u32,
        #[arg(long, default_value_t = 0.1)]
        tol: f64,
        #[arg(long)]
        dim: Option<i64>,
    },
    /// Airy moments M_0..M_k and Wright constants c_1..c_{k-1}.
    AiryConstants {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=60))]
        k: u32,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..=1000))]
        digits: u32,
    },
    /// Points of the moment-map fiber over F_q.
    Fqcount {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        q: u64,
        /// Central value: one integer, or one per vertex separated by commas.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, value_enum, default_value_t = Method::Fourier)]
        method: Method,
    },
    /// Tree-function identities for the Wright expansion.
    SaddleCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=80))]
        order: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=10))]
        kmax: u32,
    },
    /// Run a verification suite.
    Check {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fourier,
    Brute,
}

/// Failure with the flag or file it concerns.
struct Failure {
    context: String,
    error: Error,
}

fn ctx(context: impl Into<String>) -> impl FnOnce(Error) -> Failure {
    let context = context.into();
    move |error| Failure { context, error }
}

fn read(path: &PathBuf, flag: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
        .map_err(ctx(flag))
}

enum Output {
    Poly(BettiPoly),
    /// Integer polynomial that need not start with 1 (Kac polynomials).
    Coefficients(Value, Vec<ExactInt>),
    Json(Value),
}

fn laurent_coefficients(p: &UniLaurent) -> Result<Vec<ExactInt>, Error> {
    let (lo, c) = p.to_int_coeffs().ok_or_else(|| Error::NonPolynomial(format!("{p} has non-integer coefficients")))?;
    if lo < 0 {
        return Err(Error::NonPolynomial(format!("{p} has negative powers")));
    }
    let mut out = vec![ExactInt::from(0); lo as usize];
    out.extend(c);
    Ok(out)
}

fn measure_input(text: &str, dim: Option<i64>) -> Result<BettiPoly, Error> {
    if text.trim_start().starts_with('{') {
        let mut p = io::parse_betti_json(text)?;
        if let Some(d) = dim {
            p.complex_dim = d;
        }
        return Ok(p);
    }
    let c = io::parse_betti_csv(text)?;
    let d = dim.unwrap_or(c.len() as i64 / 2);
    BettiPoly::new("input", Default::default(), c, d, None, 0).map_err(|e| Error::Invalid(e.to_string()))
}

fn run(cmd: Command) -> Result<Output, Failure> {
    use families::*;
    let poly = |r: hkbetti::Result<BettiPoly>, name: &str| r.map(Output::Poly).map_err(ctx(name));
    match cmd {
        Command::ToricComplete { n } => poly(poincare_toric_complete(n as usize), "toric-complete --n"),
        Command::Toric { graph } => {
            let g = io::parse_graph_json(&read(&graph, "--graph")?).map_err(ctx("--graph"))?;
            poly(poincare_toric_quiver(&g), "toric")
        }
        Command::Hilbert { n } => poly(poincare_hilbert(n as usize), "hilbert --n"),
        Command::Adhm { n, m } => poly(poincare_adhm(n as usize, m as usize), "adhm --n/--m"),
        Command::Grassmann { n, k } => poly(poincare_grassmannian(n as usize, k as usize), "grassmann --n/--k"),
        Command::Nakajima { quiver } => {
            let q = io::parse_quiver_json(&read(&quiver, "--quiver")?).map_err(ctx("--quiver"))?;
            poly(poincare_nakajima(&q), "nakajima --quiver")
        }
        Command::Kac { quiver } => {
            let q = io::parse_quiver_json(&read(&quiver, "--quiver")?).map_err(ctx("--quiver"))?;
            let a = kac_polynomial(&q).and_then(|a| laurent_coefficients(&a)).map_err(ctx("kac --quiver"))?;
            Ok(Output::Coefficients(json!({"family": "kac", "params": q.params()}), a))
        }
        Command::QuiverIndivisible { quiver } => {
            let q = io::parse_quiver_json(&read(&quiver, "--quiver")?).map_err(ctx("--quiver"))?;
            poly(poincare_quiver_indivisible(&q), "quiver-indivisible --quiver")
        }
        Command::Higgs { n, g } => {
            let r = poincare_higgs(n as usize, g as usize).map_err(ctx("higgs --n/--g"))?;
            let mut p = r.betti;
            p.params.insert("h_terms".into(), Value::from(r.h.num_terms()));
            Ok(Output::Poly(p))
        }
        Command::Torus { g } => poly(poincare_torus(g as usize), "torus --g"),
        Command::Moments { input, standardize, k, dim } => {
            let p = measure_input(&read(&input, "--in")?, dim).map_err(ctx("--in"))?;
            let mu = measure_from_betti(&p).map_err(ctx("--in"))?;
            let m = moments(&mu, k, standardize);
            let strs = |v: &[hkbetti::arith::ExactRat]| v.iter().map(rat_str).collect::<Vec<_>>();
            Ok(Output::Json(json!({
                "input": input.display().to_string(),
                "complex_dim": p.complex_dim,
                "K": k,
                "raw": strs(&m.raw),
                "factorial": strs(&m.factorial),
                "standardized": m.standardized,
            })))
        }
        Command::Fit { dist, input, k, tol, dim } => {
            let p = measure_input(&read(&input, "--in")?, dim).map_err(ctx("--in"))?;
            let mu = measure_from_betti(&p).map_err(ctx("--in"))?;
            let r = fit_report(&mu, dist, k, tol).map_err(ctx("fit"))?;
            Ok(Output::Json(serde_json::to_value(r).expect("report serializes")))
        }
        Command::AiryConstants { k, digits } => {
            let m = airy_moments(k as usize, digits as usize).map_err(ctx("airy-constants --k"))?;
            let c = if k >= 2 { wright_constants(k as usize - 1).map_err(ctx("airy-constants --k"))? } else { vec![] };
            let moments: Vec<Value> = m
                .iter()
                .map(|a| json!({"k": a.k, "rational": rat_str(&a.rational), "sqrt_2pi_power": a.sqrt_2pi_power, "decimal": a.decimal}))
                .collect();
            let wright: Vec<String> = c.iter().map(rat_str).collect();
            Ok(Output::Json(json!({"airy_moments": moments, "wright_constants": wright})))
        }
        Command::Fqcount { quiver, q, xi, method } => {
            let qv = io::parse_quiver_json(&read(&quiver, "--quiver")?).map_err(ctx("--quiver"))?;
            let parts: Vec<i64> = xi
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::Invalid(format!("`{xi}`: {e}")))
                .map_err(ctx("--xi"))?;
            let parts = if parts.len() == 1 { vec![parts[0]; qv.vertices] } else { parts };
            let cfg = FqConfig::new(q, qv.clone(), parts.clone()).map_err(ctx("--q/--xi"))?;
            let n = match method {
                Method::Fourier => count_fiber_fourier(&cfg),
                Method::Brute => count_fiber_bruteforce(&cfg),
            }
            .map_err(ctx("fqcount"))?;
            let g: ExactInt = qv.v.iter().map(|&k| gl_order(k, q)).product();
            let quotient = (&n % &g == ExactInt::from(0)).then(|| (&n / &g).to_string());
            Ok(Output::Json(json!({
                "quiver": qv.params(),
                "q": q,
                "xi": parts,
                "method": match method { Method::Fourier => "fourier", Method::Brute => "brute" },
                "fiber_count": n.to_string(),
                "group_order": g.to_string(),
                "quotient_count": quotient,
            })))
        }
        Command::SaddleCheck { order, kmax } => {
            let r = tree_saddle_identities(order as usize, kmax as usize).map_err(ctx("saddle-check --order"))?;
            Ok(Output::Json(serde_json::to_value(r).expect("report serializes")))
        }
        Command::Check { suite } => {
            let r = run_suite(&suite).expect("suite names are validated by clap");
            Ok(Output::Json(serde_json::to_value(r).expect("report serializes")))
        }
    }
}

fn render(out: Output, format: Format) -> Result<String, Failure> {
    let csv_unsupported = || Failure { context: "--format".into(), error: Error::Invalid("csv output is only available for polynomials".into()) };
    Ok(match (out, format) {
        (Output::Poly(p), Format::Json) => io::betti_to_json(&p),
        (Output::Poly(p), Format::Csv) => io::betti_to_csv(&p),
        (Output::Coefficients(mut meta, c), Format::Json) => {
            meta["coefficients"] = json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            serde_json::to_string_pretty(&meta).expect("json serializes") + "\n"
        }
        (Output::Coefficients(_, c), Format::Csv) => io::coefficients_to_csv(&c),
        (Output::Json(v), Format::Json) => serde_json::to_string_pretty(&v).expect("json serializes") + "\n",
        (Output::Json(_), Format::Csv) => return Err(csv_unsupported()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("hkbetti: --threads: {e}");
        return ExitCode::from(2);
    }
    let result = run(cli.command).and_then(|o| render(o, cli.format)).and_then(|text| match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
            .map_err(ctx("--output")),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { context, error }) => {
            eprintln!("hkbetti: {context}: {error}");
            ExitCode::from(if error.is_assertion() { 3 } else { 2 })
        }
    }
}
