use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use poisson_cgl::cauchon::{self, enumerate_hprimes, DSearch};
use poisson_cgl::cgl::PoissonPresentation;
use poisson_cgl::ideals::{chain_report, h_core, poisson_closure, Ideal};
use poisson_cgl::io::load_presentation;
use poisson_cgl::qpoly::{format_rational, parse, Ctx};
use poisson_cgl::strata::{center_commutes, extract_log_matrix, poisson_center_torus};
use poisson_cgl::Error;

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "pcgl", version, about = "Poisson-CGL extensions: verification, Cauchon maps, H-primes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the CGL axioms and print the report as JSON.
    Check { file: PathBuf },
    /// Image of an element of A = R_{k-1} under the Cauchon map.
    Theta {
        file: PathBuf,
        #[arg(long)]
        level: Option<usize>,
        expr: String,
    },
    /// Poisson-normal element θ(a) X^s built from a normal a in A.
    Normal {
        file: PathBuf,
        #[arg(long)]
        level: Option<usize>,
        expr: String,
    },
    /// Search for the d-element of a level, optionally modulo an ideal of A.
    D {
        file: PathBuf,
        #[arg(long)]
        level: Option<usize>,
        /// Generators of the ideal of A, separated by `;`.
        #[arg(long)]
        modulo: Option<String>,
    },
    /// Enumerate the Poisson H-primes.
    Hprimes {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Poisson closure of the ideal generated by the given elements.
    Closure {
        file: PathBuf,
        #[arg(short = 'g', required = true)]
        generators: Vec<String>,
    },
    /// Largest graded ideal inside the ideal generated by the given elements.
    Hcore {
        file: PathBuf,
        #[arg(short = 'g', required = true)]
        generators: Vec<String>,
    },
    /// Report on a chain of ideals, one `--ideal "g1;g2"` per link.
    Chain {
        file: PathBuf,
        #[arg(long = "ideal", required = true)]
        ideals: Vec<String>,
    },
    /// Poisson center of the torus after deleting all derivations.
    Center { file: PathBuf },
}

enum Failure {
    /// A negative verdict or failed computation.
    Math(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::NegativeExponent(_)
            | Error::ContextMismatch
            | Error::Triangularity { .. }
            | Error::LevelOutOfRange { .. }
            | Error::Input(_) => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    out!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn level_of(p: &PoissonPresentation, level: Option<usize>) -> Result<usize, Failure> {
    let k = level.unwrap_or(p.len());
    if k < 2 || k > p.len() {
        return Err(Failure::Input(format!("level must be between 2 and {}", p.len())));
    }
    Ok(k)
}

fn ideal_from(ctx: &Ctx, gens: &[String]) -> Result<Ideal, Failure> {
    let polys = gens
        .iter()
        .flat_map(|g| g.split(';'))
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(|g| parse(g, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ctx, polys)?)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Check { file } => {
            let p = load_presentation(&file)?;
            let r = p.verify_cgl();
            print_json(&r);
            Ok(r.passed)
        }
        Cmd::Theta { file, level, expr } => {
            let p = load_presentation(&file)?;
            let l = p.level(level_of(&p, level)?)?;
            let a = parse(&expr, &l.a_ctx)?;
            out!("{}", cauchon::theta(&l, &a)?);
            let r = cauchon::check_theta(&l, 100, 0)?;
            out!(
                "identities on {} random pairs: multiplicative {}, bracket {}, twist {}",
                r.samples,
                mark(r.multiplicative_failures == 0),
                mark(r.bracket_failures == 0),
                mark(r.twist_failures == 0)
            );
            Ok(r.passed)
        }
        Cmd::Normal { file, level, expr } => {
            let p = load_presentation(&file)?;
            let l = p.level(level_of(&p, level)?)?;
            let a = parse(&expr, &l.a_ctx)?;
            let ne = cauchon::normal_element(&l, &a)?;
            out!("{}", ne.element);
            out!("s = {}, eta = {}", ne.s, format_rational(&ne.eta));
            out!("poisson-normal: {}", if ne.normality.normal { "verified" } else { "failed" });
            out!("{{x, {}}} = -eta x {}: {}", l.x(), l.x(), if ne.commutation { "verified" } else { "failed" });
            Ok(ne.normality.normal && ne.commutation)
        }
        Cmd::D { file, level, modulo } => {
            let p = load_presentation(&file)?;
            let l = p.level(level_of(&p, level)?)?;
            let q = ideal_from(&l.a_ctx, modulo.as_slice())?;
            match cauchon::d_element_search(&l, &q, p.bounds().degree)? {
                DSearch::Found { d, checks } => {
                    out!("{d}");
                    out!(
                        "σ(d)=λd {}, δ(d)=-λd² {}, relation {}, homogeneous {}",
                        mark(checks.sigma_identity),
                        mark(checks.delta_identity),
                        mark(checks.relation),
                        mark(checks.homogeneous)
                    );
                    Ok(checks.passed())
                }
                DSearch::NotFound { denominators_tried } => {
                    out!("inconclusive: no d-element found over {denominators_tried} denominators");
                    Ok(false)
                }
            }
        }
        Cmd::Hprimes { file, format } => {
            let p = load_presentation(&file)?;
            let t = enumerate_hprimes(&p, p.bounds().degree)?;
            match format {
                Format::Json => print_json(&t),
                Format::Dot => out!("{}", t.to_dot()?.trim_end()),
            }
            Ok(true)
        }
        Cmd::Closure { file, generators } => {
            let p = load_presentation(&file)?;
            let i = ideal_from(p.ctx(), &generators)?;
            let c = poisson_closure(p.table(), &i)?;
            let adjoined: Vec<String> = c.adjoined.iter().map(|g| g.to_string()).collect();
            print_json(&json!({ "generators": c.ideal.basis_strings()?, "adjoined": adjoined }));
            Ok(true)
        }
        Cmd::Hcore { file, generators } => {
            let p = load_presentation(&file)?;
            let i = ideal_from(p.ctx(), &generators)?;
            let core = h_core(p.grading(), &i)?;
            print_json(&json!({ "generators": core.basis_strings()?, "graded_input": core.same_as(&i)? }));
            Ok(true)
        }
        Cmd::Chain { file, ideals } => {
            let p = load_presentation(&file)?;
            let chain = ideals
                .iter()
                .map(|g| ideal_from(p.ctx(), std::slice::from_ref(g)))
                .collect::<Result<Vec<_>, _>>()?;
            let r = chain_report(&p, &chain)?;
            print_json(&r);
            Ok(true)
        }
        Cmd::Center { file } => {
            let p = load_presentation(&file)?;
            let m = match extract_log_matrix(p.table()) {
                Ok(m) => m,
                Err(Error::NotAffineSpace { .. }) => {
                    let del = cauchon::delete_all(&p, 100, 0)?;
                    extract_log_matrix(del.presentation.table())?
                }
                Err(e) => return Err(e.into()),
            };
            let c = poisson_center_torus(&m);
            let commutes = center_commutes(&m, &c)?;
            let center = if c.is_trivial() { json!("QQ") } else { json!(c.generators) };
            let kernel = serde_json::to_value(&c).expect("reports serialize")["kernel"].take();
            print_json(&json!({ "matrix": m, "kernel": kernel, "center": center, "commutes": commutes }));
            Ok(commutes)
        }
    }
}
