//! Argument parsing and dispatch.
//!
//! Exit status: 0 on success, 1 on a domain error (its name goes to stderr),
//! 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use census_core::census::{constant_term, degree_class, oracle_check, regularity_from};
use census_core::{zeta, CensusError, Rational};
use serde_json::{json, Value};

use crate::json::{kac_to_json, poly_to_json, rational_to_json, to_pretty, FormatError};
use crate::{latex, Cache, Session};

#[derive(Parser, Debug)]
#[command(name = "census", version, about = "Counts of indecomposable vector bundles on curves over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Result cache directory; the CENSUS_CACHE environment variable takes precedence.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for the partition sum (default: logical processors).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// More progress on stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Bundle {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub rank: u32,
    /// Any integer; only its class mod the rank matters.
    #[arg(long, allow_negative_numbers = true)]
    pub degree: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The Kac polynomial A_{g,r,d}.
    Kac(Bundle),
    /// A_{g,r,d}(0), the component count of the nilpotent cone.
    ConstantTerm(Bundle),
    /// Compactly supported Poincaré polynomial of the Higgs moduli space.
    Betti(Bundle),
    /// Indecomposable and Higgs point counts for a concrete curve.
    Count {
        /// JSON file {"q": …, "genus": …, "point_counts": [N_1, …, N_g]}.
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Regularity, degree independence, the series cross-check and Betti sanity.
    Check {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        rank: u32,
    },
    /// Zeta-function identities to a given order.
    Identities {
        #[arg(long)]
        genus: usize,
        /// Truncation order in s.
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// Largest rank for the volume formulas.
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
    },
}

enum Failure {
    Domain(CensusError),
    Usage(String),
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::Domain(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Engine(e) => Failure::Domain(e),
            other => Failure::Domain(CensusError::InvalidInput(other.to_string())),
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    init_logging(cli.verbose);
    let cache_dir = std::env::var_os("CENSUS_CACHE").map(PathBuf::from).or(cli.cache_dir.clone());
    let session = Session::new(cli.jobs, cache_dir.map(Cache::new));
    match dispatch(&cli, &session) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn big(n: i128) -> Value {
    i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn dispatch(cli: &Cli, s: &Session) -> Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Kac(b) => {
            let k = s.kac(b.genus, b.rank, b.degree)?;
            Ok(match fmt {
                Format::Json => to_pretty(&kac_to_json(&k)),
                Format::Latex => latex::factored(&k.value, k.genus),
                Format::Text => format!("A_{{{},{},{}}} = {}", k.genus, k.rank, k.degree_class, k.value),
            })
        }
        Command::ConstantTerm(b) => {
            let c = constant_term(b.genus, b.rank, b.degree)?;
            Ok(match fmt {
                Format::Json => to_pretty(&json!({
                    "genus": b.genus,
                    "rank": b.rank,
                    "degree_class": degree_class(b.degree, b.rank),
                    "constant_term": rational_to_json(&c),
                })),
                _ => c.to_string(),
            })
        }
        Command::Betti(b) => {
            let p = s.betti(b.genus, b.rank, b.degree)?;
            if !p.coprime {
                log::warn!("gcd(rank, degree) > 1: the result is not known to be a Poincaré polynomial");
            }
            Ok(match fmt {
                Format::Json => {
                    let coeffs: Vec<Value> = p.coefficients().iter().map(|(e, c)| json!([e, rational_to_json(c)])).collect();
                    to_pretty(&json!({
                        "genus": p.genus,
                        "rank": p.rank,
                        "degree_class": p.degree_class,
                        "coprime": p.coprime,
                        "coefficients": coeffs,
                        "polynomial": poly_to_json(&p.poly),
                    }))
                }
                Format::Latex => latex::poly(&p.poly),
                Format::Text => format!("{}", p.poly),
            })
        }
        Command::Count { curve, rank, degree } => {
            let text = std::fs::read_to_string(curve)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", curve.display())))?;
            let c = crate::json::curve_from_str(&text)?;
            let n = s.count(&c, *rank, *degree)?;
            Ok(match fmt {
                Format::Json => to_pretty(&json!({
                    "genus": c.genus,
                    "q": c.q,
                    "rank": rank,
                    "degree_class": degree_class(*degree, *rank),
                    "indecomposables": big(n.indecomposables),
                    "higgs_points": n.higgs_points.map(big),
                })),
                _ => {
                    let higgs = n.higgs_points.map_or("absent".to_string(), |h| h.to_string());
                    format!("indecomposables {}\nhiggs_points {higgs}", n.indecomposables)
                }
            })
        }
        Command::Check { genus, rank } => check(*genus, *rank, s, fmt),
        Command::Identities { genus, order, max_rank } => identities(*genus, *order, *max_rank, fmt),
    }
}

fn render_report(rows: &[(String, bool)], fmt: Format) -> String {
    match fmt {
        Format::Json => to_pretty(&Value::Array(rows.iter().map(|(n, ok)| json!({ "check": n, "passed": ok })).collect())),
        _ => rows.iter().map(|(n, ok)| format!("{}: {n}", pass(*ok))).collect::<Vec<_>>().join("\n"),
    }
}

fn finish(rows: Vec<(String, bool)>, fmt: Format) -> Result<String, Failure> {
    let failed: Vec<&str> = rows.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    if failed.is_empty() {
        Ok(render_report(&rows, fmt))
    } else {
        Err(Failure::Domain(CensusError::IdentityViolation(failed.join("; "))))
    }
}

fn check(g: usize, r: u32, s: &Session, fmt: Format) -> Result<String, Failure> {
    let a = s.rational(g, r)?;
    let rep = regularity_from(g, r, &a);
    let mut rows = vec![
        (format!("(1-z^{r}) A_{{{g},{r}}}(z) is polynomial in z"), rep.clears_with_rank),
        ("poles at roots of unity are simple".to_string(), rep.simple_poles()),
        ("regular at nontrivial roots of unity".to_string(), rep.regular_at_nontrivial_roots),
        ("degree classes agree".to_string(), rep.d_independent),
    ];
    let oracle = oracle_check(g, r, &s.pool)?;
    rows.push((format!("series route matches on d = {}..={}", oracle.tail_start, oracle.order), oracle.passed()));
    let top = 4 * (1 + (g as i32 - 1) * (r * r) as i32);
    for d in (0..r as i64).filter(|d| census_core::census::is_coprime(r, *d)) {
        let b = s.betti(g, r, d)?;
        let lowest = b.lowest().map(|(_, c)| c).unwrap_or(Rational::ZERO);
        let monic = b.degree() == Some(top) && b.coefficients().last().is_some_and(|(_, c)| c.is_one());
        rows.push((format!("Betti polynomial for d = {d} is monic of degree {top}"), monic));
        rows.push((format!("lowest Betti number for d = {d} equals the constant term"), lowest == constant_term(g, r, d)?));
    }
    finish(rows, fmt)
}

fn identities(g: usize, order: u32, max_rank: u32, fmt: Format) -> Result<String, Failure> {
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let mut checks = vec![zeta::torsion_identity(g, order)?, zeta::torsion_exp_route(g, order)?, zeta::zeta_exp_identity(g, order)?];
    checks.extend(zeta::siegel_identities(g, max_rank)?);
    let rows = checks.into_iter().map(|c| (format!("{} (genus {}, order {})", c.name, c.genus, c.order), c.passed)).collect();
    finish(rows, fmt)
}
