//! Command line front end.
//!
//! Exit codes: 0 success (for `check`: the tensor is trifocal), 1 negative
//! answer (`check`: not trifocal, `nzd`: a zero divisor was detected),
//! 2 input or configuration error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trifocal::camera::trifocal_from_cameras;
use trifocal::ideal::{
    ambient_dim, discover_with_progress, graded_nonzerodivisor_check, hilbert_quotient, DiscoverConfig,
    GradedGeneratorSet,
};
use trifocal::io::{
    camera_triple_from_json, poly_from_text, polys_from_lines, tensor_from_json, tensor_to_json, tensor_to_value,
};
use trifocal::orbits::{catalog, lookup, signature_with, ModuleTable};
use trifocal::poly::{f_det, witness_g, ModPoly, Poly27};
use trifocal::report::{self, check_report, check_text, DiscoverReport, HilbertRow, RunConfig};
use trifocal::tensor::Tensor333;

/// Highest degree in which the ideal has minimal generators.
const GENERATOR_DEGREE: u32 = 6;

#[derive(Parser)]
#[command(name = "trifocal", version, about = "Exact tools for trifocal tensors")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Prime for modular computations
    #[arg(long, global = true, default_value_t = 101)]
    prime: u32,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest degree any graded computation may reach (at most 7)
    #[arg(long, global = true, default_value_t = 6)]
    degree_cap: u32,
    /// Evaluation points per unknown in vanishing computations
    #[arg(long, global = true, default_value_t = 2)]
    oversample: usize,
    /// Accept any permutation of P-Rank (3,3,2)
    #[arg(long, global = true)]
    permutation_tolerant: bool,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Witness {
    /// The determinant of the three first rows
    F,
    /// The shipped degree four witness
    G,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a tensor is trifocal
    Check {
        tensor: PathBuf,
        /// Apply a seeded random change of coordinates first
        #[arg(long)]
        randomize: bool,
    },
    /// Signature and component of a tensor, from a file or the catalog
    Classify {
        #[arg(required_unless_present = "name")]
        tensor: Option<PathBuf>,
        /// Catalog representative to classify instead of a file
        #[arg(long, conflicts_with = "tensor")]
        name: Option<String>,
        /// Also evaluate the degree five and six generator modules
        #[arg(long)]
        modules: bool,
    },
    /// List the catalog, or print one representative as tensor JSON
    Catalog { name: Option<String> },
    /// Tensor JSON of a camera triple file {"A1":..,"A2":..,"A3":..}
    FromCameras { cameras: PathBuf },
    /// Search for minimal generators of the ideal through a degree
    Discover {
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Hilbert function of the quotient ring through a degree
    Hilbert {
        #[arg(long, default_value_t = 6)]
        degree: u32,
    },
    /// Degree-capped non-zero-divisor test for a witness modulo the ideal
    Nzd {
        /// Built-in witness
        #[arg(long, value_enum, conflicts_with = "witness_file")]
        witness: Option<Witness>,
        /// Witness polynomial file (JSON terms, T_i_j_k text or letter form)
        #[arg(long)]
        witness_file: Option<PathBuf>,
        /// Generators of the ideal, one per line, instead of the trifocal ideal
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Highest degree checked; defaults to the degree cap
        #[arg(long)]
        degree: Option<u32>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_tensor(path: &Path) -> Result<Tensor333, Failure> {
    tensor_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(cfg: &RunConfig, json: bool, command: &str, result: T, text: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", report::to_json(command, cfg, &result));
    } else {
        print!("{}", text(&result));
    }
}

fn check_degree(degree: u32, cfg: &RunConfig) -> Result<(), Failure> {
    if degree > cfg.degree_cap {
        return Err(Failure(format!("degree {degree} exceeds --degree-cap {}", cfg.degree_cap)));
    }
    Ok(())
}

fn discover_config(cfg: &RunConfig) -> DiscoverConfig {
    DiscoverConfig { prime: cfg.prime, seed: cfg.seed, oversample: cfg.oversample }
}

/// Minimal generators of the trifocal ideal over GF(p) through `degree`.
fn trifocal_ideal(degree: u32, cfg: &RunConfig) -> Result<GradedGeneratorSet, Failure> {
    let inv = discover_with_progress(degree.min(GENERATOR_DEGREE), &discover_config(cfg), |d| {
        eprintln!("generators: degree {} done, {} new", d.degree, d.new_generator_count());
    })?;
    Ok(inv.generators)
}

fn run(cli: Cli) -> Outcome {
    let c = cli.common;
    let cfg = RunConfig {
        prime: c.prime,
        seed: c.seed,
        degree_cap: c.degree_cap,
        oversample: c.oversample,
        permutation_tolerant: c.permutation_tolerant,
    };
    cfg.validate()?;
    match cli.command {
        Command::Check { tensor, randomize } => {
            let t = read_tensor(&tensor)?;
            let r = check_report(&t, &cfg, randomize);
            let code = if r.is_trifocal { 0 } else { 1 };
            emit(&cfg, c.json, "check", r, check_text);
            Ok(ExitCode::from(code))
        }
        Command::Classify { tensor, name, modules } => {
            let t = match (tensor, name) {
                (Some(p), _) => read_tensor(&p)?,
                (None, Some(n)) => lookup(&n).ok_or_else(|| Failure(format!("no catalog entry named {n:?}")))?.tensor,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let mut r = check_report(&t, &cfg, false);
            if modules {
                eprintln!("building the degree five and six generator modules");
                r.signature = signature_with(&t, ModuleTable::default_table());
            }
            emit(&cfg, c.json, "classify", r, check_text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { name } => {
            match name {
                Some(n) => {
                    let nf = lookup(&n).ok_or_else(|| Failure(format!("no catalog entry named {n:?}")))?;
                    println!("{}", tensor_to_json(&nf.tensor));
                }
                None if c.json => {
                    let all: Vec<_> = catalog()
                        .into_iter()
                        .map(|n| serde_json::json!({"name": n.name, "description": n.description, "tensor": tensor_to_value(&n.tensor)}))
                        .collect();
                    println!("{}", report::to_json("catalog", &cfg, all));
                }
                None => {
                    for n in catalog() {
                        println!("{:<16} {}", n.name, n.description);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FromCameras { cameras } => {
            let ct = camera_triple_from_json(&read(&cameras)?)?;
            println!("{}", tensor_to_json(&trifocal_from_cameras(&ct)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Discover { degree } => {
            check_degree(degree, &cfg)?;
            let inv = discover_with_progress(degree, &discover_config(&cfg), |d| {
                eprintln!(
                    "degree {}: {} labels in the ideal, {} new generators",
                    d.degree,
                    d.labels.len(),
                    d.new_generator_count()
                );
            })?;
            let r = DiscoverReport { counts: inv.counts(), degrees: &inv.degrees };
            emit(&cfg, c.json, "discover", r, |r| report::discover_text(r.degrees));
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert { degree } => {
            check_degree(degree, &cfg)?;
            let g = trifocal_ideal(degree, &cfg)?;
            let mut rows = Vec::new();
            for d in 1..=degree {
                let quotient = hilbert_quotient(&g, d, cfg.degree_cap)?;
                let ambient = ambient_dim(d);
                eprintln!("hilbert: degree {d} done");
                rows.push(HilbertRow { degree: d, ambient, ideal: ambient - quotient, quotient });
            }
            emit(&cfg, c.json, "hilbert", rows, |r| report::hilbert_text(r));
            Ok(ExitCode::SUCCESS)
        }
        Command::Nzd { witness, witness_file, ideal, degree } => {
            let degree = degree.unwrap_or(cfg.degree_cap);
            check_degree(degree, &cfg)?;
            let f: Poly27 = match (witness, witness_file) {
                (_, Some(p)) => poly_from_text(&read(&p)?)?,
                (Some(Witness::G), None) => witness_g(),
                (Some(Witness::F), None) | (None, None) => f_det(),
            };
            let g = match ideal {
                Some(p) => GradedGeneratorSet::from_polys(&polys_from_lines(&read(&p)?)?, cfg.prime, false)?,
                None => trifocal_ideal(degree, &cfg)?,
            };
            let r = graded_nonzerodivisor_check(&g, &ModPoly::from_poly(&f, cfg.prime)?, degree)?;
            let code = if r.verdict { 0 } else { 1 };
            emit(&cfg, c.json, "nzd", r, report::nzd_text);
            Ok(ExitCode::from(code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
