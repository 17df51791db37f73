use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lagrangia::golden::{report_json, run_golden, Expectations, Tier};
use lagrangia::loci::{
    chern_degree, hilbert_polynomial_from_shape, pfaffian_decision, Middle, ResolutionShape,
};
use lagrangia::pipeline::{field_by_name, run_construct, run_reisner, run_survey};
use lagrangia::quadspace::IntegerGram;
use lagrangia::Error;

const EXIT_DEGENERATE: u8 = 2;
const EXIT_GOLDEN: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "lagrangia", version, about = "Lagrangian degeneracy loci, resolutions and Hasse invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Heavy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    P5,
    P7,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on the ten-monomial Lagrangian
    Reisner {
        #[command(flatten)]
        out: Output,
    },
    /// Full pipeline on a seeded random Lagrangian
    Construct {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "gf2")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// Classify seeds 0..count
    Survey {
        #[arg(long)]
        count: u64,
        #[arg(long, default_value = "gf2")]
        field: String,
        #[command(flatten)]
        out: Output,
    },
    /// Run the golden checks
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        tier: TierArg,
        #[command(flatten)]
        out: Output,
    },
    /// Pfaffian criterion for a subcanonical subscheme
    Pfaffian {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        /// Characteristic; 0 for real or complex
        #[arg(long = "char")]
        characteristic: u32,
        /// Dimension of the middle cohomology
        #[arg(long, conflicts_with = "gram")]
        dim: Option<usize>,
        /// Integer Gram matrix of the middle cohomology, rows separated by ';'
        #[arg(long, allow_hyphen_values = true)]
        gram: Option<String>,
        /// Treat the Gram matrix over the complex numbers
        #[arg(long, requires = "gram")]
        complexified: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Degree of the degeneracy locus from Chern classes
    Degree {
        #[arg(long, value_enum)]
        space: Space,
        /// Number of copies of the bundle
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert polynomial of a resolution shape
    Hilbert {
        #[arg(long, value_enum)]
        shape: Space,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Usage(String),
    Degenerate(String),
    Golden,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Degenerate(e.to_string())
    }
}

fn emit(out: &Output, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_gram(s: &str) -> Result<IntegerGram, Failure> {
    let rows = s
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad Gram matrix: {e}")))?;
    IntegerGram::new(rows).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Reisner { out } => {
            let r = run_reisner()?;
            eprintln!("reisner: hasse {} ({}), degenerate {}", r.hasse.hasse_str, r.class(), r.degenerate);
            emit(&out, &r.to_json())
        }
        Command::Construct { seed, field, out } => {
            let f = field_by_name(&field).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = run_construct(&f, seed)?;
            eprintln!("construct {seed}: hasse {} ({}), degenerate {}", r.hasse.hasse_str, r.class(), r.degenerate);
            emit(&out, &r.to_json())?;
            if r.degenerate {
                return Err(Failure::Degenerate("singular Jacobian samples or unexpected Hilbert polynomial".into()));
            }
            Ok(())
        }
        Command::Survey { count, field, out } => {
            let f = field_by_name(&field).map_err(|e| Failure::Usage(e.to_string()))?;
            if count > 10_000 {
                return Err(Failure::Usage("--count is at most 10000".into()));
            }
            let s = run_survey(&f, count)?;
            eprintln!(
                "survey: mu2 {}, alpha2 {}, degenerate {}, failed {}",
                s.mu2(),
                s.alpha2(),
                s.degenerate(),
                s.failed()
            );
            emit(&out, &s.to_json())?;
            if f.degree() == 1 && count >= 200 && (s.mu2() == 0 || s.alpha2() == 0) {
                return Err(Failure::Degenerate("survey did not find both classes".into()));
            }
            Ok(())
        }
        Command::Verify { tier, out } => {
            let tier = match tier {
                TierArg::Fast => Tier::Fast,
                TierArg::Heavy => Tier::Heavy,
            };
            let checks = run_golden(tier, &Expectations::default());
            for c in &checks {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            emit(&out, &report_json(&checks))?;
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(Failure::Golden)
            }
        }
        Command::Pfaffian { n, ell, characteristic, dim, gram, complexified, out } => {
            let middle = match (dim, gram) {
                (Some(d), None) => Middle::Dimension(d),
                (None, Some(g)) => {
                    if characteristic != 0 {
                        return Err(Failure::Usage("--gram needs --char 0".into()));
                    }
                    let g = parse_gram(&g)?;
                    if complexified {
                        Middle::Complex(g)
                    } else {
                        Middle::Real(g)
                    }
                }
                _ => return Err(Failure::Usage("give exactly one of --dim and --gram".into())),
            };
            let d = pfaffian_decision(n, ell, characteristic, &middle)?;
            emit(&out, &json!({"n": n, "ell": ell, "char": characteristic, "result": d.to_json()}))
        }
        Command::Degree { space, d, out } => {
            let (n, p) = match space {
                Space::P5 => (5, 3),
                Space::P7 => (7, 4),
            };
            let deg = chern_degree(n, p, d)?;
            emit(&out, &json!({"space": format!("P{n}"), "copies": d, "degree": i64::try_from(deg).map_err(|_| Failure::Degenerate("degree overflows i64".into()))?}))
        }
        Command::Hilbert { shape, out } => {
            let (n, s) = match shape {
                Space::P5 => (5, ResolutionShape::p5()),
                Space::P7 => (7, ResolutionShape::p7()),
            };
            let h = hilbert_polynomial_from_shape(&s, n);
            emit(
                &out,
                &json!({
                    "shape": format!("P{n}"),
                    "coefficients": h.to_json(),
                    "binomial_coefficients": h.binomial_coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_DEGENERATE)
        }
        Err(Failure::Golden) => ExitCode::from(EXIT_GOLDEN),
    }
}
