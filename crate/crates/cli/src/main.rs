//! `orbitforge` command-line front end.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orbitforge::algebra::{Domain, Scalar};
use orbitforge::diagram::{classify, DiagramJson, RenderStyle};
use orbitforge::ideal::{generator_set, orbit_dim, polarization, stabilizer_dim, xsigma_point, XSigmaPoint};
use orbitforge::involution::Involution;
use orbitforge::orbit::{survey, verify_generators, OrbitReport, VerifyOptions, DEFAULT_LIMIT};

#[derive(Parser)]
#[command(name = "orbitforge", version, about = "Coadjoint orbits of UT(n) attached to involutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the admissible diagram.
    Diagram {
        #[command(flatten)]
        common: Common,
        /// Print row and column indices.
        #[arg(long)]
        labels: bool,
    },
    /// Print the generators of the defining ideal.
    Generators {
        #[command(flatten)]
        common: Common,
        /// Comma-separated nonzero values of f on the transposition roots (default: all 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<i64>>,
        /// Compute the constants D_m(f) over F_p instead of Q.
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Print the polarization basis.
    Polarization {
        #[command(flatten)]
        common: Common,
    },
    /// Print the orbit dimension.
    Dim {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the orbit over F_p and check the generators on it.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<i64>>,
        #[command(flatten)]
        run: RunArgs,
        /// Add 1 to the expected constant of the first generator.
        #[arg(long, hide = true)]
        perturb_constant: bool,
    },
    /// Run verify with unit values on every involution of S_n.
    Survey {
        /// Size of the permutation group.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=63))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct Common {
    /// Size of the permutation group.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=63))]
    n: u64,
    /// Involution in cycle notation, e.g. "(1,4)(2,7)(3,6)"; empty for the identity.
    #[arg(long, default_value = "")]
    sigma: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 2)]
    prime: u32,
    /// Seed for the random group elements of the invariance check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random group elements.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Maximum number of orbit points to hold.
    #[arg(long, env = "ORBITFORGE_LIMIT", default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

impl RunArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            limit: self.limit,
            seed: self.seed,
            samples: self.samples,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Unicode,
}

impl Common {
    fn sigma(&self) -> Result<Involution, String> {
        Involution::parse(&self.sigma, self.n as usize).map_err(|e| format!("--sigma: {e}"))
    }
}

/// Exit status of a subcommand that ran to completion.
enum Outcome {
    Passed,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    println!("{}", serde_json::to_string(value).map_err(|e| e.to_string())?);
    Ok(())
}

fn point(sigma: &Involution, values: Option<&[i64]>, prime: Option<u32>) -> Result<XSigmaPoint, String> {
    let domain = prime.map_or(Domain::Rational, Domain::Fp);
    let Some(values) = values else {
        if let Some(p) = prime {
            Scalar::fp(1, p).map_err(|e| format!("--prime: {e}"))?;
        }
        return Ok(XSigmaPoint::unit(sigma, domain));
    };
    let scalars = values
        .iter()
        .map(|&v| match prime {
            Some(p) => Scalar::fp(v, p).map_err(|e| format!("--prime: {e}")),
            None => Ok(Scalar::int(v)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    xsigma_point(sigma, scalars).map_err(|e| format!("--values: {e}"))
}

#[derive(Serialize)]
struct DiagramOut {
    sigma: String,
    #[serde(flatten)]
    diagram: DiagramJson,
}

#[derive(Serialize)]
struct CellOut {
    row: usize,
    col: usize,
}

#[derive(Serialize)]
struct PolarizationOut {
    n: usize,
    sigma: String,
    dim: usize,
    codim: usize,
    subalgebra: bool,
    isotropic: bool,
    basis: Vec<CellOut>,
}

#[derive(Serialize)]
struct DimOut {
    n: usize,
    sigma: String,
    dim: usize,
    length: usize,
    reflections: usize,
    stabilizer_dim: usize,
}

#[derive(Serialize)]
struct SurveyOut<'a> {
    n: usize,
    p: u32,
    seed: u64,
    total: usize,
    passed: usize,
    reports: &'a [OrbitReport],
}

fn print_report(report: &OrbitReport) {
    println!("{}", report.summary_line());
    for g in &report.generators {
        println!(
            "  {:<8} {:<4} expected {} on orbit, {} failing points: {}",
            g.label,
            if g.holds { "ok" } else { "FAIL" },
            g.expected,
            g.failures,
            g.poly
        );
    }
    println!("  orbit size {} (p^dim = {})", report.orbit_size, report.expected_size);
    println!("  points of X_sigma in orbit: {} (only f: {})", report.xsigma_hits, report.xsigma_is_f);
    println!(
        "  invariance under {} random g: {} mismatches",
        report.samples, report.sample_mismatches
    );
    println!("  seed: {}", report.seed);
    println!("  {}", report.caveat);
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Diagram { common, labels } => {
            let sigma = common.sigma()?;
            let d = classify(&sigma);
            match common.format {
                Format::Json => print_json(&DiagramOut {
                    sigma: sigma.to_string(),
                    diagram: d.export(),
                })?,
                Format::Text | Format::Unicode => {
                    let style = if common.format == Format::Unicode {
                        RenderStyle::Unicode
                    } else {
                        RenderStyle::Ascii
                    };
                    let text = if labels { d.render_labeled(style) } else { d.render(style) };
                    print!("{text}");
                }
            }
        }
        Command::Generators { common, values, prime } => {
            let sigma = common.sigma()?;
            let f = point(&sigma, values.as_deref(), prime)?;
            let set = generator_set(&f).map_err(|e| e.to_string())?;
            match common.format {
                Format::Json => print_json(&set.to_json())?,
                Format::Text | Format::Unicode => {
                    for g in &set.generators {
                        match g.m {
                            Some(_) => println!("{} = {}  (value {})", g.label(), g.poly, g.expected),
                            None => println!("{} = {}", g.label(), g.poly),
                        }
                    }
                }
            }
        }
        Command::Polarization { common } => {
            let sigma = common.sigma()?;
            let pol = polarization(&sigma);
            let out = PolarizationOut {
                n: pol.n,
                sigma: sigma.to_string(),
                dim: pol.dim(),
                codim: pol.codim(),
                subalgebra: pol.is_subalgebra(),
                isotropic: pol.is_isotropic(&sigma),
                basis: pol.basis.iter().map(|r| CellOut { row: r.i, col: r.j }).collect(),
            };
            match common.format {
                Format::Json => print_json(&out)?,
                Format::Text | Format::Unicode => {
                    let names: Vec<String> = out.basis.iter().map(|c| format!("y[{},{}]", c.row, c.col)).collect();
                    println!("{}", names.join(" "));
                    println!("dim {} codim {}", out.dim, out.codim);
                }
            }
        }
        Command::Dim { common } => {
            let sigma = common.sigma()?;
            let out = DimOut {
                n: sigma.n(),
                sigma: sigma.to_string(),
                dim: orbit_dim(&sigma),
                length: sigma.length(),
                reflections: sigma.reflection_count(),
                stabilizer_dim: stabilizer_dim(&sigma),
            };
            match common.format {
                Format::Json => print_json(&out)?,
                Format::Text | Format::Unicode => println!("{}", out.dim),
            }
        }
        Command::Verify {
            common,
            values,
            run,
            perturb_constant,
        } => {
            let sigma = common.sigma()?;
            let f = point(&sigma, values.as_deref(), Some(run.prime))?;
            let mut set = generator_set(&f).map_err(|e| e.to_string())?;
            if perturb_constant {
                set.perturb_first_constant();
            }
            let report = verify_generators(&f, &set, run.prime, &run.options()).map_err(|e| e.to_string())?;
            match common.format {
                Format::Json => print_json(&report)?,
                Format::Text | Format::Unicode => print_report(&report),
            }
            return Ok(if report.passed { Outcome::Passed } else { Outcome::Failed });
        }
        Command::Survey { n, format, run } => {
            let n = n as usize;
            let reports = survey(n, run.prime, &run.options()).map_err(|e| e.to_string())?;
            let passed = reports.iter().filter(|r| r.passed).count();
            match format {
                Format::Json => print_json(&SurveyOut {
                    n,
                    p: run.prime,
                    seed: run.seed,
                    total: reports.len(),
                    passed,
                    reports: &reports,
                })?,
                Format::Text | Format::Unicode => {
                    for r in &reports {
                        println!("{}", r.summary_line());
                    }
                    println!("{passed}/{} involutions passed (seed {})", reports.len(), run.seed);
                }
            }
            return Ok(if passed == reports.len() { Outcome::Passed } else { Outcome::Failed });
        }
    }
    Ok(Outcome::Passed)
}
