use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cycle_minion::construction::eta;
use cycle_minion::degree::{degree_vector, largest_odd_n, DegreeMethod};
use cycle_minion::graph::{make_complete, make_cycle, make_dk, Graph};
use cycle_minion::homsearch::{budget_from_env, for_each_polymorphism, sample_polymorphism};
use cycle_minion::minion::{is_in_z_leq_n, FunctionTable, LinearForm};
use cycle_minion::verify::{run_suite, SuiteParams};

/// Polymorphisms of odd cycles into the triangle: enumeration, degrees,
/// construction from linear forms and property verification.
#[derive(Parser)]
#[command(name = "cycle-minion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the n-ary polymorphisms C_k^n -> target as JSON lines.
    Enum {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// K3, C3, Ck:<k>, Dk:<k> or a graph JSON file.
        #[arg(long, default_value = "K3")]
        target: String,
        /// Stop after this many tables.
        #[arg(long)]
        limit: Option<usize>,
        /// Emit this many seeded samples instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coordinate degrees of a polymorphism table C_k^n -> C_3.
    Degrees {
        /// Function table JSON file.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the polymorphism C_k^n -> C_3 of a bounded linear form.
    Eta {
        /// Comma-separated integer coefficients, e.g. 1,-1,1.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<i64>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite and print its report; exits 0 iff every property passed.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Instance count for the seeded parts of a suite.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Global,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Chains,
    UnaryDegree,
    LocalGlobal,
    MinorPreservation,
    Bounding,
    AppendixA,
    EssentialArity,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Chains => "chains",
            Suite::UnaryDegree => "unary-degree",
            Suite::LocalGlobal => "local-global",
            Suite::MinorPreservation => "minor-preservation",
            Suite::Bounding => "bounding",
            Suite::AppendixA => "appendix-a",
            Suite::EssentialArity => "essential-arity",
        }
    }
}

fn parse_target(spec: &str) -> Result<Graph> {
    let param = |s: &str| -> Result<usize> {
        s.parse()
            .with_context(|| format!("bad size in target '{spec}'"))
    };
    let graph = match spec {
        "K3" => make_complete(3)?,
        "C3" => make_cycle(3)?,
        _ if spec.starts_with("Ck:") => make_cycle(param(&spec[3..])?)?,
        _ if spec.starts_with("Dk:") => {
            let k = param(&spec[3..])?;
            make_dk(k, largest_odd_n(k)?)?
        }
        path => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read target graph '{path}'"))?;
            Graph::from_json(&text).with_context(|| format!("in target graph '{path}'"))?
        }
    };
    Ok(graph)
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_enum(
    k: usize,
    n: usize,
    target: &str,
    limit: Option<usize>,
    sample: Option<usize>,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<()> {
    let target = parse_target(target)?;
    let mut w = output(out)?;
    if let Some(samples) = sample {
        let mut count = 0;
        for i in 0..samples.min(limit.unwrap_or(usize::MAX)) {
            match sample_polymorphism(k, n, &target, seed.wrapping_add(i as u64))? {
                Some(f) => {
                    writeln!(w, "{}", f.to_json())?;
                    count += 1;
                }
                None => break,
            }
        }
        writeln!(
            w,
            "{}",
            json!({"count": count, "complete": false, "sampled": true, "seed": seed})
        )?;
        w.flush()?;
        return Ok(());
    }
    let limit = limit.unwrap_or(usize::MAX);
    let mut count = 0usize;
    let mut io_error = None;
    let mut truncated = false;
    if limit > 0 {
        for_each_polymorphism(k, n, &target, budget_from_env(), |f| {
            if let Err(e) = writeln!(w, "{}", f.to_json()) {
                io_error = Some(e);
                return ControlFlow::Break(());
            }
            count += 1;
            if count >= limit {
                truncated = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })?;
    } else {
        truncated = true;
    }
    if let Some(e) = io_error {
        return Err(e.into());
    }
    writeln!(w, "{}", json!({"count": count, "complete": !truncated}))?;
    w.flush()?;
    Ok(())
}

fn cmd_degrees(input: &PathBuf, method: Method, out: &Option<PathBuf>) -> Result<()> {
    let text =
        fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
    let f = FunctionTable::from_json(&text).with_context(|| format!("in {}", input.display()))?;
    let method = match method {
        Method::Auto => DegreeMethod::Auto,
        Method::Global => DegreeMethod::Global,
        Method::Local => DegreeMethod::Local,
    };
    let degrees = degree_vector(&f, method)?;
    let big_n = largest_odd_n(f.domain())?;
    let member = is_in_z_leq_n(&LinearForm::new(degrees.clone()), big_n as i64)?;
    let mut w = output(out)?;
    writeln!(
        w,
        "{}",
        json!({"degrees": degrees, "N": big_n, "in_Z_leq_N": member})
    )?;
    w.flush()?;
    Ok(())
}

fn cmd_eta(coeffs: Vec<i64>, k: usize, out: &Option<PathBuf>) -> Result<()> {
    let table = eta(&LinearForm::new(coeffs), k)?;
    let mut w = output(out)?;
    writeln!(w, "{}", table.to_json())?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Enum {
            k,
            n,
            target,
            limit,
            sample,
            seed,
            out,
        } => {
            cmd_enum(k, n, &target, limit, sample, seed, &out)?;
        }
        Command::Degrees { input, method, out } => cmd_degrees(&input, method, &out)?,
        Command::Eta { coeffs, k, out } => cmd_eta(coeffs, k, &out)?,
        Command::Verify {
            suite,
            k,
            n,
            m,
            l,
            sample,
            seed,
            out,
        } => {
            let params = SuiteParams {
                k,
                n,
                m,
                l,
                samples: sample,
                seed,
            };
            let report = run_suite(suite.name(), &params)?;
            let mut w = output(&out)?;
            writeln!(w, "{}", report.to_json())?;
            w.flush()?;
            if !report.all_passed() {
                for p in report.properties.iter().filter(|p| !p.all_passed()) {
                    eprintln!("FAIL {}: {}/{}", p.id, p.passed, p.instances);
                }
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
