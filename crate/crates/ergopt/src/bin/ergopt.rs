//! Command-line front end. All numeric work lives in the library; this
//! binary only loads documents, wires parameters and writes the library's
//! rendered output, so its exit-code contract is easy to test:
//!
//! * 0 — computation succeeded (and, for `verify`/`prevalence`, every check
//!   passed)
//! * 1 — a verification check failed
//! * 2 — usage or parse error (bad flags, malformed document, bad interval
//!   or grid)
//! * 3 — degenerate input (no cycles, hence no invariant measures)

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ergopt::error::Error;
use ergopt::experiments::{
    prevalence_line_experiment, verify_document, ClaimSelector, VerifyParams,
};
use ergopt::io::{load_input, InputDocument, SystemDocument};
use ergopt::maxmean::max_cycle_mean_karp;
use ergopt::report::{curve_to_csv, render_max_mean, render_prevalence, render_verify};
use ergopt::weight::parse_rational;
use ergopt::Rational;

#[derive(Parser)]
#[command(
    name = "ergopt",
    version,
    about = "Exact ergodic optimisation over subshifts of finite type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SamplingArgs {
    /// RNG seed for grid sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// number of samples per check family
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// denominator D of the sampling grid {j/D}
    #[arg(long, default_value_t = 10007)]
    grid_denominator: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum ergodic average of a potential (or raw graph weighting),
    /// with a witness periodic orbit
    Beta {
        /// graph or system document (JSON)
        #[arg(long)]
        input: PathBuf,
        /// potential name, for system documents
        #[arg(long, default_value = "f")]
        potential: String,
        /// also write the summary to this file
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact breakpoint/slope table of t -> max ergodic average of (f + t*g)
    Curve {
        /// system document (JSON)
        #[arg(long)]
        input: PathBuf,
        /// base potential name
        #[arg(long, default_value = "f")]
        potential: String,
        /// direction potential name
        #[arg(long, default_value = "g")]
        direction: String,
        /// parameter interval as two exact rationals
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values = ["0", "1"], allow_hyphen_values = true)]
        interval: Vec<String>,
        /// write the CSV table here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the exact verification suite on a document
    Verify {
        /// system document (JSON)
        #[arg(long)]
        input: PathBuf,
        /// which claim to check: all, 1, 2, 3, 4 or diam
        #[arg(long, default_value = "all")]
        claim: String,
        /// base potential name
        #[arg(long, default_value = "f")]
        potential: String,
        /// direction potential name(s); default: every other potential
        #[arg(long)]
        direction: Vec<String>,
        /// parameter interval as two exact rationals
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values = ["0", "1"], allow_hyphen_values = true)]
        interval: Vec<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// write the JSON report here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample lines f + t*g over the rational grid on [0, 1] and record
    /// differentiability and uniqueness per draw
    Prevalence {
        /// system document (JSON)
        #[arg(long)]
        input: PathBuf,
        /// base potential name
        #[arg(long, default_value = "f")]
        potential: String,
        /// direction potential name(s); default: every other potential
        #[arg(long)]
        direction: Vec<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// write the JSON report here
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::EmptyRecurrentPart | Error::DegenerateSystem(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_system(path: &PathBuf) -> Result<SystemDocument, Error> {
    match load_input(path)? {
        InputDocument::System(doc) => Ok(doc),
        InputDocument::Graph(_) => Err(Error::Format(
            "this command needs a system document with named potentials".into(),
        )),
    }
}

fn parse_interval(interval: &[String]) -> Result<(Rational, Rational), Error> {
    let lo = parse_rational(&interval[0])?;
    let hi = parse_rational(&interval[1])?;
    Ok((lo, hi))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    if let Some(path) = output {
        std::fs::write(path, text)
            .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{text}");
    Ok(())
}

fn emit_json<S: serde::Serialize>(
    value: &S,
    human: &str,
    output: Option<&PathBuf>,
) -> Result<(), Error> {
    if let Some(path) = output {
        let json = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Format(format!("serialize: {e}")))?;
        std::fs::write(path, json + "\n")
            .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{human}");
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Beta { input, potential, output } => {
            let text = match load_input(&input)? {
                InputDocument::Graph(graph) => {
                    let result = max_cycle_mean_karp(&graph)?;
                    render_max_mean(&result, &graph, None)
                }
                InputDocument::System(doc) => {
                    let (graph, labels) =
                        doc.system.lift_with_labels(doc.potential(&potential)?)?;
                    let result = max_cycle_mean_karp(&graph)?;
                    render_max_mean(&result, &graph, Some(&labels))
                }
            };
            emit(&text, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve { input, potential, direction, interval, output } => {
            let doc = load_system(&input)?;
            let (lo, hi) = parse_interval(&interval)?;
            let (lifted_base, lifted_dir) =
                doc.system.lift_pair(doc.potential(&potential)?, doc.potential(&direction)?)?;
            let curve = ergopt::curve::compute_curve(&lifted_base, &lifted_dir, &lo, &hi)?;
            emit(&curve_to_csv(&curve), output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, claim, potential, direction, interval, sampling, output } => {
            let doc = load_system(&input)?;
            let selector: ClaimSelector = claim.parse()?;
            let (t_lo, t_hi) = parse_interval(&interval)?;
            let params = VerifyParams {
                seed: sampling.seed,
                samples: sampling.samples,
                grid_denominator: sampling.grid_denominator,
                t_lo,
                t_hi,
            };
            let name = stem(&input);
            let result = verify_document(&doc, &name, &potential, &direction, selector, &params)?;
            emit_json(&result, &render_verify(&result), output.as_ref())?;
            Ok(if result.overall_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Prevalence { input, potential, direction, sampling, output } => {
            let doc = load_system(&input)?;
            let name = stem(&input);
            let report = prevalence_line_experiment(
                &doc,
                &name,
                &potential,
                &direction,
                sampling.samples,
                sampling.grid_denominator,
                sampling.seed,
            )?;
            emit_json(&report, &render_prevalence(&report), output.as_ref())?;
            Ok(if report.overall_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn stem(path: &PathBuf) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
