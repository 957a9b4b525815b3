//! `vague`: check, evaluate and export vague membership files.
//!
//! Exit codes: 0 on success, 1 when a check ran but its verdict failed
//! (axiom violation, property counterexample), 2 on usage or IO errors.

mod props;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use props::{verify_props, PropConfig};
use vague_core::expr::parse_expr;
use vague_core::io::{
    format_sig, load_document, load_space, load_space_model, save_product, to_json_string,
    write_cdf_csv, write_fuzzy_set_csv, Document, IoError, LoadedSpace, ProductFile,
};
use vague_core::partition::{PartitionError, PartitionReport, VaguePartition};
use vague_core::sample::SampleError;
use vague_core::space::{AxiomProfile, AxiomReport, MembershipSpace, SpaceError};
use vague_core::variables::{balanced_value, cdf, cdf_curve, VagueVariable, VariableError};
use vague_core::{ExprError, DEFAULT_TOLERANCE};

#[derive(Parser)]
#[command(
    name = "vague",
    version,
    about = "Axiom checks, evaluation, distribution functions and fuzzy-set export for vague membership files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of every sample point in a file.
    Check {
        file: PathBuf,
        /// Additionally require the arithmetic sum bound.
        #[arg(long)]
        strict: bool,
        /// Comparison tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Evaluate an expression at one sample point.
    Eval {
        file: PathBuf,
        /// Universe sample to evaluate at (optional for one-sample files).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Expression in the attribute DSL.
        #[arg(long)]
        expr: String,
    },
    /// Conditional membership degree of --expr given --given.
    Residuum {
        file: PathBuf,
        /// Universe sample; without it, the minimum over all samples.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Antecedent expression.
        #[arg(long)]
        given: String,
        /// Consequent expression.
        #[arg(long)]
        expr: String,
    },
    /// Membership-degree distribution function of a variable as CSV.
    Cdf {
        file: PathBuf,
        /// Variable name from the file.
        #[arg(long)]
        variable: String,
        /// Universe sample (optional for one-sample files).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Evaluate at one threshold (a real, `inf` or `-inf`) instead
        /// of emitting the whole curve.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Emit rows over `min:max:step` thresholds instead of the
        /// breakpoint curve.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(short)]
        out: Option<PathBuf>,
    },
    /// Balanced value of a variable.
    Balanced {
        file: PathBuf,
        #[arg(long)]
        variable: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
    /// Fuzzy set of one attribute as CSV rows x,mu.
    Fuzzyset {
        file: PathBuf,
        #[arg(long)]
        attribute: String,
        #[arg(short)]
        out: Option<PathBuf>,
    },
    /// Degree of separation of the partition.
    Separation { file: PathBuf },
    /// Compose two space files into a product file.
    Product {
        left: PathBuf,
        right: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(short)]
        out: Option<PathBuf>,
    },
    /// Property harness over randomized valid degree tables.
    #[command(name = "verify-props")]
    VerifyProps {
        file: PathBuf,
        /// Number of sampled spaces.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Random seed; identical seeds give identical output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Sample under the strict profile.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Variable(#[from] VariableError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("{0}")]
    Usage(String),
    #[error("write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if matches!(err, CliError::Usage(_)) {
                eprintln!("run `vague --help` for usage");
            }
            ExitCode::from(2)
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Writes to `-o` when given, stdout otherwise.
fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        None => {
            print!("{contents}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => fs::write(path, contents).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
    }
}

fn pick_space(loaded: &LoadedSpace, x: Option<f64>) -> Result<&MembershipSpace, CliError> {
    match x {
        Some(x) => Ok(loaded.partition.space_at(x)?),
        None => loaded.single_space().ok_or_else(|| {
            usage(format!(
                "the file has {} sample points; pass --x to choose one",
                loaded.partition.len()
            ))
        }),
    }
}

fn pick_variable<'a>(loaded: &'a LoadedSpace, name: &str) -> Result<&'a VagueVariable, CliError> {
    loaded.variables.get(name).ok_or_else(|| {
        let known: Vec<&str> = loaded.variables.keys().map(String::as_str).collect();
        usage(format!(
            "no variable named `{name}` in the file (known: {})",
            if known.is_empty() {
                "none".to_string()
            } else {
                known.join(", ")
            }
        ))
    })
}

fn effective_profile(file_profile: AxiomProfile, strict_flag: bool) -> AxiomProfile {
    if strict_flag {
        AxiomProfile::Strict
    } else {
        file_profile
    }
}

fn degree_line(value: f64) -> String {
    format!("{}\n", format_sig(value, 9))
}

fn describe_report(report: &AxiomReport) -> String {
    let status = if report.passes() {
        "all axioms pass".to_string()
    } else {
        let failed = report.failed().join(", ");
        let witnesses: Vec<String> = report
            .entries()
            .iter()
            .filter(|(label, verdict)| {
                !verdict.passed && (*label != "V'" || report.requires_sum_bound)
            })
            .map(|(label, verdict)| {
                format!(
                    "{label}: {}",
                    verdict.witness.as_deref().unwrap_or("no witness")
                )
            })
            .collect();
        format!("axiom {failed} fail ({})", witnesses.join("; "))
    };
    format!(
        "{status}; {}; {}",
        if report.regular {
            "regular"
        } else {
            "not regular"
        },
        if report.normal {
            "normal"
        } else {
            "not normal"
        }
    )
}

fn describe_partition(out: &mut String, report: &PartitionReport) {
    for (x, axioms) in &report.entries {
        out.push_str(&format!(
            "x = {}: {}\n",
            format_sig(*x, 9),
            describe_report(axioms)
        ));
    }
    let failing = report.failures().count();
    let summary = if failing == 0 {
        "all axioms pass".to_string()
    } else {
        format!(
            "{failing} of {} sample points fail axioms",
            report.entries.len()
        )
    };
    out.push_str(&format!(
        "{summary}; {}; {}\n",
        if report.regular() {
            "regular"
        } else {
            "not regular"
        },
        if report.normal() {
            "normal"
        } else {
            "not normal"
        }
    ));
}

fn check_partition(
    partition: &VaguePartition,
    profile: AxiomProfile,
    tol: f64,
    out: &mut String,
) -> bool {
    let report = partition.check(profile, tol);
    describe_partition(out, &report);
    report.passes()
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Check { file, strict, tol } => {
            let mut out = String::new();
            let ok = match load_document(&file)? {
                Document::Space(space) => {
                    let profile = effective_profile(space.profile, strict);
                    check_partition(&space.partition, profile, tol, &mut out)
                }
                Document::Product { name, components } => {
                    let mut all = true;
                    for component in &components {
                        out.push_str(&format!("component {}:\n", component.name));
                        let profile = effective_profile(component.profile, strict);
                        all &= check_partition(&component.partition, profile, tol, &mut out);
                    }
                    out.push_str(&format!(
                        "product {name}: {}\n",
                        if all {
                            "all components pass"
                        } else {
                            "some components fail"
                        }
                    ));
                    all
                }
                Document::Process(process) => {
                    let profile = effective_profile(process.profile, strict);
                    let mut all = true;
                    for (label, partition) in process
                        .process
                        .labels()
                        .iter()
                        .zip(process.process.partitions())
                    {
                        out.push_str(&format!("step {label}:\n"));
                        all &= check_partition(partition, profile, tol, &mut out);
                    }
                    all
                }
            };
            emit(None, &out)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Eval { file, x, expr } => {
            let loaded = load_space(&file)?;
            let space = pick_space(&loaded, x)?;
            let parsed = parse_expr(&expr, space.omega())?;
            let value = space.evaluate(&parsed)?;
            emit(None, &degree_line(value.value()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Residuum {
            file,
            x,
            given,
            expr,
        } => {
            let loaded = load_space(&file)?;
            let omega = loaded.partition.omega();
            let given = parse_expr(&given, omega)?;
            let target = parse_expr(&expr, omega)?;
            let value = match x {
                Some(x) => loaded
                    .partition
                    .space_at(x)?
                    .conditional_degree(&given, &target)?,
                None => loaded.partition.global_conditional(&given, &target)?,
            };
            emit(None, &degree_line(value.value()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cdf {
            file,
            variable,
            x,
            at,
            grid,
            out,
        } => {
            let loaded = load_space(&file)?;
            let space = pick_space(&loaded, x)?;
            let variable = pick_variable(&loaded, &variable)?;
            if at.is_some() && grid.is_some() {
                return Err(usage("--at and --grid are mutually exclusive"));
            }
            if let Some(at) = at {
                let t = parse_threshold(&at)?;
                let value = cdf(space, variable, t)?;
                emit(out.as_deref(), &degree_line(value.value()))?;
                return Ok(ExitCode::SUCCESS);
            }
            let mut buffer = Vec::new();
            if let Some(grid) = grid {
                let (min, max, step) = parse_grid(&grid)?;
                writeln!(buffer, "threshold,degree").expect("vec write");
                let mut i = 0u64;
                loop {
                    let t = min + i as f64 * step;
                    if t > max + step * 1e-9 {
                        break;
                    }
                    let value = cdf(space, variable, t.min(max))?;
                    writeln!(
                        buffer,
                        "{},{}",
                        format_sig(t.min(max), 9),
                        format_sig(value.value(), 9)
                    )
                    .expect("vec write");
                    i += 1;
                }
            } else {
                let curve = cdf_curve(space, variable)?;
                write_cdf_csv(&mut buffer, &curve, 9).expect("vec write");
            }
            emit(out.as_deref(), &String::from_utf8(buffer).expect("utf8"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Balanced { file, variable, x } => {
            let loaded = load_space(&file)?;
            let space = pick_space(&loaded, x)?;
            let variable = pick_variable(&loaded, &variable)?;
            let value = balanced_value(space, variable)?;
            emit(None, &degree_line(value))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzzyset {
            file,
            attribute,
            out,
        } => {
            let loaded = load_space(&file)?;
            let fuzzy_set = loaded.partition.fuzzy_set_of(&attribute)?;
            let mut buffer = Vec::new();
            write_fuzzy_set_csv(&mut buffer, &fuzzy_set, 9).expect("vec write");
            emit(out.as_deref(), &String::from_utf8(buffer).expect("utf8"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Separation { file } => {
            let loaded = load_space(&file)?;
            emit(
                None,
                &degree_line(loaded.partition.separation_degree().value()),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { left, right, out } => {
            let left_model = load_space_model(&left)?;
            let right_model = load_space_model(&right)?;
            let file = ProductFile {
                name: format!("{} x {}", left_model.name, right_model.name),
                components: vec![left_model, right_model],
            };
            match out {
                Some(path) => save_product(&file, path)?,
                None => emit(None, &to_json_string(&file)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyProps {
            file,
            samples,
            seed,
            tol,
            strict,
        } => {
            let loaded = load_space(&file)?;
            let profile = effective_profile(loaded.profile, strict);
            let config = PropConfig {
                samples,
                seed,
                tol,
                profile,
            };
            let report = verify_props(
                loaded.partition.omega(),
                *loaded.partition.algebra(),
                &config,
            )?;
            let mut out = String::new();
            for line in &report.lines {
                out.push_str(line);
                out.push('\n');
            }
            emit(None, &out)?;
            Ok(if report.failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_threshold(text: &str) -> Result<f64, CliError> {
    match text {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|_| usage(format!("`{other}` is not a real number, `inf` or `-inf`"))),
    }
}

fn parse_grid(text: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("`{text}` is not of the form min:max:step")));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| usage(format!("`{s}` is not a real number")))
    };
    let (min, max, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if !step.is_finite() || step <= 0.0 || min > max {
        return Err(usage(format!("`{text}` is not an ascending grid")));
    }
    Ok((min, max, step))
}
