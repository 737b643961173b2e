use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qlin_cli::commands::{cmd_bialgebra, cmd_det, cmd_hom, cmd_object, cmd_pbw, cmd_yb};
use qlin_cli::{CliError, Form, ObjectSpecFile, Report};
use qlin_core::QuantumObject;

/// Exact computations with quantum superspaces and their hom-algebras.
#[derive(Parser)]
#[command(name = "qlin", version)]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an object file and print its component dimensions.
    Object { file: PathBuf },
    /// List the defining relations of the hom-algebra.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        form: Form,
    },
    /// Decide the PBW property.
    Pbw {
        source: PathBuf,
        target: PathBuf,
        /// Highest degree for the dimension oracle.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Compare exact quotient dimensions with the classical ones.
        #[arg(long)]
        oracle: bool,
    },
    /// Check the braid relation for the operators B±.
    Yb { file: PathBuf },
    /// Check comultiplication, coassociativity and counit on a chain.
    Bialgebra {
        first: PathBuf,
        second: PathBuf,
        third: PathBuf,
    },
    /// Quantum determinant of 2×2 hom-algebras.
    Det {
        #[arg(num_args = 2..=3, required = true)]
        files: Vec<PathBuf>,
    },
}

fn load(path: &Path) -> Result<(String, QuantumObject), CliError> {
    let in_file = |e| match e {
        CliError::Invalid {
            path: field,
            message,
        } => CliError::Invalid {
            path: format!("{}: {field}", path.display()),
            message,
        },
        other => other,
    };
    let spec = ObjectSpecFile::load(path).map_err(in_file)?;
    let obj = spec.to_object().map_err(in_file)?;
    Ok((spec.name, obj))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Object { file } => {
            let (name, obj) = load(file)?;
            Ok(cmd_object(&obj, &name))
        }
        Command::Hom {
            source,
            target,
            form,
        } => cmd_hom(&load(source)?.1, &load(target)?.1, *form),
        Command::Pbw {
            source,
            target,
            degree,
            oracle,
        } => {
            if *degree < 2 {
                return Err(CliError::Invalid {
                    path: "--degree".into(),
                    message: "degree must be at least 2".into(),
                });
            }
            cmd_pbw(&load(source)?.1, &load(target)?.1, *degree, *oracle)
        }
        Command::Yb { file } => cmd_yb(&load(file)?.1),
        Command::Bialgebra {
            first,
            second,
            third,
        } => cmd_bialgebra(&[load(first)?.1, load(second)?.1, load(third)?.1]),
        Command::Det { files } => {
            let objects = files
                .iter()
                .map(|f| load(f).map(|x| x.1))
                .collect::<Result<Vec<_>, _>>()?;
            cmd_det(&objects)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON value")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
