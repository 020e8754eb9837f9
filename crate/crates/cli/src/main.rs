use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paraclass_cli::batch::{batch_status, classify_all, rows_json, rows_text};
use paraclass_cli::generate::generate;
use paraclass_cli::modelfile::model_file_text;
use paraclass_cli::{exit, parse_model, run_any, CliError, Sections};

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "paraclass",
    version,
    about = "Curvature and classification of 3-dimensional left-invariant paracontact metric structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure axioms of a model file.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Full pipeline: identities, operators, classification, φ-symmetry.
    Classify {
        file: PathBuf,
        /// Include connection and curvature components.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Residuals of every structure identity.
    Identities {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a model file for a bundled family.
    Generate {
        /// KGreater, KLess, Heisenberg or General.
        family: String,
        /// λ for KGreater/KLess, c₂ c₃ c₄ for General.
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
        /// Sign of g(e₂, e₂).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i8,
        /// Emit a float-mode file.
        #[arg(long)]
        float: bool,
    },
    /// Summary table over every `*.json` model in a directory.
    ClassifyAll {
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn single(file: &Path, sections: Sections, format: Format) -> Result<i32, CliError> {
    let report = run_any(parse_model(file)?, sections)?;
    emit(&match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    });
    Ok(report.status)
}

/// Picks `--eps` and `--float` out of the parameter list.
fn trailing_generate_flags(
    params: Vec<String>,
    mut eps: i8,
    mut float: bool,
) -> Result<(Vec<String>, i8, bool), CliError> {
    let mut rest = Vec::new();
    let mut it = params.into_iter();
    while let Some(p) = it.next() {
        match p.as_str() {
            "--float" => float = true,
            "--eps" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--eps needs a value".into()))?;
                eps = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("invalid --eps value `{v}`")))?;
            }
            _ => match p.strip_prefix("--eps=") {
                Some(v) => {
                    eps = v
                        .parse()
                        .map_err(|_| CliError::Usage(format!("invalid --eps value `{v}`")))?
                }
                None => rest.push(p),
            },
        }
    }
    Ok((rest, eps, float))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate { file, format } => single(&file, Sections::VALIDATE, format),
        Command::Identities { file, format } => single(&file, Sections::IDENTITIES, format),
        Command::Classify {
            file,
            verbose,
            format,
        } => single(
            &file,
            Sections {
                verbose,
                ..Sections::CLASSIFY
            },
            format,
        ),
        Command::Generate {
            family,
            params,
            eps,
            float,
        } => {
            let (params, eps, float) = trailing_generate_flags(params, eps, float)?;
            let model = generate(&family, &params, eps, float)?;
            emit(&model_file_text(&model.to_json()));
            Ok(exit::OK)
        }
        Command::ClassifyAll { dir, jobs, format } => {
            if jobs == Some(0) {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let rows = classify_all(&dir, jobs)?;
            emit(&match format {
                Format::Text => rows_text(&rows),
                Format::Json => rows_json(&rows),
            });
            Ok(batch_status(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
