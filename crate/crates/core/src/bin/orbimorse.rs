use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbimorse::instance::InstanceFile;
use orbimorse::pipeline;
use orbimorse::{Convention, Error, Report};

#[derive(Parser)]
#[command(name = "orbimorse", version, about = "Orbifold Morse homology with exact rational arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Check every law an instance must satisfy.
    Validate { path: PathBuf },
    /// Boundary matrices, the d^2 check and Betti numbers.
    Homology {
        #[arg(long, value_enum, default_value_t = ConventionArg::Plus)]
        convention: ConventionArg,
        path: PathBuf,
    },
    /// Write the orbit-space instance of a global quotient.
    Derive {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Morse Betti numbers beside those of the triangulated quotient.
    Compare { path: PathBuf },
    /// The bundled instances.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Run {
        /// Run only the instance with this name.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Validate { path } => pipeline::cmd_validate(&InstanceFile::load(path)?),
        Command::Homology { convention, path } => {
            let convention = match convention {
                ConventionArg::Plus => Convention::Plus,
                ConventionArg::Minus => Convention::Minus,
            };
            pipeline::cmd_homology(&InstanceFile::load(path)?, convention)
        }
        Command::Derive { path, out } => {
            let (report, derived) = pipeline::cmd_derive(&InstanceFile::load(path)?)?;
            if let Some(file) = derived {
                std::fs::write(out, file.to_json()).map_err(|e| Error::Io {
                    path: out.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            Ok(report)
        }
        Command::Compare { path } => pipeline::cmd_compare(&InstanceFile::load(path)?),
        Command::Corpus { action: CorpusAction::List } => pipeline::cmd_corpus_list(),
        Command::Corpus {
            action: CorpusAction::Run { filter },
        } => pipeline::cmd_corpus_run(filter.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Csv => print!("{}", report.render_csv()),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
