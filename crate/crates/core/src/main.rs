use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use diary_core::harness::{run, Command, ExperimentConfig, HarnessError};

#[derive(Parser)]
#[command(name = "diary-embed", version, about = "Diaries, the hexagonal group and its embedding into two trees")]
struct Cli {
    /// Flat `key = value` file; flags given here override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Number of sampled pairs; 0 sweeps every pair.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// paper or custom
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Diary size in custom mode.
    #[arg(long, global = true)]
    kappa: Option<usize>,
    #[arg(long, global = true)]
    sample_len: Option<usize>,
    #[arg(long, global = true)]
    min_distance: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// jsonl or csv
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Freely reduce a word over a1..a3, b1..b3.
    Reduce { word: String },
    /// Shortlex, a-left and b-left forms of an element.
    NormalForm { word: String },
    /// Sphere sizes of the ball of the given radius.
    Ball,
    /// Tree sentences, diary images and bits of one element.
    Embed { word: String },
    /// Alice's diary of a sentence written `ab|cd`.
    Diary { sentence: String },
    /// Check the isometric embedding against the oracle.
    Isometry,
    /// Distortion records for pairs of a ball.
    Distort,
    /// Criterion census for pairs of a ball.
    Classify,
    /// Run the oracle suite.
    Selftest,
}

fn load(cli: &Cli) -> anyhow::Result<Result<ExperimentConfig, HarnessError>> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if let Err(e) = config.apply_text(&text) {
            return Ok(Err(e));
        }
    }
    let flags: [(&str, Option<String>); 9] = [
        ("radius", cli.radius.map(|v| v.to_string())),
        ("samples", cli.samples.map(|v| v.to_string())),
        ("seed", cli.seed.map(|v| v.to_string())),
        ("mode", cli.mode.clone()),
        ("kappa", cli.kappa.map(|v| v.to_string())),
        ("sample-len", cli.sample_len.map(|v| v.to_string())),
        ("min-distance", cli.min_distance.map(|v| v.to_string())),
        ("out", cli.out.as_ref().map(|p| p.display().to_string())),
        ("format", cli.format.clone()),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            if let Err(e) = config.set(key, &value) {
                return Ok(Err(e));
            }
        }
    }
    Ok(Ok(config))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load(&cli) {
        Ok(Ok(config)) => config,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let command = match cli.command {
        Cmd::Reduce { word } => Command::Reduce { word },
        Cmd::NormalForm { word } => Command::NormalForm { word },
        Cmd::Ball => Command::Ball,
        Cmd::Embed { word } => Command::Embed { word },
        Cmd::Diary { sentence } => Command::Diary { sentence, kappa: cli.kappa },
        Cmd::Isometry => Command::Isometry,
        Cmd::Distort => Command::Distort,
        Cmd::Classify => Command::Classify,
        Cmd::Selftest => Command::Selftest,
    };
    let stdout = std::io::stdout();
    match run(&command, &config, &mut stdout.lock()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(violations) => {
            eprintln!("{violations} violation(s)");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
