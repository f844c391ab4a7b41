use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod output;

use config::Config;

/// Light leaves, braid morphisms and Hecke algebra ranks for Bott-Samelson
/// bimodules.
#[derive(Parser)]
#[command(name = "soergel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// τ of (1+T_s1)⋯(1+T_sn) and the graded rank of Hom(θ_word, R).
    Rank(Common),
    /// Light leaves of a word with their path logs and morphisms.
    Leaves {
        #[command(flatten)]
        common: Common,
        /// List every leaf of the tree, not only the light ones.
        #[arg(long)]
        all: bool,
    },
    /// The braid morphism for the two letters given in --word.
    Braid(Common),
    /// Run the structural checks on the configured system and word.
    Verify(Common),
    /// A basis of Hom(θ_word, θ_target).
    Hombasis {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        target: String,
    },
}

#[derive(Args)]
struct Common {
    /// System description; defaults to m(s,r) = 3.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma separated labels or generator indices.
    #[arg(long, default_value = "")]
    word: String,
    #[arg(long, value_enum, default_value_t = Emit::Human)]
    emit: Emit,
    #[arg(long, default_value_t = 4)]
    max_degree: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Human,
    Json,
}

fn load(common: &Common) -> Result<Config, String> {
    match &common.config {
        None => Ok(Config::default_a2()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Config::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn run(cli: Cli) -> Result<(commands::Report, Emit), String> {
    let (common, extra) = match &cli.command {
        Command::Rank(c) | Command::Braid(c) | Command::Verify(c) => (c, None),
        Command::Leaves { common, .. } => (common, None),
        Command::Hombasis { common, target } => (common, Some(target)),
    };
    let cfg = load(common)?;
    let word = cfg.parse_word(&common.word)?;
    let report = match &cli.command {
        Command::Rank(_) => commands::rank(&cfg, &word)?,
        Command::Leaves { all, .. } => commands::leaves(&cfg, &word, *all)?,
        Command::Braid(_) => commands::braid(&cfg, &word)?,
        Command::Verify(c) => commands::verify(&cfg, &word, c.max_degree, c.seed)?,
        Command::Hombasis { .. } => {
            let target = cfg.parse_word(extra.expect("hombasis has a target"))?;
            commands::hombasis(&cfg, &word, &target)?
        }
    };
    Ok((report, common.emit))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, emit)) => {
            match emit {
                Emit::Human => print!("{}", report.human),
                Emit::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
