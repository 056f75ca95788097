use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use twofusion::cli::commands::{fusion_compare, group_info};
use twofusion::cli::manifest::Tier;
use twofusion::cli::runner::{load_manifest, run_suite, RunOptions};
use twofusion::Error;

#[derive(Parser)]
#[command(name = "twofusion", version, about = "2-fusion systems of small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run or list the checks of a manifest.
    Verify {
        #[command(subcommand)]
        action: Verify,
    },
    /// Facts about one group.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Compare fusion systems.
    Fusion {
        #[command(subcommand)]
        action: FusionCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Standard,
    Long,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Fast => Tier::Fast,
            TierArg::Standard => Tier::Standard,
            TierArg::Long => Tier::Long,
        }
    }
}

#[derive(Subcommand)]
enum Verify {
    Run {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        tier: TierArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, env = "TWOFUSION_CACHE")]
        cache: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run a single check.
        #[arg(long)]
        id: Option<String>,
    },
    List {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info {
        #[arg(long)]
        spec: String,
        #[arg(long, env = "TWOFUSION_CACHE")]
        cache: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FusionCmd {
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> twofusion::Result<u8> {
    match cli.command {
        Command::Verify {
            action:
                Verify::Run {
                    manifest,
                    tier,
                    workers,
                    cache,
                    json,
                    id,
                },
        } => {
            let m = load_manifest(&manifest)?;
            let opts = RunOptions {
                manifest_path: manifest,
                tier: tier.into(),
                workers,
                cache_dir: cache,
                only: id,
            };
            let report = run_suite(&m, &opts)?;
            print!("{}", report.summary());
            if let Some(path) = json {
                std::fs::write(path, report.to_json()? + "\n")?;
            }
            Ok(report.exit_code() as u8)
        }
        Command::Verify {
            action: Verify::List { manifest },
        } => {
            let m = load_manifest(&manifest)?;
            let mut out = std::io::stdout().lock();
            for c in m.sorted() {
                if writeln!(out, "{:<40} {:<9} {}", c.id, c.tier.to_string(), c.anchor).is_err() {
                    break;
                }
            }
            Ok(0)
        }
        Command::Group {
            action: GroupCmd::Info { spec, cache },
        } => {
            let info = group_info(&spec, cache.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&info)?);
            Ok(0)
        }
        Command::Fusion {
            action: FusionCmd::Compare { a, b, json },
        } => {
            let c = fusion_compare(&a, &b)?;
            match &c.reason {
                Some(r) => println!("{}: F({a}) vs F({b}): {r}", c.outcome),
                None => println!(
                    "{}: F({a}) vs F({b}), certificate verified: {}",
                    c.outcome,
                    c.verified.unwrap_or(false)
                ),
            }
            if let Some(path) = json {
                std::fs::write(path, serde_json::to_string_pretty(&c)? + "\n")?;
            }
            let ok = c.decided() && c.verified != Some(false);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse { .. } | Error::UnknownOperation { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
