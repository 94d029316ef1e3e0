use clap::{Parser, Subcommand};
use idoneal::cli::{self, Format, RunConfig, EXIT_INPUT};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "idoneal", version, about = "Idoneal genera, exceptional lattices and Enriques covers")]
struct Args {
    /// Starting precision in bits for certified bounds.
    #[arg(long, global = true, env = "IDONEAL_PRECISION", default_value_t = 128)]
    precision: u32,
    /// Maximum number of isometry tests per genus.
    #[arg(long, global = true, env = "IDONEAL_BUDGET", default_value_t = 1_000_000)]
    budget: u64,
    /// Determinant bound for the rank 2 scan.
    #[arg(long, global = true, env = "IDONEAL_BOUND2", default_value_t = 10_000)]
    bound2: u64,
    /// Directory for the representative cache.
    #[arg(long, global = true, env = "IDONEAL_CACHE")]
    cache: Option<PathBuf>,
    /// Output format: text or records.
    #[arg(long, global = true, env = "IDONEAL_FORMAT", default_value = "text")]
    format: String,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "IDONEAL_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact mass of a positive definite genus (symbol or lattice).
    Mass { input: String },
    /// All idoneal genera of a rank.
    Idoneal {
        rank: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Slender genera of rank n: count and largest determinant.
    Slender { n: usize },
    /// Halves of the exceptional lattices of rank λ.
    ExceptionalEnum {
        #[arg(long)]
        lambda: usize,
    },
    /// Whether a K3 surface with this transcendental lattice covers an Enriques surface.
    EnriquesCheck { lattice: String },
    /// Class representatives of a positive definite genus.
    Reps { input: String },
}

fn run(args: Args) -> idoneal::Result<cli::Output> {
    let cfg = RunConfig {
        precision: args.precision,
        budget: args.budget,
        bound2: args.bound2,
        cache_dir: args.cache,
        format: args.format.parse::<Format>()?,
        jobs: args.jobs,
    };
    cfg.validate()?;
    if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build_global()
            .map_err(|e| idoneal::Error::InvalidArgument(e.to_string()))?;
    }
    match args.command {
        Command::Mass { input } => cli::cmd_mass(&input, &cfg),
        Command::Idoneal { rank, output } => {
            let out = cli::cmd_idoneal(rank, &cfg)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &out.text).map_err(|e| idoneal::Error::Io(format!("{}: {e}", path.display())))?;
                    Ok(cli::Output { text: String::new(), code: out.code })
                }
                None => Ok(out),
            }
        }
        Command::Slender { n } => cli::cmd_slender(n, &cfg),
        Command::ExceptionalEnum { lambda } => cli::cmd_exceptional(lambda, &cfg),
        Command::EnriquesCheck { lattice } => cli::cmd_check(&lattice, &cfg),
        Command::Reps { input } => cli::cmd_reps(&input, &cfg),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
