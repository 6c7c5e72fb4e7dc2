use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use katoforge::witt::cache::{set_cache_dir, CACHE_ENV};
use katoforge_cli::cache::{self, Report};
use katoforge_cli::session::DEFAULT_PRECISION;
use katoforge_cli::{run_script, RunOptions, Session};

#[derive(Parser)]
#[command(name = "katoforge", version, about = "Exact computations with Witt vectors, Milnor K-groups and Kato cohomology")]
struct Cli {
    /// Print every result as a single-line JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Read statements from this file.
    #[arg(long, global = true)]
    script: Option<PathBuf>,
    /// Directory for Witt structure-polynomial files.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Laurent series precision used when a division has to be truncated.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: i64,
    /// Continue after a failing statement.
    #[arg(long, global = true)]
    keep_going: bool,
    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script (FILE, --script, or standard input).
    Run { file: Option<PathBuf> },
    /// Manage the structure-polynomial cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// Randomized consistency checks.
    Selftest,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Precompute structure polynomials.
    Warm {
        /// Primes to precompute.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        p: Vec<u64>,
        /// Largest Witt length.
        #[arg(long, default_value_t = 3)]
        max_level: usize,
    },
    /// Recompute and byte-compare every cache file.
    Verify,
    /// Delete every cache file.
    Clear,
}

fn run(cli: &Cli, file: Option<&PathBuf>) -> Result<bool, String> {
    let src = match file.or(cli.script.as_ref()) {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            s
        }
    };
    if cli.precision < 1 {
        return Err("precision must be at least 1".into());
    }
    let mut session = Session::new(cli.precision);
    let opts = RunOptions { json: cli.json, keep_going: cli.keep_going };
    run_script(&mut session, &src, opts, &mut io::stdout().lock(), &mut io::stderr().lock()).map_err(|e| e.to_string())
}

fn print_report(r: &Report) -> bool {
    for line in &r.lines {
        println!("{line}");
    }
    r.ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.cache_dir.is_some() {
        set_cache_dir(cli.cache_dir.clone());
    }
    let outcome = match &cli.command {
        None => run(&cli, None),
        Some(Command::Run { file }) => run(&cli, file.as_ref()),
        Some(Command::Cache { action }) => match &cli.cache_dir {
            None => Err(format!("no cache directory: pass --cache-dir or set {CACHE_ENV}")),
            Some(dir) => match action {
                CacheAction::Warm { p, max_level } => cache::warm(dir, p, *max_level),
                CacheAction::Verify => cache::verify(dir),
                CacheAction::Clear => cache::clear(dir),
            }
            .map(|r| print_report(&r))
            .map_err(|e| e.to_string()),
        },
        Some(Command::Selftest) => katoforge_cli::selftest::run(cli.seed)
            .map(|checks| {
                for (name, ok) in &checks {
                    println!("{} {name}", if *ok { "pass" } else { "FAIL" });
                }
                checks.iter().all(|(_, ok)| *ok)
            })
            .map_err(|e| e.to_string()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
