use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fadeperf::config::{Method, MetricConfig, SweepConfig};
use fadeperf::output::{rule_to_csv, to_csv};
use fadeperf::{sweep, CliError};
use fadeperf_core::specfn::{gauss_hermite_nodes, gcq_nodes};

/// Average error probability and capacity sweeps over fading channels.
#[derive(Parser)]
#[command(name = "fadeperf", version)]
struct Args {
    /// JSON sweep configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// CSV destination; defaults to the config's output_path, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Monte Carlo seed, replacing mc_seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average bit error probability; the config metric must be a BEP row.
    Abep,
    /// Ergodic capacity in nats; the config metric must be the capacity row.
    Capacity,
    /// Unified measure with explicit (a, b, n).
    Aup {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        n: u8,
    },
    /// Monte Carlo only.
    Simulate,
    /// Dump a quadrature rule.
    Nodes {
        #[arg(long, value_enum, default_value_t = Rule::Gcq)]
        rule: Rule,
        /// Number of nodes.
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Gcq,
    Hermite,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(args: Args) -> Result<(), CliError> {
    if let Some(k) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    if let Command::Nodes { rule, n } = args.command {
        let nodes = match rule {
            Rule::Gcq => gcq_nodes(n)?,
            Rule::Hermite => gauss_hermite_nodes(n)?,
        };
        return emit(args.out.as_deref(), &rule_to_csv(nodes.iter()));
    }

    let path = args.config.as_deref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let mut cfg = SweepConfig::load(path)?;
    match args.command {
        Command::Abep if !cfg.metric()?.is_bep() => {
            return Err(CliError::Config(format!("abep needs a BEP metric, got '{}'", cfg.metric.kind)));
        }
        Command::Capacity if !cfg.metric()?.is_capacity() => {
            return Err(CliError::Config(format!("capacity needs the capacity metric, got '{}'", cfg.metric.kind)));
        }
        Command::Aup { a, b, n } => {
            cfg.metric = MetricConfig { kind: "custom".into(), a: Some(a), b: Some(b), n: Some(n) };
        }
        Command::Simulate => cfg.methods = vec![Method::Mc],
        _ => {}
    }
    if let Some(seed) = args.seed {
        cfg.mc_seed = seed;
    }
    cfg.validate()?;

    let rows = sweep::run(&cfg)?;
    let out = args.out.or_else(|| cfg.output_path.as_ref().map(PathBuf::from));
    emit(out.as_deref(), &to_csv(&rows))?;

    let failed: Vec<_> = rows.iter().filter_map(|r| r.outcome.as_ref().err().map(|e| (r, e))).collect();
    for (r, e) in &failed {
        eprintln!("{} dB, {}: {e}", r.snr_db, r.method.name());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical { failed: failed.len(), total: rows.len() })
    }
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::WriteOutput { path: p.into(), source }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::WriteOutput { path: "<stdout>".into(), source })
        }
    }
}
