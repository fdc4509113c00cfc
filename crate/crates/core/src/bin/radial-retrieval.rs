use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use radial_retrieval::config::Config;
use radial_retrieval::pipeline::{evaluate_store, extract_directory, query_model};
use radial_retrieval::retrieval::Normalization;
use radial_retrieval::synthetic;

#[derive(Parser)]
#[command(version, about = "Global + local radial distance 3D model retrieval")]
struct Cli {
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

/// Overrides applied on top of `--config` (or the defaults).
#[derive(Args)]
struct Settings {
    /// TOML file with any of: delta_phi, delta_theta, local_n, resolution,
    /// recall_levels, normalization.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    delta_phi: Option<f64>,
    #[arg(long, global = true)]
    delta_theta: Option<f64>,
    #[arg(long, global = true)]
    local_n: Option<usize>,
    #[arg(long, global = true)]
    resolution: Option<usize>,
    #[arg(long, global = true)]
    recall_levels: Option<usize>,
    /// per-query or database-max
    #[arg(long, global = true)]
    normalization: Option<Normalization>,
}

impl Settings {
    fn resolve(&self) -> Result<Config> {
        let mut c = match &self.config {
            Some(p) => Config::from_toml_file(p)?,
            None => Config::default(),
        };
        if let Some(v) = self.delta_phi {
            c.delta_phi = v;
        }
        if let Some(v) = self.delta_theta {
            c.delta_theta = v;
        }
        if let Some(v) = self.local_n {
            c.local_n = v;
        }
        if let Some(v) = self.resolution {
            c.resolution = v;
        }
        if let Some(v) = self.recall_levels {
            c.recall_levels = v;
        }
        if let Some(v) = self.normalization {
            c.normalization = v;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extract descriptors of every .off/.obj file under a directory.
    Extract {
        input_dir: PathBuf,
        #[arg(long)]
        store: PathBuf,
    },
    /// Rank the stored models against a query mesh.
    Query {
        model: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
    },
    /// Distance matrix, precision-recall curve and AP for a classified store.
    Evaluate {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        cla: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the seeded sphere/box/cylinder/torus dataset.
    GenSynthetic {
        out_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        per_class: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = cli.settings.resolve()?;
    match cli.command {
        Command::Extract { input_dir, store } => {
            let report = extract_directory(&input_dir, &store, &config.descriptor())
                .with_context(|| format!("extracting {}", input_dir.display()))?;
            println!(
                "extracted {} models into {}",
                report.processed,
                store.display()
            );
            if !report.failures.is_empty() {
                for (path, err) in &report.failures {
                    eprintln!("failed: {}: {err}", path.display());
                }
                return Ok(ExitCode::from(2));
            }
        }
        Command::Query {
            model,
            store,
            top_k,
        } => {
            let entries = query_model(&model, &store, top_k, &config)?;
            println!("rank\tmodel\td\td_global\td_local");
            for (i, e) in entries.iter().enumerate() {
                println!(
                    "{}\t{}\t{:.6}\t{:.6}\t{:.6}",
                    i + 1,
                    e.model_id,
                    e.distance,
                    e.global,
                    e.local
                );
            }
        }
        Command::Evaluate { store, cla, out } => {
            let curve = evaluate_store(&store, &cla, &out, &config)?;
            println!("queries: {}", curve.queries);
            println!("AP: {:.2}%", curve.ap * 100.0);
        }
        Command::GenSynthetic {
            out_dir,
            per_class,
            seed,
        } => {
            let written = synthetic::write_dataset(&out_dir, per_class, seed)?;
            println!("wrote {} files to {}", written.len(), out_dir.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
