//! Offline data preparation: enumerates prime triple-point projections and
//! converts a KnotInfo export into the reference table format.

mod knotinfo;
mod projections;

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate prime connected projections with n triple points.
    Projections {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Output directory; files are written to DIR/tb{n}/tb{n}.spd.
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert the KnotInfo knot export ('|'-separated) to the reference CSV.
    Reference {
        #[arg(long)]
        knotinfo: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_crossings: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write `name<TAB>PD code` lines for knots up to this size.
        #[arg(long)]
        pd_out: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        pd_max_crossings: usize,
    },
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Projections { max_n, out } => {
            for n in 1..=max_n {
                let list = projections::prime_projections(n);
                let knots = list.iter().filter(|p| p.is_knot()).count();
                log::info!("n = {n}: {} prime projections, {knots} of knots", list.len());
                let dir = out.join(format!("tb{n}"));
                fs::create_dir_all(&dir)?;
                let path = dir.join(format!("tb{n}.spd"));
                fs::write(&path, projections::render(n, &list)).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Reference { knotinfo, max_crossings, out, pd_out, pd_max_crossings } => {
            let rows = knotinfo::read(&knotinfo, max_crossings)?;
            log::info!("{} knots read", rows.len());
            if let Some(dir) = out.parent() {
                fs::create_dir_all(dir)?;
            }
            fs::write(&out, knotinfo::render_csv(&rows)?)?;
            if let Some(pd) = pd_out {
                fs::write(&pd, knotinfo::render_pd(&rows, pd_max_crossings))?;
            }
        }
    }
    Ok(())
}
