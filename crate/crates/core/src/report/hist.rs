use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use super::theorem::SamplerArgs;
use super::{parse_anchor, write_atomic, Outcome, RunManifest};
use crate::error::Result;
use crate::exact::CubeSpec;
use crate::montecarlo::{empirical_histogram, Histogram, HistogramQuantity};
use crate::rational::fmt17;

pub const HIST_HEADER: &str = "bin_lo,bin_hi,count";

#[derive(Debug, Clone, Args)]
pub struct HistArgs {
    /// vertex_distance, lattice_distance, pair_distance or cosine
    #[arg(long)]
    pub quantity: HistogramQuantity,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long, default_value = "origin")]
    pub anchor: String,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut csv = String::from(HIST_HEADER);
    csv.push('\n');
    for (k, count) in h.counts.iter().enumerate() {
        let (lo, hi) = h.bin_range(k);
        csv.push_str(&format!("{},{},{count}\n", fmt17(lo), fmt17(hi)));
    }
    csv
}

pub fn cmd_hist(args: &HistArgs, command_line: &[String], out: &mut dyn Write) -> Result<Outcome> {
    let spec = CubeSpec::new(args.d, args.n)?;
    let anchor = parse_anchor(&args.anchor, &spec)?;
    let config = args.sampler.config();
    let h = empirical_histogram(args.quantity, &spec, &anchor, args.bins, &config)?;
    let csv = histogram_csv(&h);
    match &args.out {
        Some(path) => {
            write_atomic(path, csv.as_bytes())?;
            RunManifest::new(
                command_line,
                config.seed,
                vec![spec],
                vec![args.anchor.clone()],
            )
            .write_beside(path)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(Outcome::Success)
}
