use std::io::Write;

use clap::Args;
use num_rational::BigRational;

use super::Outcome;
use crate::error::Result;
use crate::exact::{CubeSpec, TheoremId};
use crate::montecarlo::{estimate_theorem, SamplerConfig};
use crate::rational::parse_rational;

/// Sampling flags shared by the Monte Carlo commands.
#[derive(Debug, Clone, Args)]
pub struct SamplerArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, env = "HYPERLENS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Failure probability of the sampling margin.
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,
}

impl SamplerArgs {
    pub fn config(&self) -> SamplerConfig {
        let default = SamplerConfig::default();
        SamplerConfig {
            seed: self.seed,
            samples: self.samples,
            workers: self.workers.unwrap_or(default.workers),
            delta: self.delta,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TheoremArgs {
    #[arg(long)]
    pub id: TheoremId,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Exponent η in (0, 1/2), decimal or fraction.
    #[arg(long, default_value = "1/4")]
    pub eta: String,
    /// Exponent γ (angle theorem only).
    #[arg(long)]
    pub gamma: Option<String>,
    /// origin, vertex, center or coords:x1,...,xd
    #[arg(long, default_value = "origin")]
    pub anchor: String,
    #[command(flatten)]
    pub sampler: SamplerArgs,
}

pub(crate) fn parse_gamma(text: Option<&str>) -> Result<Option<BigRational>> {
    text.map(parse_rational).transpose()
}

/// Runs one theorem check and prints its verdict as a JSON line.
pub fn cmd_theorem(args: &TheoremArgs, out: &mut dyn Write) -> Result<Outcome> {
    let spec = CubeSpec::new(args.d, args.n)?;
    let anchor = super::parse_anchor(&args.anchor, &spec)?;
    let eta = parse_rational(&args.eta)?;
    let gamma = parse_gamma(args.gamma.as_deref())?;
    let verdict = estimate_theorem(
        args.id,
        &spec,
        &anchor,
        &eta,
        gamma.as_ref(),
        &args.sampler.config(),
    )?;
    writeln!(out, "{}", serde_json::to_string(&verdict)?)?;
    Ok(if verdict.pass {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}
