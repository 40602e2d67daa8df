use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use super::theorem::{parse_gamma, SamplerArgs};
use super::{parse_anchor, parse_list, write_atomic, Outcome, RunManifest};
use crate::error::{Error, Result};
use crate::exact::{CubeSpec, TheoremId};
use crate::montecarlo::estimate_theorem;
use crate::rational::{fmt17, parse_rational};

pub const SWEEP_HEADER: &str = "d,N,eta,gamma,bound,empirical,margin,status";

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub id: TheoremId,
    /// Comma-separated dimensions, e.g. 50,200,800.
    #[arg(long)]
    pub d_list: String,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Comma-separated η values.
    #[arg(long, default_value = "1/4")]
    pub eta_list: String,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long, default_value = "origin")]
    pub anchor: String,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One CSV row per `(d, η)` cell. Cells whose preconditions fail are kept
/// with status `skipped`; the command fails only if some cell fails.
pub fn cmd_sweep(
    args: &SweepArgs,
    command_line: &[String],
    out: &mut dyn Write,
) -> Result<Outcome> {
    let dims = parse_list(&args.d_list, |s| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad dimension {s:?}: {e}")))
    })?;
    let etas = parse_list(&args.eta_list, |s| Ok((s.to_string(), parse_rational(s)?)))?;
    let gamma = parse_gamma(args.gamma.as_deref())?;
    let gamma_text = args.gamma.clone().unwrap_or_default();
    let config = args.sampler.config();

    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    let mut any_failed = false;
    let mut specs = Vec::new();
    for &d in &dims {
        let spec = CubeSpec::new(d, args.n)?;
        specs.push(spec);
        for (eta_text, eta) in &etas {
            let verdict = parse_anchor(&args.anchor, &spec)
                .and_then(|a| estimate_theorem(args.id, &spec, &a, eta, gamma.as_ref(), &config));
            let cells = match verdict {
                Ok(v) => {
                    let status = if v.vacuous {
                        "vacuous"
                    } else if v.pass {
                        "pass"
                    } else {
                        any_failed = true;
                        "fail"
                    };
                    [
                        fmt17(v.paper_bound),
                        fmt17(v.empirical_proportion),
                        fmt17(v.margin),
                        status.into(),
                    ]
                }
                Err(
                    Error::Precondition { .. }
                    | Error::DimensionMismatch { .. }
                    | Error::Degenerate(_),
                ) => [
                    String::new(),
                    String::new(),
                    String::new(),
                    "skipped".into(),
                ],
                Err(e) => return Err(e),
            };
            csv.push_str(&format!(
                "{d},{},{eta_text},{gamma_text},{}\n",
                args.n,
                cells.join(",")
            ));
        }
    }

    match &args.out {
        Some(path) => {
            write_atomic(path, csv.as_bytes())?;
            RunManifest::new(command_line, config.seed, specs, vec![args.anchor.clone()])
                .write_beside(path)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(if any_failed {
        Outcome::Failure
    } else {
        Outcome::Success
    })
}
