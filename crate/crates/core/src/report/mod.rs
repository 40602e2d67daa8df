//! Command implementations behind the `hyperlens` binary.
//!
//! Each `cmd_*` function writes its report to the given writer and returns an
//! [`Outcome`]; [`exit_code`] maps that onto the process exit status:
//! 0 success, 1 verification failure, 2 usage or precondition error.

mod cli;
mod hist;
mod sweep;
mod theorem;
mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Anchor, CubeSpec};
use crate::rational::{self, frac};

pub use cli::{run, Cli, Command};
pub use hist::{cmd_hist, histogram_csv, HistArgs, HIST_HEADER};
pub use sweep::{cmd_sweep, SweepArgs, SWEEP_HEADER};
pub use theorem::{cmd_theorem, SamplerArgs, TheoremArgs};
pub use verify::{
    anchor_set, cmd_verify, compare_with_oracle, AnchorSet, FieldMismatch, VerifyArgs,
};

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(Outcome::Success) => EXIT_SUCCESS,
        Ok(Outcome::Failure) => EXIT_FAILURE,
        Err(_) => EXIT_USAGE,
    }
}

/// Parses `origin`, `vertex` (the all-zeros vertex), `center`, or
/// `coords:x1,…,xd` with rational entries such as `1/2` or `0.75`.
pub fn parse_anchor(text: &str, spec: &CubeSpec) -> Result<Anchor> {
    let anchor = match text {
        "origin" | "vertex" => Anchor::origin(spec),
        "center" => Anchor::center(spec),
        _ => {
            let body = text.strip_prefix("coords:").ok_or_else(|| {
                Error::Parse(format!(
                    "unknown anchor {text:?}, expected origin, vertex, center or coords:x1,...,xd"
                ))
            })?;
            let coords = body
                .split(',')
                .map(|c| rational::parse_rational(c.trim()))
                .collect::<Result<Vec<_>>>()?;
            Anchor::new(coords)?
        }
    };
    spec.check(&anchor)?;
    Ok(anchor)
}

/// A point of `[0, N]^d` whose coordinates are random fractions `p/q` with
/// `1 ≤ q ≤ 12`.
pub fn random_interior_anchor(spec: &CubeSpec, rng: &mut ChaCha8Rng) -> Anchor {
    let n = spec.n as i64;
    let coords = (0..spec.d)
        .map(|_| {
            let q = rng.random_range(1..=12i64);
            let p = rng.random_range(0..=q * n);
            frac(p, q)
        })
        .collect();
    Anchor::new(coords).expect("d ≥ 1")
}

/// Provenance stored next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seed: u64,
    pub specs: Vec<CubeSpec>,
    pub anchors: Vec<String>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub version: String,
}

impl RunManifest {
    pub fn new(
        command_line: &[String],
        seed: u64,
        specs: Vec<CubeSpec>,
        anchors: Vec<String>,
    ) -> Self {
        RunManifest {
            command_line: command_line.to_vec(),
            seed,
            specs,
            anchors,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |t| t.as_secs()),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// `<out>.manifest.json`.
    pub fn sidecar_path(out: &Path) -> PathBuf {
        let mut name = out.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write_beside(&self, out: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        write_atomic(&Self::sidecar_path(out), text.as_bytes())
    }
}

/// Writes through a temporary file in the target directory, then renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !dir.is_dir() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Comma-separated items; blank entries are ignored.
pub(crate) fn parse_list<T>(text: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let items: Vec<T> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(Error::Parse(format!("empty list {text:?}")));
    }
    Ok(items)
}
