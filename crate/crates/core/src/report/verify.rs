use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::Args;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{random_interior_anchor, Outcome};
use crate::error::{Error, Result};
use crate::exact::{moments, sigma, Anchor, CubeSpec, Population};
use crate::montecarlo::sample_stream;
use crate::oracle::{brute_moments, brute_sigma, enumerate_population, EnumerationBudget};
use crate::rational;

/// Random rational anchors added to every grid.
pub const GRID_RANDOM_ANCHORS: usize = 25;
/// Largest dimension for which a grid includes every vertex as an anchor.
pub const GRID_VERTEX_DMAX: usize = 6;

/// Which anchors are checked for each cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorSet {
    /// All vertices (for `d ≤ 6`), the center, and 25 random rational points.
    Grid,
    /// The center and `k` random rational points.
    Random(usize),
}

impl FromStr for AnchorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "grid" {
            return Ok(AnchorSet::Grid);
        }
        s.strip_prefix("random:")
            .and_then(|k| k.parse().ok())
            .map(AnchorSet::Random)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown anchor set {s:?}, expected grid or random:K"
                ))
            })
    }
}

impl fmt::Display for AnchorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnchorSet::Grid => f.write_str("grid"),
            AnchorSet::Random(k) => write!(f, "random:{k}"),
        }
    }
}

/// The anchors checked for `spec`. Random points come from a stream keyed by
/// `(d, N)`, so each cube gets the same anchors whatever the loop bounds.
pub fn anchor_set(spec: &CubeSpec, set: AnchorSet, seed: u64) -> Vec<Anchor> {
    let mut anchors = Vec::new();
    let random = match set {
        AnchorSet::Grid => {
            if spec.d <= GRID_VERTEX_DMAX {
                let all =
                    enumerate_population(spec, Population::Vertices, &EnumerationBudget::default())
                        .expect("at most 64 vertices");
                anchors.extend(all.map(|v| {
                    Anchor::new(v.into_iter().map(|x| rational::int(x as i64)).collect())
                        .expect("d ≥ 1")
                }));
            }
            GRID_RANDOM_ANCHORS
        }
        AnchorSet::Random(k) => k,
    };
    anchors.push(Anchor::center(spec));
    let mut rng = sample_stream(seed, ((spec.d as u64) << 32) | spec.n);
    anchors.extend((0..random).map(|_| random_interior_anchor(spec, &mut rng)));
    anchors
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Population to check: vertices or lattice.
    #[arg(long, default_value = "vertices")]
    pub population: Population,
    #[arg(long, default_value_t = 1)]
    pub dmin: usize,
    #[arg(long)]
    pub dmax: usize,
    #[arg(long, default_value_t = 1)]
    pub nmin: u64,
    #[arg(long)]
    pub nmax: u64,
    /// `grid` or `random:K`.
    #[arg(long, default_value = "grid")]
    pub anchors: AnchorSet,
    #[arg(long, env = "HYPERLENS_SEED", default_value_t = 0)]
    pub seed: u64,
}

/// First field where the closed form and the enumeration disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMismatch {
    pub field: &'static str,
    pub closed_form: BigRational,
    pub brute_force: BigRational,
}

/// Compares `A`, `M2`, the nine sigma terms and their total for one anchor.
pub fn compare_with_oracle(
    spec: &CubeSpec,
    population: Population,
    a: &Anchor,
    budget: &EnumerationBudget,
) -> Result<Option<FieldMismatch>> {
    let closed = moments(spec, a, population)?;
    let brute = brute_moments(spec, population, a, budget)?;
    let closed_sigma = sigma(spec, a, population)?;
    let brute_sigma = brute_sigma(spec, population, a, budget)?;
    let pairs = [
        ("A", &closed.average, &brute.average),
        ("M2", &closed.second_moment, &brute.second_moment),
    ]
    .into_iter()
    .chain(
        closed_sigma
            .fields()
            .into_iter()
            .zip(brute_sigma.fields())
            .map(|((field, x), (_, y))| (field, x, y)),
    );
    for (field, x, y) in pairs {
        if x != y {
            return Ok(Some(FieldMismatch {
                field,
                closed_form: x.clone(),
                brute_force: y.clone(),
            }));
        }
    }
    Ok(None)
}

/// Checks the closed-form moments and sigma terms against exhaustive
/// enumeration for every cube and anchor in range, reporting the first
/// difference.
pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    if args.dmin == 0 || args.dmin > args.dmax {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ dmin ≤ dmax, got dmin = {} and dmax = {}",
            args.dmin, args.dmax
        )));
    }
    if args.nmin == 0 || args.nmin > args.nmax {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ nmin ≤ nmax, got nmin = {} and nmax = {}",
            args.nmin, args.nmax
        )));
    }
    let budget = EnumerationBudget::default();
    // the largest cube bounds every other one
    budget.check_points(&CubeSpec::new(args.dmax, args.nmax)?, args.population)?;

    let pop = args.population;
    let mut checked = 0usize;
    for d in args.dmin..=args.dmax {
        for n in args.nmin..=args.nmax {
            let spec = CubeSpec::new(d, n)?;
            let anchors = anchor_set(&spec, args.anchors, args.seed);
            let results: Vec<Option<FieldMismatch>> = anchors
                .par_iter()
                .map(|a| compare_with_oracle(&spec, pop, a, &budget))
                .collect::<Result<_>>()?;
            if let Some((a, m)) = anchors
                .iter()
                .zip(results)
                .find_map(|(a, r)| r.map(|m| (a, m)))
            {
                writeln!(
                    out,
                    "MISMATCH {spec} a={} field={}: closed form {} != brute force {}",
                    a.describe(&spec),
                    m.field,
                    rational::display(&m.closed_form),
                    rational::display(&m.brute_force),
                )?;
                return Ok(Outcome::Failure);
            }
            checked += anchors.len();
            writeln!(out, "ok {spec} population={pop} anchors={}", anchors.len())?;
        }
    }
    writeln!(out, "all {checked} configurations match")?;
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_set_sizes() {
        let s = CubeSpec::new(3, 2).unwrap();
        assert_eq!(anchor_set(&s, AnchorSet::Grid, 0).len(), 8 + 1 + 25);
        let s = CubeSpec::new(7, 2).unwrap();
        assert_eq!(anchor_set(&s, AnchorSet::Grid, 0).len(), 26);
        assert_eq!(anchor_set(&s, AnchorSet::Random(4), 0).len(), 5);
        assert_eq!(
            anchor_set(&s, AnchorSet::Random(4), 9),
            anchor_set(&s, AnchorSet::Random(4), 9)
        );
    }

    #[test]
    fn anchor_set_parsing() {
        assert_eq!("grid".parse::<AnchorSet>().unwrap(), AnchorSet::Grid);
        assert_eq!(
            "random:7".parse::<AnchorSet>().unwrap(),
            AnchorSet::Random(7)
        );
        assert!("random:x".parse::<AnchorSet>().is_err());
    }
}
