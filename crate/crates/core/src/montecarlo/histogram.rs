use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{anchor_as_integers, draw, draw_until, sample_stream, SamplerConfig};
use crate::error::{Error, Result};
use crate::exact::{Anchor, CubeSpec, Population};
use crate::geometry::{cos_angle_at_center, normalized_distance, FloatPoint};

/// The sampled quantity a histogram is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HistogramQuantity {
    /// Normalized distance from the anchor to a random vertex.
    VertexDistance,
    /// Normalized distance from the anchor to a random lattice point.
    LatticeDistance,
    /// Normalized distance between two distinct random lattice points.
    PairDistance,
    /// Cosine of the angle at the center between the anchor and a random vertex.
    Cosine,
}

impl HistogramQuantity {
    pub fn name(self) -> &'static str {
        match self {
            HistogramQuantity::VertexDistance => "vertex_distance",
            HistogramQuantity::LatticeDistance => "lattice_distance",
            HistogramQuantity::PairDistance => "pair_distance",
            HistogramQuantity::Cosine => "cosine",
        }
    }

    /// Value range covered by the bins.
    pub fn range(self) -> (f64, f64) {
        match self {
            HistogramQuantity::Cosine => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }
}

impl fmt::Display for HistogramQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HistogramQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            HistogramQuantity::VertexDistance,
            HistogramQuantity::LatticeDistance,
            HistogramQuantity::PairDistance,
            HistogramQuantity::Cosine,
        ]
        .into_iter()
        .find(|q| q.name() == s)
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown quantity {s:?}, expected vertex_distance, lattice_distance, pair_distance or cosine"
            ))
        })
    }
}

/// Fixed-width bin counts; `edges` has one more entry than `counts`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub quantity: HistogramQuantity,
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub degenerate_rejections: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Index of the fullest bin (the first one on ties).
    pub fn mode_bin(&self) -> usize {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }

    /// `[lo, hi)` of bin `k`; the last bin also holds its upper edge.
    pub fn bin_range(&self, k: usize) -> (f64, f64) {
        (self.edges[k], self.edges[k + 1])
    }
}

fn bin_index(x: f64, lo: f64, hi: f64, bins: usize) -> usize {
    let t = ((x - lo) / (hi - lo) * bins as f64).floor();
    if t <= 0.0 {
        0
    } else {
        (t as usize).min(bins - 1)
    }
}

struct Scratch {
    p1: Vec<u64>,
    p2: Vec<u64>,
    f1: FloatPoint,
    f2: FloatPoint,
    counts: Vec<u64>,
    rejections: u64,
}

/// Samples `config.samples` values of `quantity` and bins them.
pub fn empirical_histogram(
    quantity: HistogramQuantity,
    spec: &CubeSpec,
    a: &Anchor,
    bins: usize,
    config: &SamplerConfig,
) -> Result<Histogram> {
    config.validate()?;
    if bins == 0 {
        return Err(Error::InvalidParameter("bins must be at least 1".into()));
    }
    spec.check(a)?;
    if quantity == HistogramQuantity::Cosine && a.is_center(spec) {
        return Err(Error::Degenerate(
            "the angle at the center is undefined for a = c".into(),
        ));
    }
    let (lo, hi) = quantity.range();
    let anchor = FloatPoint::from_anchor(a)?;
    let anchor_int = anchor_as_integers(a);
    let d = spec.d;

    let value = |s: &mut Scratch, i: u64| -> Result<f64> {
        let rng = &mut sample_stream(config.seed, i);
        match quantity {
            HistogramQuantity::VertexDistance | HistogramQuantity::LatticeDistance => {
                let pop = if quantity == HistogramQuantity::VertexDistance {
                    Population::Vertices
                } else {
                    Population::Lattice
                };
                draw(spec, pop, rng, &mut s.p1);
                s.f1.assign_integers(&s.p1);
                normalized_distance(spec, &anchor, &s.f1)
            }
            HistogramQuantity::PairDistance => {
                draw(spec, Population::Lattice, rng, &mut s.p1);
                let first = &s.p1;
                draw_until(
                    spec,
                    Population::Lattice,
                    rng,
                    &mut s.p2,
                    &mut s.rejections,
                    |p| p == first.as_slice(),
                )?;
                s.f1.assign_integers(&s.p1);
                s.f2.assign_integers(&s.p2);
                normalized_distance(spec, &s.f1, &s.f2)
            }
            HistogramQuantity::Cosine => {
                draw_until(
                    spec,
                    Population::Vertices,
                    rng,
                    &mut s.p1,
                    &mut s.rejections,
                    |p| anchor_int.as_deref() == Some(p),
                )?;
                s.f1.assign_integers(&s.p1);
                cos_angle_at_center(spec, &anchor, &s.f1)
            }
        }
    };

    let parts: Vec<(Vec<u64>, u64)> = config.pool()?.install(|| {
        (0..config.samples)
            .into_par_iter()
            .try_fold(
                || Scratch {
                    p1: vec![0; d],
                    p2: vec![0; d],
                    f1: FloatPoint::from_integers(&vec![0; d]),
                    f2: FloatPoint::from_integers(&vec![0; d]),
                    counts: vec![0; bins],
                    rejections: 0,
                },
                |mut s, i| {
                    let x = value(&mut s, i)?;
                    s.counts[bin_index(x, lo, hi, bins)] += 1;
                    Ok::<_, Error>(s)
                },
            )
            .map(|s| s.map(|s| (s.counts, s.rejections)))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut counts = vec![0; bins];
    let mut rejections = 0;
    for (part, r) in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
        rejections += r;
    }
    let edges = (0..=bins)
        .map(|k| lo + (hi - lo) * k as f64 / bins as f64)
        .collect();
    Ok(Histogram {
        quantity,
        edges,
        counts,
        degenerate_rejections: rejections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binning_edges() {
        assert_eq!(bin_index(0.0, 0.0, 1.0, 10), 0);
        assert_eq!(bin_index(0.1, 0.0, 1.0, 10), 1);
        assert_eq!(bin_index(1.0, 0.0, 1.0, 10), 9);
        assert_eq!(bin_index(-1.0, -1.0, 1.0, 4), 0);
        assert_eq!(bin_index(0.0, -1.0, 1.0, 4), 2);
        assert_eq!(bin_index(0.3, 0.0, 1.0, 1), 0);
    }

    #[test]
    fn counts_sum_to_samples() {
        let s = CubeSpec::new(30, 4).unwrap();
        let a = Anchor::origin(&s);
        for q in [
            "vertex_distance",
            "lattice_distance",
            "pair_distance",
            "cosine",
        ] {
            let q: HistogramQuantity = q.parse().unwrap();
            let h = empirical_histogram(q, &s, &a, 17, &SamplerConfig::new(3, 5000, 4)).unwrap();
            assert_eq!(h.total(), 5000);
            assert_eq!(h.edges.len(), 18);
        }
    }

    #[test]
    fn vertex_distance_mode_near_one_over_root_two() {
        let s = CubeSpec::new(1000, 1).unwrap();
        let h = empirical_histogram(
            HistogramQuantity::VertexDistance,
            &s,
            &Anchor::origin(&s),
            50,
            &SamplerConfig::new(11, 4000, 4),
        )
        .unwrap();
        let (lo, hi) = h.bin_range(h.mode_bin());
        assert!(lo <= std::f64::consts::FRAC_1_SQRT_2 && std::f64::consts::FRAC_1_SQRT_2 < hi);
    }

    #[test]
    fn cosine_at_center_is_rejected() {
        let s = CubeSpec::new(4, 2).unwrap();
        let err = empirical_histogram(
            HistogramQuantity::Cosine,
            &s,
            &Anchor::center(&s),
            4,
            &SamplerConfig::new(1, 10, 1),
        );
        assert!(matches!(err, Err(Error::Degenerate(_))));
    }
}
