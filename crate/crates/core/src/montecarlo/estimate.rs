use std::ops::Add;

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{anchor_as_integers, draw, draw_until, hoeffding_margin, sample_stream, SamplerConfig};
use crate::error::Result;
use crate::exact::{check_anchor_radius, concentration_bound, Anchor, CubeSpec, TheoremId};
use crate::geometry::{
    isosceles_event, normalized_distance, right_angle_test, similar_conditions_v,
    similar_conditions_w, within, FloatPoint, ShapeTargets, TriangleKind,
};
use crate::rational;

/// Outcome of one sampled theorem check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub spec: CubeSpec,
    pub anchor: String,
    pub eta: f64,
    pub gamma: Option<f64>,
    pub empirical_proportion: f64,
    pub paper_bound: f64,
    pub margin: f64,
    pub pass: bool,
    /// The bound is `≤ 0`, so any proportion satisfies it.
    pub vacuous: bool,
    pub samples_used: u64,
    pub degenerate_rejections: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    hits: u64,
    rejections: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        Tally {
            hits: self.hits + rhs.hits,
            rejections: self.rejections + rhs.rejections,
        }
    }
}

/// Per-thread buffers reused across samples.
struct Scratch {
    p1: Vec<u64>,
    p2: Vec<u64>,
    f1: FloatPoint,
    f2: FloatPoint,
}

impl Scratch {
    fn new(d: usize) -> Self {
        Scratch {
            p1: vec![0; d],
            p2: vec![0; d],
            f1: FloatPoint::from_integers(&vec![0; d]),
            f2: FloatPoint::from_integers(&vec![0; d]),
        }
    }
}

struct Context<'a> {
    theorem: TheoremId,
    spec: &'a CubeSpec,
    anchor_int: Option<Vec<u64>>,
    anchor: FloatPoint,
    targets: ShapeTargets,
    half_width: f64,
    eta: f64,
    gamma: f64,
}

impl Context<'_> {
    fn is_anchor(&self, p: &[u64]) -> bool {
        self.anchor_int.as_deref() == Some(p)
    }

    fn sample(&self, s: &mut Scratch, rng: &mut ChaCha8Rng) -> Result<Tally> {
        let spec = self.spec;
        let population = self.theorem.population();
        let mut rejections = 0;
        let hit = match self.theorem {
            TheoremId::V1 | TheoremId::W1 => {
                draw(spec, population, rng, &mut s.p1);
                s.f1.assign_integers(&s.p1);
                let dist = normalized_distance(spec, &self.anchor, &s.f1)?;
                within(dist, self.targets.anchor_side, self.half_width)
            }
            TheoremId::Acv => {
                draw_until(spec, population, rng, &mut s.p1, &mut rejections, |p| {
                    self.is_anchor(p)
                })?;
                s.f1.assign_integers(&s.p1);
                right_angle_test(spec, &self.anchor, &s.f1, self.gamma)?
            }
            _ => {
                draw_until(spec, population, rng, &mut s.p1, &mut rejections, |p| {
                    self.is_anchor(p)
                })?;
                let first = &s.p1;
                draw_until(spec, population, rng, &mut s.p2, &mut rejections, |p| {
                    self.is_anchor(p) || p == first.as_slice()
                })?;
                s.f1.assign_integers(&s.p1);
                s.f2.assign_integers(&s.p2);
                let (a, f1, f2) = (&self.anchor, &s.f1, &s.f2);
                let event = match self.theorem {
                    TheoremId::VIsosceles => {
                        isosceles_event(TriangleKind::IsoscelesV, spec, a, f1, f2, self.eta)?
                    }
                    TheoremId::WIsosceles => {
                        isosceles_event(TriangleKind::IsoscelesW, spec, a, f1, f2, self.eta)?
                    }
                    TheoremId::VSimilar => {
                        similar_conditions_v(spec, &self.targets, a, f1, f2, self.eta)?
                    }
                    _ => similar_conditions_w(spec, &self.targets, a, f1, f2, self.eta)?,
                };
                event.satisfied
            }
        };
        Ok(Tally {
            hits: u64::from(hit),
            rejections,
        })
    }
}

/// Estimates the proportion of the theorem's event over uniformly drawn
/// tuples and compares it with the bound, allowing the Hoeffding margin.
pub fn estimate_theorem(
    theorem: TheoremId,
    spec: &CubeSpec,
    a: &Anchor,
    eta: &BigRational,
    gamma: Option<&BigRational>,
    config: &SamplerConfig,
) -> Result<Verdict> {
    config.validate()?;
    let bound = concentration_bound(theorem, spec.d, eta, gamma)?;
    check_anchor_radius(theorem, spec, a, &bound)?;
    let gamma_f64 = bound.gamma.as_ref().map(rational::to_f64);
    let ctx = Context {
        theorem,
        spec,
        anchor_int: anchor_as_integers(a),
        anchor: FloatPoint::from_anchor(a)?,
        targets: ShapeTargets::for_population(spec, a, theorem.population())?,
        half_width: bound.half_width,
        eta: rational::to_f64(eta),
        gamma: gamma_f64.unwrap_or(f64::NAN),
    };

    let tally = config.pool()?.install(|| {
        (0..config.samples)
            .into_par_iter()
            .map_init(
                || Scratch::new(spec.d),
                |scratch, i| ctx.sample(scratch, &mut sample_stream(config.seed, i)),
            )
            .try_reduce(Tally::default, |x, y| Ok(x + y))
    })?;

    let empirical = tally.hits as f64 / config.samples as f64;
    let margin = hoeffding_margin(config.samples, config.delta);
    Ok(Verdict {
        theorem,
        spec: *spec,
        anchor: a.describe(spec),
        eta: ctx.eta,
        gamma: gamma_f64,
        empirical_proportion: empirical,
        paper_bound: bound.bound,
        margin,
        pass: empirical >= bound.bound - margin,
        vacuous: bound.is_vacuous(),
        samples_used: config.samples,
        degenerate_rejections: tally.rejections,
        seed: config.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn vacuous_bound_passes_trivially() {
        let s = CubeSpec::new(4, 1).unwrap();
        let v = estimate_theorem(
            TheoremId::WSimilar,
            &s,
            &Anchor::origin(&s),
            &frac(1, 4),
            None,
            &SamplerConfig::new(7, 2000, 2),
        )
        .unwrap();
        assert!(v.paper_bound < 0.0);
        assert!(v.vacuous && v.pass);
        assert!(v.degenerate_rejections > 0);
    }

    #[test]
    fn precondition_is_reported() {
        let s = CubeSpec::new(7, 1).unwrap();
        let err = estimate_theorem(
            TheoremId::VIsosceles,
            &s,
            &Anchor::origin(&s),
            &frac(1, 4),
            None,
            &SamplerConfig::new(1, 10, 1),
        )
        .unwrap_err();
        assert!(err.to_string().contains("requires d ≥ 8"), "{err}");
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let s = CubeSpec::new(12, 3).unwrap();
        let a = Anchor::origin(&s);
        let run = |workers| {
            estimate_theorem(
                TheoremId::WIsosceles,
                &s,
                &a,
                &frac(1, 4),
                None,
                &SamplerConfig::new(5, 3000, workers),
            )
            .unwrap()
        };
        assert_eq!(run(1), run(3));
    }
}
