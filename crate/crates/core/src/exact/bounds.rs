//! Effective concentration bounds `1 − c·d^{2η−1}` and the hypotheses each
//! theorem places on `d`, `η`, `γ` and the anchor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{center_distance_sq, Anchor, CubeSpec, Population};
use crate::error::{Error, Result};
use crate::rational::{self, frac, int, MAX_EXACT_EXPONENT};

/// The seven effective concentration statements that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Distances from `a` to single vertices concentrate around `√B_{a,V}`.
    V1,
    /// Triangles `(a, v1, v2)` over vertex pairs are almost isosceles.
    VIsosceles,
    /// Triangles `(a, v1, v2)` over vertex pairs have almost fixed side lengths.
    VSimilar,
    /// Triangles `(a, c, v)` are almost right-angled at the center.
    #[serde(rename = "ACV")]
    Acv,
    /// Distances from `a` to lattice points concentrate around `√B_{a,W}`.
    W1,
    /// Triangles `(a, w1, w2)` over lattice pairs are almost isosceles.
    WIsosceles,
    /// Triangles `(a, w1, w2)` over lattice pairs have almost fixed side lengths.
    WSimilar,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::V1,
        TheoremId::VIsosceles,
        TheoremId::VSimilar,
        TheoremId::Acv,
        TheoremId::W1,
        TheoremId::WIsosceles,
        TheoremId::WSimilar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::V1 => "V1",
            TheoremId::VIsosceles => "VIsosceles",
            TheoremId::VSimilar => "VSimilar",
            TheoremId::Acv => "ACV",
            TheoremId::W1 => "W1",
            TheoremId::WIsosceles => "WIsosceles",
            TheoremId::WSimilar => "WSimilar",
        }
    }

    /// The constant `c` in `1 − c/d^{1−2η}`.
    pub fn constant(self) -> BigRational {
        match self {
            TheoremId::V1 | TheoremId::Acv => int(1),
            TheoremId::VIsosceles => int(2),
            TheoremId::VSimilar => int(3),
            TheoremId::W1 => frac(51, 15),
            TheoremId::WIsosceles => frac(102, 15),
            TheoremId::WSimilar => frac(102, 5),
        }
    }

    pub fn population(self) -> Population {
        match self {
            TheoremId::V1 | TheoremId::VIsosceles | TheoremId::VSimilar | TheoremId::Acv => {
                Population::Vertices
            }
            TheoremId::W1 | TheoremId::WIsosceles | TheoremId::WSimilar => Population::Lattice,
        }
    }

    /// Whether the event is over ordered pairs of population points.
    pub fn is_pair(self) -> bool {
        matches!(
            self,
            TheoremId::VIsosceles
                | TheoremId::VSimilar
                | TheoremId::WIsosceles
                | TheoremId::WSimilar
        )
    }

    fn min_dimension(self) -> Option<usize> {
        match self {
            TheoremId::V1 | TheoremId::W1 | TheoremId::WIsosceles | TheoremId::WSimilar => Some(2),
            TheoremId::VIsosceles => Some(8),
            TheoremId::VSimilar => Some(6),
            TheoremId::Acv => None,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown theorem id {s:?}, expected one of V1, VIsosceles, VSimilar, ACV, W1, WIsosceles, WSimilar"
                ))
            })
    }
}

/// A theorem's guaranteed lower bound and the tolerances defining its event.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationBound {
    pub theorem: TheoremId,
    pub d: usize,
    pub eta: BigRational,
    pub gamma: Option<BigRational>,
    pub constant: BigRational,
    /// `1 − c·d^{2η−1}` when that power of `d` is rational.
    pub bound_exact: Option<BigRational>,
    pub bound: f64,
    /// `d^{−η}` when rational.
    pub half_width_exact: Option<BigRational>,
    pub half_width: f64,
    /// `(√2 + 1)·d^{−γ}`, only for [`TheoremId::Acv`].
    pub cos_threshold: Option<f64>,
}

impl ConcentrationBound {
    /// A bound `≤ 0` holds for every proportion.
    pub fn is_vacuous(&self) -> bool {
        match &self.bound_exact {
            Some(b) => !b.is_positive(),
            None => self.bound <= 0.0,
        }
    }
}

/// `d^p` vs `2^q` for positive `p/q`, i.e. compares `d^{p/q}` with 2.
fn power_vs_two(d: usize, exponent: &BigRational) -> std::cmp::Ordering {
    let p = exponent.numer().to_u64();
    let q = exponent.denom().to_u64();
    match (p, q) {
        (Some(p), Some(q)) if p <= MAX_EXACT_EXPONENT && q <= MAX_EXACT_EXPONENT => {
            let lhs = Pow::pow(BigInt::from(d), p);
            let rhs = Pow::pow(BigInt::from(2), q);
            lhs.cmp(&rhs)
        }
        _ => {
            let lhs = rational::to_f64(exponent) * (d as f64).ln();
            lhs.partial_cmp(&std::f64::consts::LN_2)
                .unwrap_or(std::cmp::Ordering::Less)
        }
    }
}

/// The bound of `theorem` at dimension `d`, after checking its hypotheses on
/// `d`, `η` and (for ACV) `γ`. Vacuous bounds are returned, not rejected.
pub fn concentration_bound(
    theorem: TheoremId,
    d: usize,
    eta: &BigRational,
    gamma: Option<&BigRational>,
) -> Result<ConcentrationBound> {
    let half = frac(1, 2);
    if !eta.is_positive() || *eta >= half {
        return Err(Error::precondition(
            theorem,
            format!("requires 0 < η < 1/2 (got η = {})", rational::display(eta)),
        ));
    }
    if d == 0 {
        return Err(Error::precondition(theorem, "requires d ≥ 1"));
    }
    if let Some(min) = theorem.min_dimension() {
        if d < min {
            return Err(Error::precondition(
                theorem,
                format!("requires d ≥ {min} (got d = {d})"),
            ));
        }
    }

    let mut cos_threshold = None;
    let mut gamma_kept = None;
    if theorem == TheoremId::Acv {
        // d > 2^{1/η}  ⇔  d^η > 2
        if power_vs_two(d, eta) != std::cmp::Ordering::Greater {
            return Err(Error::precondition(
                theorem,
                format!(
                    "requires d > 2^{{1/η}} (got d = {d}, η = {})",
                    rational::display(eta)
                ),
            ));
        }
        let gamma = gamma.ok_or_else(|| Error::precondition(theorem, "requires a value for γ"))?;
        if !gamma.is_positive() {
            return Err(Error::precondition(
                theorem,
                format!("requires γ > 0 (got γ = {})", rational::display(gamma)),
            ));
        }
        // γ ≤ η − log 2 / log d  ⇔  d^{η−γ} ≥ 2
        let gap = eta - gamma;
        if !gap.is_positive() || power_vs_two(d, &gap) == std::cmp::Ordering::Less {
            return Err(Error::precondition(
                theorem,
                format!(
                    "requires γ ≤ η − log 2/log d (got d = {d}, η = {}, γ = {})",
                    rational::display(eta),
                    rational::display(gamma)
                ),
            ));
        }
        let d_gamma = rational::power_f64(d as u64, &-gamma.clone());
        cos_threshold = Some((std::f64::consts::SQRT_2 + 1.0) * d_gamma);
        gamma_kept = Some(gamma.clone());
    }

    let constant = theorem.constant();
    let decay_exponent = int(2) * eta - int(1);
    let decay_exact = rational::exact_power(d as u64, &decay_exponent);
    let bound_exact = decay_exact.as_ref().map(|x| int(1) - &constant * x);
    let bound = match &bound_exact {
        Some(b) => rational::to_f64(b),
        None => {
            1.0 - rational::to_f64(&constant) * (d as f64).powf(rational::to_f64(&decay_exponent))
        }
    };
    let half_width_exact = rational::exact_power(d as u64, &-eta.clone());
    let half_width = match &half_width_exact {
        Some(h) => rational::to_f64(h),
        None => (d as f64).powf(-rational::to_f64(eta)),
    };

    Ok(ConcentrationBound {
        theorem,
        d,
        eta: eta.clone(),
        gamma: gamma_kept,
        constant,
        bound_exact,
        bound,
        half_width_exact,
        half_width,
        cos_threshold,
    })
}

/// Hypotheses on the anchor: matching dimension, inside the cube, and for
/// ACV the radius condition `r_a ≥ d^{γ−η}`.
pub fn check_anchor_radius(
    theorem: TheoremId,
    spec: &CubeSpec,
    anchor: &Anchor,
    bound: &ConcentrationBound,
) -> Result<()> {
    spec.check(anchor)?;
    if !anchor.is_inside(spec) {
        return Err(Error::precondition(
            theorem,
            "requires the anchor to lie inside [0, N]^d",
        ));
    }
    if theorem != TheoremId::Acv {
        return Ok(());
    }
    let gamma = bound
        .gamma
        .as_ref()
        .ok_or_else(|| Error::precondition(theorem, "requires a value for γ"))?;
    let r_sq = center_distance_sq(spec, anchor)?;
    if r_sq.is_zero() {
        return Err(Error::precondition(
            theorem,
            "requires the anchor to differ from the center",
        ));
    }
    // r_a ≥ d^{−(η−γ)}  ⇔  (r_a²)^q · d^{2p} ≥ 1  with η − γ = p/q
    let gap = &bound.eta - gamma;
    let p = gap.numer().to_u64();
    let q = gap.denom().to_u64();
    let holds = match (p, q) {
        (Some(p), Some(q)) if p <= MAX_EXACT_EXPONENT && q <= MAX_EXACT_EXPONENT => {
            let lhs = Pow::pow(r_sq.clone(), q)
                * BigRational::from_integer(Pow::pow(BigInt::from(spec.d), 2 * p));
            lhs >= BigRational::one()
        }
        _ => {
            let r = rational::to_f64(&r_sq).sqrt();
            r >= (spec.d as f64).powf(-rational::to_f64(&gap))
        }
    };
    if !holds {
        return Err(Error::precondition(
            theorem,
            format!(
                "requires r_a ≥ d^{{γ−η}} (got r_a² = {}, d = {})",
                rational::display(&r_sq),
                spec.d
            ),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_constants() {
        let expected = [
            (TheoremId::V1, int(1)),
            (TheoremId::VIsosceles, int(2)),
            (TheoremId::VSimilar, int(3)),
            (TheoremId::Acv, int(1)),
            (TheoremId::W1, frac(51, 15)),
            (TheoremId::WIsosceles, frac(102, 15)),
            (TheoremId::WSimilar, frac(102, 5)),
        ];
        for (t, c) in expected {
            assert_eq!(t.constant(), c, "{t}");
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
    }

    #[test]
    fn v1_at_400() {
        let b = concentration_bound(TheoremId::V1, 400, &frac(1, 4), None).unwrap();
        assert_eq!(b.bound_exact, Some(frac(19, 20)));
        assert_eq!(b.bound, 0.95);
        assert!(!b.is_vacuous());
        // 400^{-1/4} is irrational
        assert!(b.half_width_exact.is_none());
        assert!((b.half_width - 400f64.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn wsimilar_at_100_is_vacuous() {
        let b = concentration_bound(TheoremId::WSimilar, 100, &frac(1, 4), None).unwrap();
        assert_eq!(b.bound_exact, Some(frac(-26, 25)));
        assert!(b.is_vacuous());
    }

    #[test]
    fn w1_at_400() {
        let b = concentration_bound(TheoremId::W1, 400, &frac(1, 4), None).unwrap();
        assert_eq!(b.bound_exact, Some(frac(83, 100)));
    }

    #[test]
    fn dimension_floors() {
        let err = concentration_bound(TheoremId::VIsosceles, 7, &frac(1, 4), None).unwrap_err();
        assert!(err.to_string().contains("requires d ≥ 8"), "{err}");
        assert!(concentration_bound(TheoremId::VIsosceles, 8, &frac(1, 4), None).is_ok());
        let err = concentration_bound(TheoremId::VSimilar, 5, &frac(1, 4), None).unwrap_err();
        assert!(err.to_string().contains("requires d ≥ 6"), "{err}");
        for t in [
            TheoremId::V1,
            TheoremId::W1,
            TheoremId::WIsosceles,
            TheoremId::WSimilar,
        ] {
            assert!(concentration_bound(t, 1, &frac(1, 4), None).is_err());
            assert!(concentration_bound(t, 2, &frac(1, 4), None).is_ok());
        }
    }

    #[test]
    fn eta_range() {
        for eta in [int(0), frac(1, 2), frac(-1, 4), int(1)] {
            let err = concentration_bound(TheoremId::V1, 100, &eta, None).unwrap_err();
            assert!(err.to_string().contains("0 < η < 1/2"), "{err}");
        }
    }

    #[test]
    fn acv_parameters() {
        let b =
            concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), Some(&frac(1, 4))).unwrap();
        let threshold = b.cos_threshold.unwrap();
        assert!((threshold - (2f64.sqrt() + 1.0) / 10.0).abs() < 1e-12);
        assert!((threshold - 0.2414).abs() < 1e-4);
        assert!((b.bound - (1.0 - 10_000f64.powf(2.0 * 0.33 - 1.0))).abs() < 1e-12);
        assert!((b.bound - 0.956).abs() < 1e-3);

        let err = concentration_bound(TheoremId::Acv, 4, &frac(45, 100), Some(&frac(1, 100)))
            .unwrap_err();
        assert!(err.to_string().contains("requires d > 2^{1/η}"), "{err}");
        // 2^{1/η} = 4 exactly at η = 1/2 boundary is excluded by η; d = 16, η = 1/4 gives d = 2^{1/η}
        let err =
            concentration_bound(TheoremId::Acv, 16, &frac(1, 4), Some(&frac(1, 100))).unwrap_err();
        assert!(err.to_string().contains("requires d > 2^{1/η}"), "{err}");
        assert!(concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), None).is_err());
        assert!(
            concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), Some(&int(0))).is_err()
        );
        // η − log2/log d ≈ 0.2547 at d = 10^4
        let err = concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), Some(&frac(26, 100)))
            .unwrap_err();
        assert!(err.to_string().contains("γ ≤ η − log 2/log d"), "{err}");
        assert!(
            concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), Some(&frac(25, 100)))
                .is_ok()
        );
    }

    #[test]
    fn acv_anchor_radius() {
        let spec = CubeSpec::new(10_000, 2).unwrap();
        let b =
            concentration_bound(TheoremId::Acv, 10_000, &frac(33, 100), Some(&frac(1, 4))).unwrap();
        check_anchor_radius(TheoremId::Acv, &spec, &Anchor::origin(&spec), &b).unwrap();
        assert!(check_anchor_radius(TheoremId::Acv, &spec, &Anchor::center(&spec), &b).is_err());
        // one coordinate off the center: r_a² = 1/(4d), far below d^{2(γ−η)}
        let mut coords = Anchor::center(&spec).coords().to_vec();
        coords[0] = int(0);
        let near = Anchor::new(coords).unwrap();
        let err = check_anchor_radius(TheoremId::Acv, &spec, &near, &b).unwrap_err();
        assert!(err.to_string().contains("r_a ≥ d^{γ−η}"), "{err}");
    }

    #[test]
    fn anchors_must_be_inside() {
        let spec = CubeSpec::new(3, 2).unwrap();
        let b = concentration_bound(TheoremId::V1, 3, &frac(1, 4), None).unwrap();
        let outside = Anchor::from_integers(&[0, 3, 1]).unwrap();
        assert!(check_anchor_radius(TheoremId::V1, &spec, &outside, &b).is_err());
        let inside = Anchor::new(vec![frac(1, 2), int(2), int(0)]).unwrap();
        check_anchor_radius(TheoremId::V1, &spec, &inside, &b).unwrap();
    }
}
