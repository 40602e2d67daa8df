//! Normalized distances, angles at the cube center, and the triangle events
//! whose frequencies the concentration theorems bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Anchor, CubeSpec, Population};
use crate::rational;

/// A point of `R^d` in double precision.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FloatPoint(Vec<f64>);

impl FloatPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(FloatPoint(coords))
    }

    pub fn from_integers(coords: &[u64]) -> Self {
        FloatPoint(coords.iter().map(|&c| c as f64).collect())
    }

    pub fn from_anchor(anchor: &Anchor) -> Result<Self> {
        Self::new(anchor.to_f64())
    }

    /// Overwrites the coordinates in place, reusing the allocation.
    pub fn assign_integers(&mut self, coords: &[u64]) {
        self.0.clear();
        self.0.extend(coords.iter().map(|&c| c as f64));
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn check_dim(spec: &CubeSpec, p: &FloatPoint) -> Result<()> {
    if p.dim() != spec.d {
        return Err(Error::DimensionMismatch {
            expected: spec.d,
            found: p.dim(),
        });
    }
    if let Some(i) = p.0.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

fn scale(spec: &CubeSpec) -> f64 {
    (spec.d as f64).sqrt() * spec.n as f64
}

/// Euclidean distance divided by `√d·N`, so opposite vertices are at distance 1.
pub fn normalized_distance(spec: &CubeSpec, p: &FloatPoint, q: &FloatPoint) -> Result<f64> {
    check_dim(spec, p)?;
    check_dim(spec, q)?;
    let sq: f64 = p.0.iter().zip(&q.0).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sq.sqrt() / scale(spec))
}

/// Cosine of the angle at the center `c` between the rays `c→a` and `c→v`,
/// clamped to `[−1, 1]`.
pub fn cos_angle_at_center(spec: &CubeSpec, a: &FloatPoint, v: &FloatPoint) -> Result<f64> {
    check_dim(spec, a)?;
    check_dim(spec, v)?;
    let c = spec.n as f64 / 2.0;
    let (mut dot, mut na, mut nv) = (0.0, 0.0, 0.0);
    for (x, y) in a.0.iter().zip(&v.0) {
        let (x, y) = (x - c, y - c);
        dot += x * y;
        na += x * x;
        nv += y * y;
    }
    if na == 0.0 || nv == 0.0 {
        return Err(Error::Degenerate(
            "ray from the center has zero length".into(),
        ));
    }
    Ok((dot / (na.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}

/// `|dist_d(a, v1) − dist_d(a, v2)| ≤ ε`.
pub fn isosceles_test(
    spec: &CubeSpec,
    a: &FloatPoint,
    v1: &FloatPoint,
    v2: &FloatPoint,
    epsilon: f64,
) -> Result<bool> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "ε must be positive, got {epsilon}"
        )));
    }
    let d1 = normalized_distance(spec, a, v1)?;
    let d2 = normalized_distance(spec, a, v2)?;
    Ok((d1 - d2).abs() <= epsilon)
}

/// Closed interval test `x ∈ [target − half_width, target + half_width]`.
#[inline]
pub fn within(x: f64, target: f64, half_width: f64) -> bool {
    x >= target - half_width && x <= target + half_width
}

/// `d^{−η}` in double precision.
pub fn interval_half_width(d: usize, eta: f64) -> f64 {
    (d as f64).powf(-eta)
}

/// `(√2 + 1)·d^{−γ}`.
pub fn right_angle_threshold(d: usize, gamma: f64) -> f64 {
    (std::f64::consts::SQRT_2 + 1.0) * (d as f64).powf(-gamma)
}

/// Typical side lengths of the triangles `(a, p1, p2)`: the anchor-to-point
/// distance `√B` and the mutual distance between the two population points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeTargets {
    pub population: Population,
    pub anchor_side: f64,
    pub mutual_side: f64,
}

impl ShapeTargets {
    /// `√B_{a,V}` and `1/√2`.
    pub fn vertices(spec: &CubeSpec, anchor: &Anchor) -> Result<Self> {
        let b = exact::moments(spec, anchor, Population::Vertices)?.normalized_average;
        Ok(ShapeTargets {
            population: Population::Vertices,
            anchor_side: rational::to_f64(&b).sqrt(),
            mutual_side: std::f64::consts::FRAC_1_SQRT_2,
        })
    }

    /// `√B_{a,W}` and `√(1/6 + 1/(3N))`.
    pub fn lattice(spec: &CubeSpec, anchor: &Anchor) -> Result<Self> {
        let b = exact::moments(spec, anchor, Population::Lattice)?.normalized_average;
        let mutual = rational::frac(1, 6) + rational::frac(1, 3 * spec.n as i64);
        Ok(ShapeTargets {
            population: Population::Lattice,
            anchor_side: rational::to_f64(&b).sqrt(),
            mutual_side: rational::to_f64(&mutual).sqrt(),
        })
    }

    pub fn for_population(
        spec: &CubeSpec,
        anchor: &Anchor,
        population: Population,
    ) -> Result<Self> {
        match population {
            Population::Vertices => Self::vertices(spec, anchor),
            Population::Lattice => Self::lattice(spec, anchor),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TriangleKind {
    IsoscelesV,
    SimilarV,
    #[serde(rename = "rightAngleACV")]
    RightAngleAcv,
    IsoscelesW,
    SimilarW,
}

/// One evaluated triangle condition together with the measurements it was
/// decided from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleEvent {
    pub kind: TriangleKind,
    pub eta: f64,
    pub gamma: Option<f64>,
    pub satisfied: bool,
    /// Distances `dist(a, p1), dist(a, p2), dist(p1, p2)` or the single cosine.
    pub witnesses: Vec<f64>,
}

fn check_distinct(a: &FloatPoint, p1: &FloatPoint, p2: &FloatPoint) -> Result<()> {
    if a == p1 || a == p2 || p1 == p2 {
        return Err(Error::Degenerate("triangle has coincident vertices".into()));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "η must lie in (0, 1/2), got {eta}"
        )));
    }
    Ok(())
}

fn similar_conditions(
    kind: TriangleKind,
    spec: &CubeSpec,
    targets: &ShapeTargets,
    a: &FloatPoint,
    p1: &FloatPoint,
    p2: &FloatPoint,
    eta: f64,
) -> Result<TriangleEvent> {
    check_eta(eta)?;
    check_distinct(a, p1, p2)?;
    let h = interval_half_width(spec.d, eta);
    let d1 = normalized_distance(spec, a, p1)?;
    let d2 = normalized_distance(spec, a, p2)?;
    let d12 = normalized_distance(spec, p1, p2)?;
    let satisfied = within(d1, targets.anchor_side, h)
        && within(d2, targets.anchor_side, h)
        && within(d12, targets.mutual_side, h);
    Ok(TriangleEvent {
        kind,
        eta,
        gamma: None,
        satisfied,
        witnesses: vec![d1, d2, d12],
    })
}

/// Both anchor sides within `d^{−η}` of `√B_{a,V}` and the vertex-vertex side
/// within `d^{−η}` of `1/√2`.
pub fn similar_conditions_v(
    spec: &CubeSpec,
    targets: &ShapeTargets,
    a: &FloatPoint,
    v1: &FloatPoint,
    v2: &FloatPoint,
    eta: f64,
) -> Result<TriangleEvent> {
    similar_conditions(TriangleKind::SimilarV, spec, targets, a, v1, v2, eta)
}

/// Both anchor sides within `d^{−η}` of `√B_{a,W}` and the point-point side
/// within `d^{−η}` of `√(1/6 + 1/(3N))`.
pub fn similar_conditions_w(
    spec: &CubeSpec,
    targets: &ShapeTargets,
    a: &FloatPoint,
    w1: &FloatPoint,
    w2: &FloatPoint,
    eta: f64,
) -> Result<TriangleEvent> {
    similar_conditions(TriangleKind::SimilarW, spec, targets, a, w1, w2, eta)
}

/// Almost-isosceles event with tolerance `2·d^{−η}`.
pub fn isosceles_event(
    kind: TriangleKind,
    spec: &CubeSpec,
    a: &FloatPoint,
    p1: &FloatPoint,
    p2: &FloatPoint,
    eta: f64,
) -> Result<TriangleEvent> {
    check_eta(eta)?;
    check_distinct(a, p1, p2)?;
    let d1 = normalized_distance(spec, a, p1)?;
    let d2 = normalized_distance(spec, a, p2)?;
    let epsilon = 2.0 * interval_half_width(spec.d, eta);
    Ok(TriangleEvent {
        kind,
        eta,
        gamma: None,
        satisfied: (d1 - d2).abs() <= epsilon,
        witnesses: vec![d1, d2],
    })
}

/// `|cos θ_v| ≤ (√2 + 1)·d^{−γ}` for the angle at the center.
pub fn right_angle_test(
    spec: &CubeSpec,
    a: &FloatPoint,
    v: &FloatPoint,
    gamma: f64,
) -> Result<bool> {
    Ok(right_angle_event(spec, a, v, f64::NAN, gamma)?.satisfied)
}

pub fn right_angle_event(
    spec: &CubeSpec,
    a: &FloatPoint,
    v: &FloatPoint,
    eta: f64,
    gamma: f64,
) -> Result<TriangleEvent> {
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "γ must be positive, got {gamma}"
        )));
    }
    let cos = cos_angle_at_center(spec, a, v)?;
    Ok(TriangleEvent {
        kind: TriangleKind::RightAngleAcv,
        eta,
        gamma: Some(gamma),
        satisfied: cos.abs() <= right_angle_threshold(spec.d, gamma),
        witnesses: vec![cos],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: usize, n: u64) -> CubeSpec {
        CubeSpec::new(d, n).unwrap()
    }

    fn pt(c: &[u64]) -> FloatPoint {
        FloatPoint::from_integers(c)
    }

    #[test]
    fn distance_examples() {
        let s = spec(5, 3);
        let d = normalized_distance(&s, &pt(&[0; 5]), &pt(&[3; 5])).unwrap();
        assert!((d - 1.0).abs() < 1e-15);
        let s = spec(4, 2);
        let d = normalized_distance(&s, &pt(&[0, 2, 2, 0]), &pt(&[1; 4])).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
        assert_eq!(
            normalized_distance(&s, &pt(&[1, 2, 0, 1]), &pt(&[1, 2, 0, 1])).unwrap(),
            0.0
        );
    }

    #[test]
    fn distance_errors() {
        let s = spec(2, 1);
        assert!(matches!(
            normalized_distance(&s, &pt(&[0, 0, 0]), &pt(&[0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(FloatPoint::new(vec![0.0, f64::NAN]).is_err());
        assert!(FloatPoint::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn cosine_examples() {
        let s = spec(2, 2);
        assert!((cos_angle_at_center(&s, &pt(&[2, 2]), &pt(&[2, 2])).unwrap() - 1.0).abs() < 1e-15);
        assert!((cos_angle_at_center(&s, &pt(&[2, 2]), &pt(&[0, 0])).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(
            cos_angle_at_center(&s, &pt(&[2, 2]), &pt(&[2, 0])).unwrap(),
            0.0
        );
        assert!(matches!(
            cos_angle_at_center(&s, &pt(&[1, 1]), &pt(&[2, 0])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn isosceles_examples() {
        let s = spec(2, 2);
        let a = pt(&[0, 0]);
        assert!(isosceles_test(&s, &a, &pt(&[0, 2]), &pt(&[0, 2]), 1e-9).unwrap());
        assert!(isosceles_test(&s, &a, &pt(&[0, 2]), &pt(&[2, 0]), 0.01).unwrap());
        // 1/√2 vs 1: gap ≈ 0.293
        assert!(!isosceles_test(&s, &a, &pt(&[0, 2]), &pt(&[2, 2]), 0.1).unwrap());
        assert!(isosceles_test(&s, &a, &pt(&[0, 2]), &pt(&[2, 2]), 0.3).unwrap());
        assert!(isosceles_test(&s, &a, &pt(&[0, 2]), &pt(&[2, 2]), 0.0).is_err());
    }

    #[test]
    fn similar_v_small_case() {
        // d=2, N=1, a=(1,1): B = 1/2, h = 2^{-1/4} ≈ 0.841. Sides are 1, 1/√2 and 1/√2,
        // all inside [√B − h, √B + h] and [1/√2 − h, 1/√2 + h], so the event holds.
        let s = spec(2, 1);
        let anchor = Anchor::from_integers(&[1, 1]).unwrap();
        let t = ShapeTargets::vertices(&s, &anchor).unwrap();
        assert!((t.anchor_side - 0.5f64.sqrt()).abs() < 1e-15);
        let e =
            similar_conditions_v(&s, &t, &pt(&[1, 1]), &pt(&[0, 0]), &pt(&[0, 1]), 0.25).unwrap();
        assert!(e.satisfied);
        assert!((e.witnesses[0] - 1.0).abs() < 1e-15);
        assert!((e.witnesses[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((e.witnesses[2] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(
            similar_conditions_v(&s, &t, &pt(&[1, 1]), &pt(&[1, 1]), &pt(&[0, 1]), 0.25).is_err()
        );
        assert!(
            similar_conditions_v(&s, &t, &pt(&[1, 1]), &pt(&[0, 0]), &pt(&[0, 1]), 0.5).is_err()
        );
    }

    #[test]
    fn similar_v_rejects_short_side() {
        // d=16, N=1, a=origin, η=0.49: h = 16^{-0.49} ≈ 0.257, √B = 1/√2;
        // dist(a, e1) = 1/4 lies below √B − h ≈ 0.45.
        let s = spec(16, 1);
        let anchor = Anchor::origin(&s);
        let t = ShapeTargets::vertices(&s, &anchor).unwrap();
        let mut e1 = [0u64; 16];
        e1[0] = 1;
        let e = similar_conditions_v(&s, &t, &pt(&[0; 16]), &pt(&e1), &pt(&[1; 16]), 0.49).unwrap();
        assert!(!e.satisfied);
        assert!((e.witnesses[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn similar_w_small_case() {
        // d=2, N=1, a=(0,0): B_W = 1/2, mutual target √(1/6 + 1/3) = 1/√2, h ≈ 0.841.
        // Sides 1/√2, 1/√2 and 1 are all within h of their targets.
        let s = spec(2, 1);
        let anchor = Anchor::from_integers(&[0, 0]).unwrap();
        let t = ShapeTargets::lattice(&s, &anchor).unwrap();
        assert!((t.mutual_side - 0.5f64.sqrt()).abs() < 1e-15);
        let e =
            similar_conditions_w(&s, &t, &pt(&[0, 0]), &pt(&[1, 0]), &pt(&[0, 1]), 0.25).unwrap();
        assert!(e.satisfied);
        assert!((e.witnesses[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn similar_w_rejects_long_mutual_side() {
        // d=16, N=1, a=center, η=0.49: mutual target 1/√2, h ≈ 0.257; opposite corners are at 1.
        let s = spec(16, 1);
        let anchor = Anchor::center(&s);
        let t = ShapeTargets::lattice(&s, &anchor).unwrap();
        let a = FloatPoint::from_anchor(&anchor).unwrap();
        let e = similar_conditions_w(&s, &t, &a, &pt(&[0; 16]), &pt(&[1; 16]), 0.49).unwrap();
        assert!(!e.satisfied);
    }

    #[test]
    fn lattice_targets_at_center() {
        for n in [1u64, 2, 7] {
            let s = spec(6, n);
            let t = ShapeTargets::lattice(&s, &Anchor::center(&s)).unwrap();
            let expected = (1.0 / 12.0 + 1.0 / (6.0 * n as f64)).sqrt();
            assert!((t.anchor_side - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn right_angle_examples() {
        let s = spec(2, 2);
        // threshold (√2+1)·2^{-γ} ≥ 1 for small γ
        assert!(right_angle_threshold(2, 0.01) > 1.0);
        assert!(right_angle_test(&s, &pt(&[2, 2]), &pt(&[0, 0]), 0.01).unwrap());
        assert!(!right_angle_test(&s, &pt(&[2, 2]), &pt(&[0, 0]), 5.0).unwrap());
        assert!(right_angle_test(&s, &pt(&[2, 2]), &pt(&[2, 0]), 5.0).unwrap());
        let t = right_angle_threshold(10_000, 0.25);
        assert!((t - 0.2414).abs() < 1e-4);
        assert!(right_angle_test(&s, &pt(&[2, 2]), &pt(&[2, 0]), 0.0).is_err());
    }
}
