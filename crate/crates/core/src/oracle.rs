//! Brute-force ground truth: exhaustive enumeration of `V` and `W`, defining
//! sums evaluated literally, and exact event counts for the theorems.
//!
//! Nothing in here calls the closed forms of [`crate::exact`]. Rational
//! anchors are scaled to integers over a common denominator so the sums can
//! run in machine integers; every result is still exact.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    check_anchor_radius, concentration_bound, Anchor, CubeSpec, MomentReport, Population,
    SigmaTerms, TheoremId,
};
use crate::rational::{self, common_denominator, frac, int, powi};

/// Caps on how much the oracle is allowed to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_points: u64,
    pub max_pairs: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_points: 1 << 20,
            max_pairs: 1 << 26,
        }
    }
}

impl EnumerationBudget {
    pub fn check_points(&self, spec: &CubeSpec, which: Population) -> Result<u64> {
        let required = spec.population_size(which);
        match required.to_u64() {
            Some(n) if n <= self.max_points => Ok(n),
            _ => Err(Error::BudgetExceeded {
                what: "points",
                required,
                allowed: self.max_points,
            }),
        }
    }

    fn check_pairs(&self, points: u64) -> Result<()> {
        let required = BigUint::from(points) * BigUint::from(points);
        if required > BigUint::from(self.max_pairs) {
            return Err(Error::BudgetExceeded {
                what: "pairs",
                required,
                allowed: self.max_pairs,
            });
        }
        Ok(())
    }
}

/// Every point of the population in lexicographic coordinate order.
#[derive(Debug, Clone)]
pub struct PopulationIter {
    values: Vec<u64>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for PopulationIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let point = self.digits.iter().map(|&i| self.values[i]).collect();
        // odometer: bump the last coordinate, carrying leftwards
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.values.len() {
                break;
            }
            self.digits[k] = 0;
        }
        Some(point)
    }
}

pub fn enumerate_population(
    spec: &CubeSpec,
    which: Population,
    budget: &EnumerationBudget,
) -> Result<PopulationIter> {
    budget.check_points(spec, which)?;
    let values = match which {
        Population::Vertices => vec![0, spec.n],
        Population::Lattice => (0..=spec.n).collect(),
    };
    Ok(PopulationIter {
        values,
        digits: vec![0; spec.d],
        done: false,
    })
}

/// Anchor written as integer numerators over one common denominator.
struct ScaledAnchor {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl ScaledAnchor {
    fn new(a: &Anchor) -> Self {
        let denominator = common_denominator(a.coords());
        let numerators = a
            .coords()
            .iter()
            .map(|c| (c * BigRational::from_integer(denominator.clone())).to_integer())
            .collect();
        ScaledAnchor {
            numerators,
            denominator,
        }
    }

    /// `D² · dist²(p, a)` as an integer.
    fn scaled_dist_sq(&self, p: &[u64]) -> BigInt {
        p.iter()
            .zip(&self.numerators)
            .map(|(&x, b)| {
                let diff = &self.denominator * BigInt::from(x) - b;
                &diff * &diff
            })
            .sum()
    }

    fn equals(&self, p: &[u64]) -> bool {
        p.iter()
            .zip(&self.numerators)
            .all(|(&x, b)| &self.denominator * BigInt::from(x) == *b)
    }
}

/// Exact mean and second moment by their defining sums.
pub fn brute_moments(
    spec: &CubeSpec,
    which: Population,
    a: &Anchor,
    budget: &EnumerationBudget,
) -> Result<MomentReport> {
    spec.check(a)?;
    let scaled = ScaledAnchor::new(a);
    let dd = BigRational::from_integer(&scaled.denominator * &scaled.denominator);
    let sq: Vec<BigRational> = enumerate_population(spec, which, budget)?
        .map(|p| BigRational::from_integer(scaled.scaled_dist_sq(&p)) / &dd)
        .collect();
    let count = BigRational::from_integer(BigInt::from(sq.len()));
    let average = sq.iter().fold(BigRational::zero(), |acc, x| acc + x) / &count;
    let second = sq.iter().fold(BigRational::zero(), |acc, x| {
        let dev = x - &average;
        acc + &dev * &dev
    }) / &count;
    Ok(MomentReport::new(spec, which, average, second))
}

/// Integer arithmetic used by the sigma sums; `None` signals overflow.
trait Accumulator: Clone {
    fn zero() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn from_u64(x: u64) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Accumulator for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn from_u64(x: u64) -> Option<Self> {
        Some(x as i128)
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(*rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Accumulator for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn from_u64(x: u64) -> Option<Self> {
        Some(BigInt::from(x))
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// The nine raw integer sums `Σ_p Σ_m Σ_n monomial(p_m, p_n, b_m, b_n)` with
/// the anchor scaled to integers `b`.
fn raw_sigma_sums<T: Accumulator>(
    points: &[Vec<u64>],
    numerators: &[BigInt],
) -> Option<[BigInt; 9]> {
    let b: Vec<T> = numerators.iter().map(T::from_big).collect::<Option<_>>()?;
    let b2: Vec<T> = b.iter().map(|x| x.mul(x)).collect::<Option<_>>()?;
    let d = b.len();
    let mut sums: [T; 9] = std::array::from_fn(|_| T::zero());
    let mut v: Vec<T> = Vec::with_capacity(d);
    let mut v2: Vec<T> = Vec::with_capacity(d);
    for p in points {
        v.clear();
        v2.clear();
        for &x in p {
            let x = T::from_u64(x)?;
            v2.push(x.mul(&x)?);
            v.push(x);
        }
        for m in 0..d {
            let vm_bm = v[m].mul(&b[m])?;
            for n in 0..d {
                let vn_bn = v[n].mul(&b[n])?;
                let terms = [
                    v2[m].mul(&v2[n])?,
                    v2[m].mul(&vn_bn)?,
                    v2[m].mul(&b2[n])?,
                    vm_bm.mul(&v2[n])?,
                    vm_bm.mul(&vn_bn)?,
                    vm_bm.mul(&b2[n])?,
                    b2[m].mul(&v2[n])?,
                    b2[m].mul(&vn_bn)?,
                    b2[m].mul(&b2[n])?,
                ];
                for (s, t) in sums.iter_mut().zip(terms.iter()) {
                    *s = s.add(t)?;
                }
            }
        }
    }
    Some(sums.map(T::into_big))
}

/// All nine monomial sums by direct triple summation over the population and
/// the index pairs `(m, n)`.
pub fn brute_sigma(
    spec: &CubeSpec,
    which: Population,
    a: &Anchor,
    budget: &EnumerationBudget,
) -> Result<SigmaTerms> {
    spec.check(a)?;
    let scaled = ScaledAnchor::new(a);
    let points: Vec<Vec<u64>> = enumerate_population(spec, which, budget)?.collect();
    let raw = raw_sigma_sums::<i128>(&points, &scaled.numerators)
        .or_else(|| raw_sigma_sums::<BigInt>(&points, &scaled.numerators))
        .expect("big integer sums cannot overflow");
    // powers of the anchor in each monomial
    const ANCHOR_DEGREE: [i64; 9] = [0, 1, 2, 1, 2, 3, 2, 3, 4];
    let den = BigRational::from_integer(scaled.denominator.clone());
    let terms: [BigRational; 9] = std::array::from_fn(|k| {
        BigRational::from_integer(raw[k].clone()) / powi(&den, ANCHOR_DEGREE[k])
    });
    Ok(SigmaTerms::from_terms(terms))
}

/// Interval half-widths either exactly rational or only known in floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum Tolerance {
    Exact(BigRational),
    Approx(f64),
}

impl Tolerance {
    fn scaled(&self, factor: i64) -> Tolerance {
        match self {
            Tolerance::Exact(h) => Tolerance::Exact(h * int(factor)),
            Tolerance::Approx(h) => Tolerance::Approx(h * factor as f64),
        }
    }
}

/// Slack below which a floating-point decision is not trusted.
pub const CERTIFY_SLACK: f64 = 1e-9;

fn certify(slack: f64) -> Result<bool> {
    if slack.abs() < CERTIFY_SLACK || !slack.is_finite() {
        return Err(Error::Ambiguous { slack });
    }
    Ok(slack > 0.0)
}

/// `√x ≤ √y + h` for nonnegative rationals, decided without square roots.
fn sqrt_le_sqrt_plus(x: &BigRational, y: &BigRational, h: &BigRational) -> bool {
    let lhs = x - y - h * h;
    if !lhs.is_positive() {
        return true;
    }
    &lhs * &lhs <= int(4) * h * h * y
}

/// Decides `|√x − √y| ≤ h` for nonnegative rationals `x`, `y`.
pub fn sqrt_gap_within(x: &BigRational, y: &BigRational, tol: &Tolerance) -> Result<bool> {
    match tol {
        Tolerance::Exact(h) => Ok(sqrt_le_sqrt_plus(x, y, h) && sqrt_le_sqrt_plus(y, x, h)),
        Tolerance::Approx(h) => {
            let gap = (rational::to_f64(x).sqrt() - rational::to_f64(y).sqrt()).abs();
            certify(h - gap)
        }
    }
}

/// Exact count of successes over the exact number of admissible tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleProportion {
    pub hits: u64,
    pub total: u64,
}

impl OracleProportion {
    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.hits), BigInt::from(self.total))
    }

    pub fn as_f64(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

struct PointTable {
    points: Vec<Vec<u64>>,
    /// Index of each point's normalized squared anchor distance in `classes`.
    dist_class: Vec<usize>,
    classes: Vec<BigRational>,
    is_anchor: Vec<bool>,
}

impl PointTable {
    fn build(
        spec: &CubeSpec,
        which: Population,
        a: &Anchor,
        budget: &EnumerationBudget,
    ) -> Result<Self> {
        let scaled = ScaledAnchor::new(a);
        let scale =
            BigRational::from_integer(&scaled.denominator * &scaled.denominator) * spec_scale(spec);
        let points: Vec<Vec<u64>> = enumerate_population(spec, which, budget)?.collect();
        let mut class_of: HashMap<BigRational, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut dist_class = Vec::with_capacity(points.len());
        let mut is_anchor = Vec::with_capacity(points.len());
        for p in &points {
            let x = BigRational::from_integer(scaled.scaled_dist_sq(p)) / &scale;
            let next = classes.len();
            let k = *class_of.entry(x.clone()).or_insert_with(|| {
                classes.push(x.clone());
                next
            });
            dist_class.push(k);
            is_anchor.push(scaled.equals(p));
        }
        Ok(PointTable {
            points,
            dist_class,
            classes,
            is_anchor,
        })
    }
}

/// `d N²`, the square of the normalizing factor.
fn spec_scale(spec: &CubeSpec) -> BigRational {
    BigRational::from_integer(BigInt::from(spec.d) * BigInt::from(spec.n) * BigInt::from(spec.n))
}

fn squared_gap(p: &[u64], q: &[u64]) -> u128 {
    p.iter()
        .zip(q)
        .map(|(&x, &y)| {
            let diff = x.abs_diff(y) as u128;
            diff * diff
        })
        .sum()
}

/// Exact proportion of population members (or ordered pairs of distinct
/// members, both distinct from the anchor) satisfying the theorem's event.
pub fn brute_theorem_proportion(
    theorem: TheoremId,
    spec: &CubeSpec,
    a: &Anchor,
    eta: &BigRational,
    gamma: Option<&BigRational>,
    budget: &EnumerationBudget,
) -> Result<OracleProportion> {
    let bound = concentration_bound(theorem, spec.d, eta, gamma)?;
    check_anchor_radius(theorem, spec, a, &bound)?;
    let which = theorem.population();
    let count = budget.check_points(spec, which)?;
    if theorem.is_pair() {
        budget.check_pairs(count)?;
    }
    let table = PointTable::build(spec, which, a, budget)?;
    let half_width = match &bound.half_width_exact {
        Some(h) => Tolerance::Exact(h.clone()),
        None => Tolerance::Approx(bound.half_width),
    };
    let average = brute_moments(spec, which, a, budget)?.normalized_average;

    match theorem {
        TheoremId::V1 | TheoremId::W1 => {
            let near = class_flags(&table, &average, &half_width)?;
            let hits = table.dist_class.iter().filter(|&&k| near[k]).count() as u64;
            Ok(OracleProportion { hits, total: count })
        }
        TheoremId::Acv => acv_proportion(spec, a, &bound, &table),
        TheoremId::VIsosceles | TheoremId::WIsosceles => {
            let eps = half_width.scaled(2);
            let mut memo: HashMap<(usize, usize), bool> = HashMap::new();
            pair_count(&table, |i, j| {
                let (ki, kj) = (table.dist_class[i], table.dist_class[j]);
                if let Some(&hit) = memo.get(&(ki, kj)) {
                    return Ok(hit);
                }
                let hit = sqrt_gap_within(&table.classes[ki], &table.classes[kj], &eps)?;
                memo.insert((ki, kj), hit);
                Ok(hit)
            })
        }
        TheoremId::VSimilar | TheoremId::WSimilar => {
            let near = class_flags(&table, &average, &half_width)?;
            let mutual_target = match which {
                Population::Vertices => frac(1, 2),
                Population::Lattice => frac(1, 6) + frac(1, 3 * spec.n as i64),
            };
            let scale = spec_scale(spec);
            let mut memo: HashMap<u128, bool> = HashMap::new();
            pair_count(&table, |i, j| {
                if !near[table.dist_class[i]] || !near[table.dist_class[j]] {
                    return Ok(false);
                }
                let gap = squared_gap(&table.points[i], &table.points[j]);
                if let Some(&hit) = memo.get(&gap) {
                    return Ok(hit);
                }
                let mutual = BigRational::from_integer(BigInt::from(gap)) / &scale;
                let hit = sqrt_gap_within(&mutual, &mutual_target, &half_width)?;
                memo.insert(gap, hit);
                Ok(hit)
            })
        }
    }
}

/// For each distinct anchor distance, whether it lies within `h` of `√B`.
fn class_flags(table: &PointTable, average: &BigRational, h: &Tolerance) -> Result<Vec<bool>> {
    table
        .classes
        .iter()
        .map(|x| sqrt_gap_within(x, average, h))
        .collect()
}

fn pair_count(
    table: &PointTable,
    mut event: impl FnMut(usize, usize) -> Result<bool>,
) -> Result<OracleProportion> {
    let (mut hits, mut total) = (0u64, 0u64);
    let n = table.points.len();
    for i in 0..n {
        if table.is_anchor[i] {
            continue;
        }
        for j in 0..n {
            if j == i || table.is_anchor[j] {
                continue;
            }
            total += 1;
            if event(i, j)? {
                hits += 1;
            }
        }
    }
    if total == 0 {
        return Err(Error::Degenerate(
            "no non-degenerate triangles in this population".into(),
        ));
    }
    Ok(OracleProportion { hits, total })
}

fn acv_proportion(
    spec: &CubeSpec,
    a: &Anchor,
    bound: &crate::exact::ConcentrationBound,
    table: &PointTable,
) -> Result<OracleProportion> {
    let gamma = bound.gamma.as_ref().expect("ACV bound carries γ");
    let center = frac(spec.n as i64, 2);
    let ray_a: Vec<BigRational> = a.coords().iter().map(|x| x - &center).collect();
    let norm_a: BigRational = ray_a.iter().map(|x| x * x).sum();
    // |v − c|² = d N²/4 for every vertex
    let norm_v = spec_scale(spec) / int(4);
    // d^{−2γ}, exact when rational
    let decay = rational::exact_power(spec.d as u64, &(-gamma * int(2)));
    let threshold = bound.cos_threshold.expect("ACV bound carries a threshold");

    let (mut hits, mut total) = (0u64, 0u64);
    let mut memo: HashMap<BigRational, bool> = HashMap::new();
    for (i, p) in table.points.iter().enumerate() {
        if table.is_anchor[i] {
            continue;
        }
        total += 1;
        let dot: BigRational = p
            .iter()
            .zip(&ray_a)
            .map(|(&x, r)| (BigRational::from_integer(BigInt::from(x)) - &center) * r)
            .sum();
        let cos_sq = &dot * &dot / (&norm_a * &norm_v);
        let hit = match memo.get(&cos_sq) {
            Some(&h) => h,
            None => {
                let h = match &decay {
                    // cos² ≤ (3 + 2√2)·r  ⇔  cos²/r − 3 ≤ 2√2
                    Some(r) => {
                        let lhs = &cos_sq / r - int(3);
                        !lhs.is_positive() || &lhs * &lhs <= int(8)
                    }
                    None => certify(threshold - rational::to_f64(&cos_sq).sqrt())?,
                };
                memo.insert(cos_sq, h);
                h
            }
        };
        if hit {
            hits += 1;
        }
    }
    if total == 0 {
        return Err(Error::Degenerate(
            "no vertex differs from the anchor".into(),
        ));
    }
    Ok(OracleProportion { hits, total })
}
