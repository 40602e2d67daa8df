//! Exact rational statistics of squared distances from a fixed anchor to the
//! vertices `V` and to the full lattice `W` of the hypercube `[0, N]^d`.
//!
//! Everything here is computed in arbitrary precision. Normalized quantities
//! are kept as squares so they stay rational; square roots only appear in the
//! floating-point layers built on top.

mod bounds;
mod moments;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational;

pub use bounds::{check_anchor_radius, concentration_bound, ConcentrationBound, TheoremId};
pub use moments::{
    avg_sq_dist_lattice, avg_sq_dist_vertices, center_distance_sq, moments, power_sum,
    second_moment_from_sigma, second_moment_lattice, second_moment_vertices, sigma, sigma_lattice,
    sigma_total_lattice_closed_form, sigma_total_vertices_closed_form, sigma_vertices,
};

/// The lattice hypercube `[0, N]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeSpec {
    pub d: usize,
    pub n: u64,
}

impl CubeSpec {
    pub fn new(d: usize, n: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "dimension d must be at least 1".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "side length N must be at least 1".into(),
            ));
        }
        Ok(CubeSpec { d, n })
    }

    pub fn vertex_count(&self) -> BigUint {
        BigUint::one() << self.d
    }

    pub fn lattice_count(&self) -> BigUint {
        Pow::pow(BigUint::from(self.n + 1), self.d)
    }

    pub fn population_size(&self, population: Population) -> BigUint {
        match population {
            Population::Vertices => self.vertex_count(),
            Population::Lattice => self.lattice_count(),
        }
    }

    pub(crate) fn d_q(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    pub(crate) fn n_q(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.n))
    }

    pub(crate) fn check(&self, anchor: &Anchor) -> Result<()> {
        if anchor.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: anchor.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CubeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} N={}", self.d, self.n)
    }
}

/// Which finite point set distances are measured to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    /// The `2^d` corners, coordinates in `{0, N}`.
    Vertices,
    /// All `(N+1)^d` integer points of the cube.
    Lattice,
}

impl fmt::Display for Population {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Population::Vertices => "vertices",
            Population::Lattice => "lattice",
        })
    }
}

impl std::str::FromStr for Population {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertices" | "V" => Ok(Population::Vertices),
            "lattice" | "W" => Ok(Population::Lattice),
            other => Err(Error::Parse(format!(
                "unknown population {other:?}, expected vertices or lattice"
            ))),
        }
    }
}

/// A reference point with exact rational coordinates. It need not be a
/// lattice point; the cube center has half-integer coordinates when `N` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Anchor {
    coords: Vec<BigRational>,
}

impl Anchor {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter(
                "anchor needs at least one coordinate".into(),
            ));
        }
        Ok(Anchor { coords })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn origin(spec: &CubeSpec) -> Self {
        Anchor {
            coords: vec![BigRational::zero(); spec.d],
        }
    }

    pub fn center(spec: &CubeSpec) -> Self {
        let half = spec.n_q() / rational::int(2);
        Anchor {
            coords: vec![half; spec.d],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// `⟨a⟩ = a_1 + … + a_d`.
    pub fn coord_sum(&self) -> BigRational {
        self.coords
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// `‖a‖² = a_1² + … + a_d²`.
    pub fn norm_sq(&self) -> BigRational {
        self.coords
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c * c)
    }

    /// Every coordinate lies in `[0, N]`.
    pub fn is_inside(&self, spec: &CubeSpec) -> bool {
        let n = spec.n_q();
        self.coords.iter().all(|c| !c.is_negative() && *c <= n)
    }

    pub fn is_center(&self, spec: &CubeSpec) -> bool {
        let half = spec.n_q() / rational::int(2);
        self.coords.iter().all(|c| *c == half)
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinates rounded once to double precision.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational::to_f64).collect()
    }

    /// Permutes coordinates: the result has `self[perm[i]]` at position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Anchor {
            coords: perm.iter().map(|&i| self.coords[i].clone()).collect(),
        }
    }

    /// Reflects the listed coordinates through the center: `a_i → N − a_i`.
    pub fn reflected(&self, spec: &CubeSpec, axes: &[usize]) -> Self {
        let n = spec.n_q();
        let mut coords = self.coords.clone();
        for &i in axes {
            coords[i] = &n - &coords[i];
        }
        Anchor { coords }
    }

    /// Short label: `origin`, `center`, or the coordinate list.
    pub fn describe(&self, spec: &CubeSpec) -> String {
        if self.is_origin() {
            "origin".to_string()
        } else if self.is_center(spec) {
            "center".to_string()
        } else {
            let parts: Vec<String> = self.coords.iter().map(rational::display).collect();
            format!("coords:{}", parts.join(","))
        }
    }
}

/// Average and second moment of squared distances from an anchor to a
/// population, with their normalized forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    pub population: Population,
    /// `A`: mean of `dist²(v, a)` over the population.
    pub average: BigRational,
    /// `M2`: mean of `(dist²(v, a) − A)²`.
    pub second_moment: BigRational,
    /// `B = A / (d N²)`.
    pub normalized_average: BigRational,
    /// `M2 / (d² N⁴)`.
    pub normalized_second_moment: BigRational,
}

impl MomentReport {
    pub(crate) fn new(
        spec: &CubeSpec,
        population: Population,
        average: BigRational,
        second_moment: BigRational,
    ) -> Self {
        let scale = spec.d_q() * spec.n_q() * spec.n_q();
        MomentReport {
            population,
            normalized_average: &average / &scale,
            normalized_second_moment: &second_moment / (&scale * &scale),
            average,
            second_moment,
        }
    }
}

/// The nine monomial sums of `Σ_p Σ_m Σ_n (p_m − a_m)²(p_n − a_n)²` and their
/// signed total, which equals `Σ_p dist⁴(p, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTerms {
    pub s1: BigRational,
    pub s2: BigRational,
    pub s3: BigRational,
    pub s4: BigRational,
    pub s5: BigRational,
    pub s6: BigRational,
    pub s7: BigRational,
    pub s8: BigRational,
    pub s9: BigRational,
    pub total: BigRational,
}

impl SigmaTerms {
    /// Signed multiplicities of the nine monomials in the expanded fourth power.
    pub const WEIGHTS: [i64; 9] = [1, -2, 1, -2, 4, -2, 1, -2, 1];

    pub fn from_terms(terms: [BigRational; 9]) -> Self {
        let total = terms
            .iter()
            .zip(Self::WEIGHTS)
            .fold(BigRational::zero(), |acc, (s, w)| {
                acc + s * rational::int(w)
            });
        let [s1, s2, s3, s4, s5, s6, s7, s8, s9] = terms;
        SigmaTerms {
            s1,
            s2,
            s3,
            s4,
            s5,
            s6,
            s7,
            s8,
            s9,
            total,
        }
    }

    pub fn terms(&self) -> [&BigRational; 9] {
        [
            &self.s1, &self.s2, &self.s3, &self.s4, &self.s5, &self.s6, &self.s7, &self.s8,
            &self.s9,
        ]
    }

    /// `(name, value)` for every field including the total, for field-by-field diffs.
    pub fn fields(&self) -> [(&'static str, &BigRational); 10] {
        let t = self.terms();
        [
            ("s1", t[0]),
            ("s2", t[1]),
            ("s3", t[2]),
            ("s4", t[3]),
            ("s5", t[4]),
            ("s6", t[5]),
            ("s7", t[6]),
            ("s8", t[7]),
            ("s9", t[8]),
            ("total", &self.total),
        ]
    }
}
