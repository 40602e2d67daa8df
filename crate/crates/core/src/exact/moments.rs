use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::{Anchor, CubeSpec, MomentReport, Population, SigmaTerms};
use crate::error::{Error, Result};
use crate::rational::{frac, int, pow2, powi};

/// `1^k + 2^k + … + n^k` for `k ∈ {1, 2, 3, 4}` via Faulhaber's closed forms.
pub fn power_sum(k: u32, n: u64) -> Result<BigInt> {
    let n = BigInt::from(n);
    let n1 = &n + 1;
    let value = match k {
        1 => &n * &n1 / 2,
        2 => &n * &n1 * (2 * &n + 1) / 6,
        3 => Pow::pow(&n * &n1 / 2, 2u32),
        4 => &n * &n1 * (2 * &n + 1) * (3 * &n * &n + 3 * &n - 1) / 30,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "power sums are available for k in 1..=4, got {k}"
            )))
        }
    };
    Ok(value)
}

fn t(k: u32, n: u64) -> BigRational {
    BigRational::from_integer(power_sum(k, n).expect("k in range"))
}

/// `A_{a,V} = dN²/2 − ⟨a⟩N + ‖a‖²`.
pub fn avg_sq_dist_vertices(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let (d, n) = (spec.d_q(), spec.n_q());
    Ok(&d * &n * &n / int(2) - a.coord_sum() * &n + a.norm_sq())
}

/// Second moment of `dist²(v, a)` about `A_{a,V}`: `dN⁴/4 − ⟨a⟩N³ + ‖a‖²N²`.
pub fn second_moment_vertices(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let (d, n) = (spec.d_q(), spec.n_q());
    let n2 = &n * &n;
    Ok(&d * &n2 * &n2 / int(4) - a.coord_sum() * &n2 * &n + a.norm_sq() * &n2)
}

/// The nine monomial sums over the vertices, each from its counting formula.
pub fn sigma_vertices(spec: &CubeSpec, a: &Anchor) -> Result<SigmaTerms> {
    spec.check(a)?;
    let d = spec.d_q();
    let di = spec.d as i64;
    let n = spec.n_q();
    let (u, q) = (a.coord_sum(), a.norm_sq());
    let half = pow2(di - 1);
    let quarter = pow2(di - 2);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n2 * &n2;

    let s1 = &n4 * (&d * &half + (&d * &d - &d) * &quarter);
    let s2 = &n3 * (&half * &u + (&d - int(1)) * &quarter * &u);
    let s3 = &n2 * &d * &half * &q;
    let s5 = &n2 * (&half * &q + &quarter * (&u * &u - &q));
    let s6 = &n * &half * &u * &q;
    let s9 = pow2(di) * &q * &q;
    Ok(SigmaTerms::from_terms([
        s1,
        s2.clone(),
        s3.clone(),
        s2,
        s5,
        s6.clone(),
        s3,
        s6,
        s9,
    ]))
}

/// `Σ_{a,V}` as one polynomial in `N`, `⟨a⟩`, `‖a‖²`.
pub fn sigma_total_vertices_closed_form(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let d = spec.d_q();
    let n = spec.n_q();
    let (u, q) = (a.coord_sum(), a.norm_sq());
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n2 * &n2;
    let d1 = &d + int(1);
    let poly = (&d * &d + &d) * &n4 - int(4) * &d1 * &u * &n3 - int(8) * &u * &q * &n
        + int(4) * (&u * &u + &d1 * &q) * &n2
        + int(4) * &q * &q;
    Ok(pow2(spec.d as i64 - 2) * poly)
}

/// `A_{a,W} = dN(2N+1)/6 − ⟨a⟩N + ‖a‖²`.
pub fn avg_sq_dist_lattice(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let (d, n) = (spec.d_q(), spec.n_q());
    Ok(&d * &n * (int(2) * &n + int(1)) / int(6) - a.coord_sum() * &n + a.norm_sq())
}

/// Second moment of `dist²(w, a)` about `A_{a,W}`.
pub fn second_moment_lattice(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let (d, n) = (spec.d_q(), spec.n_q());
    let (u, q) = (a.coord_sum(), a.norm_sq());
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n2 * &n2;
    Ok(frac(4, 45) * &d * n4
        + (frac(17, 90) * &d - &u / int(3)) * n3
        + (frac(1, 180) * &d - frac(2, 3) * &u + &q / int(3)) * n2
        + (frac(-1, 30) * &d + frac(2, 3) * &q) * n)
}

/// The nine monomial sums over the lattice, built from the power sums `T_1…T_4`.
pub fn sigma_lattice(spec: &CubeSpec, a: &Anchor) -> Result<SigmaTerms> {
    spec.check(a)?;
    let d = spec.d_q();
    let di = spec.d as i64;
    let (u, q) = (a.coord_sum(), a.norm_sq());
    let side = int(spec.n as i64 + 1);
    let p0 = powi(&side, di);
    let p1 = powi(&side, di - 1);
    let p2 = powi(&side, di - 2);
    let (t1, t2, t3, t4) = (t(1, spec.n), t(2, spec.n), t(3, spec.n), t(4, spec.n));

    let s1 = &d * &p1 * &t4 + (&d * &d - &d) * &p2 * &t2 * &t2;
    let s2 = &u * &p1 * &t3 + &u * (&d - int(1)) * &p2 * &t1 * &t2;
    let s3 = &q * &d * &p1 * &t2;
    let s5 = &q * &p1 * &t2 + (&u * &u - &q) * &p2 * &t1 * &t1;
    let s6 = &u * &q * &p1 * &t1;
    let s9 = &q * &q * &p0;
    Ok(SigmaTerms::from_terms([
        s1,
        s2.clone(),
        s3.clone(),
        s2,
        s5,
        s6.clone(),
        s3,
        s6,
        s9,
    ]))
}

/// `Σ_{a,W}` as one polynomial, `(N+1)^d · P(d, N, ⟨a⟩, ‖a‖²)`.
pub fn sigma_total_lattice_closed_form(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let d = spec.d_q();
    let n = spec.n_q();
    let (u, q) = (a.coord_sum(), a.norm_sq());
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n2 * &n2;
    let dd = &d * &d;
    let poly = (frac(1, 9) * &dd + frac(4, 45) * &d) * n4
        + (frac(1, 9) * &dd + frac(17, 90) * &d + (frac(-2, 3) * &d - frac(1, 3)) * &u) * n3
        + (frac(1, 36) * &dd
            + frac(1, 180) * &d
            + (frac(-1, 3) * &d - frac(2, 3) + &u) * &u
            + (frac(2, 3) * &d + frac(1, 3)) * &q)
            * n2
        + (frac(-1, 30) * &d + (frac(1, 3) * &d + frac(2, 3) - int(2) * &u) * &q) * &n
        + &q * &q;
    Ok(powi(&int(spec.n as i64 + 1), spec.d as i64) * poly)
}

pub fn sigma(spec: &CubeSpec, a: &Anchor, population: Population) -> Result<SigmaTerms> {
    match population {
        Population::Vertices => sigma_vertices(spec, a),
        Population::Lattice => sigma_lattice(spec, a),
    }
}

/// `Σ / #population − A²`, the second moment assembled from the fourth-power sum.
pub fn second_moment_from_sigma(
    spec: &CubeSpec,
    a: &Anchor,
    population: Population,
) -> Result<BigRational> {
    let total = sigma(spec, a, population)?.total;
    let size = BigRational::from_integer(spec.population_size(population).into());
    let avg = match population {
        Population::Vertices => avg_sq_dist_vertices(spec, a)?,
        Population::Lattice => avg_sq_dist_lattice(spec, a)?,
    };
    Ok(total / size - &avg * &avg)
}

/// `r_a² = dist_d²(a, c) = (dN²/4 − ⟨a⟩N + ‖a‖²) / (dN²)`.
pub fn center_distance_sq(spec: &CubeSpec, a: &Anchor) -> Result<BigRational> {
    spec.check(a)?;
    let (d, n) = (spec.d_q(), spec.n_q());
    let scale = &d * &n * &n;
    Ok((&scale / int(4) - a.coord_sum() * &n + a.norm_sq()) / scale)
}

/// Closed-form `A`, `M2` and normalized forms for either population.
pub fn moments(spec: &CubeSpec, a: &Anchor, population: Population) -> Result<MomentReport> {
    let (average, second) = match population {
        Population::Vertices => (
            avg_sq_dist_vertices(spec, a)?,
            second_moment_vertices(spec, a)?,
        ),
        Population::Lattice => (
            avg_sq_dist_lattice(spec, a)?,
            second_moment_lattice(spec, a)?,
        ),
    };
    Ok(MomentReport::new(spec, population, average, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: usize, n: u64) -> CubeSpec {
        CubeSpec::new(d, n).unwrap()
    }

    fn anchor(c: &[i64]) -> Anchor {
        Anchor::from_integers(c).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(1, 4).unwrap(), BigInt::from(10));
        assert_eq!(power_sum(2, 3).unwrap(), BigInt::from(14));
        assert_eq!(power_sum(4, 2).unwrap(), BigInt::from(17));
        assert!(power_sum(0, 3).is_err());
        assert!(power_sum(5, 3).is_err());
    }

    #[test]
    fn power_sum_matches_loop() {
        for k in 1..=4u32 {
            for n in 1..=40u64 {
                let direct: BigInt = (1..=n).map(|i| Pow::pow(BigInt::from(i), k)).sum();
                assert_eq!(power_sum(k, n).unwrap(), direct, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn vertex_average_examples() {
        for (d, n) in [(1, 1), (3, 5), (7, 2)] {
            let s = spec(d, n);
            let m = moments(&s, &Anchor::origin(&s), Population::Vertices).unwrap();
            assert_eq!(m.average, int(d as i64 * n as i64 * n as i64) / int(2));
            assert_eq!(m.normalized_average, frac(1, 2));
        }
        assert_eq!(
            avg_sq_dist_vertices(&spec(2, 2), &anchor(&[1, 1])).unwrap(),
            int(2)
        );
        assert_eq!(
            avg_sq_dist_vertices(&spec(1, 2), &anchor(&[1])).unwrap(),
            int(1)
        );
    }

    #[test]
    fn vertex_sigma_examples() {
        let s = sigma_vertices(&spec(1, 1), &anchor(&[0])).unwrap();
        assert_eq!(s.s1, int(1));
        assert_eq!(s.total, int(1));
        let s = sigma_vertices(&spec(2, 2), &anchor(&[1, 1])).unwrap();
        assert_eq!(s.total, int(16));
    }

    #[test]
    fn vertex_second_moment_examples() {
        assert_eq!(
            second_moment_vertices(&spec(2, 2), &anchor(&[1, 1])).unwrap(),
            int(0)
        );
        assert_eq!(
            second_moment_vertices(&spec(1, 1), &anchor(&[0])).unwrap(),
            frac(1, 4)
        );
        assert_eq!(
            second_moment_vertices(&spec(1, 2), &anchor(&[0])).unwrap(),
            int(4)
        );
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(
            avg_sq_dist_lattice(&spec(1, 2), &anchor(&[0])).unwrap(),
            frac(5, 3)
        );
        assert_eq!(
            avg_sq_dist_lattice(&spec(2, 1), &anchor(&[1, 0])).unwrap(),
            int(1)
        );
        assert_eq!(
            sigma_lattice(&spec(1, 1), &anchor(&[0])).unwrap().total,
            int(1)
        );
        assert_eq!(
            sigma_lattice(&spec(1, 2), &anchor(&[0])).unwrap().total,
            int(17)
        );
        assert_eq!(
            sigma_lattice(&spec(2, 1), &anchor(&[0, 0])).unwrap().total,
            int(6)
        );
        assert_eq!(
            second_moment_lattice(&spec(1, 1), &anchor(&[0])).unwrap(),
            frac(1, 4)
        );
        assert_eq!(
            second_moment_lattice(&spec(2, 1), &anchor(&[1, 0])).unwrap(),
            frac(1, 2)
        );
        // squared distances {1, 0, 1}: mean 2/3, second moment (1/9 + 4/9 + 1/9)/3
        assert_eq!(
            avg_sq_dist_lattice(&spec(1, 2), &anchor(&[1])).unwrap(),
            frac(2, 3)
        );
        assert_eq!(
            second_moment_lattice(&spec(1, 2), &anchor(&[1])).unwrap(),
            frac(2, 9)
        );
    }

    #[test]
    fn lattice_center_normalized_average() {
        for (d, n) in [(1, 1), (4, 3), (9, 10)] {
            let s = spec(d, n);
            let m = moments(&s, &Anchor::center(&s), Population::Lattice).unwrap();
            assert_eq!(m.normalized_average, frac(1, 12) + frac(1, 6 * n as i64));
        }
    }

    #[test]
    fn center_distance_examples() {
        let s = spec(3, 4);
        assert_eq!(
            center_distance_sq(&s, &anchor(&[0, 4, 0])).unwrap(),
            frac(1, 4)
        );
        assert_eq!(center_distance_sq(&s, &Anchor::center(&s)).unwrap(), int(0));
        assert_eq!(
            center_distance_sq(&spec(2, 2), &anchor(&[1, 0])).unwrap(),
            frac(1, 8)
        );
    }

    #[test]
    fn closed_totals_agree_with_signed_sums() {
        for (d, n) in [(1, 1), (1, 3), (2, 2), (5, 3), (11, 7)] {
            let s = spec(d, n);
            let a = Anchor::new(
                (0..d)
                    .map(|i| frac(i as i64 * 3 - 2, 2 + i as i64))
                    .collect(),
            )
            .unwrap();
            assert_eq!(
                sigma_vertices(&s, &a).unwrap().total,
                sigma_total_vertices_closed_form(&s, &a).unwrap()
            );
            assert_eq!(
                sigma_lattice(&s, &a).unwrap().total,
                sigma_total_lattice_closed_form(&s, &a).unwrap()
            );
            for pop in [Population::Vertices, Population::Lattice] {
                assert_eq!(
                    second_moment_from_sigma(&s, &a, pop).unwrap(),
                    moments(&s, &a, pop).unwrap().second_moment
                );
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = avg_sq_dist_vertices(&spec(3, 1), &anchor(&[0, 0])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                found: 2
            }
        ));
        assert!(sigma_lattice(&spec(1, 1), &anchor(&[0, 0])).is_err());
        assert!(center_distance_sq(&spec(1, 1), &anchor(&[0, 0])).is_err());
    }
}
