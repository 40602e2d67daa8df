use hyperlens::exact::{moments, sigma, Anchor, CubeSpec, Population, TheoremId};
use hyperlens::geometry::{normalized_distance, right_angle_test, FloatPoint};
use hyperlens::oracle::{
    brute_moments, brute_sigma, brute_theorem_proportion, enumerate_population, EnumerationBudget,
    OracleProportion,
};
use hyperlens::rational::{frac, int};
use num_rational::BigRational;
use num_traits::Zero;

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

#[test]
fn large_denominators_take_the_big_integer_path() {
    // denominators are distinct large primes, so the scaled anchor overflows i128 sums
    let spec = CubeSpec::new(4, 3).unwrap();
    let a = Anchor::new(vec![
        BigRational::new(1_000_003.into(), 1_000_033.into()),
        BigRational::new(2_000_000.into(), 1_000_037.into()),
        BigRational::new(5.into(), 1_000_039.into()),
        frac(3, 1),
    ])
    .unwrap();
    for pop in [Population::Vertices, Population::Lattice] {
        assert_eq!(
            sigma(&spec, &a, pop).unwrap(),
            brute_sigma(&spec, pop, &a, &budget()).unwrap()
        );
        assert_eq!(
            moments(&spec, &a, pop).unwrap(),
            brute_moments(&spec, pop, &a, &budget()).unwrap()
        );
    }
}

#[test]
fn anchors_outside_the_cube_still_match() {
    // the moment identities are polynomial in a; nothing requires a ∈ [0, N]^d
    let spec = CubeSpec::new(3, 2).unwrap();
    let a = Anchor::new(vec![frac(-5, 2), int(7), frac(1, 3)]).unwrap();
    for pop in [Population::Vertices, Population::Lattice] {
        assert_eq!(
            sigma(&spec, &a, pop).unwrap(),
            brute_sigma(&spec, pop, &a, &budget()).unwrap()
        );
        assert_eq!(
            moments(&spec, &a, pop).unwrap(),
            brute_moments(&spec, pop, &a, &budget()).unwrap()
        );
    }
}

#[test]
fn sigma_total_is_sum_of_fourth_powers() {
    let spec = CubeSpec::new(3, 4).unwrap();
    let a = Anchor::new(vec![frac(1, 2), frac(7, 3), int(4)]).unwrap();
    for pop in [Population::Vertices, Population::Lattice] {
        let direct = enumerate_population(&spec, pop, &budget())
            .unwrap()
            .map(|p| {
                let sq = p
                    .iter()
                    .zip(a.coords())
                    .fold(BigRational::zero(), |acc, (&x, c)| {
                        let diff = int(x as i64) - c;
                        acc + &diff * &diff
                    });
                &sq * &sq
            })
            .fold(BigRational::zero(), |acc, x| acc + x);
        assert_eq!(sigma(&spec, &a, pop).unwrap().total, direct);
    }
}

#[test]
fn v1_count_with_wide_interval() {
    // dist = √(k/12) for k ones; the interval 1/√2 ± 12^{-0.45} excludes only k ∈ {0, 1}
    let spec = CubeSpec::new(12, 1).unwrap();
    let p = brute_theorem_proportion(
        TheoremId::V1,
        &spec,
        &Anchor::origin(&spec),
        &frac(9, 20),
        None,
        &budget(),
    )
    .unwrap();
    assert_eq!(
        p,
        OracleProportion {
            hits: 4096 - 13,
            total: 4096
        }
    );
}

/// Floating-point enumeration of the single-point events, for comparison with
/// the exact counts.
fn float_count(
    theorem: TheoremId,
    spec: &CubeSpec,
    a: &Anchor,
    eta: f64,
    gamma: Option<f64>,
) -> (u64, u64) {
    let af = FloatPoint::from_anchor(a).unwrap();
    let b = moments(spec, a, theorem.population())
        .unwrap()
        .normalized_average;
    let target = hyperlens::rational::to_f64(&b).sqrt();
    let h = (spec.d as f64).powf(-eta);
    let (mut hits, mut total) = (0, 0);
    for p in enumerate_population(spec, theorem.population(), &budget()).unwrap() {
        let pf = FloatPoint::from_integers(&p);
        let hit = match theorem {
            TheoremId::Acv => {
                if pf == af {
                    continue;
                }
                right_angle_test(spec, &af, &pf, gamma.unwrap()).unwrap()
            }
            _ => (normalized_distance(spec, &af, &pf).unwrap() - target).abs() <= h,
        };
        total += 1;
        hits += u64::from(hit);
    }
    (hits, total)
}

#[test]
fn exact_counts_agree_with_float_enumeration() {
    let spec = CubeSpec::new(9, 2).unwrap();
    let anchors = [
        Anchor::origin(&spec),
        Anchor::new(vec![frac(1, 3); 9]).unwrap(),
        Anchor::new((0..9).map(|i| frac(i % 3, 2)).collect()).unwrap(),
    ];
    for a in &anchors {
        for (theorem, eta) in [(TheoremId::V1, frac(9, 20)), (TheoremId::W1, frac(2, 5))] {
            let p = brute_theorem_proportion(theorem, &spec, a, &eta, None, &budget()).unwrap();
            let (hits, total) =
                float_count(theorem, &spec, a, hyperlens::rational::to_f64(&eta), None);
            assert_eq!(
                (p.hits, p.total),
                (hits, total),
                "{theorem} a={}",
                a.describe(&spec)
            );
        }
    }
}

#[test]
fn acv_exact_path_agrees_with_float_enumeration() {
    // d = 16, γ = 1/8: d^{−2γ} = 1/2 is rational, so the exact branch decides.
    // Enumerable d forces γ < log(√2 + 1)/log d, so every vertex passes here.
    let spec = CubeSpec::new(16, 2).unwrap();
    let a = Anchor::origin(&spec);
    let p = brute_theorem_proportion(
        TheoremId::Acv,
        &spec,
        &a,
        &frac(49, 100),
        Some(&frac(1, 8)),
        &budget(),
    )
    .unwrap();
    let (hits, total) = float_count(TheoremId::Acv, &spec, &a, 0.49, Some(0.125));
    assert_eq!((p.hits, p.total), (hits, total));
    assert_eq!(total, (1 << 16) - 1);
}

#[test]
fn pair_theorems_count_ordered_pairs() {
    let spec = CubeSpec::new(8, 1).unwrap();
    let a = Anchor::origin(&spec);
    for theorem in [TheoremId::VIsosceles, TheoremId::VSimilar] {
        let p = brute_theorem_proportion(theorem, &spec, &a, &frac(1, 4), None, &budget()).unwrap();
        assert_eq!(p.total, 255 * 254);
    }
    let spec = CubeSpec::new(3, 2).unwrap();
    let a = Anchor::center(&spec);
    // the center is a lattice point for even N and is excluded
    let p = brute_theorem_proportion(
        TheoremId::WIsosceles,
        &spec,
        &a,
        &frac(1, 4),
        None,
        &budget(),
    )
    .unwrap();
    assert_eq!(p.total, 26 * 25);
    // every non-center point is at distance √(k/12), k = 1..3, so a 2·3^{-1/4} window catches all
    assert_eq!(p.hits, p.total);
}

#[test]
fn acv_rejects_bad_anchor_radius() {
    let spec = CubeSpec::new(16, 2).unwrap();
    let near_center = Anchor::new(vec![int(1); 15].into_iter().chain([int(2)]).collect()).unwrap();
    let err = brute_theorem_proportion(
        TheoremId::Acv,
        &spec,
        &near_center,
        &frac(49, 100),
        Some(&frac(1, 8)),
        &budget(),
    )
    .unwrap_err();
    assert!(err.to_string().contains("requires r_a"), "{err}");
}
