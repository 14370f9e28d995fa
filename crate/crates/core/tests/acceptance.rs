//! Acceptance suite: one test per verification target, each printing a
//! PASS/FAIL line. Every tolerance is pinned in code next to the assertion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hyperorbit::algebra::fp::{self, Fp};
use hyperorbit::algebra::{charpoly_pencil_in, discriminant, Poly, PolyZ, QQ, ZZ};
use hyperorbit::curves::{enumerate_curves, HyperCurve};
use hyperorbit::descent::{
    delta_class, gram_pair, ideal_from_divisor, integral_orbit_zp, mumford_from_points,
};
use hyperorbit::finite::{
    census_from_fiber, collect_all_fibers, fiber_counts, poly_decode, poly_from_invariants,
    regular_vector_count, so_group, so_order,
};
use hyperorbit::orbit::{
    block_tests_on, combinatorial_lemma_check, distinguished_rep, weight_identities,
};
use hyperorbit::padic::{chabauty_bound_at_3, local_mass_ratios};

fn pass(name: &str) {
    println!("PASS {}", name);
}

/// For n = 1 and every odd prime p <= 13, the fiber over every separable
/// trace-zero cubic has exactly p(p^2-1) = #SO(W)(F_p) elements.
#[test]
fn finite_field_fiber_counts() {
    for p in [3u64, 5, 7, 11, 13] {
        let counts = fiber_counts(1, p).expect("feasible box");
        let fp = Fp::new(p);
        let expected = BigInt::from(p) * BigInt::from(p * p - 1);
        assert_eq!(so_order(1, p), expected);
        for (code, &count) in counts.iter().enumerate() {
            let c = poly_decode(p, 1, code);
            let f = poly_from_invariants(1, &c);
            if fp::is_separable(&fp, &f) {
                assert_eq!(
                    BigInt::from(count),
                    expected,
                    "FAIL finite_field_fiber_counts: p={} c={:?}",
                    p,
                    c
                );
            }
        }
    }
    pass("finite_field_fiber_counts");
}

/// Exact regular-vector totals: p^(2n) #SO(W)(F_p) out of p^(n(2n+3)).
#[test]
fn regular_vector_totals() {
    let cases = [
        (1usize, 3u64, 216u64, 243u128),
        (1, 5, 3000, 3125),
        (1, 7, 16464, 16807),
    ];
    for (n, p, want_regular, want_total) in cases {
        let (regular, total) = regular_vector_count(n, p).expect("feasible");
        assert_eq!((regular, total), (want_regular, want_total), "n={} p={}", n, p);
    }
    // n = 2, p = 3: 3^4 * 51840 regular vectors out of 3^14
    let (regular, total) = regular_vector_count(2, 3).expect("feasible");
    assert_eq!(regular, 81 * 51840);
    assert_eq!(total, 4_782_969);
    pass("regular_vector_totals");
}

/// Orbit/stabilizer structure of every fiber at n = 1, p <= 13: 2^m orbits
/// of equal size with stabilizer order 2^m (m + 1 the number of irreducible
/// factors), and exactly one orbit carrying a distinguished-shape
/// representative.
#[test]
fn orbit_stabilizer_structure() {
    for p in [3u64, 5, 7, 11, 13] {
        let fp = Fp::new(p);
        let fibers = collect_all_fibers(1, p).expect("feasible");
        let group = so_group(1, p).expect("certified generators");
        let order = so_order(1, p);
        let mut codes: Vec<usize> = fibers.keys().copied().collect();
        codes.sort_unstable();
        for code in codes {
            let c = poly_decode(p, 1, code);
            let f = poly_from_invariants(1, &c);
            if !fp::is_separable(&fp, &f) {
                continue;
            }
            let census = census_from_fiber(&fp, 1, p, &c, &f, &group, &fibers[&code]);
            let m = census.m;
            assert_eq!(census.num_orbits, 1 << m, "p={} c={:?}", p, c);
            let orbit_size = order.clone() / BigInt::from(1u64 << m);
            for size in &census.orbit_sizes {
                assert_eq!(BigInt::from(*size), orbit_size, "p={} c={:?}", p, c);
            }
            for stab in &census.stabilizer_orders {
                assert_eq!(*stab, 1 << m, "p={} c={:?}", p, c);
            }
            assert_eq!(census.distinguished_orbits, 1, "p={} c={:?}", p, c);
            assert_eq!(BigInt::from(census.distinguished_size), orbit_size);
        }
    }
    pass("orbit_stabilizer_structure");
}

/// 500 random separable polynomials (n <= 3, |c| <= 10): the distinguished
/// construction returns the invariants exactly and has the zero-block shape.
#[test]
fn distinguished_construction_round_trip() {
    let mut rng = StdRng::seed_from_u64(20260810);
    let mut done = 0usize;
    while done < 500 {
        let n = rng.gen_range(1..=3usize);
        let d = 2 * n + 1;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        for m in 2..=d {
            coeffs[d - m] = BigInt::from(rng.gen_range(-10i64..=10));
        }
        let f = Poly::from_coeffs(&ZZ, coeffs);
        if discriminant(&f).unwrap().is_zero() {
            continue;
        }
        let b = distinguished_rep(&f).expect("separable input");
        let shape = block_tests_on(n, |i, j| b.at(i, j).is_zero());
        assert!(shape.distinguished_shape, "shape failed for {:?}", f);
        let back = charpoly_pencil_in(&QQ, &b, n).unwrap();
        assert_eq!(back, f.to_rational(), "round trip failed for {:?}", f);
        done += 1;
    }
    pass("distinguished_construction_round_trip");
}

fn genus_one_samples() -> Vec<(PolyZ, Vec<(BigInt, BigInt)>)> {
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in 1i64..=3 {
            for c2 in -2i64..=2 {
                let c3 = b * b - a * a * a - c2 * a;
                let curve = match HyperCurve::from_i64(1, &[c2, c3]) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                if curve.discriminant().is_zero() {
                    continue;
                }
                out.push((curve.poly(), vec![(BigInt::from(a), BigInt::from(b))]));
            }
        }
    }
    out
}

fn genus_two_samples() -> Vec<(PolyZ, Vec<(BigInt, BigInt)>)> {
    // curves through (0, b1) and (1, b2): c5 = b1^2, c4 determined
    let mut out = Vec::new();
    for b1 in 1i64..=3 {
        for b2 in 1i64..=3 {
            for c2 in -2i64..=2 {
                for c3 in -1i64..=1 {
                    let c5 = b1 * b1;
                    let c4 = b2 * b2 - 1 - c2 - c3 - c5;
                    let curve = match HyperCurve::from_i64(2, &[c2, c3, c4, c5]) {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                    if curve.discriminant().is_zero() {
                        continue;
                    }
                    out.push((
                        curve.poly(),
                        vec![
                            (BigInt::zero(), BigInt::from(b1)),
                            (BigInt::one(), BigInt::from(b2)),
                        ],
                    ));
                }
            }
        }
    }
    out
}

/// Descent pipeline certificates on at least 50 (curve, integral divisor)
/// inputs: N(I_D) = |prod b_i|, G unimodular, GM symmetric,
/// charpoly(M) = f, and p-adic normalization reproducing the invariants
/// mod p^6 at two odd primes each.
#[test]
fn descent_pipeline_certificates() {
    let mut samples = genus_one_samples();
    samples.extend(genus_two_samples());
    assert!(samples.len() >= 50, "need at least 50 inputs, have {}", samples.len());
    let mut checked = 0usize;
    for (f, points) in &samples {
        let divisor = mumford_from_points(points, f).expect("integral points on the curve");
        let alpha = delta_class(&divisor, f);
        let ideal = ideal_from_divisor(&divisor, f).expect("full-rank ideal");
        // N(I_D) = |b_1 ... b_m| exactly
        let expected_norm: BigInt = points.iter().map(|(_, b)| b.abs()).product();
        assert_eq!(
            ideal.norm(),
            BigRational::from_integer(expected_norm),
            "norm failed for {:?}",
            f
        );
        let pair = gram_pair(&ideal, &alpha, f).expect("valid pair");
        assert!(pair.gram.det_bareiss(&ZZ).abs().is_one());
        assert!(pair.gm_symmetric());
        assert!(pair.trace_zero());
        assert_eq!(hyperorbit::algebra::charpoly(&pair.mult), *f);
        for p in [5u64, 7] {
            let orbit = integral_orbit_zp(f, &divisor, p, 6).expect("odd prime normalization");
            assert!(orbit.invariants_ok, "invariants mod {}^6 for {:?}", p, f);
            assert!(orbit.b.is_symmetric());
        }
        checked += 1;
    }
    assert!(checked >= 50);
    println!("PASS descent_pipeline_certificates ({} inputs)", checked);
}

/// Local mass product over the places: rho_infinity * rho_2 * prod rho_p = 1
/// for every genus-1 curve of height < 100 where the factor shapes resolve.
#[test]
fn local_mass_product() {
    let curves = enumerate_curves(1, &BigInt::from(100)).unwrap();
    assert!(!curves.is_empty());
    let mut supported = 0usize;
    for curve in &curves {
        match local_mass_ratios(curve) {
            Ok((rows, product)) => {
                supported += 1;
                assert!(
                    product.is_one(),
                    "product != 1 for {:?}",
                    curve.coefficients()
                );
                assert!(rows.len() >= 2);
            }
            Err(e) => panic!(
                "factor shape failed for cubic {:?}: {} (cubics are fully supported)",
                curve.coefficients(),
                e
            ),
        }
    }
    assert_eq!(supported, curves.len());
    println!("PASS local_mass_product ({} curves)", supported);
}

/// Every curve passing the mod-3 filter yields a certified zero bound of at
/// most three for the formal integrals on the disc 3 Z_3.
#[test]
fn chabauty_bounds() {
    let mut curves: Vec<HyperCurve> = enumerate_curves(1, &BigInt::from(400))
        .unwrap()
        .into_iter()
        .filter(|c| c.mod3_chabauty_filter())
        .collect();
    curves.extend(
        enumerate_curves(2, &BigInt::from(3))
            .unwrap()
            .into_iter()
            .filter(|c| c.mod3_chabauty_filter()),
    );
    assert!(curves.len() >= 50, "families too small: {}", curves.len());
    for curve in &curves {
        let report = chabauty_bound_at_3(curve, None).expect("filter passed");
        assert!(
            report.unit_condition_certified,
            "unit condition for {:?}",
            curve.coefficients()
        );
        assert_eq!(report.bound, Some(3));
        for d in &report.differentials {
            if let Some(s) = d.strassmann {
                assert!(s <= 3, "Strassmann bound {} > 3 for {:?}", s, curve.coefficients());
            }
        }
        assert!(report.assumes_rank_le_1);
    }
    println!("PASS chabauty_bounds ({} curves)", curves.len());
}

/// Weight identities and the cusp inequality, exhaustively for n <= 4.
#[test]
fn weight_and_combinatorial_identities() {
    for n in 1..=4 {
        assert!(weight_identities(n).all_ok(), "weights at n={}", n);
        let lemma = combinatorial_lemma_check(n).unwrap();
        assert!(lemma.inequality_holds, "inequality at n={}", n);
        assert!(lemma.equality_exactly_at_extremes, "equality cases at n={}", n);
        let expected_subsets = 1usize << (n * n);
        assert_eq!(lemma.subsets_checked, expected_subsets);
    }
    pass("weight_and_combinatorial_identities");
}

/// Exact reducible-polynomial densities: |count/total - 2/3| <= 10/p for
/// n = 1 and every odd p <= 13.
#[test]
fn reducible_polynomial_density() {
    for p in [3u64, 5, 7, 11, 13] {
        let (reducible, total) = hyperorbit::finite::reducible_poly_density(1, p).unwrap();
        // |reducible/total - 2/3| <= 10/p, cross-multiplied exactly:
        // |3 reducible - 2 total| * p <= 30 total
        let lhs = (3 * reducible as i128 - 2 * total as i128).abs() * p as i128;
        assert!(lhs <= 30 * total as i128, "density bound at p={}", p);
    }
    // n = 2, p = 3: the 10/p bound is vacuous; the exact counts are pinned
    // (exhaustive over 81 tuples). Cross-check: there are (3^5 - 3)/5 = 48
    // irreducible monic quintics over F_3, 16 of them trace-zero by
    // translation symmetry, and 54 - 16 = 38.
    let (reducible, total) = hyperorbit::finite::reducible_poly_density(2, 3).unwrap();
    assert_eq!((reducible, total), (38, 54));
    pass("reducible_polynomial_density");
}

/// Curve counts scale like X^(5/6) for genus 1: count(4X)/count(X) within
/// 15% of 4^(5/6) at X = 10^4.
#[test]
fn curve_count_scaling() {
    let c1 = enumerate_curves(1, &BigInt::from(10_000u32)).unwrap().len();
    let c4 = enumerate_curves(1, &BigInt::from(40_000u32)).unwrap().len();
    let ratio = c4 as f64 / c1 as f64;
    let target = 4f64.powf(5.0 / 6.0);
    assert!(
        (ratio - target).abs() <= 0.15 * target,
        "ratio {} vs 4^(5/6) = {}",
        ratio,
        target
    );
    println!(
        "PASS curve_count_scaling (count({}) = {}, count({}) = {}, ratio {:.4})",
        10_000, c1, 40_000, c4, ratio
    );
}
