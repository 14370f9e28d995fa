use super::*;

fn x3_plus_1() -> PolyZ {
    Poly::from_i64_coeffs(&[1, 0, 0, 1])
}

fn pt(a: i64, b: i64) -> (BigInt, BigInt) {
    (BigInt::from(a), BigInt::from(b))
}

#[test]
fn mumford_single_point() {
    let f = x3_plus_1();
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    assert_eq!(d.p_poly(), &Poly::from_i64_coeffs(&[-2, 1]));
    assert_eq!(d.r_poly(), &Poly::from_i64_coeffs(&[3]));
}

#[test]
fn mumford_two_points_on_genus_two() {
    // a two-point divisor on a genus-2 curve containing
    // (0,1) and (2,3): y^2 = x^5 + c2 x^3 + c3 x^2 + c4 x + c5 through both
    // points with c2 = 0, c3 = 0: c5 = 1, 9 = 32 + 2 c4 + 1 => c4 = -12
    let f = Poly::from_i64_coeffs(&[1, -12, 0, 0, 0, 1]);
    let d = mumford_from_points(&[pt(0, 1), pt(2, 3)], &f).unwrap();
    assert_eq!(d.p_poly(), &Poly::from_i64_coeffs(&[0, -2, 1]));
    assert_eq!(d.r_poly(), &Poly::from_i64_coeffs(&[1, 1]));
    // R^2 - f divisible by P
    let diff = d.r_poly().mul(&ZZ, d.r_poly()).sub(&ZZ, &f);
    let (_, rem) = diff.divmod_monic(&ZZ, d.p_poly());
    assert!(rem.is_zero());
}

#[test]
fn mumford_validation_errors() {
    let f = x3_plus_1();
    assert!(matches!(
        mumford_from_points(&[pt(1, 1)], &f),
        Err(DescentError::PointOffCurve { .. })
    ));
    assert!(matches!(
        mumford_from_points(&[pt(-1, 0)], &f),
        Err(DescentError::WeierstrassPoint)
    ));
    assert!(matches!(
        mumford_from_points(&[pt(2, 3), pt(2, -3)], &f),
        Err(DescentError::TooManyPoints)
    ));
    let empty = mumford_from_points(&[], &f).unwrap();
    assert_eq!(empty, MumfordDivisor::identity());
}

#[test]
fn delta_class_examples() {
    let f = x3_plus_1();
    // identity divisor: alpha = 1
    let alpha = delta_class(&MumfordDivisor::identity(), &f);
    assert_eq!(alpha.alpha, Poly::from_i64_coeffs(&[1]));
    assert_eq!(alpha.norm, BigInt::one());
    // (2,3): alpha = (-1) P(beta) = 2 - beta, norm f(2) = 9
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    let alpha = delta_class(&d, &f);
    assert_eq!(alpha.alpha, Poly::from_i64_coeffs(&[2, -1]));
    assert_eq!(alpha.norm, BigInt::from(9));
    // two-point example: alpha = beta^2 - 2 beta, norm f(0) f(2) = 9
    let f5 = Poly::from_i64_coeffs(&[1, -12, 0, 0, 0, 1]);
    let d = mumford_from_points(&[pt(0, 1), pt(2, 3)], &f5).unwrap();
    let alpha = delta_class(&d, &f5);
    assert_eq!(alpha.alpha, Poly::from_i64_coeffs(&[0, -2, 1]));
    assert_eq!(alpha.norm, BigInt::from(9));
}

#[test]
fn ideal_norms_match_point_data() {
    let f = x3_plus_1();
    // identity: I = Z[beta]
    let ideal = ideal_from_divisor(&MumfordDivisor::identity(), &f).unwrap();
    assert_eq!(ideal.norm(), BigRational::one());
    // (2,3): index 3 = |b_1|
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    let ideal = ideal_from_divisor(&d, &f).unwrap();
    assert_eq!(ideal.norm(), BigRational::from_integer(BigInt::from(3)));
    // two points: index |b_1 b_2| = 3
    let f5 = Poly::from_i64_coeffs(&[1, -12, 0, 0, 0, 1]);
    let d = mumford_from_points(&[pt(0, 1), pt(2, 3)], &f5).unwrap();
    let ideal = ideal_from_divisor(&d, &f5).unwrap();
    assert_eq!(ideal.norm(), BigRational::from_integer(BigInt::from(3)));
}

#[test]
fn gram_pair_power_basis() {
    // I = Z[beta], alpha = 1: G is the anti-identity, M the multiplication
    // matrix, B = A M symmetric
    let f = x3_plus_1();
    let ideal = ideal_from_divisor(&MumfordDivisor::identity(), &f).unwrap();
    let alpha = delta_class(&MumfordDivisor::identity(), &f);
    let pair = gram_pair(&ideal, &alpha, &f).unwrap();
    assert_eq!(pair.gram, crate::algebra::anti_identity(1));
    assert!(pair.gm_symmetric());
    assert!(pair.trace_zero());
    let cert = pair.certificate(&alpha, &f);
    assert!(cert.unimodular && cert.charpoly_ok);
}

#[test]
fn gram_pair_point_divisor_certificate() {
    let f = x3_plus_1();
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    let ideal = ideal_from_divisor(&d, &f).unwrap();
    let alpha = delta_class(&d, &f);
    let pair = gram_pair(&ideal, &alpha, &f).unwrap();
    assert!(pair.gram.det_bareiss(&ZZ).abs().is_one());
    assert!(pair.gm_symmetric());
    assert!(pair.trace_zero());
    assert_eq!(charpoly(&pair.mult), f);
    // det G = (-1)^n for n = 1
    assert_eq!(pair.gram.det_bareiss(&ZZ), BigInt::from(-1));
}

#[test]
fn gram_pair_scaling_equivalence() {
    // (cI, c^2 alpha) with c = beta gives the same verdicts
    let f = x3_plus_1();
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    let ideal = ideal_from_divisor(&d, &f).unwrap();
    let alpha = delta_class(&d, &f);
    // c I: multiply every basis row by beta
    let dim = f.deg();
    let rows: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let poly = Poly::from_coeffs(&ZZ, ideal.basis().row(i).to_vec());
            let mut shifted = vec![BigInt::zero()];
            shifted.extend_from_slice(poly.coeffs());
            let (_, red) = Poly::from_coeffs(&ZZ, shifted).divmod_monic(&ZZ, &f);
            let mut v = vec![BigInt::zero(); dim];
            for (j, c) in red.coeffs().iter().enumerate() {
                v[j] = c.clone();
            }
            v
        })
        .collect();
    let scaled_ideal = LatticeBasis::from_generators(Mat::from_rows(rows), BigInt::one())
        .unwrap()
        .hermite_normal_form()
        .unwrap();
    // c^2 alpha = beta^2 (2 - beta) mod f
    let beta2 = Poly::from_i64_coeffs(&[0, 0, 1]);
    let prod = beta2.mul(&ZZ, &alpha.alpha);
    let (_, alpha2_poly) = prod.divmod_monic(&ZZ, &f);
    let alpha2 = AlphaClass {
        norm: resultant(&f, &alpha2_poly),
        alpha: alpha2_poly,
    };
    let pair = gram_pair(&scaled_ideal, &alpha2, &f).unwrap();
    assert!(pair.gram.det_bareiss(&ZZ).abs().is_one());
    assert!(pair.gm_symmetric());
    assert_eq!(charpoly(&pair.mult), f);
}

#[test]
fn integral_orbit_example_curves() {
    let f = x3_plus_1();
    let d = mumford_from_points(&[pt(2, 3)], &f).unwrap();
    for p in [5u64, 7] {
        let orbit = integral_orbit_zp(&f, &d, p, 6).unwrap();
        assert!(orbit.invariants_ok, "p = {}", p);
        assert!(orbit.b.is_symmetric());
    }
}

#[test]
fn identity_divisor_lands_in_distinguished_orbit() {
    // after normalization, the identity-class representative lies in the
    // distinguished orbit: search its finite orbit mod p for the shape
    let f = x3_plus_1();
    let p = 5u64;
    let orbit = integral_orbit_zp(&f, &MumfordDivisor::identity(), p, 2).unwrap();
    assert!(orbit.invariants_ok);
    // reduce B mod p and BFS its orbit
    let fp = crate::algebra::fp::Fp::new(p);
    let mut b = crate::finite::SmallMat::zero(3);
    let ring = ZMod::new(BigInt::from(p).pow(2));
    for i in 0..3 {
        for j in 0..3 {
            b.set(i, j, fp.reduce_int(&ring.reduce(orbit.b.at(i, j))));
        }
    }
    let group = crate::finite::so_group(1, p).unwrap();
    let found = group.elements.iter().any(|g| {
        let conj = b.sandwich(&fp, g, &g.transpose());
        crate::finite::has_distinguished_shape(1, &conj)
    });
    assert!(found);
}

#[test]
fn genus_two_pipeline() {
    let f5 = Poly::from_i64_coeffs(&[1, -12, 0, 0, 0, 1]);
    let d = mumford_from_points(&[pt(0, 1), pt(2, 3)], &f5).unwrap();
    for p in [7u64, 11] {
        let orbit = integral_orbit_zp(&f5, &d, p, 6).unwrap();
        assert!(orbit.invariants_ok, "p = {}", p);
        // the output is symmetric with zero anti-trace mod p^6, i.e. a
        // valid Gram representative after reduction
        assert!(orbit.b.is_symmetric());
        let ring = ZMod::new(BigInt::from(p).pow(6));
        assert!(ring.is_zero(&crate::algebra::anti_trace(&ring, &orbit.b)));
    }
}
