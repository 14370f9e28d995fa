use super::*;
use crate::algebra::{charpoly_pencil_in, discriminant, Mat, Poly};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pz(c: &[i64]) -> PolyZ {
    Poly::from_i64_coeffs(c)
}

fn random_so_z(rng: &mut StdRng, n: usize, words: usize) -> MatZ {
    let gens: Vec<MatZ> = (1..=2)
        .flat_map(|t| so_z_unipotents(n, t as i64))
        .chain((1..=2).flat_map(|t| so_z_unipotents(n, -(t as i64))))
        .collect();
    let mut g = Mat::identity(&ZZ, 2 * n + 1);
    for _ in 0..words {
        let pick = rng.gen_range(0..gens.len());
        g = g.mul(&ZZ, &gens[pick]);
    }
    g
}

#[test]
fn so_z_generators_are_orthogonal() {
    for n in 1..=3 {
        let a = standard_form(n);
        for g in so_z_unipotents(n, 2) {
            assert_eq!(g.transpose().mul(&ZZ, &a).mul(&ZZ, &g), a);
            assert_eq!(g.det_bareiss(&ZZ), BigInt::one());
        }
    }
}

#[test]
fn invariants_examples() {
    let zero = OperatorRep::new(1, Mat::zero(&ZZ, 3, 3)).unwrap();
    assert_eq!(invariants(&zero), vec![BigInt::zero(), BigInt::zero()]);
    let b = OperatorRep::from_i64(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]).unwrap();
    assert_eq!(invariants(&b), vec![BigInt::zero(), BigInt::one()]);
}

#[test]
fn invariants_are_conjugation_invariant() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 1..=2usize {
        let d = 2 * n + 1;
        for _ in 0..25 {
            // random symmetric anti-trace-zero matrix
            let mut b = Mat::zero(&ZZ, d, d);
            for i in 0..d {
                for j in i..d {
                    let v = BigInt::from(rng.gen_range(-4i64..=4));
                    b.set(i, j, v.clone());
                    b.set(j, i, v);
                }
            }
            // fix the anti-trace via the middle entry
            let mut acc = BigInt::zero();
            for i in 0..d {
                if i != n {
                    acc += b.at(i, d - 1 - i);
                }
            }
            b.set(n, n, -acc);
            let rep = OperatorRep::new(n, b).unwrap();
            let inv0 = invariants(&rep);
            let g = random_so_z(&mut rng, n, 6);
            let conj = rep.transform(&g).unwrap();
            assert_eq!(invariants(&conj), inv0);
        }
    }
}

#[test]
fn distinguished_rep_power_basis_case() {
    // x^3 + 1: the power basis is already standard
    let b = distinguished_rep(&pz(&[1, 0, 0, 1])).unwrap();
    let expect = MatZ::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])
        .map(|v| BigRational::from_integer(v.clone()));
    assert_eq!(b, expect);
}

#[test]
fn distinguished_rep_round_trip_and_shape() {
    let mut rng = StdRng::seed_from_u64(23);
    let mut done = 0;
    while done < 60 {
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
        let b = distinguished_rep(&f).unwrap();
        let shape = block_tests_on(n, |i, j| b.at(i, j).is_zero());
        assert!(shape.distinguished_shape, "n={} f={:?}", n, f);
        let back = charpoly_pencil_in(&QQ, &b, n).unwrap();
        assert_eq!(back, f.to_rational(), "n={} f={:?}", n, f);
        done += 1;
    }
}

#[test]
fn distinguished_rep_x3_minus_x() {
    let b = distinguished_rep(&pz(&[0, -1, 0, 1])).unwrap();
    assert!(b.at(0, 0).is_zero());
    let f = charpoly_pencil_in(&QQ, &b, 1).unwrap();
    assert_eq!(f, pz(&[0, -1, 0, 1]).to_rational());
}

#[test]
fn nilpotent_examples() {
    for n in 1..=5usize {
        let e = nilpotent_regular(n);
        let f = charpoly_pencil(e.matrix(), n).unwrap();
        assert_eq!(f, Poly::monomial(&ZZ, BigInt::one(), 2 * n + 1));
        // minimal polynomial degree 2n+1: E^(2n) != 0, E^(2n+1) = 0
        let m = e.operator_matrix();
        let mut pow = Mat::identity(&ZZ, 2 * n + 1);
        for _ in 0..2 * n {
            pow = pow.mul(&ZZ, &m);
        }
        assert_ne!(pow, Mat::zero(&ZZ, 2 * n + 1, 2 * n + 1));
        pow = pow.mul(&ZZ, &m);
        assert_eq!(pow, Mat::zero(&ZZ, 2 * n + 1, 2 * n + 1));
    }
    for n in 1..=4usize {
        let ep = nilpotent_subregular(n, &BigInt::one()).unwrap();
        let f = charpoly_pencil(ep.matrix(), n).unwrap();
        assert_eq!(f, Poly::monomial(&ZZ, BigInt::one(), 2 * n + 1));
        let m = ep.operator_matrix();
        let mut pow = Mat::identity(&ZZ, 2 * n + 1);
        for _ in 0..2 * n - 1 {
            pow = pow.mul(&ZZ, &m);
        }
        assert_ne!(pow, Mat::zero(&ZZ, 2 * n + 1, 2 * n + 1));
        pow = pow.mul(&ZZ, &m);
        assert_eq!(pow, Mat::zero(&ZZ, 2 * n + 1, 2 * n + 1));
    }
    assert!(nilpotent_subregular(2, &BigInt::zero()).is_err());
}

#[test]
fn subregular_square_classes_not_conjugate_in_bounded_search() {
    // absence-of-witness check: no short product of integral generators
    // conjugates E' to 2E'
    let e1 = nilpotent_subregular(1, &BigInt::one()).unwrap();
    let e2 = nilpotent_subregular(1, &BigInt::from(2)).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..300 {
        let g = random_so_z(&mut rng, 1, 5);
        assert_ne!(e1.transform(&g).unwrap(), e2);
    }
}

#[test]
fn zero_block_forces_zero_discriminant() {
    let mut rng = StdRng::seed_from_u64(37);
    for _ in 0..100 {
        // n=1 with b11 = b12 = 0
        let b13 = BigInt::from(rng.gen_range(-6i64..=6));
        let b22 = -BigInt::from(2) * &b13;
        let b23 = BigInt::from(rng.gen_range(-6i64..=6));
        let b33 = BigInt::from(rng.gen_range(-6i64..=6));
        let rep = OperatorRep::new(
            1,
            Mat::from_rows(vec![
                vec![BigInt::zero(), BigInt::zero(), b13.clone()],
                vec![BigInt::zero(), b22.clone(), b23.clone()],
                vec![b13.clone(), b23.clone(), b33.clone()],
            ]),
        )
        .unwrap();
        let tests = reducibility_block_tests(&rep);
        assert!(tests.disc_zero_block);
        let f = charpoly_pencil(rep.matrix(), 1).unwrap();
        assert!(discriminant(&f).unwrap().is_zero());
    }
    let zero = OperatorRep::new(1, Mat::zero(&ZZ, 3, 3)).unwrap();
    let t = reducibility_block_tests(&zero);
    assert!(t.disc_zero_block && t.distinguished_shape);
}

#[test]
fn weight_table_n1() {
    let w = |i, j| weight(1, i, j).unwrap();
    assert_eq!(w(1, 1).e_s, vec![-2]);
    assert_eq!(w(1, 2).e_s, vec![-1]);
    assert_eq!(w(1, 3).e_s, vec![0]);
    assert_eq!(w(2, 3).e_s, vec![1]);
    assert_eq!(w(3, 3).e_s, vec![2]);
    assert!(weight(1, 2, 2).is_err());
    let report = weight_identities(1);
    assert!(report.all_ok());
    // product = lambda^5 for n = 1
    let product = WeightVector::product(
        weights_of_all_coordinates(1),
    )
    .unwrap();
    assert_eq!(product.e_lambda, 5);
    assert_eq!(product.e_s, vec![0]);
}

fn weights_of_all_coordinates(n: usize) -> Vec<WeightVector> {
    super::weights::coordinates(n)
        .into_iter()
        .map(|(i, j)| weight(n, i, j).unwrap())
        .collect()
}

#[test]
fn weight_identities_up_to_n6() {
    for n in 1..=6 {
        assert!(weight_identities(n).all_ok(), "n = {}", n);
    }
}

#[test]
fn combinatorial_lemma_small() {
    for n in 1..=2 {
        let rep = combinatorial_lemma_check(n).unwrap();
        assert!(rep.all_ok());
        let expected_size = match n {
            1 => 2,   // U^- = {b11}
            2 => 16,  // |U^-| = 4
            _ => unreachable!(),
        };
        assert_eq!(rep.subsets_checked, expected_size);
    }
}

#[test]
fn real_component_examples() {
    assert_eq!(real_component(&pz(&[0, -1, 0, 1])).unwrap(), 1);
    assert_eq!(real_component(&pz(&[1, 0, 0, 1])).unwrap(), 0);
    assert_eq!(real_component(&pz(&[0, 4, 0, -5, 0, 1])).unwrap(), 2);
}

#[test]
fn sign_pattern_distinguished_examples() {
    let b = distinguished_rep(&pz(&[0, -1, 0, 1])).unwrap();
    let p = sign_pattern(1, &b).unwrap();
    assert_eq!(p.to_string(), "+-+");
    assert_eq!(classify_component(&p), (1, 1));

    let b = distinguished_rep(&pz(&[1, 0, 0, 1])).unwrap();
    let p = sign_pattern(1, &b).unwrap();
    assert_eq!(p.to_string(), "+");
    assert_eq!(classify_component(&p), (0, 1));
}

#[test]
fn sign_pattern_invariant_under_conjugation() {
    let mut rng = StdRng::seed_from_u64(41);
    let b0 = distinguished_rep(&pz(&[0, -1, 0, 1])).unwrap();
    for _ in 0..10 {
        let g = random_so_z(&mut rng, 1, 4).map(|v| BigRational::from_integer(v.clone()));
        let b = g.transpose().mul(&QQ, &b0).mul(&QQ, &g);
        let p = sign_pattern(1, &b).unwrap();
        assert_eq!(p.to_string(), "+-+");
    }
}

#[test]
fn sign_pattern_reversal_permutation_invariance() {
    // conjugating by the anti-identity permutation (an A-orthogonal map)
    // preserves the classification
    let b0 = distinguished_rep(&pz(&[0, -1, 0, 1])).unwrap();
    let a = standard_form(1).map(|v| BigRational::from_integer(v.clone()));
    let b = a.transpose().mul(&QQ, &b0).mul(&QQ, &a);
    assert_eq!(
        classify_component(&sign_pattern(1, &b).unwrap()),
        classify_component(&sign_pattern(1, &b0).unwrap())
    );
}

#[test]
fn classify_component_examples() {
    let p = |s: &str| SignPattern::try_from(s.to_string()).unwrap();
    assert_eq!(classify_component(&p("+-+")), (1, 1));
    assert_eq!(classify_component(&p("++-")), (1, 2));
    assert_eq!(classify_component(&p("-++")), (1, 3));
    assert!(SignPattern::try_from("+--".to_string()).is_err());
}

#[test]
fn classification_is_a_bijection_onto_tau_range() {
    use super::signs::real_orbit_count;
    for m in 0..=4usize {
        let len = 2 * m + 1;
        let mut all = Vec::new();
        // enumerate all patterns with m minus signs via bitmask
        for mask in 0u32..(1 << len) {
            if (mask.count_ones() as usize) == m {
                let signs: Vec<i8> = (0..len)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                all.push(SignPattern::new(signs).unwrap());
            }
        }
        assert_eq!(all.len(), real_orbit_count(m));
        let mut taus: Vec<usize> = all
            .iter()
            .map(|p| {
                let (mm, tau) = classify_component(p);
                assert_eq!(mm, m);
                tau
            })
            .collect();
        taus.sort_unstable();
        let expect: Vec<usize> = (1..=real_orbit_count(m)).collect();
        assert_eq!(taus, expect);
        // the soluble range is exactly 1..=2^m
        let soluble = all
            .iter()
            .filter(|p| classify_component(p).1 <= 1 << m)
            .count();
        assert_eq!(soluble, 1 << m);
    }
}
