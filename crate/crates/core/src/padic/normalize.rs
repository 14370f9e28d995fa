//! Normalization of unimodular symmetric Gram matrices over `Z/p^k` (p odd)
//! to the standard anti-diagonal form `A`: symmetric elimination with unit
//! pivots, Hensel square roots to scale the diagonal into `{1, u0}` square
//! classes, class conversions in 2x2 blocks, and assembly of hyperbolic
//! pairs arranged anti-diagonally.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::fp::{is_prime_u64, Fp};
use crate::algebra::{anti_identity, InvertibleRing, Mat, MatZ, Ring, ZMod};
use crate::error::PadicError;

/// A square root of the unit `a` modulo `p^k` (p odd), by a residue search
/// and Newton lifting. `None` when `a` is not a square unit.
pub fn sqrt_mod_pk(a: &BigInt, p: u64, k: usize) -> Option<BigInt> {
    let fp = Fp::new(p);
    let a0 = fp.reduce_int(a);
    if a0 == 0 {
        return None;
    }
    let r0 = fp.sqrt(a0)?;
    let mut r = BigInt::from(r0);
    let mut prec = 1usize;
    while prec < k {
        prec = (2 * prec).min(k);
        let ring = ZMod::new(BigInt::from(p).pow(prec as u32));
        // Newton: r <- r - (r^2 - a) / (2r)
        let num = ring.sub(&ring.mul(&r, &r), a);
        let den = ring.inv(&ring.mul(&ring.from_i64(2), &r)).expect("2r unit");
        r = ring.sub(&r, &ring.mul(&num, &den));
    }
    let ring = ZMod::new(BigInt::from(p).pow(k as u32));
    let r = ring.reduce(&r);
    debug_assert_eq!(ring.mul(&r, &r), ring.reduce(a));
    Some(r)
}

struct Work {
    ring: ZMod,
    p: u64,
    g: Mat<BigInt>,
    /// accumulated change of basis: new basis vectors are the columns
    u: Mat<BigInt>,
}

impl Work {
    /// basis_r += c * basis_c (congruence transformation)
    fn add_col(&mut self, r: usize, c: usize, coeff: &BigInt) {
        let d = self.g.rows();
        for i in 0..d {
            let v = self.ring.add(self.u.at(i, r), &self.ring.mul(self.u.at(i, c), coeff));
            self.u.set(i, r, v);
        }
        // G <- E^T G E with E = I + coeff * e_(c,r)
        for i in 0..d {
            let v = self.ring.add(self.g.at(i, r), &self.ring.mul(self.g.at(i, c), coeff));
            self.g.set(i, r, v);
        }
        for i in 0..d {
            let v = self.ring.add(self.g.at(r, i), &self.ring.mul(self.g.at(c, i), coeff));
            self.g.set(r, i, v);
        }
    }

    fn swap(&mut self, r: usize, c: usize) {
        let d = self.g.rows();
        for i in 0..d {
            let (a, b) = (self.u.at(i, r).clone(), self.u.at(i, c).clone());
            self.u.set(i, r, b);
            self.u.set(i, c, a);
        }
        for i in 0..d {
            let (a, b) = (self.g.at(i, r).clone(), self.g.at(i, c).clone());
            self.g.set(i, r, b);
            self.g.set(i, c, a);
        }
        for i in 0..d {
            let (a, b) = (self.g.at(r, i).clone(), self.g.at(c, i).clone());
            self.g.set(r, i, b);
            self.g.set(c, i, a);
        }
    }

    fn scale_col(&mut self, r: usize, s: &BigInt) {
        let d = self.g.rows();
        for i in 0..d {
            self.u.set(i, r, self.ring.mul(self.u.at(i, r), s));
        }
        for i in 0..d {
            self.g.set(i, r, self.ring.mul(self.g.at(i, r), s));
        }
        for i in 0..d {
            self.g.set(r, i, self.ring.mul(self.g.at(r, i), s));
        }
    }

    fn is_unit(&self, v: &BigInt) -> bool {
        !(v % BigInt::from(self.p)).is_zero()
    }
}

/// Find `U` invertible over `Z/p^k` with `U^T G U = A` (the anti-diagonal
/// form), for `G` symmetric with unit determinant of the correct square
/// class. Errors with `WrongDeterminantClass` when no isometry exists and
/// `EvenPrime` at `p = 2`.
pub fn lattice_normalize_odd_p(g: &MatZ, p: u64, k: usize) -> Result<MatZ, PadicError> {
    if p == 2 {
        return Err(PadicError::EvenPrime);
    }
    if !is_prime_u64(p) {
        return Err(PadicError::NotPrime(p));
    }
    let d = g.rows();
    assert!(d % 2 == 1 && g.cols() == d, "odd square Gram matrix");
    let n = (d - 1) / 2;
    let ring = ZMod::new(BigInt::from(p).pow(k as u32));
    let fp = Fp::new(p);
    let mut work = Work {
        ring: ring.clone(),
        p,
        g: g.map(|v| ring.reduce(v)),
        u: Mat::identity(&ring, d),
    };
    if !work.g.is_symmetric() {
        return Err(PadicError::Algebra(
            crate::error::AlgebraError::DimensionMismatch,
        ));
    }

    // determinant class check: det G must be a unit with
    // det G = (-1)^n (mod squares of units)
    // determinant over Z of the reduced representative, then reduced:
    // Bareiss needs an integral domain, which Z/p^k is not
    let det = ring.reduce(&g.map(|v| ring.reduce(v)).det_bareiss(&crate::algebra::ZZ));
    let det_u = fp.reduce_int(&det);
    if det_u == 0 {
        return Err(PadicError::WrongDeterminantClass);
    }
    let target = if n % 2 == 0 { 1 } else { fp.p - 1 };
    if !fp.is_square(fp.mul(det_u, fp.inv(target))) {
        return Err(PadicError::WrongDeterminantClass);
    }

    // 1. symmetric elimination to a diagonal form with unit pivots
    for i in 0..d {
        if !work.is_unit(work.g.at(i, i)) {
            // find a unit diagonal entry to swap in, or manufacture one
            if let Some(r) = (i + 1..d).find(|&r| work.is_unit(work.g.at(r, r))) {
                work.swap(i, r);
            } else {
                let pair = (i..d)
                    .flat_map(|r| (r + 1..d).map(move |c| (r, c)))
                    .find(|&(r, c)| work.is_unit(work.g.at(r, c)))
                    .ok_or(PadicError::WrongDeterminantClass)?;
                let (r, c) = pair;
                // (b_r + b_c, b_r + b_c) = g_rr + 2 g_rc + g_cc is a unit
                work.add_col(r, c, &BigInt::one());
                work.swap(i, r);
            }
        }
        let pivot_inv = ring.inv(work.g.at(i, i)).expect("unit pivot");
        for r in i + 1..d {
            if !ring.is_zero(work.g.at(i, r)) {
                let coeff = ring.neg(&ring.mul(work.g.at(i, r), &pivot_inv));
                work.add_col(r, i, &coeff);
            }
        }
    }

    // 2. scale each diagonal entry into {1, u0}
    let u0 = fp.non_residue();
    let u0_big = BigInt::from(u0);
    let mut classes = Vec::with_capacity(d); // false = square (1), true = u0
    for i in 0..d {
        let di = work.g.at(i, i).clone();
        let unit = fp.reduce_int(&di);
        if fp.is_square(unit) {
            let s = ring
                .inv(&sqrt_mod_pk(&di, p, k).expect("square unit"))
                .unwrap();
            work.scale_col(i, &s);
            classes.push(false);
        } else {
            let scaled = ring.mul(&di, &ring.inv(&u0_big).unwrap());
            let s = ring
                .inv(&sqrt_mod_pk(&scaled, p, k).expect("unit in the same class"))
                .unwrap();
            work.scale_col(i, &s);
            classes.push(true);
        }
    }

    // 3. convert 2x2 same-class pairs to adjust the number of u0 entries:
    // p = 1 mod 4 wants zero, p = 3 mod 4 wants exactly n
    let t_target = if p % 4 == 1 { 0 } else { n };
    loop {
        let t = classes.iter().filter(|&&c| c).count();
        if t == t_target {
            break;
        }
        if t > t_target {
            // u0,u0 -> 1,1: find (x, y) with u0 x^2 + u0 y^2 = 1
            let (i, j) = two_indices(&classes, true);
            convert_pair(&mut work, &fp, p, k, i, j, &ring.inv(&u0_big).unwrap());
            classes[i] = false;
            classes[j] = false;
        } else {
            // 1,1 -> u0,u0: find (x, y) with x^2 + y^2 = u0
            let (i, j) = two_indices(&classes, false);
            convert_pair(&mut work, &fp, p, k, i, j, &u0_big);
            classes[i] = true;
            classes[j] = true;
        }
    }

    // 4. pair entries into hyperbolic planes: mixed pairs for p = 3 mod 4,
    // same-class pairs for p = 1 mod 4; one square entry is left over.
    let mut ones: Vec<usize> = (0..d).filter(|&i| !classes[i]).collect();
    let mut others: Vec<usize> = (0..d).filter(|&i| classes[i]).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n);
    if p % 4 == 1 {
        debug_assert!(others.len() % 2 == 0);
        while others.len() >= 2 {
            pairs.push((others.pop().unwrap(), others.pop().unwrap()));
        }
        while ones.len() >= 3 {
            pairs.push((ones.pop().unwrap(), ones.pop().unwrap()));
        }
    } else {
        debug_assert_eq!(others.len(), n);
        while let Some(i) = others.pop() {
            pairs.push((ones.pop().unwrap(), i));
        }
    }
    debug_assert_eq!(pairs.len(), n);
    debug_assert_eq!(ones.len(), 1);
    let leftover = ones[0];

    // hyperbolic basis per pair: with diag (a, b) and -b/a a square,
    // e = x b_i + b_j, f = (x b_i - b_j) / (-2 b) where x^2 = -b/a
    let mut e_cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut f_cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for &(i, j) in &pairs {
        let a = work.g.at(i, i).clone();
        let b = work.g.at(j, j).clone();
        let ratio = ring.neg(&ring.mul(&b, &ring.inv(&a).unwrap()));
        let x = sqrt_mod_pk(&ratio, p, k).ok_or(PadicError::WrongDeterminantClass)?;
        let col = |target: &mut Vec<Vec<BigInt>>, ci: &BigInt, cj: &BigInt| {
            let mut v = vec![BigInt::zero(); d];
            for r in 0..d {
                v[r] = ring.add(
                    &ring.mul(work.u.at(r, i), ci),
                    &ring.mul(work.u.at(r, j), cj),
                );
            }
            target.push(v);
        };
        col(&mut e_cols, &x, &BigInt::one());
        let scale = ring
            .inv(&ring.neg(&ring.mul(&ring.from_i64(2), &b)))
            .unwrap();
        col(&mut f_cols, &ring.mul(&x, &scale), &ring.neg(&scale));
    }
    // leftover vector, scaled to norm 1 already (class square, step 2)
    let mid: Vec<BigInt> = (0..d).map(|r| work.u.at(r, leftover).clone()).collect();

    // final ordering e_1..e_n, u, f_n..f_1 gives the anti-diagonal Gram
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    columns.extend(e_cols.iter().cloned());
    columns.push(mid);
    columns.extend(f_cols.iter().rev().cloned());
    let u_mat = Mat::from_fn(d, d, |i, j| columns[j][i].clone());

    // certificate: U^T G U = A mod p^k (the class precheck guarantees an
    // isometry exists, so a mismatch here is a construction bug)
    let a = anti_identity(n).map(|v| ring.reduce(v));
    let check = u_mat
        .transpose()
        .mul(&ring, &g.map(|v| ring.reduce(v)))
        .mul(&ring, &u_mat);
    assert_eq!(check, a, "normalization certificate failed");
    Ok(u_mat)
}

fn two_indices(classes: &[bool], value: bool) -> (usize, usize) {
    let mut it = classes
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == value)
        .map(|(i, _)| i);
    (it.next().unwrap(), it.next().unwrap())
}

/// Replace the orthogonal pair `(b_i, b_j)` of equal norms `a` by a pair of
/// norms `a * target_ratio` each, via a rotation-like map `(x b_i + y b_j,
/// -y b_i + x b_j)` with `x^2 + y^2 = target_ratio`.
fn convert_pair(
    work: &mut Work,
    fp: &Fp,
    p: u64,
    k: usize,
    i: usize,
    j: usize,
    target_ratio: &BigInt,
) {
    let ring = work.ring.clone();
    // find x mod p with target - x^2 a nonzero square
    let t0 = fp.reduce_int(target_ratio);
    let x0 = (0..p)
        .find(|&x| {
            let r = fp.sub(t0, fp.mul(x, x));
            r != 0 && fp.is_square(r)
        })
        .expect("a sum of two squares represents every unit");
    let x = BigInt::from(x0);
    let y = sqrt_mod_pk(&ring.sub(target_ratio, &ring.mul(&x, &x)), p, k).unwrap();
    // columns i, j <- (x b_i + y b_j, -y b_i + x b_j)
    let d = work.g.rows();
    let mut ci = vec![BigInt::zero(); d];
    let mut cj = vec![BigInt::zero(); d];
    for r in 0..d {
        ci[r] = ring.add(
            &ring.mul(work.u.at(r, i), &x),
            &ring.mul(work.u.at(r, j), &y),
        );
        cj[r] = ring.add(
            &ring.mul(work.u.at(r, i), &ring.neg(&y)),
            &ring.mul(work.u.at(r, j), &x),
        );
    }
    let a_norm = work.g.at(i, i).clone();
    for r in 0..d {
        work.u.set(r, i, ci[r].clone());
        work.u.set(r, j, cj[r].clone());
    }
    // update the Gram entries: the pair stays orthogonal to the rest (those
    // columns are untouched and were orthogonal), with new equal norms
    let new_norm = ring.mul(&a_norm, target_ratio);
    work.g.set(i, i, new_norm.clone());
    work.g.set(j, j, new_norm);
    work.g.set(i, j, BigInt::zero());
    work.g.set(j, i, BigInt::zero());
}
