//! Factorization shapes over `Q_p`: the degrees (and ramification flags) of
//! the irreducible factors of a separable integer polynomial, computed by
//! residue factorization plus Hensel lifting, recursing on Newton polygon
//! segments for the ramified parts. Deep ramification beyond the supported
//! budget is an explicit error, never a guess.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::fp::{self, Fp, FpPoly};
use crate::algebra::{discriminant, Poly, PolyZ, Ring, ZMod, ZZ};
use crate::error::PadicError;

use super::{lower_hull, valuation_int};

/// The shape of the factorization of `f` over `Q_p`: degrees of the
/// irreducible factors (sorted), per-factor ramification, and
/// `m = #factors - 1`, so that `#J[2](Q_p) = 2^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorShape {
    pub degrees: Vec<usize>,
    #[serde(skip)]
    pub ramified: Vec<bool>,
    pub m: usize,
}

const DISC_VALUATION_BUDGET: u32 = 20;
const RECURSION_FUEL: u32 = 64;

/// Factor shape of a monic separable integer polynomial over `Q_p`.
/// `precision` defaults to `2 v_p(disc f) + 10` and must be at least
/// `2 v_p(disc f) + 1` for the Hensel separation bound.
pub fn factor_shape(
    f: &PolyZ,
    p: u64,
    precision: Option<usize>,
) -> Result<FactorShape, PadicError> {
    if !fp::is_prime_u64(p) {
        return Err(PadicError::NotPrime(p));
    }
    if !f.is_monic(&ZZ) || f.deg() < 1 {
        return Err(PadicError::Algebra(
            crate::error::AlgebraError::NotMonicOfDegree { min_degree: 1 },
        ));
    }
    let mut parts: Vec<(usize, bool)> = Vec::new();
    let mut f = f.clone();
    // strip exact integer roots so translated constants stay nonzero
    loop {
        if f.deg() == 0 {
            break;
        }
        match integer_root(&f) {
            Some(a) => {
                let linear = Poly::from_coeffs(&ZZ, vec![-a, BigInt::one()]);
                let (q, r) = f.divmod_monic(&ZZ, &linear);
                debug_assert!(r.is_zero());
                parts.push((1, false));
                f = q;
            }
            None => break,
        }
    }
    if f.deg() >= 1 {
        let v = if f.deg() == 1 {
            0
        } else {
            let disc = discriminant(&f)?;
            if disc.is_zero() {
                return Err(PadicError::Inseparable);
            }
            valuation_int(&disc, p).unwrap()
        };
        if v > DISC_VALUATION_BUDGET {
            return Err(PadicError::UnsupportedRamification);
        }
        let needed = 2 * v as usize + 1;
        let prec = precision.unwrap_or(2 * v as usize + 10);
        if prec < needed {
            return Err(PadicError::InsufficientPrecision {
                needed,
                have: prec,
            });
        }
        let ring = ZMod::new(BigInt::from(p).pow(prec as u32));
        let f_red = reduce_poly(&ring, &f);
        toplevel(&f_red, p, prec, RECURSION_FUEL, &mut parts)?;
    }
    parts.sort();
    let m = parts.len() - 1;
    Ok(FactorShape {
        degrees: parts.iter().map(|&(d, _)| d).collect(),
        ramified: parts.iter().map(|&(_, r)| r).collect(),
        m,
    })
}

/// A rational (hence integer) root of a monic integer polynomial, if any.
fn integer_root(f: &PolyZ) -> Option<BigInt> {
    let c0 = &f.coeffs()[0];
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let mut d = BigInt::one();
    let bound = c0.abs();
    while &d * &d <= bound {
        if (c0 % &d).is_zero() {
            for cand in [d.clone(), -d.clone(), &bound / &d, -(&bound / &d)] {
                if f.eval(&ZZ, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        d += 1;
    }
    None
}

fn reduce_poly(ring: &ZMod, f: &PolyZ) -> PolyZ {
    Poly::from_coeffs(&ZZ, f.coeffs().iter().map(|c| ring.reduce(c)).collect())
}

fn residue(f: &PolyZ, p: u64) -> FpPoly {
    let fp = Fp::new(p);
    fp::trim(f.coeffs().iter().map(|c| fp.reduce_int(c)).collect())
}

fn lift_fp_poly(g: &FpPoly) -> PolyZ {
    Poly::from_coeffs(&ZZ, g.iter().map(|&c| BigInt::from(c)).collect())
}

fn toplevel(
    f: &PolyZ,
    p: u64,
    prec: usize,
    fuel: u32,
    out: &mut Vec<(usize, bool)>,
) -> Result<(), PadicError> {
    if fuel == 0 {
        return Err(PadicError::UnsupportedRamification);
    }
    if f.deg() == 0 {
        return Ok(());
    }
    let fp = Fp::new(p);
    let fbar = residue(f, p);
    debug_assert_eq!(fp::deg(&fbar), f.deg(), "monic input stays monic");
    let factors = fp::factor(&fp, &fbar);
    if factors.len() == 1 {
        let (gbar, e) = &factors[0];
        if *e == 1 {
            out.push((fp::deg(gbar), false));
            return Ok(());
        }
        if fp::deg(gbar) == 1 {
            // translate x -> x + a so the residue becomes x^e
            let a = fp.neg(gbar[0]); // root of gbar = x - a
            let shifted = f.translate(&ZZ, &BigInt::from(a));
            let ring = ZMod::new(BigInt::from(p).pow(prec as u32));
            return pure(&reduce_poly(&ring, &shifted), p, prec, fuel - 1, out);
        }
        return Err(PadicError::UnsupportedRamification);
    }
    // split off the first primary factor by Hensel lifting
    let (g1, e1) = &factors[0];
    let mut gbar: FpPoly = vec![1];
    for _ in 0..*e1 {
        gbar = fp::poly_mul(&fp, &gbar, g1);
    }
    let mut hbar: FpPoly = vec![1];
    for (gi, ei) in factors.iter().skip(1) {
        for _ in 0..*ei {
            hbar = fp::poly_mul(&fp, &hbar, gi);
        }
    }
    let (g, h) = hensel_lift_pair(f, &gbar, &hbar, p, prec)?;
    toplevel(&g, p, prec, fuel - 1, out)?;
    toplevel(&h, p, prec, fuel - 1, out)
}

/// Factor shapes of a "pure" polynomial: monic with residue `x^e`, i.e. all
/// roots of positive valuation. Analyzes the Newton polygon segment by
/// segment via residual polynomials; when a residual has a repeated factor,
/// peels the rightmost (integer-slope) segment by the substitution
/// `x -> p^s x` and recurses.
fn pure(
    f: &PolyZ,
    p: u64,
    prec: usize,
    fuel: u32,
    out: &mut Vec<(usize, bool)>,
) -> Result<(), PadicError> {
    if fuel == 0 {
        return Err(PadicError::UnsupportedRamification);
    }
    let e = f.deg();
    if e == 1 {
        out.push((1, false));
        return Ok(());
    }
    if f.coeffs()[0].is_zero() {
        // constant term vanished modulo p^prec: the polygon is undetermined
        return Err(PadicError::InsufficientPrecision {
            needed: prec + 1,
            have: prec,
        });
    }
    let vals: Vec<Option<i64>> = f
        .coeffs()
        .iter()
        .map(|c| valuation_int(c, p).map(|v| v as i64))
        .collect();
    let points: Vec<(usize, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    let hull = lower_hull(&points);
    // certification: indices with unknown valuation (coefficient = 0 mod
    // p^prec) must lie strictly above the hull
    for (i, v) in vals.iter().enumerate() {
        if v.is_none() {
            let on_hull = hull_value_times_den(&hull, i);
            if let Some((num, den)) = on_hull {
                if num >= prec as i64 * den {
                    return Err(PadicError::InsufficientPrecision {
                        needed: prec + 1,
                        have: prec,
                    });
                }
            }
        }
    }
    let segments = hull_segments(&hull);
    debug_assert!(!segments.is_empty());
    let fp = Fp::new(p);
    let mut contributions: Vec<(usize, bool)> = Vec::new();
    let mut all_separable = true;
    for seg in &segments {
        let residual = residual_poly(&fp, f, seg);
        let factors = fp::factor(&fp, &residual);
        if factors.iter().any(|(_, mult)| *mult > 1) {
            all_separable = false;
            break;
        }
        for (a_irr, _) in factors {
            let deg = seg.denom as usize * fp::deg(&a_irr);
            contributions.push((deg, seg.denom > 1));
        }
    }
    if all_separable {
        out.extend(contributions);
        return Ok(());
    }
    // zoom: peel the rightmost segment, possible when its slope is integral
    let right = segments.last().unwrap();
    if right.denom != 1 {
        return Err(PadicError::UnsupportedRamification);
    }
    let s = right.numer;
    let drop = s as usize * e;
    if prec <= drop {
        return Err(PadicError::InsufficientPrecision {
            needed: drop + 1,
            have: prec,
        });
    }
    let new_prec = prec - drop;
    let ring = ZMod::new(BigInt::from(p).pow(new_prec as u32));
    // G(x) = f(p^s x) / p^(s e), integral by the hull bound
    let pbig = BigInt::from(p);
    let coeffs: Vec<BigInt> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let shift = s * (e as i64 - j as i64);
            let val = if shift > 0 {
                let q = c / pbig.pow(shift as u32);
                debug_assert_eq!(&q * pbig.pow(shift as u32), *c, "hull bound");
                q
            } else {
                c * pbig.pow((-shift) as u32)
            };
            ring.reduce(&val)
        })
        .collect();
    let g = Poly::from_coeffs(&ZZ, coeffs);
    debug_assert_eq!(g.deg(), e);
    if right.length == e {
        return toplevel(&g, p, new_prec, fuel - 1, out);
    }
    // residue of G is x^(e - len) * u with u a unit at 0: Hensel split
    let gbar = residue(&g, p);
    let j0 = gbar.iter().position(|&c| c != 0).unwrap_or(0);
    debug_assert_eq!(j0, e - right.length, "unit part starts at the gap");
    let mut xpart: FpPoly = vec![0; j0];
    xpart.push(1);
    let upart: FpPoly = gbar[j0..].to_vec();
    let (z, u) = hensel_lift_pair(&g, &xpart, &upart, p, new_prec)?;
    pure(&z, p, new_prec, fuel - 1, out)?;
    toplevel(&u, p, new_prec, fuel - 1, out)
}

struct Segment {
    start: usize,
    start_val: i64,
    /// slope is `-numer/denom` in lowest terms, `denom > 0`
    numer: i64,
    denom: i64,
    length: usize,
}

fn hull_segments(hull: &[(usize, i64)]) -> Vec<Segment> {
    hull.windows(2)
        .map(|w| {
            let (i0, v0) = w[0];
            let (i1, v1) = w[1];
            let len = i1 - i0;
            let rise = v0 - v1;
            let g = gcd_i64(rise.abs(), len as i64).max(1);
            Segment {
                start: i0,
                start_val: v0,
                numer: rise / g,
                denom: len as i64 / g,
                length: len,
            }
        })
        .collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

/// Hull height at index `i` as `(value * den, den)` between bracketing
/// vertices, `None` left of the first vertex.
fn hull_value_times_den(hull: &[(usize, i64)], i: usize) -> Option<(i64, i64)> {
    if hull.len() < 2 {
        return None;
    }
    for w in hull.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        if x0 <= i && i <= x1 {
            let den = (x1 - x0) as i64;
            let num = y0 * den + (y1 - y0) * (i - x0) as i64;
            return Some((num, den));
        }
    }
    None
}

/// Residual polynomial of a segment: `A_t = a_(start + t*denom) / p^(line)`
/// mod p for `t = 0..=length/denom`; coefficients strictly above the line
/// contribute zero.
fn residual_poly(fp: &Fp, f: &PolyZ, seg: &Segment) -> FpPoly {
    let r = seg.length / seg.denom as usize;
    let mut out = Vec::with_capacity(r + 1);
    let pbig = BigInt::from(fp.p);
    for t in 0..=r {
        let j = seg.start + t * seg.denom as usize;
        let line_val = seg.start_val - t as i64 * seg.numer;
        let c = &f.coeffs()[j];
        let coeff = match valuation_int(c, fp.p) {
            Some(v) if (v as i64) == line_val => {
                let unit = c / pbig.pow(line_val as u32);
                fp.reduce_int(&unit)
            }
            _ => 0,
        };
        out.push(coeff);
    }
    fp::trim(out)
}

/// Quadratic Hensel lifting of a coprime factorization: given monic `f` and
/// a factorization of its residue `f = gbar * hbar mod p` into coprime monic
/// parts, returns `(g, h)` monic with `f = g h (mod p^prec)` and
/// `g = gbar, h = hbar (mod p)`.
pub fn hensel_lift_pair(
    f: &PolyZ,
    gbar: &FpPoly,
    hbar: &FpPoly,
    p: u64,
    prec: usize,
) -> Result<(PolyZ, PolyZ), PadicError> {
    let fp = Fp::new(p);
    // Bezout over F_p: a gbar + b hbar = 1
    let (abar, bbar) = fp_bezout(&fp, gbar, hbar)?;
    let mut g = lift_fp_poly(gbar);
    let mut h = lift_fp_poly(hbar);
    let mut a = lift_fp_poly(&abar);
    let mut b = lift_fp_poly(&bbar);
    let mut k = 1usize;
    while k < prec {
        let k2 = (2 * k).min(prec);
        let ring = ZMod::new(BigInt::from(p).pow(k2 as u32));
        let fk = reduce_poly(&ring, f);
        let g0 = reduce_poly(&ring, &g);
        let h0 = reduce_poly(&ring, &h);
        let a0 = reduce_poly(&ring, &a);
        let b0 = reduce_poly(&ring, &b);
        // e = f - g h; g += (b e mod g); h += a e + q h
        let e = fk.sub(&ring, &g0.mul(&ring, &h0));
        let (q, r) = b0.mul(&ring, &e).divmod_monic(&ring, &g0);
        let g1 = g0.add(&ring, &r);
        let h1 = h0
            .add(&ring, &a0.mul(&ring, &e))
            .add(&ring, &q.mul(&ring, &h0));
        // refresh the Bezout pair: with e2 = a g + b h - 1, solve
        // da g + db h = e2 via db = (b e2 mod g), da = a e2 + q2 h
        let one = Poly::constant(&ring, ring.one());
        let e2 = a0
            .mul(&ring, &g1)
            .add(&ring, &b0.mul(&ring, &h1))
            .sub(&ring, &one);
        let (q2, r2) = b0.mul(&ring, &e2).divmod_monic(&ring, &g1);
        let b1 = b0.sub(&ring, &r2);
        let a1 = a0
            .sub(&ring, &a0.mul(&ring, &e2))
            .sub(&ring, &q2.mul(&ring, &h1));
        g = g1;
        h = h1;
        a = a1;
        b = b1;
        k = k2;
    }
    let ring = ZMod::new(BigInt::from(p).pow(prec as u32));
    let g = reduce_poly(&ring, &g);
    let h = reduce_poly(&ring, &h);
    debug_assert_eq!(
        reduce_poly(&ring, &g.mul(&ZZ, &h)),
        reduce_poly(&ring, f),
        "Hensel certificate"
    );
    Ok((g, h))
}

/// Extended Euclid over `F_p[x]` for coprime inputs: `a g + b h = 1`.
fn fp_bezout(fp: &Fp, g: &FpPoly, h: &FpPoly) -> Result<(FpPoly, FpPoly), PadicError> {
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !fp::poly_is_zero(&r1) {
        let (q, r) = fp::poly_divrem(fp, &r0, &r1);
        let next_s = fp::poly_sub(fp, &s0, &fp::poly_mul(fp, &q, &s1));
        let next_t = fp::poly_sub(fp, &t0, &fp::poly_mul(fp, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, next_s);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    if fp::deg(&r0) != 0 {
        return Err(PadicError::UnsupportedRamification);
    }
    let inv = fp.inv(r0[0]);
    Ok((
        fp::poly_scale(fp, &s0, inv),
        fp::poly_scale(fp, &t0, inv),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz(c: &[i64]) -> PolyZ {
        Poly::from_i64_coeffs(c)
    }

    #[test]
    fn hensel_lift_splits_x3_plus_1_mod_7() {
        let f = pz(&[1, 0, 0, 1]);
        let gbar = vec![1u64, 1]; // x + 1
        let hbar = vec![1u64, 6, 1]; // x^2 - x + 1 mod 7
        let (g, h) = hensel_lift_pair(&f, &gbar, &hbar, 7, 8).unwrap();
        assert_eq!(g.deg(), 1);
        assert_eq!(h.deg(), 2);
        let ring = ZMod::new(BigInt::from(7u64).pow(8));
        assert_eq!(
            reduce_poly(&ring, &g.mul(&ZZ, &h)),
            reduce_poly(&ring, &f)
        );
    }

    #[test]
    fn shape_examples_from_known_factorizations() {
        // x^3+1 over Q_7: (x+1) and x^2-x+1 with roots 3, 5 mod 7
        let shape = factor_shape(&pz(&[1, 0, 0, 1]), 7, None).unwrap();
        assert_eq!(shape.degrees, vec![1, 1, 1]);
        assert_eq!(shape.m, 2);
        assert!(shape.ramified.iter().all(|&r| !r));
        // over Q_2: x^2+x+1 irreducible mod 2
        let shape = factor_shape(&pz(&[1, 0, 0, 1]), 2, None).unwrap();
        assert_eq!(shape.degrees, vec![1, 2]);
        assert_eq!(shape.m, 1);
        // over Q_3: ramified quadratic
        let shape = factor_shape(&pz(&[1, 0, 0, 1]), 3, None).unwrap();
        assert_eq!(shape.degrees, vec![1, 2]);
        assert_eq!(shape.ramified, vec![false, true]);
        // Eisenstein at 3: totally ramified
        let shape = factor_shape(&pz(&[3, 3, 0, 1]), 3, None).unwrap();
        assert_eq!(shape.degrees, vec![3]);
        assert_eq!(shape.m, 0);
        assert_eq!(shape.ramified, vec![true]);
        // x^3 + 9x + 3: same Newton polygon, archived regression
        let shape = factor_shape(&pz(&[3, 9, 0, 1]), 3, None).unwrap();
        assert_eq!(shape.degrees, vec![3]);
    }

    #[test]
    fn quintic_shapes() {
        // x^5 - x = x(x-1)(x+1)(x^2+1)
        let f = pz(&[0, -1, 0, 0, 0, 1]);
        let s3 = factor_shape(&f, 3, None).unwrap();
        assert_eq!(s3.degrees, vec![1, 1, 1, 2]); // x^2+1 irreducible mod 3
        assert_eq!(s3.m, 3);
        let s5 = factor_shape(&f, 5, None).unwrap();
        assert_eq!(s5.degrees, vec![1, 1, 1, 1, 1]); // x^2+1 splits mod 5
        let s2 = factor_shape(&f, 2, None).unwrap();
        assert_eq!(s2.degrees, vec![1, 1, 1, 2]); // Q_2(i) is ramified
        assert_eq!(s2.ramified, vec![false, false, false, true]);
        // x^5 + 3 is totally ramified at both 3 and 5
        let g = pz(&[3, 0, 0, 0, 0, 1]);
        for p in [3u64, 5] {
            let s = factor_shape(&g, p, None).unwrap();
            assert_eq!(s.degrees, vec![5], "p = {}", p);
            assert_eq!(s.ramified, vec![true]);
        }
    }

    #[test]
    fn shape_with_mixed_segments() {
        // x^3 + 3x^2 + 3x + 9 ... pick f = (x - 3)(x^2 - 3) = x^3 - 3x^2 - 3x + 9:
        // at 3: root 3 (val 1) and two roots of val 1/2
        let f = pz(&[9, -3, -3, 1]);
        let shape = factor_shape(&f, 3, None).unwrap();
        assert_eq!(shape.degrees, vec![1, 2]);
        assert_eq!(shape.m, 1);
    }

    #[test]
    fn shape_is_translation_invariant() {
        for (f, p) in [
            (pz(&[1, 0, 0, 1]), 3u64),
            (pz(&[3, 3, 0, 1]), 3),
            (pz(&[2, -1, 0, 1]), 5),
            (pz(&[1, 1, 0, 1]), 7),
        ] {
            let base = factor_shape(&f, p, None).unwrap();
            for a in [-2i64, -1, 1, 2, 3] {
                let shifted = f.translate(&ZZ, &BigInt::from(a));
                let s = factor_shape(&shifted, p, None).unwrap();
                assert_eq!(s.degrees, base.degrees, "f={:?} a={}", f, a);
            }
        }
    }

    #[test]
    fn insufficient_precision_reported() {
        let f = pz(&[3, 3, 0, 1]);
        // v_3(disc) of the Eisenstein cubic is large enough that k = 1 fails
        assert!(matches!(
            factor_shape(&f, 3, Some(1)),
            Err(PadicError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn degrees_sum_to_total() {
        // spot-check a batch of separable cubics and quintics at several p
        for p in [2u64, 3, 5, 7] {
            for c2 in -4i64..=4 {
                for c3 in -4i64..=4 {
                    let f = pz(&[c3, c2, 0, 1]);
                    if discriminant(&f).unwrap().is_zero() {
                        continue;
                    }
                    let shape = factor_shape(&f, p, None).unwrap();
                    assert_eq!(shape.degrees.iter().sum::<usize>(), 3);
                    assert_eq!(shape.degrees.len(), shape.m + 1);
                }
            }
        }
    }
}
