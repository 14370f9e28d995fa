//! Real orbit classification: the signs of `<w_i, w_i>` over the real
//! eigenvectors of a regular self-adjoint operator, certified by exact
//! rational interval refinement on isolating intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    anti_identity, charpoly_pencil_in, isolate_real_roots, Mat, Poly, PolyQ, PolyZ,
    RootInterval, QQ,
};
use crate::error::OrbitError;

use super::OperatorRep;

/// Signs of the inner products of the real eigenvectors, ordered by
/// increasing eigenvalue. Always `m+1` plus signs and `m` minus signs for
/// `2m+1` real roots. Serializes as a string of `+`/`-`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self, OrbitError> {
        if signs.len() % 2 == 0 || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(OrbitError::BadSignPattern);
        }
        let minus = signs.iter().filter(|&&s| s == -1).count();
        if 2 * minus + 1 != signs.len() {
            return Err(OrbitError::BadSignPattern);
        }
        Ok(SignPattern { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `m`: the number of minus signs; the pattern has length `2m+1`.
    pub fn m(&self) -> usize {
        (self.signs.len() - 1) / 2
    }
}

impl std::fmt::Display for SignPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.signs {
            write!(f, "{}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl From<SignPattern> for String {
    fn from(p: SignPattern) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for SignPattern {
    type Error = OrbitError;

    fn try_from(s: String) -> Result<Self, OrbitError> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(OrbitError::BadSignPattern),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        SignPattern::new(signs)
    }
}

fn sgn_q(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign pattern of an integral operator representative.
pub fn sign_pattern_int(rep: &OperatorRep) -> Result<SignPattern, OrbitError> {
    let b = rep.matrix().map(|v| BigRational::from_integer(v.clone()));
    sign_pattern(rep.genus(), &b)
}

/// Sign pattern of a rational symmetric Gram matrix `B` with separable
/// characteristic polynomial: for each real eigenvalue `lambda_i` of
/// `T = A^(-1) B` (increasing), the sign of `<w_i, w_i> = w_i^T A w_i` on a
/// spanning eigenvector. Signs are certified by exact bisection: the value
/// is a polynomial `h` evaluated at the root, and the isolating interval is
/// refined until `h` provably has constant sign on it.
pub fn sign_pattern(n: usize, b: &Mat<BigRational>) -> Result<SignPattern, OrbitError> {
    let q = QQ;
    let d = 2 * n + 1;
    if b.rows() != d || b.cols() != d {
        return Err(OrbitError::WrongSize { n });
    }
    let fq = charpoly_pencil_in(&q, b, n)?;
    // integer model of f for root isolation
    let (f_int, _) = fq.clear_denominators();
    if f_int.deg() != d {
        return Err(OrbitError::NotTraceZeroMonic);
    }
    let a_rat = anti_identity(n).map(|v| BigRational::from_integer(v.clone()));
    let t_mat = a_rat.mul(&q, b); // T = A^(-1) B = A B

    let u = cyclic_vector(&q, &t_mat)?;

    // Horner vectors: v_(2n) = u, v_(k-1) = T v_k + a_k u, so that
    // w(y) = sum_k y^k v_k spans the eigenspace of each simple eigenvalue y.
    let coeffs: Vec<BigRational> = (0..=d).map(|k| fq.coeff(&q, k)).collect();
    let mut vs: Vec<Vec<BigRational>> = vec![Vec::new(); d];
    vs[d - 1] = u.clone();
    for k in (1..d).rev() {
        let tv = t_mat.mul_vec(&q, &vs[k]);
        vs[k - 1] = tv
            .iter()
            .zip(&u)
            .map(|(a, b)| a + &coeffs[k] * b)
            .collect();
    }

    // h(y) = <w(y), w(y)> with the A-inner product
    let mut h = PolyQ::zero();
    for k in 0..d {
        for l in 0..d {
            let mut ip = BigRational::zero();
            for r in 0..d {
                ip += &vs[k][r] * &vs[l][d - 1 - r];
            }
            if !ip.is_zero() {
                let term = Poly::monomial(&q, ip, k + l);
                h = h.add(&q, &term);
            }
        }
    }

    let roots = isolate_real_roots(&f_int).map_err(|_| OrbitError::Inseparable)?;
    let mut signs = Vec::with_capacity(roots.len());
    for root in &roots {
        let s = sign_at_root(&h, &f_int, root)?;
        if s == 0 {
            return Err(OrbitError::CertificationFailure);
        }
        signs.push(if s > 0 { 1 } else { -1 });
    }
    SignPattern::new(signs)
}

/// A vector whose Krylov span is everything; exists since the characteristic
/// polynomial is separable, hence equal to the minimal polynomial.
fn cyclic_vector(q: &QQ, t: &Mat<BigRational>) -> Result<Vec<BigRational>, OrbitError> {
    let d = t.rows();
    let mut candidates: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..d {
        let mut v = vec![BigRational::zero(); d];
        v[i] = BigRational::one();
        candidates.push(v);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![BigRational::zero(); d];
            v[i] = BigRational::one();
            v[j] = BigRational::one();
            candidates.push(v);
        }
    }
    // small pseudo-random integer vectors as a deterministic fallback
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..32 {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            v.push(BigRational::from_integer(BigInt::from(
                ((state >> 33) % 7) as i64 - 3,
            )));
        }
        candidates.push(v);
    }
    'cand: for u in candidates {
        // Krylov matrix must be nonsingular
        let mut rows = Vec::with_capacity(d);
        let mut w = u.clone();
        for _ in 0..d {
            rows.push(w.clone());
            w = t.mul_vec(q, &w);
        }
        let k = Mat::from_rows(rows);
        if k.det_bareiss(q).is_zero() {
            continue 'cand;
        }
        return Ok(u);
    }
    Err(OrbitError::CertificationFailure)
}

/// Exact sign of `h` at the real algebraic number described by `root`
/// (a root of the squarefree integer polynomial `f`).
fn sign_at_root(h: &PolyQ, f: &PolyZ, root: &RootInterval) -> Result<i32, OrbitError> {
    let q = QQ;
    match root {
        RootInterval::Exact(r) => Ok(sgn_q(&h.eval(&q, r))),
        RootInterval::Open(lo, hi) => {
            // Eliminate spurious zeros of h by working with its squarefree
            // part for the root count, but evaluate h itself at endpoints.
            let h_sf = {
                let g = h.gcd(&q, &h.derivative(&q));
                if g.deg() == 0 {
                    h.clone()
                } else {
                    h.divmod(&q, &g).expect("gcd divides").0
                }
            };
            let (h_int, _) = h_sf.clear_denominators();
            if h_int.is_zero() {
                return Ok(0);
            }
            let f_q = f.to_rational();
            let mut lo = lo.clone();
            let mut hi = hi.clone();
            let s_lo_f = sgn_q(&f_q.eval(&q, &lo));
            debug_assert!(s_lo_f != 0);
            for _ in 0..512 {
                let s1 = sgn_q(&h.eval(&q, &lo));
                let s2 = sgn_q(&h.eval(&q, &hi));
                if s1 != 0 && s1 == s2 && count_roots_in(&h_int, &lo, &hi) == 0 {
                    return Ok(s1);
                }
                // bisect the f-isolating interval, keeping the f-root inside;
                // if the midpoint hits a zero of f or h, move to a third point
                let mut mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                if f_q.eval(&q, &mid).is_zero() {
                    return Ok(sgn_q(&h.eval(&q, &mid)));
                }
                if h.eval(&q, &mid).is_zero() {
                    mid = (&lo + &mid) / BigRational::from_integer(BigInt::from(2));
                    if f_q.eval(&q, &mid).is_zero() {
                        return Ok(sgn_q(&h.eval(&q, &mid)));
                    }
                }
                if sgn_q(&f_q.eval(&q, &mid)) == s_lo_f {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Err(OrbitError::CertificationFailure)
        }
    }
}

/// Number of real roots of the squarefree integer polynomial `g` in the
/// open interval `(lo, hi)`, assuming `g(lo) g(hi) != 0`.
fn count_roots_in(g: &PolyZ, lo: &BigRational, hi: &BigRational) -> usize {
    // Sturm count over (lo, hi] equals the count in the open interval since
    // g(hi) != 0.
    use crate::algebra::poly::sturm_count_interval;
    sturm_count_interval(g, lo, hi)
}

/// Classify a sign pattern into its component label `(m, tau)`:
/// `tau = 1` is the alternating distinguished pattern; `tau in 1..=2^m`
/// covers the soluble grammar "`+` followed by `m` blocks `(-+)` or `(+-)`"
/// read as a binary numeral (`(-+) = 0`, `(+-) = 1`, plus one); the
/// remaining patterns are numbered lexicographically from `2^m + 1` up to
/// `C(2m+1, m)`.
pub fn classify_component(pattern: &SignPattern) -> (usize, usize) {
    let m = pattern.m();
    if let Some(tau) = soluble_tau(pattern.signs()) {
        return (m, tau);
    }
    // insoluble: position in the lexicographic list (minus before plus) of
    // all non-soluble patterns with m minus signs
    let mut all = Vec::new();
    enumerate_patterns(2 * m + 1, m, &mut Vec::new(), &mut all);
    let mut tau = (1usize << m) + 1;
    for cand in &all {
        if soluble_tau(cand).is_some() {
            continue;
        }
        if cand == pattern.signs() {
            return (m, tau);
        }
        tau += 1;
    }
    unreachable!("pattern enumeration is exhaustive");
}

fn soluble_tau(signs: &[i8]) -> Option<usize> {
    if signs[0] != 1 {
        return None;
    }
    let m = (signs.len() - 1) / 2;
    let mut tau = 1usize;
    for b in 0..m {
        let pair = (signs[2 * b + 1], signs[2 * b + 2]);
        tau <<= 1;
        match pair {
            (-1, 1) => {}
            (1, -1) => tau |= 1,
            _ => return None,
        }
    }
    // tau currently reads the block word as a binary numeral with a leading
    // 1 sentinel; strip it and add 1
    Some(tau - (1 << m) + 1)
}

/// All +/- sequences of the given length with exactly `minus` minus signs,
/// in lexicographic order with minus before plus.
fn enumerate_patterns(len: usize, minus: usize, prefix: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
    if prefix.len() == len {
        if prefix.iter().filter(|&&s| s == -1).count() == minus {
            out.push(prefix.clone());
        }
        return;
    }
    let used: usize = prefix.iter().filter(|&&s| s == -1).count();
    let remaining = len - prefix.len();
    for s in [-1i8, 1] {
        let used_next = used + usize::from(s == -1);
        if used_next > minus || minus - used_next > remaining - 1 {
            continue;
        }
        prefix.push(s);
        enumerate_patterns(len, minus, prefix, out);
        prefix.pop();
    }
}

/// `C(2m+1, m)`: the number of real orbits with `2m+1` real roots.
pub fn real_orbit_count(m: usize) -> usize {
    let mut num = 1usize;
    let mut den = 1usize;
    for i in 0..m {
        num *= 2 * m + 1 - i;
        den *= i + 1;
    }
    num / den
}
