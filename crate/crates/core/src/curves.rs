//! Genus-`n` hyperelliptic curves `y^2 = f(x)` with a rational Weierstrass
//! point at infinity: `f(x) = x^(2n+1) + c_2 x^(2n-1) + ... + c_(2n+1)` with
//! integer coefficients and no `x^(2n)` term. Curves are normalized to
//! indivisible coefficients, ordered by naive height, and enumerated in
//! exact coefficient boxes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::algebra::{discriminant, Poly, PolyZ, ZZ};
use crate::error::CurveError;

/// A curve `y^2 = x^(2n+1) + c_2 x^(2n-1) + ... + c_(2n+1)`, stored as the
/// coefficient sequence `(c_2, ..., c_(2n+1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperCurve {
    n: usize,
    c: Vec<BigInt>,
}

impl HyperCurve {
    pub fn new(n: usize, c: Vec<BigInt>) -> Result<Self, CurveError> {
        if n == 0 {
            return Err(CurveError::BadGenus);
        }
        if c.len() != 2 * n {
            return Err(CurveError::WrongCoefficientCount {
                n,
                expected: 2 * n,
                got: c.len(),
            });
        }
        Ok(HyperCurve { n, c })
    }

    pub fn from_i64(n: usize, c: &[i64]) -> Result<Self, CurveError> {
        Self::new(n, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn genus(&self) -> usize {
        self.n
    }

    /// The coefficients `(c_2, ..., c_(2n+1))`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.c
    }

    /// `c_m` for `2 <= m <= 2n+1`.
    pub fn coefficient(&self, m: usize) -> &BigInt {
        &self.c[m - 2]
    }

    /// The defining polynomial `f(x)`, lowest degree first.
    pub fn poly(&self) -> PolyZ {
        let d = 2 * self.n + 1;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        for m in 2..=d {
            coeffs[d - m] = self.c[m - 2].clone();
        }
        Poly::from_coeffs(&ZZ, coeffs)
    }

    /// `Delta(C) = 4^(2n) disc(f)`; zero exactly when `f` is inseparable.
    pub fn discriminant(&self) -> BigInt {
        let disc = discriminant(&self.poly()).expect("f is monic of degree >= 3");
        BigInt::from(4).pow(2 * self.n as u32) * disc
    }

    /// Exact height comparator for this curve.
    pub fn height(&self) -> CurveHeight {
        let kappa = 2 * self.n as u32 * (2 * self.n as u32 + 1);
        let mut best = CurveHeight {
            kappa,
            base_abs: BigInt::zero(),
            k: 2,
        };
        for m in 2..=(2 * self.n + 1) {
            let cand = CurveHeight {
                kappa,
                base_abs: self.coefficient(m).abs(),
                k: m,
            };
            if cand > best {
                best = cand;
            }
        }
        best
    }

    /// The exact predicate `H(C) < X`, evaluated without rounding as
    /// `|c_k|^(2n(2n+1)) < X^k` for every `k`.
    pub fn height_lt(&self, x: &BigInt) -> bool {
        let kappa = 2 * (self.n as u32) * (2 * self.n as u32 + 1);
        (2..=(2 * self.n + 1)).all(|m| {
            self.coefficient(m).abs().pow(kappa) < x.pow(m as u32)
        })
    }

    /// The serialization field `max_k |c_k|^(2n(2n+1))`.
    pub fn height_num(&self) -> BigInt {
        let kappa = 2 * (self.n as u32) * (2 * self.n as u32 + 1);
        self.c
            .iter()
            .map(|c| c.abs().pow(kappa))
            .max()
            .expect("at least one coefficient")
    }

    /// Are the coefficients indivisible (no prime `q` with `q^(2m) | c_m`
    /// for all `m`)?
    pub fn is_indivisible(&self) -> bool {
        match normalize_indivisible(&self.c) {
            Ok((_, u)) => u.is_one(),
            Err(_) => false,
        }
    }

    /// `true` iff the curve has good reduction at 3 and its only point over
    /// `F_3` is the Weierstrass point at infinity, i.e. `3` does not divide
    /// `Delta(C)` and `f(0), f(1), f(-1)` are all `= -1 (mod 3)`.
    pub fn mod3_chabauty_filter(&self) -> bool {
        let three = BigInt::from(3);
        if self.discriminant().mod_floor(&three).is_zero() {
            return false;
        }
        let f = self.poly();
        let two = BigInt::from(2);
        [BigInt::zero(), BigInt::one(), BigInt::from(-1)]
            .iter()
            .all(|x| f.eval(&ZZ, x).mod_floor(&three) == two)
    }
}

/// Exact comparator for the naive height `H = max_k |c_k|^(kappa/k)` with
/// `kappa = 2n(2n+1)`: heights compare via `|a|^(kappa j) ? |b|^(kappa i)`,
/// never through floating point.
#[derive(Clone, Debug)]
pub struct CurveHeight {
    kappa: u32,
    base_abs: BigInt,
    k: usize,
}

impl CurveHeight {
    /// `H < X` for an integer bound `X`.
    pub fn lt_bound(&self, x: &BigInt) -> bool {
        self.base_abs.pow(self.kappa) < x.pow(self.k as u32)
    }

    /// The maximizing index `k`.
    pub fn index(&self) -> usize {
        self.k
    }

    /// `|c_k|` at the maximizing index.
    pub fn base(&self) -> &BigInt {
        &self.base_abs
    }
}

impl PartialEq for CurveHeight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_height(other) == Ordering::Equal
    }
}

impl Eq for CurveHeight {}

impl PartialOrd for CurveHeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_height(other))
    }
}

impl Ord for CurveHeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_height(other)
    }
}

impl CurveHeight {
    fn cmp_height(&self, other: &Self) -> Ordering {
        // |a|^(kappa/j) vs |b|^(kappa/k)  <=>  |a|^k vs |b|^j (kappa > 0)
        debug_assert_eq!(self.kappa, other.kappa);
        self.base_abs
            .pow(other.k as u32)
            .cmp(&other.base_abs.pow(self.k as u32))
    }
}

/// Remove the largest scale `u`: returns `(c_m / u^(2m))_m` and `u`, the
/// unique maximal integer with all quotients integral such that no prime
/// `q` has `q^(2m) | c_m/u^(2m)` for every `m`.
pub fn normalize_indivisible(c: &[BigInt]) -> Result<(Vec<BigInt>, BigInt), CurveError> {
    if c.iter().all(|v| v.is_zero()) {
        return Err(CurveError::AllZero);
    }
    let mut g = BigInt::zero();
    for v in c {
        g = g.gcd(v);
    }
    let mut u = BigInt::one();
    for (q, _) in factor_by_trial_division(&g) {
        let mut e_min = u32::MAX;
        for (idx, v) in c.iter().enumerate() {
            let m = (idx + 2) as u32;
            if v.is_zero() {
                continue;
            }
            let e = padic_valuation(v, &q) / (2 * m);
            e_min = e_min.min(e);
        }
        if e_min > 0 && e_min != u32::MAX {
            u *= q.pow(e_min);
        }
    }
    let out = c
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let m = (idx + 2) as u32;
            v / u.pow(2 * m)
        })
        .collect();
    Ok((out, u))
}

fn padic_valuation(v: &BigInt, q: &BigInt) -> u32 {
    let mut v = v.clone();
    let mut e = 0;
    while !v.is_zero() && (&v % q).is_zero() {
        v /= q;
        e += 1;
    }
    e
}

fn factor_by_trial_division(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= BigInt::one() {
        return out;
    }
    let mut q = BigInt::from(2);
    while &q * &q <= n {
        if (&n % &q).is_zero() {
            let mut e = 0;
            while (&n % &q).is_zero() {
                n /= &q;
                e += 1;
            }
            out.push((q.clone(), e));
        }
        q += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Largest integer `b >= 0` with `b^kappa < x^k`; the coefficient box edge
/// for the exact height predicate.
fn box_edge(x: &BigInt, k: usize, kappa: u32) -> BigInt {
    let target = x.pow(k as u32);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while hi.pow(kappa) < target {
        hi = &hi * 2;
    }
    // invariant: lo^kappa < target <= (hi+1)^kappa handled by loop below
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if mid.pow(kappa) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi.pow(kappa) < target {
        hi
    } else {
        lo
    }
}

/// All curves of genus `n` with `H(C) < X`, indivisible coefficients and
/// nonzero discriminant, in lexicographic coefficient order. The range of
/// `c_2` is partitioned across worker threads; per-worker substreams are
/// concatenated in partition order, so the output order is deterministic.
pub fn enumerate_curves(n: usize, x: &BigInt) -> Result<Vec<HyperCurve>, CurveError> {
    if n == 0 {
        return Err(CurveError::BadGenus);
    }
    if x < &BigInt::one() {
        return Err(CurveError::BadHeightBound);
    }
    let kappa = 2 * (n as u32) * (2 * n as u32 + 1);
    let edges: Vec<BigInt> = (2..=(2 * n + 1)).map(|k| box_edge(x, k, kappa)).collect();
    let c2_range = signed_range(&edges[0]);
    let chunks: Vec<Vec<HyperCurve>> = c2_range
        .into_par_iter()
        .map(|c2| {
            let mut out = Vec::new();
            let mut current = vec![c2];
            fill_rest(n, &edges, &mut current, &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn signed_range(edge: &BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut c = -edge.clone();
    while &c <= edge {
        v.push(c.clone());
        c += 1;
    }
    v
}

fn fill_rest(n: usize, edges: &[BigInt], current: &mut Vec<BigInt>, out: &mut Vec<HyperCurve>) {
    if current.len() == 2 * n {
        let curve = HyperCurve::new(n, current.clone()).expect("coefficient count is right");
        if !curve.discriminant().is_zero() && curve.is_indivisible() {
            out.push(curve);
        }
        return;
    }
    let edge = &edges[current.len()];
    let mut c = -edge.clone();
    while &c <= edge {
        current.push(c.clone());
        fill_rest(n, edges, current, out);
        current.pop();
        c += 1;
    }
}

/// JSON-lines record for curve caches:
/// `{"n": .., "c": [..], "height_num": .., "disc": ..}` with decimal-string
/// numbers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveRecord {
    pub n: usize,
    pub c: Vec<String>,
    pub height_num: String,
    pub disc: String,
}

impl CurveRecord {
    pub fn from_curve(curve: &HyperCurve) -> Self {
        CurveRecord {
            n: curve.genus(),
            c: curve.coefficients().iter().map(|v| v.to_string()).collect(),
            height_num: curve.height_num().to_string(),
            disc: curve.discriminant().to_string(),
        }
    }

    /// Parse and validate: the discriminant is recomputed and must match,
    /// so corrupted cache lines are detected.
    pub fn to_curve_validated(&self) -> Result<HyperCurve, CurveError> {
        let c = self
            .c
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| CurveError::AllZero))
            .collect::<Result<Vec<_>, _>>()?;
        let curve = HyperCurve::new(self.n, c)?;
        let disc = self.disc.parse::<BigInt>().map_err(|_| CurveError::AllZero)?;
        if curve.discriminant() != disc {
            return Err(CurveError::AllZero);
        }
        Ok(curve)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        // 2^4 | 16 and 2^6 | 64, so u = 2
        let (c, u) = normalize_indivisible(&[BigInt::from(16), BigInt::from(64)]).unwrap();
        assert_eq!(c, vec![BigInt::one(), BigInt::one()]);
        assert_eq!(u, BigInt::from(2));
        // 2^4 does not divide 4, so u = 1
        let (c, u) = normalize_indivisible(&[BigInt::from(4), BigInt::from(8)]).unwrap();
        assert_eq!(c, vec![BigInt::from(4), BigInt::from(8)]);
        assert_eq!(u, BigInt::one());
        // constant-only coefficients stay put
        let (c, u) =
            normalize_indivisible(&[BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()])
                .unwrap();
        assert_eq!(c.last(), Some(&BigInt::one()));
        assert_eq!(u, BigInt::one());
        assert!(normalize_indivisible(&[BigInt::zero(), BigInt::zero()]).is_err());
    }

    #[test]
    fn normalize_is_idempotent() {
        for (a, b) in [(16i64, 64i64), (48, 128), (0, 64), (1024, 0), (7, 11)] {
            let (c, _) = normalize_indivisible(&[BigInt::from(a), BigInt::from(b)]).unwrap();
            let (c2, u2) = normalize_indivisible(&c).unwrap();
            assert_eq!(c, c2);
            assert!(u2.is_one());
        }
    }

    #[test]
    fn height_example() {
        // n=1, (2,3): H = max(8, 9) = 9
        let c = HyperCurve::from_i64(1, &[2, 3]).unwrap();
        assert!(c.height_lt(&BigInt::from(10)));
        assert!(!c.height_lt(&BigInt::from(9)));
        assert_eq!(c.height().index(), 3);
        // all-zero except c_3 = 1: H = 1
        let c = HyperCurve::from_i64(1, &[0, 1]).unwrap();
        assert!(c.height_lt(&BigInt::from(2)));
        assert!(!c.height_lt(&BigInt::from(1)));
        // n=2, unit coefficients: H = 1, first true threshold X = 2
        let c = HyperCurve::from_i64(2, &[1, 1, 1, 1]).unwrap();
        assert!(c.height_lt(&BigInt::from(2)));
        assert!(!c.height_lt(&BigInt::from(1)));
    }

    #[test]
    fn height_scaling_law() {
        // H(scaled by u) = u^(2n(2n+1)) * H exactly; checked via comparator
        // cross powers for u <= 3, n <= 3.
        for n in 1..=3usize {
            for u in 2..=3i64 {
                let base: Vec<i64> = (0..2 * n).map(|i| (i as i64 % 5) - 2).collect();
                if base.iter().all(|&v| v == 0) {
                    continue;
                }
                let c0 = HyperCurve::new(n, base.iter().map(|&v| BigInt::from(v)).collect())
                    .unwrap();
                let scaled: Vec<BigInt> = base
                    .iter()
                    .enumerate()
                    .map(|(idx, &v)| BigInt::from(v) * BigInt::from(u).pow(2 * (idx as u32 + 2)))
                    .collect();
                let c1 = HyperCurve::new(n, scaled).unwrap();
                let h0 = c0.height();
                let h1 = c1.height();
                // H1 = u^kappa H0: compare H1^k0 = (u^kappa |c_k0|^(kappa/k0) ... )
                // via the raw pair data: same maximizing index, base scaled by u^(2k)
                assert_eq!(h0.index(), h1.index());
                let k = h0.index() as u32;
                assert_eq!(h1.base().clone(), h0.base() * BigInt::from(u).pow(2 * k));
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            HyperCurve::from_i64(1, &[0, 1]).unwrap().discriminant(),
            BigInt::from(-432)
        );
        assert_eq!(
            HyperCurve::from_i64(1, &[-1, 0]).unwrap().discriminant(),
            BigInt::from(64)
        );
        assert_eq!(
            HyperCurve::from_i64(1, &[0, 0]).unwrap().discriminant(),
            BigInt::zero()
        );
    }

    #[test]
    fn enumeration_small_boxes() {
        assert!(enumerate_curves(1, &BigInt::one()).unwrap().is_empty());
        let curves = enumerate_curves(1, &BigInt::from(2)).unwrap();
        assert_eq!(curves.len(), 8);
        // ordered, duplicate-free, all pass the filters
        for w in curves.windows(2) {
            assert!(w[0].coefficients() < w[1].coefficients());
        }
        for c in &curves {
            assert!(c.is_indivisible());
            assert!(!c.discriminant().is_zero());
            assert!(c.height_lt(&BigInt::from(2)));
        }
    }

    #[test]
    fn mod3_filter_examples() {
        assert!(HyperCurve::from_i64(1, &[2, 2]).unwrap().mod3_chabauty_filter());
        assert!(!HyperCurve::from_i64(1, &[0, 1]).unwrap().mod3_chabauty_filter());
        // for accepted curves, x in {0,1,2} gives f(x) a non-residue mod 3
        for c2 in -5i64..=5 {
            for c3 in -5i64..=5 {
                let c = HyperCurve::from_i64(1, &[c2, c3]).unwrap();
                if c.mod3_chabauty_filter() {
                    let f = c.poly();
                    for x in 0i64..3 {
                        let v = f.eval(&ZZ, &BigInt::from(x)).mod_floor(&BigInt::from(3));
                        // squares mod 3 are {0, 1}; demand the non-residue 2
                        assert_eq!(v, BigInt::from(2));
                    }
                }
            }
        }
    }

    #[test]
    fn record_round_trip_detects_corruption() {
        let c = HyperCurve::from_i64(1, &[2, 3]).unwrap();
        let rec = CurveRecord::from_curve(&c);
        assert_eq!(rec.to_curve_validated().unwrap(), c);
        let mut bad = rec.clone();
        bad.disc = "12345".into();
        assert!(bad.to_curve_validated().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn normalize_commutes_with_scaling(
                c2 in -40i64..=40,
                c3 in -40i64..=40,
                u in 1u32..=3,
            ) {
                prop_assume!(c2 != 0 || c3 != 0);
                let base = vec![BigInt::from(c2), BigInt::from(c3)];
                let (norm_base, u_base) = normalize_indivisible(&base).unwrap();
                let scaled: Vec<BigInt> = base
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * BigInt::from(u).pow(2 * (i as u32 + 2)))
                    .collect();
                let (norm_scaled, u_scaled) = normalize_indivisible(&scaled).unwrap();
                prop_assert_eq!(norm_scaled, norm_base);
                prop_assert_eq!(u_scaled, u_base * BigInt::from(u));
            }

            #[test]
            fn height_comparator_matches_exact_powers(
                c2 in -30i64..=30,
                c3 in -30i64..=30,
                x in 1u32..=40,
            ) {
                let curve = HyperCurve::from_i64(1, &[c2, c3]).unwrap();
                // genus 1: H = max(|c2|^3, |c3|^2), so H < X iff both powers are
                let want = (c2.unsigned_abs() as u64).pow(3) < x as u64
                    && (c3.unsigned_abs() as u64).pow(2) < x as u64;
                prop_assert_eq!(curve.height_lt(&BigInt::from(x)), want);
            }
        }
    }
}
