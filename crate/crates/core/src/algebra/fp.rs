//! Polynomial arithmetic and factorization over prime fields `F_p`, on plain
//! `u64` words. Polynomials are coefficient vectors, lowest degree first,
//! with no trailing zeros.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// The prime field `F_p` for an odd-or-even prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

pub type FpPoly = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 32));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        // extended Euclid on i128 to dodge sign gymnastics
        let (mut r0, mut r1) = (self.p as i128, (a % self.p) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        (s0.rem_euclid(self.p as i128)) as u64
    }

    pub fn reduce_int(&self, a: &BigInt) -> u64 {
        let m = a % BigInt::from(self.p);
        let m = if m < BigInt::zero() {
            m + BigInt::from(self.p)
        } else {
            m
        };
        m.to_u64().unwrap()
    }

    /// Is `a` a nonzero square mod p (p odd)?
    pub fn is_square(&self, a: u64) -> bool {
        debug_assert!(self.p % 2 == 1);
        a % self.p != 0 && self.pow(a, (self.p - 1) / 2) == 1
    }

    /// The smallest quadratic non-residue (p odd).
    pub fn non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&a| !self.is_square(a))
            .expect("every odd prime field has a non-residue")
    }

    /// A square root of a nonzero square, by search (fields here are small).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (0..self.p).find(|&r| self.mul(r, r) == a)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let order = self.p - 1;
        let mut primes = Vec::new();
        let mut rest = order;
        let mut q = 2;
        while q * q <= rest {
            if rest % q == 0 {
                primes.push(q);
                while rest % q == 0 {
                    rest /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        (2..self.p)
            .find(|&g| primes.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("every prime field has a primitive root")
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- polynomial helpers ----

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn deg(f: &FpPoly) -> usize {
    debug_assert!(!f.is_empty());
    f.len() - 1
}

pub fn poly_is_zero(f: &FpPoly) -> bool {
    f.is_empty()
}

pub fn poly_x() -> FpPoly {
    vec![0, 1]
}

pub fn poly_add(fp: &Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        out[i] = fp.add(
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
    }
    trim(out)
}

pub fn poly_sub(fp: &Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        out[i] = fp.sub(
            a.get(i).copied().unwrap_or(0),
            b.get(i).copied().unwrap_or(0),
        );
    }
    trim(out)
}

pub fn poly_mul(fp: &Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    trim(out)
}

pub fn poly_scale(fp: &Fp, a: &FpPoly, s: u64) -> FpPoly {
    trim(a.iter().map(|&c| fp.mul(c, s)).collect())
}

pub fn poly_monic(fp: &Fp, a: &FpPoly) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => poly_scale(fp, a, fp.inv(l)),
    }
}

pub fn poly_divrem(fp: &Fp, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = deg(b);
    let li = fp.inv(*b.last().unwrap());
    let mut rem = a.clone();
    let mut quot = vec![0u64; a.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i] == 0 {
            continue;
        }
        let q = fp.mul(rem[i], li);
        quot[i - db] = q;
        for (j, &c) in b.iter().enumerate() {
            rem[i - db + j] = fp.sub(rem[i - db + j], fp.mul(q, c));
        }
    }
    (trim(quot), trim(rem))
}

pub fn poly_rem(fp: &Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    poly_divrem(fp, a, b).1
}

pub fn poly_gcd(fp: &Fp, a: &FpPoly, b: &FpPoly) -> FpPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = poly_rem(fp, &a, &b);
        a = b;
        b = r;
    }
    poly_monic(fp, &a)
}

pub fn poly_derivative(fp: &Fp, a: &FpPoly) -> FpPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(c, (i as u64) % fp.p))
            .collect(),
    )
}

pub fn poly_eval(fp: &Fp, a: &FpPoly, x: u64) -> u64 {
    let mut acc = 0;
    for &c in a.iter().rev() {
        acc = fp.add(fp.mul(acc, x), c);
    }
    acc
}

/// `g(h) mod f` by Horner on the coefficients of `g`.
pub fn poly_mod_compose(fp: &Fp, g: &FpPoly, h: &FpPoly, f: &FpPoly) -> FpPoly {
    let mut acc: FpPoly = Vec::new();
    for &c in g.iter().rev() {
        acc = poly_rem(fp, &poly_mul(fp, &acc, h), f);
        acc = poly_add(fp, &acc, &vec![c]);
    }
    acc
}

/// `g^e mod f` with a big-integer exponent.
pub fn poly_powmod(fp: &Fp, g: &FpPoly, e: &BigInt, f: &FpPoly) -> FpPoly {
    let mut base = poly_rem(fp, g, f);
    let mut acc: FpPoly = vec![1];
    let mut e = e.clone();
    let two = BigInt::from(2);
    while e > BigInt::zero() {
        if (&e % &two).is_one() {
            acc = poly_rem(fp, &poly_mul(fp, &acc, &base), f);
        }
        base = poly_rem(fp, &poly_mul(fp, &base, &base), f);
        e /= &two;
    }
    acc
}

/// The p-th root of a polynomial with zero derivative: `f(x) = g(x^p)`
/// implies the root has coefficients `a_(p i)` (Frobenius fixes `F_p`).
fn pth_root(fp: &Fp, f: &FpPoly) -> FpPoly {
    let p = fp.p as usize;
    let mut out = Vec::with_capacity(f.len() / p + 1);
    let mut i = 0;
    while i < f.len() {
        out.push(f[i]);
        i += p;
    }
    trim(out)
}

/// Squarefree decomposition: pairwise-coprime squarefree monic `g_i` with
/// multiplicities `e_i` such that `f = lc * prod g_i^(e_i)`.
pub fn squarefree_decomposition(fp: &Fp, f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut result: Vec<(FpPoly, usize)> = Vec::new();
    let mut f = poly_monic(fp, f);
    let mut e = 1usize;
    loop {
        if deg(&f) == 0 {
            return result;
        }
        let d = poly_derivative(fp, &f);
        if poly_is_zero(&d) {
            f = pth_root(fp, &f);
            e *= fp.p as usize;
            continue;
        }
        let mut g = poly_gcd(fp, &f, &d);
        let mut w = poly_divrem(fp, &f, &g).0;
        let mut i = 1usize;
        while deg(&w) > 0 {
            let y = poly_gcd(fp, &w, &g);
            let fac = poly_divrem(fp, &w, &y).0;
            if deg(&fac) > 0 {
                result.push((fac, e * i));
            }
            g = poly_divrem(fp, &g, &y).0;
            w = y;
            i += 1;
        }
        if deg(&g) == 0 {
            return result;
        }
        f = pth_root(fp, &g);
        e *= fp.p as usize;
    }
}

/// Distinct-degree decomposition of a squarefree monic polynomial: pairs
/// `(product of irreducible factors of degree d, d)`.
pub fn distinct_degree(fp: &Fp, f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut g = poly_monic(fp, f);
    let mut h = poly_rem(fp, &poly_x(), &g);
    let mut d = 0usize;
    while deg(&g) > 0 {
        d += 1;
        if 2 * d > deg(&g) {
            out.push((g.clone(), deg(&g)));
            break;
        }
        h = poly_powmod(fp, &h, &BigInt::from(fp.p), &g);
        let diff = poly_sub(fp, &h, &poly_x());
        let factor = poly_gcd(fp, &g, &diff);
        if deg(&factor) > 0 {
            out.push((factor.clone(), d));
            g = poly_divrem(fp, &g, &factor).0;
            h = poly_rem(fp, &h, &g);
        }
    }
    out
}

/// Split a monic product of `r >= 2` distinct irreducibles of equal degree
/// `d` into its irreducible factors (Cantor-Zassenhaus; a trace map at
/// `p = 2`). The driver sequence is deterministic, so factorization output
/// is reproducible.
fn equal_degree_factor(fp: &Fp, f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    if deg(f) == d {
        out.push(f.clone());
        return;
    }
    let mut counter = 0u64;
    loop {
        counter += 1;
        let t = driver_poly(fp, counter, deg(f));
        let w = if fp.p == 2 {
            // trace map T + T^2 + ... + T^(2^(d-1)) mod f
            let mut acc = poly_rem(fp, &t, f);
            let mut pow = acc.clone();
            for _ in 1..d {
                pow = poly_rem(fp, &poly_mul(fp, &pow, &pow), f);
                acc = poly_add(fp, &acc, &pow);
            }
            poly_gcd(fp, &acc, f)
        } else {
            let e = (BigInt::from(fp.p).pow(d as u32) - BigInt::one()) / BigInt::from(2);
            let u = poly_powmod(fp, &t, &e, f);
            let u1 = poly_sub(fp, &u, &vec![1]);
            poly_gcd(fp, &u1, f)
        };
        if deg(&w) > 0 && deg(&w) < deg(f) {
            let rest = poly_divrem(fp, f, &w).0;
            equal_degree_factor(fp, &w, d, out);
            equal_degree_factor(fp, &rest, d, out);
            return;
        }
    }
}

/// Enumerates small polynomials in a fixed order to drive the splitting.
fn driver_poly(fp: &Fp, counter: u64, max_deg: usize) -> FpPoly {
    let mut c = counter;
    let mut coeffs = Vec::new();
    while c > 0 {
        coeffs.push(c % fp.p);
        c /= fp.p;
        if coeffs.len() > max_deg {
            break;
        }
    }
    coeffs.push(1);
    trim(coeffs)
}

/// Full factorization into monic irreducibles with multiplicities,
/// deterministic and sorted.
pub fn factor(fp: &Fp, f: &FpPoly) -> Vec<(FpPoly, usize)> {
    assert!(!poly_is_zero(f), "factor of zero polynomial");
    let mut out: Vec<(FpPoly, usize)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(fp, f) {
        for (block, d) in distinct_degree(fp, &sqfree) {
            let mut irreducibles = Vec::new();
            equal_degree_factor(fp, &block, d, &mut irreducibles);
            for irr in irreducibles {
                out.push((irr, mult));
            }
        }
    }
    out.sort();
    out
}

/// Number of irreducible factors counted with multiplicity.
pub fn factor_count(fp: &Fp, f: &FpPoly) -> usize {
    factor(fp, f).iter().map(|(_, m)| m).sum()
}

pub fn is_irreducible(fp: &Fp, f: &FpPoly) -> bool {
    deg(f) > 0 && factor_count(fp, f) == 1
}

/// Is `f` separable, i.e. squarefree mod p?
pub fn is_separable(fp: &Fp, f: &FpPoly) -> bool {
    let d = poly_derivative(fp, f);
    if poly_is_zero(&d) {
        return deg(f) == 0;
    }
    deg(&poly_gcd(fp, f, &d)) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division oracle over all monic polynomials of lower degree.
    fn factor_count_oracle(fp: &Fp, f: &FpPoly) -> usize {
        fn monic_polys(p: u64, d: usize) -> Vec<FpPoly> {
            let mut out = Vec::new();
            let total = (p as usize).pow(d as u32);
            for code in 0..total {
                let mut c = code;
                let mut coeffs = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    coeffs.push((c % p as usize) as u64);
                    c /= p as usize;
                }
                coeffs.push(1);
                out.push(coeffs);
            }
            out
        }
        let mut f = poly_monic(fp, f);
        let mut count = 0;
        let mut d = 1;
        while deg(&f) > 0 {
            for cand in monic_polys(fp.p, d) {
                loop {
                    let (q, r) = poly_divrem(fp, &f, &cand);
                    if poly_is_zero(&r) && deg(&f) >= d {
                        // only count irreducible candidates: a reducible
                        // candidate's factors were consumed at lower degree
                        f = q;
                        count += 1;
                    } else {
                        break;
                    }
                    if deg(&f) == 0 {
                        break;
                    }
                }
                if deg(&f) == 0 {
                    break;
                }
            }
            d += 1;
        }
        count
    }

    #[test]
    fn factorization_matches_trial_division() {
        for p in [2u64, 3, 5] {
            let fp = Fp::new(p);
            let dmax = 4usize;
            let total = (p as usize).pow(dmax as u32);
            for code in 0..total {
                let mut c = code;
                let mut coeffs = Vec::with_capacity(dmax + 1);
                for _ in 0..dmax {
                    coeffs.push((c % p as usize) as u64);
                    c /= p as usize;
                }
                coeffs.push(1);
                let f = coeffs;
                let got: usize = factor_count(&fp, &f);
                let want = factor_count_oracle(&fp, &f);
                assert_eq!(got, want, "p={} f={:?}", p, f);
                // multiplicativity of the factor product
                let refactored = factor(&fp, &f)
                    .into_iter()
                    .fold(vec![1u64], |acc, (g, m)| {
                        let mut acc = acc;
                        for _ in 0..m {
                            acc = poly_mul(&fp, &acc, &g);
                        }
                        acc
                    });
                assert_eq!(refactored, f, "p={} refactor", p);
            }
        }
    }

    #[test]
    fn known_small_factorizations() {
        let f3 = Fp::new(3);
        // x^3 - x = x(x-1)(x+1) mod 3
        let f = vec![0, 3 - 1, 0, 1];
        assert_eq!(factor_count(&f3, &f), 3);
        let f7 = Fp::new(7);
        // x^3 + 1 = (x+1)(x^2-x+1), and x^2-x+1 has roots 3, 5 mod 7
        let g = vec![1, 0, 0, 1];
        assert_eq!(factor_count(&f7, &g), 3);
        let f2 = Fp::new(2);
        assert_eq!(factor_count(&f2, &g), 2);
    }

    #[test]
    fn primitive_roots_and_squares() {
        for p in [3u64, 5, 7, 11, 13] {
            let fp = Fp::new(p);
            let g = fp.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                x = fp.mul(x, g);
                seen.insert(x);
            }
            assert_eq!(seen.len(), (p - 1) as usize);
            assert!(!fp.is_square(fp.non_residue()));
        }
    }
}
