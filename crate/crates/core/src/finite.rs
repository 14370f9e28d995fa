//! Exhaustive verification over `F_p`: the order of the split odd special
//! orthogonal group, fiberwise counts of operators with fixed characteristic
//! polynomial, orbit/stabilizer structure via generator BFS, regular-vector
//! totals, and reducible-polynomial densities.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::fp::{
    self, factor_count, is_prime_u64, poly_gcd, poly_derivative, Fp, FpPoly,
};
use crate::error::FiniteError;
use crate::orbit::block_tests_on;

/// Hard cap on enumerable coordinate boxes (`p^(n(2n+3))` points).
const BOX_LIMIT: u128 = 300_000_000;

/// A small square matrix over `F_p`, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallMat {
    d: usize,
    a: Vec<u64>,
}

impl SmallMat {
    pub fn zero(d: usize) -> Self {
        SmallMat { d, a: vec![0; d * d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.a[i * d + i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.d + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.d + j] = v;
    }

    pub fn mul(&self, fp: &Fp, other: &Self) -> Self {
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for k in 0..d {
                let s = self.at(i, k);
                if s == 0 {
                    continue;
                }
                for j in 0..d {
                    let v = out.at(i, j) + s * other.at(k, j) % fp.p;
                    out.set(i, j, v % fp.p);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// `g^T B g` for the action on Gram matrices.
    pub fn sandwich(&self, fp: &Fp, g: &Self, gt: &Self) -> Self {
        gt.mul(fp, self).mul(fp, g)
    }

    /// Dense encoding as a `u128` key; requires `d*d <= 25` and `p <= 13`.
    pub fn key(&self) -> u128 {
        assert!(self.d * self.d <= 25, "key packing needs d <= 5");
        let mut k = 0u128;
        for &v in &self.a {
            debug_assert!(v < 16);
            k = (k << 4) | v as u128;
        }
        k
    }

    /// Row reversal, i.e. left multiplication by the anti-identity `A`: maps
    /// a Gram matrix `B` to the operator matrix `M = A B`.
    pub fn row_reversed(&self) -> Self {
        let d = self.d;
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.at(d - 1 - i, j));
            }
        }
        out
    }
}

/// `#SO(W)(q) = q^(n^2) (q^(2n)-1)(q^(2n-2)-1)...(q^2-1)`.
pub fn so_order(n: usize, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let mut order = q.pow((n * n) as u32);
    for i in 1..=n {
        order *= q.pow(2 * i as u32) - BigInt::one();
    }
    order
}

fn so_order_u64(n: usize, q: u64) -> u64 {
    let mut order = 1u64;
    for _ in 0..n * n {
        order *= q;
    }
    for i in 1..=n {
        order *= q.pow(2 * i as u32) - 1;
    }
    order
}

fn check_odd_prime(p: u64) -> Result<(), FiniteError> {
    if p == 2 || !is_prime_u64(p) {
        return Err(FiniteError::NotOddPrime(p));
    }
    Ok(())
}

/// Root-subgroup generators of `SO(W)(F_p)`: unipotents `x_alpha(1)` for the
/// simple and negative simple roots of `B_n`, plus torus generators
/// `h_i(g)` for a primitive root `g` (the torus elements carry the
/// non-trivial spinor norm, so the closure is the full special orthogonal
/// group rather than its index-two subgroup).
pub fn so_generators(n: usize, p: u64) -> Result<Vec<SmallMat>, FiniteError> {
    check_odd_prime(p)?;
    let fp = Fp::new(p);
    let d = 2 * n + 1;
    let e = |i: usize| i - 1;
    let f = |i: usize| d - i;
    let u = n;
    let mut gens = Vec::new();
    for t in [1u64, p - 1] {
        // x_(e_i - e_(i+1))(t): e_(i+1) += t e_i, f_i -= t f_(i+1)
        for i in 1..n {
            let mut g = SmallMat::identity(d);
            g.set(e(i), e(i + 1), t);
            g.set(f(i + 1), f(i), fp.neg(t));
            gens.push(g);
        }
        // short root x_(e_n)(t): u += t e_n, f_n += -t u - (t^2/2) e_n
        let half = fp.inv(2);
        let mut g = SmallMat::identity(d);
        g.set(e(n), u, t);
        g.set(u, f(n), fp.neg(t));
        g.set(e(n), f(n), fp.neg(fp.mul(fp.mul(t, t), half)));
        gens.push(g);
        // negative short root x_(-e_n)(t): u += t f_n, e_n += -t u - (t^2/2) f_n
        let mut g = SmallMat::identity(d);
        g.set(f(n), u, t);
        g.set(u, e(n), fp.neg(t));
        g.set(f(n), e(n), fp.neg(fp.mul(fp.mul(t, t), half)));
        gens.push(g);
    }
    let prim = fp.primitive_root();
    for s in [prim, fp.inv(prim)] {
        for i in 1..=n {
            let mut g = SmallMat::identity(d);
            g.set(e(i), e(i), s);
            g.set(f(i), f(i), fp.inv(s));
            gens.push(g);
        }
    }
    Ok(gens)
}

/// The full group by BFS closure of the generators, certified against the
/// order formula.
pub struct SoGroup {
    pub n: usize,
    pub p: u64,
    pub generators: Vec<SmallMat>,
    pub elements: Vec<SmallMat>,
}

pub fn so_group(n: usize, p: u64) -> Result<SoGroup, FiniteError> {
    let generators = so_generators(n, p)?;
    let fp = Fp::new(p);
    let d = 2 * n + 1;
    let expected = so_order_u64(n, p);
    let mut seen: HashSet<u128> = HashSet::with_capacity(expected as usize * 2);
    let mut elements = Vec::with_capacity(expected as usize);
    let mut queue = VecDeque::new();
    let id = SmallMat::identity(d);
    seen.insert(id.key());
    queue.push_back(id.clone());
    elements.push(id);
    while let Some(m) = queue.pop_front() {
        for g in &generators {
            let next = m.mul(&fp, g);
            if seen.insert(next.key()) {
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
        if elements.len() as u64 > expected {
            break;
        }
    }
    if elements.len() as u64 != expected {
        return Err(FiniteError::ClosureMismatch {
            got: elements.len() as u64,
            expected,
        });
    }
    Ok(SoGroup {
        n,
        p,
        generators,
        elements,
    })
}

/// Characteristic polynomial `det(xI - M)` by the division-free Berkowitz
/// algorithm; coefficients lowest degree first, monic of degree `d`.
pub fn berkowitz_charpoly(fp: &Fp, m: &SmallMat) -> FpPoly {
    let d = m.d;
    // c holds the coefficients highest-degree-first of the charpoly of the
    // leading r x r principal submatrix.
    let mut c: Vec<u64> = vec![1, fp.neg(m.at(0, 0))];
    let mut scratch_s: Vec<u64> = Vec::with_capacity(d);
    let mut scratch_t: Vec<u64> = Vec::with_capacity(d);
    for r in 2..=d {
        // Toeplitz column: t_0 = 1, t_1 = -M[r-1][r-1],
        // t_k = -(R * A^(k-2) * S) with R the row M[r-1][0..r-1], S the
        // column M[0..r-1][r-1], A the (r-1) principal block.
        let mut t = vec![0u64; r + 1];
        t[0] = 1;
        t[1] = fp.neg(m.at(r - 1, r - 1));
        scratch_s.clear();
        for i in 0..r - 1 {
            scratch_s.push(m.at(i, r - 1));
        }
        for k in 2..=r {
            // t_k = -(R . s) where s = A^(k-2) S
            let mut dot = 0u64;
            for i in 0..r - 1 {
                dot = fp.add(dot, fp.mul(m.at(r - 1, i), scratch_s[i]));
            }
            t[k] = fp.neg(dot);
            if k < r {
                // s <- A s
                scratch_t.clear();
                for i in 0..r - 1 {
                    let mut acc = 0u64;
                    for j in 0..r - 1 {
                        acc = fp.add(acc, fp.mul(m.at(i, j), scratch_s[j]));
                    }
                    scratch_t.push(acc);
                }
                std::mem::swap(&mut scratch_s, &mut scratch_t);
            }
        }
        // c_new[i] = sum_j t[i - j] c[j]  (lower-triangular Toeplitz times c)
        let mut c_new = vec![0u64; r + 1];
        for (i, slot) in c_new.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &cj) in c.iter().enumerate() {
                if i >= j && i - j <= r {
                    acc = fp.add(acc, fp.mul(t[i - j], cj));
                }
            }
            *slot = acc;
        }
        c = c_new;
    }
    c.reverse();
    c
}

/// Invariant coefficients `(c_2, ..., c_(2n+1))` of a Gram matrix `B` over
/// `F_p`, via the charpoly of `M = A B`.
pub fn invariants_mod_p(fp: &Fp, b: &SmallMat) -> Vec<u64> {
    let d = b.d;
    let f = berkowitz_charpoly(fp, &b.row_reversed());
    debug_assert_eq!(f.len(), d + 1);
    debug_assert_eq!(f[d], 1);
    (2..=d).map(|m| f[d - m]).collect()
}

/// Encode `(c_2, ..., c_(2n+1))` as an index in `[0, p^(2n))`.
pub fn poly_code(p: u64, c: &[u64]) -> usize {
    let mut code = 0usize;
    for &v in c.iter().rev() {
        code = code * p as usize + v as usize;
    }
    code
}

pub fn poly_decode(p: u64, n: usize, mut code: usize) -> Vec<u64> {
    let mut c = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        c.push((code % p as usize) as u64);
        code /= p as usize;
    }
    c
}

/// The monic trace-zero polynomial `x^(2n+1) + c_2 x^(2n-1) + ... + c_(2n+1)`
/// mod p, lowest degree first.
pub fn poly_from_invariants(n: usize, c: &[u64]) -> FpPoly {
    let d = 2 * n + 1;
    let mut f = vec![0u64; d + 1];
    f[d] = 1;
    for m in 2..=d {
        f[d - m] = c[m - 2];
    }
    f
}

/// The free coordinates of `V(F_p)`: upper-triangle positions except the
/// middle `(n, n)`, which the anti-trace condition determines.
fn free_positions(n: usize) -> Vec<(usize, usize)> {
    let d = 2 * n + 1;
    let mut pos = Vec::new();
    for i in 0..d {
        for j in i..d {
            if (i, j) != (n, n) {
                pos.push((i, j));
            }
        }
    }
    debug_assert_eq!(pos.len(), n * (2 * n + 3));
    pos
}

fn box_size(n: usize, p: u64) -> u128 {
    let dim = n * (2 * n + 3);
    let mut size = 1u128;
    for _ in 0..dim {
        size = size.saturating_mul(p as u128);
    }
    size
}

/// Decode box index -> symmetric anti-trace-zero matrix.
fn matrix_from_index(fp: &Fp, n: usize, pos: &[(usize, usize)], mut idx: u128) -> SmallMat {
    let d = 2 * n + 1;
    let mut b = SmallMat::zero(d);
    for &(i, j) in pos {
        let v = (idx % fp.p as u128) as u64;
        idx /= fp.p as u128;
        b.set(i, j, v);
        b.set(j, i, v);
    }
    // anti-trace zero: B[n][n] = -2 * sum_(i<n) B[i][d-1-i]
    let mut acc = 0u64;
    for i in 0..n {
        acc = fp.add(acc, b.at(i, d - 1 - i));
    }
    b.set(n, n, fp.neg(fp.add(acc, acc)));
    b
}

/// Fiberwise counts over the whole box: `counts[code]` is the number of
/// `B` in `V(F_p)` whose invariants encode to `code`. The box is chunked
/// across workers and merged by summation.
pub fn fiber_counts(n: usize, p: u64) -> Result<Vec<u64>, FiniteError> {
    check_odd_prime(p)?;
    let size = box_size(n, p);
    if size > BOX_LIMIT {
        return Err(FiniteError::Infeasible(size));
    }
    let fp = Fp::new(p);
    let pos = free_positions(n);
    let ncodes = (p as usize).pow(2 * n as u32);
    let chunked: Vec<Vec<u64>> = chunk_ranges(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut counts = vec![0u64; ncodes];
            for idx in lo..hi {
                let b = matrix_from_index(&fp, n, &pos, idx);
                let c = invariants_mod_p(&fp, &b);
                counts[poly_code(p, &c)] += 1;
            }
            counts
        })
        .collect();
    let mut counts = vec![0u64; ncodes];
    for chunk in chunked {
        for (a, b) in counts.iter_mut().zip(chunk) {
            *a += b;
        }
    }
    Ok(counts)
}

fn chunk_ranges(size: u128) -> Vec<(u128, u128)> {
    let chunks = (rayon::current_num_threads() * 8).max(1) as u128;
    let step = (size / chunks).max(1);
    let mut out = Vec::new();
    let mut lo = 0u128;
    while lo < size {
        let hi = (lo + step).min(size);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Exhaustive count of regular vectors (characteristic polynomial equals
/// minimal polynomial), together with the box size.
pub fn regular_vector_count(n: usize, p: u64) -> Result<(u64, u128), FiniteError> {
    check_odd_prime(p)?;
    let size = box_size(n, p);
    if size > BOX_LIMIT {
        return Err(FiniteError::Infeasible(size));
    }
    let fp = Fp::new(p);
    let pos = free_positions(n);
    let total: u64 = chunk_ranges(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut count = 0u64;
            for idx in lo..hi {
                let b = matrix_from_index(&fp, n, &pos, idx);
                let m = b.row_reversed();
                let f = berkowitz_charpoly(&fp, &m);
                let deriv = poly_derivative(&fp, &f);
                let is_regular = if !deriv.is_empty()
                    && poly_gcd(&fp, &f, &deriv).len() == 1
                {
                    // squarefree charpoly forces minpoly = charpoly
                    true
                } else {
                    minpoly_degree(&fp, &m) == 2 * n + 1
                };
                if is_regular {
                    count += 1;
                }
            }
            count
        })
        .sum();
    Ok((total, size))
}

/// Degree of the minimal polynomial via Krylov spans of the standard basis
/// vectors: the lcm of the annihilators of `e_1, ..., e_d`.
pub fn minpoly_degree(fp: &Fp, m: &SmallMat) -> usize {
    let d = m.d;
    let mut minpoly: FpPoly = vec![1];
    for start in 0..d {
        let mut v = vec![0u64; d];
        v[start] = 1;
        let ann = annihilator(fp, m, &v);
        // lcm(minpoly, ann) = minpoly * ann / gcd
        let g = poly_gcd(fp, &minpoly, &ann);
        let (q, _) = fp::poly_divrem(fp, &ann, &g);
        minpoly = fp::poly_mul(fp, &minpoly, &q);
        if minpoly.len() == d + 1 {
            break;
        }
    }
    minpoly.len() - 1
}

/// Smallest monic `g` with `g(M) v = 0`.
fn annihilator(fp: &Fp, m: &SmallMat, v: &[u64]) -> FpPoly {
    let d = m.d;
    // rows of the Krylov matrix, reduced to echelon form with recorded
    // combinations
    let mut echelon: Vec<(Vec<u64>, FpPoly)> = Vec::new(); // (vector, expression in powers)
    let mut w = v.to_vec();
    let mut power: FpPoly = vec![1];
    loop {
        // reduce w против echelon
        let mut vec_red = w.clone();
        let mut expr = power.clone();
        for (base, base_expr) in &echelon {
            let lead = base.iter().position(|&x| x != 0).unwrap();
            if vec_red[lead] != 0 {
                let factor = fp.mul(vec_red[lead], fp.inv(base[lead]));
                for i in 0..d {
                    vec_red[i] = fp.sub(vec_red[i], fp.mul(factor, base[i]));
                }
                let scaled: FpPoly = base_expr.iter().map(|&c| fp.mul(c, factor)).collect();
                expr = fp::poly_sub(fp, &expr, &fp::trim(scaled));
            }
        }
        if vec_red.iter().all(|&x| x == 0) {
            // expr(M) v = 0; make monic
            return fp::poly_monic(fp, &expr);
        }
        echelon.push((vec_red, expr));
        // w <- M w, power <- x * power
        let mut next = vec![0u64; d];
        for i in 0..d {
            let mut acc = 0u64;
            for j in 0..d {
                acc = fp.add(acc, fp.mul(m.at(i, j), w[j]));
            }
            next[i] = acc;
        }
        w = next;
        let mut p2 = vec![0u64];
        p2.extend_from_slice(&power);
        power = p2;
    }
}

/// Collect the full fiber over one polynomial: all `B` in `V(F_p)` with the
/// given invariant coefficients.
pub fn collect_fiber(n: usize, p: u64, c: &[u64]) -> Result<Vec<SmallMat>, FiniteError> {
    check_odd_prime(p)?;
    let size = box_size(n, p);
    if size > BOX_LIMIT {
        return Err(FiniteError::Infeasible(size));
    }
    let fp = Fp::new(p);
    let pos = free_positions(n);
    let target: Vec<u64> = c.iter().map(|&v| v % p).collect();
    let mut chunks: Vec<(usize, Vec<SmallMat>)> = chunk_ranges(size)
        .into_par_iter()
        .enumerate()
        .map(|(ci, (lo, hi))| {
            let mut hits = Vec::new();
            for idx in lo..hi {
                let b = matrix_from_index(&fp, n, &pos, idx);
                if invariants_mod_p(&fp, &b) == target {
                    hits.push(b);
                }
            }
            (ci, hits)
        })
        .collect();
    chunks.sort_by_key(|(ci, _)| *ci);
    Ok(chunks.into_iter().flat_map(|(_, h)| h).collect())
}

/// Partition a fiber into orbits by BFS under the generator set (acting as
/// `B -> g^T B g`). Returns the orbits as index lists into `fiber`.
pub fn orbit_partition(
    fp: &Fp,
    generators: &[SmallMat],
    fiber: &[SmallMat],
) -> Vec<Vec<usize>> {
    let index: HashMap<u128, usize> = fiber
        .iter()
        .enumerate()
        .map(|(i, b)| (b.key(), i))
        .collect();
    let gen_pairs: Vec<(SmallMat, SmallMat)> = generators
        .iter()
        .map(|g| (g.clone(), g.transpose()))
        .collect();
    let mut seen = vec![false; fiber.len()];
    let mut orbits = Vec::new();
    for start in 0..fiber.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (g, gt) in &gen_pairs {
                let next = fiber[i].sandwich(fp, g, gt);
                let j = *index
                    .get(&next.key())
                    .expect("orbit stays inside its fiber");
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Does the Gram matrix have the distinguished zero shape (`b_ij = 0` for
/// `i + j < 2n + 1`, 1-indexed)?
pub fn has_distinguished_shape(n: usize, b: &SmallMat) -> bool {
    block_tests_on(n, |i, j| b.at(i, j) == 0).distinguished_shape
}

/// Full census of the fiber over one separable polynomial: exhaustive count,
/// BFS orbit partition, brute-force stabilizer orders, and the
/// distinguished-orbit search.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitCensus {
    pub n: usize,
    pub p: u64,
    /// invariant coefficients (c_2, ..., c_(2n+1)) mod p
    pub c: Vec<u64>,
    /// number of irreducible factors of f mod p, minus one
    pub m: usize,
    /// total fiber size (equal to the order of SO(W)(F_p) for separable f)
    pub total: u64,
    pub num_orbits: usize,
    pub orbit_sizes: Vec<u64>,
    /// brute-force stabilizer order per orbit (order-stabilizer checked)
    pub stabilizer_orders: Vec<u64>,
    /// number of orbits containing a distinguished-shape representative
    pub distinguished_orbits: usize,
    /// size of the orbit containing a distinguished-shape representative
    pub distinguished_size: u64,
}

pub fn census_fixed_poly(n: usize, p: u64, c: &[u64]) -> Result<OrbitCensus, FiniteError> {
    check_odd_prime(p)?;
    let fp = Fp::new(p);
    let f = poly_from_invariants(n, &c.iter().map(|&v| v % p).collect::<Vec<_>>());
    if !fp::is_separable(&fp, &f) {
        return Err(FiniteError::Inseparable);
    }
    let fiber = collect_fiber(n, p, c)?;
    let group = so_group(n, p)?;
    Ok(census_from_fiber(&fp, n, p, c, &f, &group, &fiber))
}

/// Census of an already-collected fiber (lets callers reuse one box pass
/// and one group closure across many polynomials).
pub fn census_from_fiber(
    fp: &Fp,
    n: usize,
    p: u64,
    c: &[u64],
    f: &FpPoly,
    group: &SoGroup,
    fiber: &[SmallMat],
) -> OrbitCensus {
    let m = factor_count(fp, f) - 1;
    let orbits = orbit_partition(fp, &group.generators, fiber);
    let orbit_sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
    let stabilizer_orders: Vec<u64> = orbits
        .iter()
        .map(|orbit| {
            let rep = &fiber[orbit[0]];
            group
                .elements
                .iter()
                .filter(|g| rep.sandwich(fp, g, &g.transpose()) == *rep)
                .count() as u64
        })
        .collect();
    let mut distinguished_orbits = 0;
    let mut distinguished_size = 0;
    for (orbit, size) in orbits.iter().zip(&orbit_sizes) {
        if orbit.iter().any(|&i| has_distinguished_shape(n, &fiber[i])) {
            distinguished_orbits += 1;
            distinguished_size = *size;
        }
    }
    OrbitCensus {
        n,
        p,
        c: c.iter().map(|&v| v % p).collect(),
        m,
        total: fiber.len() as u64,
        num_orbits: orbits.len(),
        orbit_sizes,
        stabilizer_orders,
        distinguished_orbits,
        distinguished_size,
    }
}

/// Collect every fiber at once: map from poly code to the fiber elements.
/// Feasible for `n = 1`, `p <= 13`.
pub fn collect_all_fibers(
    n: usize,
    p: u64,
) -> Result<HashMap<usize, Vec<SmallMat>>, FiniteError> {
    check_odd_prime(p)?;
    let size = box_size(n, p);
    if size > 1_000_000 {
        return Err(FiniteError::Infeasible(size));
    }
    let fp = Fp::new(p);
    let pos = free_positions(n);
    let mut map: HashMap<usize, Vec<SmallMat>> = HashMap::new();
    for idx in 0..size {
        let b = matrix_from_index(&fp, n, &pos, idx);
        let c = invariants_mod_p(&fp, &b);
        map.entry(poly_code(p, &c)).or_default().push(b);
    }
    Ok(map)
}

/// Exact counts of reducible and of all separable trace-zero monic
/// polynomials of degree `2n+1` over `F_p`.
pub fn reducible_poly_density(n: usize, p: u64) -> Result<(u64, u64), FiniteError> {
    check_odd_prime(p)?;
    let fp = Fp::new(p);
    let codes = (p as usize).pow(2 * n as u32);
    let mut reducible = 0u64;
    let mut separable = 0u64;
    for code in 0..codes {
        let c = poly_decode(p, n, code);
        let f = poly_from_invariants(n, &c);
        if !fp::is_separable(&fp, &f) {
            continue;
        }
        separable += 1;
        if !fp::is_irreducible(&fp, &f) {
            reducible += 1;
        }
    }
    Ok((reducible, separable))
}
