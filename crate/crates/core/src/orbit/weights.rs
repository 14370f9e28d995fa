//! Torus weight calculus on the coordinates `b_ij` of `V`, and the
//! combinatorial inequality controlling the cusp estimate.

use crate::error::OrbitError;

/// A multiplicative weight `lambda^(e_lambda) * prod s_k^(e_s[k-1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub e_lambda: i64,
    pub e_s: Vec<i64>,
}

impl WeightVector {
    pub fn product(terms: impl IntoIterator<Item = WeightVector>) -> Option<WeightVector> {
        let mut it = terms.into_iter();
        let mut acc = it.next()?;
        for w in it {
            acc.e_lambda += w.e_lambda;
            for (a, b) in acc.e_s.iter_mut().zip(&w.e_s) {
                *a += b;
            }
        }
        Some(acc)
    }
}

/// Weight of the coordinate `b_ij` (1-indexed, `i <= j`, the coordinate
/// `(n+1, n+1)` is excluded): with `(w_1..w_2n) = (s_1..s_n, s_n..s_1)`,
///
/// `w(b_ij) = lambda * s_1^-2 ... s_n^-2 * (w_1...w_(i-1)) * (w_1...w_(j-1))`.
pub fn weight(n: usize, i: usize, j: usize) -> Result<WeightVector, OrbitError> {
    if !(1 <= i && i <= j && j <= 2 * n + 1) {
        return Err(OrbitError::ExcludedCoordinate(i, j));
    }
    if (i, j) == (n + 1, n + 1) {
        return Err(OrbitError::ExcludedCoordinate(i, j));
    }
    let mut e_s = vec![-2i64; n];
    for t in 1..=n {
        // occurrences of s_t among w_1..w_(k-1): [t <= k-1] + [2n+1-t <= k-1]
        for k in [i, j] {
            if t <= k - 1 {
                e_s[t - 1] += 1;
            }
            if 2 * n + 1 - t <= k - 1 {
                e_s[t - 1] += 1;
            }
        }
    }
    Ok(WeightVector { e_lambda: 1, e_s })
}

/// Exhaustive check of the three weight identities for a given `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub n: usize,
    /// `w(b_ij) = lambda` whenever `i + j = 2n + 2`.
    pub anti_diagonal_is_lambda: bool,
    /// `w(b_(i,2n+1-i)) = lambda / s_i` for `i <= n`.
    pub above_anti_diagonal: bool,
    /// The product over all coordinates is `lambda^(n(2n+3))`.
    pub total_product_ok: bool,
}

impl WeightReport {
    pub fn all_ok(&self) -> bool {
        self.anti_diagonal_is_lambda && self.above_anti_diagonal && self.total_product_ok
    }
}

pub fn weight_identities(n: usize) -> WeightReport {
    let mut anti = true;
    for i in 1..=(2 * n + 1) {
        let j = 2 * n + 2 - i;
        if i > j {
            continue;
        }
        if (i, j) == (n + 1, n + 1) {
            continue;
        }
        let w = weight(n, i, j).unwrap();
        anti &= w.e_lambda == 1 && w.e_s.iter().all(|&e| e == 0);
    }
    let mut above = true;
    for i in 1..=n {
        let w = weight(n, i, 2 * n + 1 - i).unwrap();
        let mut expect = vec![0i64; n];
        expect[i - 1] = -1;
        above &= w.e_lambda == 1 && w.e_s == expect;
    }
    let all = coordinates(n)
        .into_iter()
        .map(|(i, j)| weight(n, i, j).unwrap());
    let product = WeightVector::product(all).expect("nonempty coordinate set");
    let dim = (n * (2 * n + 3)) as i64;
    let total = product.e_lambda == dim && product.e_s.iter().all(|&e| e == 0);
    WeightReport {
        n,
        anti_diagonal_is_lambda: anti,
        above_anti_diagonal: above,
        total_product_ok: total,
    }
}

/// All coordinates of `V`: pairs `(i, j)` with `i <= j` except `(n+1, n+1)`.
pub fn coordinates(n: usize) -> Vec<(usize, usize)> {
    let d = 2 * n + 1;
    let mut v = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            if (i, j) != (n + 1, n + 1) {
                v.push((i, j));
            }
        }
    }
    v
}

/// Result of the exhaustive subset check of the cusp inequality
/// `sum_k max(0, e_k(U_0) + k^2 - 2kn) <= |U_0|` over all subsets `U_0` of
/// the below-anti-diagonal coordinates `U^-`, with equality exactly at the
/// empty set and at all of `U^-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombLemmaReport {
    pub n: usize,
    pub subsets_checked: usize,
    pub inequality_holds: bool,
    pub equality_exactly_at_extremes: bool,
}

impl CombLemmaReport {
    pub fn all_ok(&self) -> bool {
        self.inequality_holds && self.equality_exactly_at_extremes
    }
}

pub fn combinatorial_lemma_check(n: usize) -> Result<CombLemmaReport, OrbitError> {
    if n == 0 || n > 4 {
        return Err(OrbitError::ExcludedCoordinate(n, n));
    }
    let minus: Vec<(usize, usize)> = coordinates(n)
        .into_iter()
        .filter(|&(i, j)| i + j < 2 * n + 1)
        .collect();
    let weights: Vec<WeightVector> = minus
        .iter()
        .map(|&(i, j)| weight(n, i, j).unwrap())
        .collect();
    let size = minus.len();
    let mut inequality = true;
    let mut equality_ok = true;
    for mask in 0u64..(1 << size) {
        let mut e = vec![0i64; n];
        let mut card = 0i64;
        for (idx, w) in weights.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                card += 1;
                for (k, v) in e.iter_mut().zip(&w.e_s) {
                    // e_k(U_0) is defined through w(prod b) = lambda^.. s_k^(-e_k)
                    *k -= v;
                }
            }
        }
        let lhs: i64 = (1..=n)
            .map(|k| {
                let term = e[k - 1] + (k * k) as i64 - 2 * (k * n) as i64;
                term.max(0)
            })
            .sum();
        if lhs > card {
            inequality = false;
        }
        let is_extreme = mask == 0 || mask == (1 << size) - 1;
        if (lhs == card) != is_extreme {
            equality_ok = false;
        }
    }
    Ok(CombLemmaReport {
        n,
        subsets_checked: 1 << size,
        inequality_holds: inequality,
        equality_exactly_at_extremes: equality_ok,
    })
}
