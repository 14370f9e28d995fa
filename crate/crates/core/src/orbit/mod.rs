//! The representation `V` of the split odd special orthogonal group:
//! self-adjoint operators with anti-trace zero, their invariants, the
//! distinguished-orbit construction by anti-diagonal Gram-Schmidt, nilpotent
//! representatives, reducibility shape tests and real orbit classification.

mod signs;
mod weights;

pub use signs::{classify_component, real_orbit_count, sign_pattern, sign_pattern_int, SignPattern};
pub use weights::{
    combinatorial_lemma_check, weight, weight_identities, CombLemmaReport, WeightReport,
    WeightVector,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::ring::InvertibleRing;
use crate::algebra::{
    anti_identity, anti_trace, charpoly_pencil, discriminant, sturm_real_root_count, Mat, MatZ,
    Poly, PolyZ, QQ, ZZ,
};
use crate::error::OrbitError;

/// A self-adjoint trace-zero operator on the split space of dimension
/// `2n+1`, stored as the symmetric Gram matrix `B = AM` with anti-trace
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorRep {
    n: usize,
    b: MatZ,
}

impl OperatorRep {
    pub fn new(n: usize, b: MatZ) -> Result<Self, OrbitError> {
        let d = 2 * n + 1;
        if b.rows() != d || b.cols() != d {
            return Err(OrbitError::WrongSize { n });
        }
        if !b.is_symmetric() {
            return Err(OrbitError::NotSymmetric);
        }
        if !anti_trace(&ZZ, &b).is_zero() {
            return Err(OrbitError::NonzeroAntiTrace);
        }
        Ok(OperatorRep { n, b })
    }

    pub fn from_i64(n: usize, rows: &[&[i64]]) -> Result<Self, OrbitError> {
        Self::new(n, MatZ::from_i64_rows(rows))
    }

    pub fn genus(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &MatZ {
        &self.b
    }

    /// The operator matrix `M = A^(-1) B = A B`.
    pub fn operator_matrix(&self) -> MatZ {
        anti_identity(self.n).mul(&ZZ, &self.b)
    }

    /// `B -> g^T B g`; with `g^T A g = A`, `det g = 1` this is the
    /// conjugation action on the underlying operator.
    pub fn transform(&self, g: &MatZ) -> Result<Self, OrbitError> {
        let b = g.transpose().mul(&ZZ, &self.b).mul(&ZZ, g);
        Self::new(self.n, b)
    }
}

/// The standard anti-diagonal bilinear form `A` of rank `2n+1`.
pub fn standard_form(n: usize) -> MatZ {
    anti_identity(n)
}

/// The invariants `(c_2, ..., c_(2n+1))`: coefficients of the characteristic
/// polynomial `(-1)^n det(xA - B)` of the pencil. The `x^(2n)` coefficient
/// vanishes by the anti-trace condition.
pub fn invariants(rep: &OperatorRep) -> Vec<BigInt> {
    let f = charpoly_pencil(rep.matrix(), rep.genus()).expect("well-formed operator");
    charpoly_to_invariants(&f, rep.genus())
}

/// Extract `(c_2, ..., c_(2n+1))` from a monic trace-zero characteristic
/// polynomial.
pub fn charpoly_to_invariants(f: &PolyZ, n: usize) -> Vec<BigInt> {
    let d = 2 * n + 1;
    debug_assert_eq!(f.deg(), d);
    (2..=d).map(|m| f.coeff(&ZZ, d - m)).collect()
}

/// The distinguished representative over a field of characteristic != 2,
/// built on the etale algebra `L = k[x]/(f)`: starting from the power basis,
/// whose Gram matrix under the `beta^(2n)`-coefficient pairing is zero above
/// the anti-diagonal and one on it, monic lower-degree corrections are
/// subtracted greedily to zero the entries below the anti-diagonal. The
/// returned `B = A M` has `b_ij = 0` for `i + j < 2n + 1` and invariants
/// equal to the coefficients of `f`.
pub fn distinguished_rep_in<F: InvertibleRing>(
    field: &F,
    f: &Poly<F::Elem>,
) -> Result<Mat<F::Elem>, OrbitError>
where
    F::Elem: Clone + PartialEq + std::fmt::Debug,
{
    let d = f.deg();
    if d < 3 || d % 2 == 0 || !f.is_monic(field) {
        return Err(OrbitError::NotTraceZeroMonic);
    }
    if !field.is_zero(&f.coeff(field, d - 1)) {
        return Err(OrbitError::NotTraceZeroMonic);
    }
    let n = (d - 1) / 2;
    let two_inv = field
        .inv(&field.from_i64(2))
        .expect("characteristic 2 excluded");

    // pairing: coefficient of beta^(2n) in g*h mod f
    let pair = |g: &Poly<F::Elem>, h: &Poly<F::Elem>| -> F::Elem {
        let (_, r) = g.mul(field, h).divmod_monic(field, f);
        r.coeff(field, d - 1)
    };

    let mut basis: Vec<Poly<F::Elem>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut q = Poly::monomial(field, field.one(), i);
        if i > n {
            // zero the pairings with q_j for 2n - i < j < i
            for j in (2 * n + 1 - i)..i {
                let t = pair(&q, &basis[j]);
                if !field.is_zero(&t) {
                    let corr = basis[2 * n - j].mul_scalar(field, &t);
                    q = q.sub(field, &corr);
                }
            }
            // zero the self-pairing (q_i, q_i) using q_(2n-i)
            let t = pair(&q, &q);
            if !field.is_zero(&t) {
                let half = field.mul(&t, &two_inv);
                let corr = basis[2 * n - i].mul_scalar(field, &half);
                q = q.sub(field, &corr);
            }
        }
        basis.push(q);
    }

    // change of basis: column j holds the power-basis coordinates of q_j
    let p = Mat::from_fn(d, d, |i, j| basis[j].coeff(field, i));
    let p_inv = p
        .inverse(field)
        .expect("unit upper-triangular change of basis");
    // multiplication by beta in power coordinates
    let mult_beta = {
        let x = Poly::x(field);
        Mat::from_fn(d, d, |i, j| {
            let (_, r) = Poly::monomial(field, field.one(), j)
                .mul(field, &x)
                .divmod_monic(field, f);
            r.coeff(field, i)
        })
    };
    let m = p_inv.mul(field, &mult_beta).mul(field, &p);
    let a = anti_identity(n).map(|v| {
        if v.is_one() {
            field.one()
        } else {
            field.zero()
        }
    });
    Ok(a.mul(field, &m))
}

/// Distinguished representative over `Q` for a monic, trace-zero, separable
/// integer polynomial. Entries are rational; clearing denominators is the
/// caller's business.
pub fn distinguished_rep(f: &PolyZ) -> Result<Mat<BigRational>, OrbitError> {
    if f.deg() >= 2 && f.is_monic(&ZZ) {
        if discriminant(f)?.is_zero() {
            return Err(OrbitError::Inseparable);
        }
    }
    distinguished_rep_in(&QQ, &f.to_rational())
}

/// Outcome of the two zero-block reducibility tests on the Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockTests {
    /// Some `k in {1..n}` has the whole top-left `k x (2n+1-k)` block zero;
    /// such operators have discriminant zero.
    pub disc_zero_block: bool,
    /// All `b_ij` with `i + j < 2n + 1` (1-indexed) vanish: the
    /// distinguished shape.
    pub distinguished_shape: bool,
}

pub fn reducibility_block_tests(rep: &OperatorRep) -> BlockTests {
    block_tests_on(rep.genus(), |i, j| rep.matrix().at(i, j).is_zero())
}

/// Shape tests on any matrix-like zero predicate (0-indexed).
pub fn block_tests_on(n: usize, is_zero: impl Fn(usize, usize) -> bool) -> BlockTests {
    let d = 2 * n + 1;
    let disc_zero_block = (1..=n).any(|k| {
        (0..k).all(|i| (0..d - k).all(|j| is_zero(i, j)))
    });
    // 1-indexed: entries with i + j < 2n + 1 vanish, i.e. 0-indexed sums
    // up to d - 3
    let distinguished_shape = (0..d).all(|i| (0..d).all(|j| i + j + 2 >= d || is_zero(i, j)));
    BlockTests {
        disc_zero_block,
        distinguished_shape,
    }
}

/// The regular nilpotent representative `E`, acting on the standard basis as
/// the full chain `f_1 -> f_2 -> ... -> f_n -> u -> e_n -> ... -> e_1 -> 0`.
/// Its characteristic and minimal polynomials are both `x^(2n+1)`.
pub fn nilpotent_regular(n: usize) -> OperatorRep {
    let d = 2 * n + 1;
    let mut m = Mat::zero(&ZZ, d, d);
    // basis order: e_1..e_n (0..n-1), u (n), f_n..f_1 (n+1..2n)
    // E(f_i) = f_(i+1) for i < n; f_i sits at index 2n+1-i (0-based 2n+1-i-1)
    for i in 1..n {
        m.set(f_index(n, i + 1), f_index(n, i), BigInt::one());
    }
    m.set(n, f_index(n, n), BigInt::one()); // f_n -> u
    if n >= 1 {
        m.set(n - 1, n, BigInt::one()); // u -> e_n
    }
    for i in (2..=n).rev() {
        m.set(i - 2, i - 1, BigInt::one()); // e_i -> e_(i-1)
    }
    let b = anti_identity(n).mul(&ZZ, &m);
    OperatorRep::new(n, b).expect("regular nilpotent is self-adjoint with zero anti-trace")
}

/// The subregular nilpotent representatives `d * E'`, where `E'` skips `u`:
/// `f_1 -> ... -> f_n -> e_n -> ... -> e_1 -> 0`, `u -> 0`. The minimal
/// polynomial is `x^(2n)`; representatives for distinct square classes of
/// `d` are non-conjugate.
pub fn nilpotent_subregular(n: usize, d: &BigInt) -> Result<OperatorRep, OrbitError> {
    if d.is_zero() {
        return Err(OrbitError::ZeroScale);
    }
    let dim = 2 * n + 1;
    let mut m = Mat::zero(&ZZ, dim, dim);
    for i in 1..n {
        m.set(f_index(n, i + 1), f_index(n, i), BigInt::one());
    }
    m.set(n - 1, f_index(n, n), BigInt::one()); // f_n -> e_n
    for i in (2..=n).rev() {
        m.set(i - 2, i - 1, BigInt::one());
    }
    let b = anti_identity(n).mul(&ZZ, &m).mul_scalar(&ZZ, d);
    OperatorRep::new(n, b)
}

fn f_index(n: usize, i: usize) -> usize {
    // f_i lives at 1-indexed position 2n+2-i, i.e. 0-indexed 2n+1-i
    2 * n + 1 - i
}

/// `m` with `2m+1` the number of real roots of a separable polynomial.
pub fn real_component(f: &PolyZ) -> Result<usize, OrbitError> {
    let count = sturm_real_root_count(f).map_err(|_| OrbitError::Inseparable)?;
    debug_assert!(count % 2 == 1, "odd-degree real polynomial");
    Ok((count - 1) / 2)
}

/// Unipotent generators of `SO(W)(Z)`: integral matrices with
/// `g^T A g = A`, `det g = 1`. Long-root elements exist for every integer
/// parameter; short-root elements are integral for even parameters (the
/// correction term is `t^2/2`). Used to exercise conjugation invariance.
pub fn so_z_unipotents(n: usize, t: i64) -> Vec<MatZ> {
    let d = 2 * n + 1;
    let t = BigInt::from(t);
    let e = |i: usize| i - 1; // e_i index
    let f = |i: usize| d - i; // f_i index
    let u = n;
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            // x_(e_i - e_j): e_j += t e_i, f_i -= t f_j
            let mut g = Mat::identity(&ZZ, d);
            g.set(e(i), e(j), t.clone());
            g.set(f(j), f(i), -t.clone());
            gens.push(g);
            if i < j {
                // x_(e_i + e_j): f_j += t e_i, f_i -= t e_j
                let mut g = Mat::identity(&ZZ, d);
                g.set(e(i), f(j), t.clone());
                g.set(e(j), f(i), -t.clone());
                gens.push(g);
                // x_(-e_i - e_j): e_j += t f_i, e_i -= t f_j
                let mut g = Mat::identity(&ZZ, d);
                g.set(f(i), e(j), t.clone());
                g.set(f(j), e(i), -t.clone());
                gens.push(g);
            }
        }
    }
    // short roots with the doubled parameter s = 2t
    let s: BigInt = &t * 2;
    let half_sq: BigInt = (&s * &s) / 2;
    for i in 1..=n {
        // x_(e_i)(s): u += s e_i, f_i += -s u - (s^2/2) e_i
        let mut g = Mat::identity(&ZZ, d);
        g.set(e(i), u, s.clone());
        g.set(u, f(i), -s.clone());
        g.set(e(i), f(i), -half_sq.clone());
        gens.push(g);
        // x_(-e_i)(s): u += s f_i, e_i += -s u - (s^2/2) f_i
        let mut g = Mat::identity(&ZZ, d);
        g.set(f(i), u, s.clone());
        g.set(u, e(i), -s.clone());
        g.set(f(i), e(i), -half_sq.clone());
        gens.push(g);
    }
    gens
}

#[cfg(test)]
mod tests;
