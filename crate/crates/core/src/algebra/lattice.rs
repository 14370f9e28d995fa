//! Full-rank integer lattices given by row generators, with Hermite normal
//! form as the canonical representative. A `LatticeBasis` carries a
//! denominator so that fractional ideals and integral ideals share one type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mat::{Mat, MatZ};
use crate::error::AlgebraError;

/// Hermite normal form of a rectangular integer matrix whose rows span a
/// rank-`cols` lattice. The result is square upper triangular with positive
/// diagonal and entries above each diagonal entry reduced into `[0, diag)`.
pub fn hnf(m: &MatZ) -> Result<MatZ, AlgebraError> {
    let rows = m.rows();
    let cols = m.cols();
    if rows < cols {
        return Err(AlgebraError::SingularBasis);
    }
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    for col in 0..cols {
        let h = col;
        // Reduce rows h.. to a single nonzero entry in this column by
        // gcd-style row combinations.
        loop {
            let mut idx: Vec<usize> = (h..rows).filter(|&i| !a[i][col].is_zero()).collect();
            if idx.is_empty() {
                return Err(AlgebraError::SingularBasis);
            }
            idx.sort_by(|&i, &j| a[i][col].magnitude().cmp(a[j][col].magnitude()));
            let pivot = idx[0];
            a.swap(h, pivot);
            if idx.len() == 1 {
                break;
            }
            for i in h + 1..rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = rounded_div(&a[i][col], &a[h][col]);
                for j in 0..cols {
                    let sub = &q * &a[h][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        if a[h][col].is_negative() {
            for j in 0..cols {
                a[h][j] = -a[h][j].clone();
            }
        }
        for i in 0..h {
            let q = a[i][col].div_floor(&a[h][col]);
            if !q.is_zero() {
                for j in 0..cols {
                    let sub = &q * &a[h][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
    }
    Ok(Mat::from_rows(a.into_iter().take(cols).collect()))
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // round(a/b) with ties toward zero; only used to shrink remainders
    let two = BigInt::from(2);
    let (q, r) = a.div_rem(b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// A full-rank lattice `(1/denominator) * rowspan(basis)` in `Q^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: MatZ,
    denominator: BigInt,
}

impl LatticeBasis {
    /// Build from a square basis; rejects singular matrices.
    pub fn new(basis: MatZ, denominator: BigInt) -> Result<Self, AlgebraError> {
        use super::ring::ZZ;
        if basis.rows() != basis.cols() {
            return Err(AlgebraError::DimensionMismatch);
        }
        if denominator.is_zero() || denominator.is_negative() {
            return Err(AlgebraError::SingularBasis);
        }
        if basis.det_bareiss(&ZZ).is_zero() {
            return Err(AlgebraError::SingularBasis);
        }
        Ok(LatticeBasis { basis, denominator })
    }

    /// Build from a stack of (possibly redundant) row generators.
    pub fn from_generators(
        generators: MatZ,
        denominator: BigInt,
    ) -> Result<Self, AlgebraError> {
        let h = hnf(&generators)?;
        LatticeBasis::new(h, denominator)
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatZ {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Canonical form: HNF basis with the common content folded into the
    /// denominator. Two equal lattices have identical canonical forms.
    pub fn hermite_normal_form(&self) -> Result<LatticeBasis, AlgebraError> {
        let h = hnf(&self.basis)?;
        let mut content = BigInt::zero();
        for i in 0..h.rows() {
            for j in 0..h.cols() {
                content = content.gcd(h.at(i, j));
            }
        }
        let g = content.gcd(&self.denominator);
        let h = h.map(|v| v / &g);
        Ok(LatticeBasis {
            basis: h,
            denominator: &self.denominator / &g,
        })
    }

    /// Covolume relative to `Z^rank`: `prod(diag) / denominator^rank` of the
    /// normal form. Equals the index for sublattices of `Z^rank`.
    pub fn norm(&self) -> BigRational {
        let h = self
            .hermite_normal_form()
            .expect("valid lattice has a normal form");
        let mut num = BigInt::one();
        for i in 0..h.basis.rows() {
            num *= h.basis.at(i, i);
        }
        BigRational::new(num, h.denominator.pow(h.basis.rows() as u32))
    }

    /// Does the rational vector `v / denom_v` lie in the lattice? Solves
    /// `x * basis * denom_v = v * denominator` for integral `x` by
    /// back-substitution against the triangular normal form.
    pub fn contains(&self, v: &[BigInt], denom_v: &BigInt) -> bool {
        let h = self
            .hermite_normal_form()
            .expect("valid lattice has a normal form");
        let n = h.rank();
        assert_eq!(v.len(), n);
        let mut x = vec![BigInt::zero(); n];
        for col in 0..n {
            let mut rhs = &v[col] * &h.denominator;
            for i in 0..col {
                rhs -= &x[i] * h.basis.at(i, col) * denom_v;
            }
            let den = h.basis.at(col, col) * denom_v;
            let (q, r) = rhs.div_rem(&den);
            if !r.is_zero() {
                return false;
            }
            x[col] = q;
        }
        true
    }
}
