//! Dense matrices over the carrier rings with exact, fraction-free linear
//! algebra: Bareiss determinants, the characteristic polynomial of a pencil,
//! and unit-pivot inversion over residue rings.

use num_bigint::BigInt;

use super::poly::Poly;
use super::ring::{InvertibleRing, Ring, ZZ};
use crate::error::AlgebraError;

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatZ = Mat<BigInt>;

impl<T: Clone + PartialEq + std::fmt::Debug> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zero<R: Ring<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn map<U: Clone + PartialEq + std::fmt::Debug>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&f).collect(),
        }
    }

    pub fn add<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            ring.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn sub<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            ring.sub(self.at(i, j), other.at(i, j))
        })
    }

    pub fn mul<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_scalar<R: Ring<Elem = T>>(&self, ring: &R, s: &T) -> Self {
        self.map(|v| ring.mul(v, s))
    }

    pub fn mul_vec<R: Ring<Elem = T>>(&self, ring: &R, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    /// Fraction-free determinant by Bareiss elimination. All divisions are
    /// exact in an integral domain; entries stay in the ring.
    pub fn det_bareiss<R: Ring<Elem = T>>(&self, ring: &R) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return ring.one();
        }
        let mut m: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = ring.one();
        for k in 0..n - 1 {
            if ring.is_zero(&m[k][k]) {
                match (k + 1..n).find(|&i| !ring.is_zero(&m[i][k])) {
                    Some(i) => {
                        m.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = ring.sub(
                        &ring.mul(&m[k][k], &m[i][j]),
                        &ring.mul(&m[i][k], &m[k][j]),
                    );
                    m[i][j] = ring
                        .exact_div(&num, &prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                m[i][k] = ring.zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            ring.neg(&det)
        } else {
            det
        }
    }

    /// Inverse over a ring where pivots must be units (e.g. `Z/p^k` with an
    /// invertible matrix). Returns `None` when no unit-pivot elimination
    /// exists, i.e. the matrix is not invertible.
    pub fn inverse<R: InvertibleRing<Elem = T>>(&self, ring: &R) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<T>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n).find(|&i| ring.inv(&a[i][col]).is_some())?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pinv = ring.inv(&a[col][col]).unwrap();
            for j in 0..n {
                a[col][j] = ring.mul(&a[col][j], &pinv);
                inv[col][j] = ring.mul(&inv[col][j], &pinv);
            }
            for i in 0..n {
                if i == col || ring.is_zero(&a[i][col]) {
                    continue;
                }
                let factor = a[i][col].clone();
                for j in 0..n {
                    a[i][j] = ring.sub(&a[i][j], &ring.mul(&factor, &a[col][j]));
                    inv[i][j] = ring.sub(&inv[i][j], &ring.mul(&factor, &inv[col][j]));
                }
            }
        }
        Some(Mat::from_rows(inv))
    }
}

impl MatZ {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn to_dec_strings(&self) -> Vec<String> {
        self.data.iter().map(|v| v.to_string()).collect()
    }
}

/// The standard anti-diagonal Gram matrix of size `2n+1`: ones on the
/// anti-diagonal, zeros elsewhere. Its determinant is `(-1)^n`.
pub fn anti_identity(n: usize) -> MatZ {
    let d = 2 * n + 1;
    Mat::from_fn(d, d, |i, j| {
        if i + j == d - 1 {
            BigInt::from(1)
        } else {
            BigInt::from(0)
        }
    })
}

/// Sum of the anti-diagonal entries.
pub fn anti_trace<T, R: Ring<Elem = T>>(ring: &R, m: &Mat<T>) -> T
where
    T: Clone + PartialEq + std::fmt::Debug,
{
    assert_eq!(m.rows(), m.cols());
    let d = m.rows();
    let mut acc = ring.zero();
    for i in 0..d {
        acc = ring.add(&acc, m.at(i, d - 1 - i));
    }
    acc
}

/// Characteristic polynomial of the pencil: `(-1)^n det(xA - B)` for a
/// symmetric matrix `B` of size `2n+1`, computed fraction-free over the
/// polynomial ring. The result is monic of degree `2n+1`, and its `x^(2n)`
/// coefficient is the negated anti-trace of `B`.
pub fn charpoly_pencil_in<R: Ring>(ring: &R, b: &Mat<R::Elem>, n: usize) -> Result<Poly<R::Elem>, AlgebraError>
where
    R::Elem: Clone + PartialEq + std::fmt::Debug,
{
    let d = 2 * n + 1;
    if b.rows() != d || b.cols() != d {
        return Err(AlgebraError::DimensionMismatch);
    }
    let pring = super::ring_poly::PolyRing::new(ring.clone());
    let pencil: Mat<Poly<R::Elem>> = Mat::from_fn(d, d, |i, j| {
        let x_coeff = if i + j == d - 1 { ring.one() } else { ring.zero() };
        Poly::from_coeffs(ring, vec![ring.neg(b.at(i, j)), x_coeff])
    });
    let det = pencil.det_bareiss(&pring);
    Ok(if n % 2 == 1 { det.neg(ring) } else { det })
}

/// `charpoly_pencil_in` specialized to integer matrices.
pub fn charpoly_pencil(b: &MatZ, n: usize) -> Result<Poly<BigInt>, AlgebraError> {
    charpoly_pencil_in(&ZZ, b, n)
}

/// Ordinary characteristic polynomial `det(xI - M)`, fraction-free over
/// `Z[x]`.
pub fn charpoly(m: &MatZ) -> Poly<BigInt> {
    assert_eq!(m.rows(), m.cols());
    let d = m.rows();
    let pring = super::ring_poly::PolyRing::new(ZZ);
    let pencil: Mat<Poly<BigInt>> = Mat::from_fn(d, d, |i, j| {
        let x_coeff = if i == j { BigInt::from(1) } else { BigInt::from(0) };
        Poly::from_coeffs(&ZZ, vec![-m.at(i, j).clone(), x_coeff])
    });
    pencil.det_bareiss(&pring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn bareiss_matches_cofactor_small() {
        // 3x3 with known determinant
        let m = MatZ::from_i64_rows(&[&[2, 0, 1], &[1, 3, -2], &[0, 5, 4]]);
        // cofactor expansion: 2*(12+10) - 0 + 1*(5-0) = 49
        assert_eq!(m.det_bareiss(&ZZ), BigInt::from(49));
    }

    #[test]
    fn bareiss_4x4_vs_cofactor() {
        let rows: [&[i64]; 4] = [
            &[1, 2, 0, -1],
            &[3, 0, 1, 2],
            &[-2, 1, 1, 0],
            &[0, 4, -3, 1],
        ];
        let m = MatZ::from_i64_rows(&rows);
        // cofactor oracle
        fn cof(a: &[Vec<i64>]) -> i64 {
            let n = a.len();
            if n == 1 {
                return a[0][0];
            }
            let mut det = 0;
            for j in 0..n {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                det += sign * a[0][j] * cof(&minor);
            }
            det
        }
        let a: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        assert_eq!(m.det_bareiss(&ZZ), BigInt::from(cof(&a)));
    }

    #[test]
    fn anti_identity_properties() {
        for n in 1..=6 {
            let a = anti_identity(n);
            assert!(a.is_symmetric());
            assert_eq!(a.mul(&ZZ, &a), Mat::identity(&ZZ, 2 * n + 1));
            let expect = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(a.det_bareiss(&ZZ), BigInt::from(expect));
        }
    }

    #[test]
    fn charpoly_pencil_zero_and_example() {
        for n in 1..=3 {
            let d = 2 * n + 1;
            let b = Mat::zero(&ZZ, d, d);
            let f = charpoly_pencil(&b, n).unwrap();
            assert_eq!(f.deg(), d);
            assert!(f.is_monic(&ZZ));
            assert!(f.coeffs()[..d].iter().all(|c| c.is_zero()));
        }
        // the multiplication-by-beta matrix on Z[x]/(x^3+1)
        let b = MatZ::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        let f = charpoly_pencil(&b, 1).unwrap();
        assert_eq!(f, Poly::from_i64_coeffs(&[1, 0, 0, 1]));
    }

    #[test]
    fn inverse_mod_prime_power() {
        use crate::algebra::ring::ZMod;
        let ring = ZMod::new(BigInt::from(5u32.pow(6)));
        // determinant 1, hence invertible modulo every prime power
        let m = MatZ::from_i64_rows(&[&[2, 1, 0], &[1, 1, 1], &[0, 1, 3]]).map(|v| ring.reduce(v));
        if let Some(inv) = m.inverse(&ring) {
            let prod = m.mul(&ring, &inv);
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { BigInt::one() } else { BigInt::from(0) };
                    assert_eq!(*prod.at(i, j), want);
                }
            }
        } else {
            panic!("expected invertible matrix");
        }
    }

    use num_traits::Zero;
}
