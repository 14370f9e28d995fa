//! The divisor-to-orbit pipeline: Mumford representations, the coboundary
//! class `alpha = (-1)^m P(beta)`, the ideal `I_D = (P(beta), R(beta))`, the
//! twisted bilinear pairing on an ideal basis, and p-adic realization of the
//! integral orbit by lattice normalization.

mod census;

pub use census::{local_ideal_census, IdealCensus, IdealEntry};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    anti_identity, anti_trace, charpoly, resultant, LatticeBasis, Mat, MatZ, Poly, PolyQ, PolyZ,
    Ring, ZMod, QQ, ZZ,
};
use crate::error::DescentError;
use crate::padic::lattice_normalize_odd_p;

/// The Mumford representation `(P, R)` of a divisor class
/// `(P_1) + ... + (P_m) - m(O)`: `P` monic of degree `m` with the
/// x-coordinates as roots, `R` the interpolant through the points, and
/// `R^2 = f (mod P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    p_poly: PolyZ,
    r_poly: PolyZ,
}

impl MumfordDivisor {
    /// The identity class: `P = 1`, `R = 0`.
    pub fn identity() -> Self {
        MumfordDivisor {
            p_poly: Poly::constant(&ZZ, BigInt::one()),
            r_poly: Poly::zero(),
        }
    }

    pub fn num_points(&self) -> usize {
        self.p_poly.deg()
    }

    pub fn p_poly(&self) -> &PolyZ {
        &self.p_poly
    }

    pub fn r_poly(&self) -> &PolyZ {
        &self.r_poly
    }
}

/// Build the Mumford representation from integral points `(a_i, b_i)` on
/// `y^2 = f(x)` with distinct `a_i` and `b_i != 0`. Non-integral
/// interpolants are rejected: the pipeline supports integral Mumford data
/// only.
pub fn mumford_from_points(
    points: &[(BigInt, BigInt)],
    f: &PolyZ,
) -> Result<MumfordDivisor, DescentError> {
    let n = (f.deg() - 1) / 2;
    if points.len() > n {
        return Err(DescentError::TooManyPoints);
    }
    if points.is_empty() {
        return Ok(MumfordDivisor::identity());
    }
    for (i, (a, b)) in points.iter().enumerate() {
        if b.is_zero() {
            return Err(DescentError::WeierstrassPoint);
        }
        if f.eval(&ZZ, a) != b * b {
            return Err(DescentError::PointOffCurve {
                x: a.to_string(),
                y: b.to_string(),
            });
        }
        if points[..i].iter().any(|(a2, _)| a2 == a) {
            return Err(DescentError::RepeatedX);
        }
    }
    let mut p_poly = Poly::constant(&ZZ, BigInt::one());
    for (a, _) in points {
        let linear = Poly::from_coeffs(&ZZ, vec![-a.clone(), BigInt::one()]);
        p_poly = p_poly.mul(&ZZ, &linear);
    }
    // Lagrange interpolation over Q, then an integrality check
    let q = QQ;
    let mut r_q = PolyQ::zero();
    for (i, (ai, bi)) in points.iter().enumerate() {
        let mut term = Poly::constant(&q, BigRational::from_integer(bi.clone()));
        for (j, (aj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from_integer(ai - aj);
            let lin = Poly::from_coeffs(
                &q,
                vec![
                    BigRational::from_integer(-aj.clone()) / &denom,
                    BigRational::one() / &denom,
                ],
            );
            term = term.mul(&q, &lin);
        }
        r_q = r_q.add(&q, &term);
    }
    let mut r_coeffs = Vec::with_capacity(r_q.coeffs().len());
    for c in r_q.coeffs() {
        if !c.is_integer() {
            return Err(DescentError::NonIntegralR);
        }
        r_coeffs.push(c.to_integer());
    }
    let r_poly = Poly::from_coeffs(&ZZ, r_coeffs);
    // divisibility invariant R^2 - f = 0 (mod P)
    let diff = r_poly.mul(&ZZ, &r_poly).sub(&ZZ, f);
    let (_, rem) = diff.divmod_monic(&ZZ, &p_poly);
    debug_assert!(rem.is_zero(), "interpolation satisfies R^2 = f mod P");
    Ok(MumfordDivisor { p_poly, r_poly })
}

/// The coboundary class of a divisor: `alpha = (-1)^m P(beta)` in
/// `L = Q[x]/(f)`, with norm `N(alpha) = prod b_i^2`, a nonzero square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaClass {
    /// `alpha` as a polynomial in `beta` of degree < deg f
    pub alpha: PolyZ,
    pub norm: BigInt,
}

pub fn delta_class(divisor: &MumfordDivisor, f: &PolyZ) -> AlphaClass {
    let m = divisor.num_points();
    let mut alpha = divisor.p_poly.clone();
    if m % 2 == 1 {
        alpha = alpha.neg(&ZZ);
    }
    let (_, alpha) = {
        // reduce mod f (a no-op while deg P <= n < deg f)
        let (q, r) = alpha.divmod_monic(&ZZ, f);
        (q, r)
    };
    let norm = resultant(f, &alpha);
    debug_assert!(
        norm.is_positive() && {
            let r = norm.sqrt();
            &r * &r == norm
        },
        "norm is a positive perfect square"
    );
    AlphaClass { alpha, norm }
}

/// The ideal `I_D`: the `Z[beta]`-submodule of `L` generated by `P(beta)`
/// and `R(beta)`, as a full-rank lattice in the power basis.
pub fn ideal_from_divisor(
    divisor: &MumfordDivisor,
    f: &PolyZ,
) -> Result<LatticeBasis, DescentError> {
    let d = f.deg();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * d);
    for gen in [&divisor.p_poly, &divisor.r_poly] {
        let mut elem = gen.clone();
        for _ in 0..d {
            let (_, red) = elem.divmod_monic(&ZZ, f);
            let mut row = vec![BigInt::zero(); d];
            for (j, c) in red.coeffs().iter().enumerate() {
                row[j] = c.clone();
            }
            rows.push(row);
            // multiply by beta
            let mut shifted = vec![BigInt::zero()];
            shifted.extend_from_slice(elem.coeffs());
            elem = Poly::from_coeffs(&ZZ, shifted);
            let (_, r) = elem.divmod_monic(&ZZ, f);
            elem = r;
        }
    }
    let lattice = LatticeBasis::from_generators(Mat::from_rows(rows), BigInt::one())?;
    let lattice = lattice.hermite_normal_form()?;
    debug_assert!(is_beta_stable(&lattice, f), "I_D is an R-module");
    Ok(lattice)
}

/// Is the lattice closed under multiplication by `beta`?
pub fn is_beta_stable(lattice: &LatticeBasis, f: &PolyZ) -> bool {
    let d = f.deg();
    let denom = lattice.denominator();
    (0..d).all(|i| {
        let row = lattice.basis().row(i);
        let poly = Poly::from_coeffs(&ZZ, row.to_vec());
        let mut shifted = vec![BigInt::zero()];
        shifted.extend_from_slice(poly.coeffs());
        let (_, red) = Poly::from_coeffs(&ZZ, shifted).divmod_monic(&ZZ, f);
        let mut v = vec![BigInt::zero(); d];
        for (j, c) in red.coeffs().iter().enumerate() {
            v[j] = c.clone();
        }
        lattice.contains(&v, denom)
    })
}

/// The Gram matrix of the twisted pairing together with the matrix of
/// multiplication by `beta` on the same ideal basis.
#[derive(Clone, Debug)]
pub struct GramPair {
    /// Gram matrix of `(x, y) -> beta^(2n)-coefficient of alpha^(-1) x y`
    pub gram: MatZ,
    /// matrix of multiplication by `beta` acting on coordinate columns
    pub mult: MatZ,
    /// `N(I)` (positive), with `N(I)^2 = N(alpha)` verified
    pub norm_ideal: BigRational,
}

/// Serializable certificate of the integral-orbit invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescentCertificate {
    pub gram: Vec<String>,
    pub mult: Vec<String>,
    pub norm_ideal: String,
    pub norm_alpha: String,
    pub unimodular: bool,
    pub charpoly_ok: bool,
}

/// Build the pair `(G, M)` for an ideal and a twisting class, verifying the
/// containment `I^2 <= alpha R` and the norm condition `N(I)^2 = N(alpha)`.
/// `G` is symmetric with `det G = +-1`, `G M` is symmetric, `trace M = 0`
/// and `charpoly(M) = f`.
pub fn gram_pair(
    ideal: &LatticeBasis,
    alpha: &AlphaClass,
    f: &PolyZ,
) -> Result<GramPair, DescentError> {
    let q = QQ;
    let d = f.deg();
    let fq = f.to_rational();
    let alpha_q = alpha.alpha.to_rational();
    let alpha_inv = inv_mod(&alpha_q, &fq).ok_or(DescentError::ContainmentFailed)?;
    // norm condition first: N(I)^2 = N(alpha) (both positive here)
    let norm_ideal = ideal.norm();
    let norm_alpha = BigRational::from_integer(alpha.norm.clone());
    if &norm_ideal * &norm_ideal != norm_alpha {
        return Err(DescentError::NormConditionFailed);
    }
    let denom = BigRational::from_integer(ideal.denominator().clone());
    let basis_polys: Vec<PolyQ> = (0..d)
        .map(|i| {
            let row = ideal.basis().row(i);
            Poly::from_coeffs(
                &q,
                row.iter()
                    .map(|c| BigRational::from_integer(c.clone()) / &denom)
                    .collect(),
            )
        })
        .collect();
    // pairwise products: alpha^(-1) b_i b_j must lie in Z[beta]
    let mut gram = Mat::zero(&ZZ, d, d);
    for i in 0..d {
        for j in i..d {
            let prod = basis_polys[i]
                .mul(&q, &basis_polys[j])
                .mul(&q, &alpha_inv);
            let (_, red) = prod.divmod_monic(&q, &fq);
            for c in red.coeffs() {
                if !c.is_integer() {
                    return Err(DescentError::ContainmentFailed);
                }
            }
            let entry = red.coeff(&q, d - 1).to_integer();
            gram.set(i, j, entry.clone());
            gram.set(j, i, entry);
        }
    }
    // multiplication by beta on the basis: solve S = C * Rmat, M = C^T
    let rmat = Mat::from_fn(d, d, |i, j| basis_polys[i].coeff(&q, j));
    let smat = Mat::from_fn(d, d, |i, j| {
        let mut shifted = vec![BigRational::zero()];
        shifted.extend_from_slice(basis_polys[i].coeffs());
        let (_, red) = Poly::from_coeffs(&q, shifted).divmod_monic(&q, &fq);
        red.coeff(&q, j)
    });
    let rinv = rmat.inverse(&q).ok_or(DescentError::ContainmentFailed)?;
    let c = smat.mul(&q, &rinv);
    let mut mult = Mat::zero(&ZZ, d, d);
    for i in 0..d {
        for j in 0..d {
            let v = c.at(j, i); // transpose
            if !v.is_integer() {
                return Err(DescentError::ContainmentFailed);
            }
            mult.set(i, j, v.to_integer());
        }
    }
    Ok(GramPair {
        gram,
        mult,
        norm_ideal,
    })
}

impl GramPair {
    /// The serialized certificate of the integral-orbit invariants.
    pub fn certificate(&self, alpha: &AlphaClass, f: &PolyZ) -> DescentCertificate {
        let det = self.gram.det_bareiss(&ZZ);
        let unimodular = det.abs().is_one();
        let charpoly_ok = charpoly(&self.mult) == *f;
        DescentCertificate {
            gram: self.gram.to_dec_strings(),
            mult: self.mult.to_dec_strings(),
            norm_ideal: self.norm_ideal.to_string(),
            norm_alpha: alpha.norm.to_string(),
            unimodular,
            charpoly_ok,
        }
    }

    pub fn gm_symmetric(&self) -> bool {
        self.gram.mul(&ZZ, &self.mult).is_symmetric()
    }

    pub fn trace_zero(&self) -> bool {
        (0..self.mult.rows())
            .fold(BigInt::zero(), |acc, i| acc + self.mult.at(i, i))
            .is_zero()
    }
}

/// Inverse of `a` modulo the monic polynomial `f` over `Q`.
fn inv_mod(a: &PolyQ, f: &PolyQ) -> Option<PolyQ> {
    let q = QQ;
    // extended Euclid: r0 = f, r1 = a mod f
    let (_, a_red) = a.divmod_monic(&q, f);
    let mut r0 = f.clone();
    let mut r1 = a_red;
    let mut t0 = PolyQ::zero();
    let mut t1 = Poly::constant(&q, BigRational::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.divmod(&q, &r1)?;
        let t2 = t0.sub(&q, &quot.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.deg() != 0 {
        return None;
    }
    let lead_inv = BigRational::one() / r0.coeffs()[0].clone();
    let (_, result) = t0.mul_scalar(&q, &lead_inv).divmod_monic(&q, f);
    Some(result)
}

/// The p-adically normalized integral orbit representative: `B = A M'` with
/// `M' = U^(-1) M U` for the normalizing `U` of the Gram matrix.
#[derive(Clone, Debug)]
pub struct IntegralOrbit {
    pub p: u64,
    pub precision: usize,
    /// symmetric anti-trace-zero representative modulo `p^precision`
    pub b: MatZ,
    pub gram: GramPair,
    /// invariants of `b` agree with the coefficients of `f` mod `p^precision`
    pub invariants_ok: bool,
}

/// Compose the divisor pipeline with odd-p lattice normalization.
pub fn integral_orbit_zp(
    f: &PolyZ,
    divisor: &MumfordDivisor,
    p: u64,
    precision: usize,
) -> Result<IntegralOrbit, DescentError> {
    let alpha = delta_class(divisor, f);
    let ideal = ideal_from_divisor(divisor, f)?;
    let pair = gram_pair(&ideal, &alpha, f)?;
    let u = lattice_normalize_odd_p(&pair.gram, p, precision)?;
    let ring = ZMod::new(BigInt::from(p).pow(precision as u32));
    let u_inv = u
        .inverse(&ring)
        .expect("normalizing transformation is invertible");
    let m_new = u_inv
        .mul(&ring, &pair.mult.map(|v| ring.reduce(v)))
        .mul(&ring, &u);
    let d = f.deg();
    let n = (d - 1) / 2;
    let a = anti_identity(n).map(|v| ring.reduce(v));
    let b = a.mul(&ring, &m_new);
    debug_assert!(b.is_symmetric());
    debug_assert!(ring.is_zero(&anti_trace(&ring, &b)));
    // invariants mod p^k: lift M', take the exact charpoly, reduce
    let cp = charpoly(&m_new);
    let invariants_ok = cp
        .coeffs()
        .iter()
        .zip(f.coeffs())
        .all(|(a, b)| ring.reduce(a) == ring.reduce(b))
        && cp.deg() == d;
    Ok(IntegralOrbit {
        p,
        precision,
        b,
        gram: pair,
        invariants_ok,
    })
}

#[cfg(test)]
mod tests;
