//! Finite-precision p-adic arithmetic: valuations, Newton polygons,
//! factorization shapes over `Q_p`, local 2-torsion orders, odd-p unimodular
//! lattice normalization, Strassmann zero counting and the 3-adic Chabauty
//! bound.

mod factor;
mod normalize;
mod series;

pub use factor::{factor_shape, hensel_lift_pair, FactorShape};
pub use normalize::{lattice_normalize_odd_p, sqrt_mod_pk};
pub use series::{
    chabauty_bound_at_3, omega_expansion, strassmann_zero_count, ChabautyReport,
    DifferentialBound, OmegaExpansion, TailBound,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::fp::is_prime_u64;
use crate::algebra::PolyZ;
use crate::curves::HyperCurve;
use crate::error::PadicError;
use crate::orbit::real_component;

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(v: &BigInt, p: u64) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = v.clone();
    let mut e = 0;
    while (&v % &p).is_zero() {
        v /= &p;
        e += 1;
    }
    Some(e)
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(v: &BigRational, p: u64) -> Option<i64> {
    if v.is_zero() {
        return None;
    }
    let num = valuation_int(v.numer(), p).unwrap() as i64;
    let den = valuation_int(v.denom(), p).unwrap() as i64;
    Some(num - den)
}

/// An element of `Q_p` to explicit finite precision: `p^valuation * unit`
/// with the unit known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicApprox {
    pub p: u64,
    /// `None` encodes an exact zero (valuation +infinity).
    pub valuation: Option<i64>,
    /// unit part in `[0, p^precision)`, coprime to `p` when valuation is set
    pub unit: BigInt,
    pub precision: usize,
}

impl PadicApprox {
    pub fn zero(p: u64, precision: usize) -> Self {
        PadicApprox {
            p,
            valuation: None,
            unit: BigInt::zero(),
            precision,
        }
    }

    pub fn from_rational(q: &BigRational, p: u64, precision: usize) -> Self {
        match valuation_rat(q, p) {
            None => Self::zero(p, precision),
            Some(v) => {
                let pk = BigInt::from(p).pow(precision as u32);
                let pbig = BigInt::from(p);
                let mut num = q.numer().clone();
                let mut den = q.denom().clone();
                while (&num % &pbig).is_zero() {
                    num /= &pbig;
                }
                while (&den % &pbig).is_zero() {
                    den /= &pbig;
                }
                let den_inv = modular_inverse(&den, &pk).expect("denominator unit");
                let unit = ((num * den_inv) % &pk + &pk) % &pk;
                PadicApprox {
                    p,
                    valuation: Some(v),
                    unit,
                    precision,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let precision = self.precision.min(other.precision);
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => {
                let pk = BigInt::from(self.p).pow(precision as u32);
                PadicApprox {
                    p: self.p,
                    valuation: Some(a + b),
                    unit: (&self.unit * &other.unit) % pk,
                    precision,
                }
            }
            _ => Self::zero(self.p, precision),
        }
    }
}

pub fn modular_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    ext.gcd.is_one().then(|| ((ext.x % m) + m) % m)
}

/// Lower Newton polygon of a polynomial at `p`: the vertices `(i, v_p(a_i))`
/// of the lower convex hull over the nonzero coefficients. Successive slopes
/// strictly increase; root valuations are the negated slopes with
/// multiplicity the horizontal segment length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// `(numerator, denominator, length)` per segment: slope
    /// `-numerator/denominator` in lowest terms with `denominator > 0`,
    /// horizontal length as stated.
    pub fn segments(&self) -> Vec<(i64, i64, usize)> {
        self.vertices
            .windows(2)
            .map(|w| {
                let (i0, v0) = w[0];
                let (i1, v1) = w[1];
                let len = i1 - i0;
                let rise = v0 - v1;
                let g = gcd_i64(rise.abs(), len as i64).max(1);
                (rise / g, len as i64 / g, len)
            })
            .collect()
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

pub fn newton_polygon(f: &PolyZ, p: u64) -> Result<NewtonPolygon, PadicError> {
    if !is_prime_u64(p) {
        return Err(PadicError::NotPrime(p));
    }
    if f.is_zero() {
        return Err(PadicError::Algebra(
            crate::error::AlgebraError::ZeroPolynomial,
        ));
    }
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation_int(c, p).map(|v| (i, v as i64)))
        .collect();
    Ok(NewtonPolygon {
        vertices: lower_hull(&points),
    })
}

pub(crate) fn lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // keep strictly convex lower hull: drop (x2,y2) if it lies on or
            // above the chord (x1,y1)-(x,y)
            if (y2 - y1) as i128 * (x - x1) as i128 >= (y - y1) as i128 * (x2 - x1) as i128 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    hull
}

/// `#J[2](Q_p) = 2^m` with `m + 1` the number of irreducible factors of `f`
/// over `Q_p`.
pub fn j2_local_order(f: &PolyZ, p: u64) -> Result<BigInt, PadicError> {
    let shape = factor_shape(f, p, None)?;
    Ok(BigInt::one() << shape.m)
}

/// `#(J(Q_p)/2J(Q_p))`: `2^m` for odd `p`, and `2^(n+m)` at `p = 2`.
pub fn jmod2j_local_order(f: &PolyZ, p: u64, n: usize) -> Result<BigInt, PadicError> {
    let shape = factor_shape(f, p, None)?;
    let e = if p == 2 { n + shape.m } else { shape.m };
    Ok(BigInt::one() << e)
}

/// Order of the local cohomology group `H^1(Q_p, J[2])`: `2^(2m)` for odd
/// `p`; `2^(2m + 2n)` at `p = 2` when `f` splits into unramified factors,
/// and an error otherwise.
pub fn local_unit_h1_order(f: &PolyZ, p: u64) -> Result<BigInt, PadicError> {
    let shape = factor_shape(f, p, None)?;
    let n = (f.deg() - 1) / 2;
    if p == 2 {
        if shape.ramified.iter().any(|&r| r) {
            return Err(PadicError::RamifiedAtTwo);
        }
        Ok(BigInt::one() << (2 * shape.m + 2 * n))
    } else {
        Ok(BigInt::one() << (2 * shape.m))
    }
}

/// Number of `SO(W)(Q_p)`-orbits with a fixed separable characteristic
/// polynomial having `m + 1` irreducible factors: the zero count
/// `2^(2m-1) + 2^(m-1)` of the even quadratic form on `H^1`, and `1` when
/// `m = 0`.
pub fn local_orbit_count(m: usize) -> BigInt {
    if m == 0 {
        BigInt::one()
    } else {
        (BigInt::one() << (2 * m - 1)) + (BigInt::one() << (m - 1))
    }
}

/// One row of the local mass table: the place, the orders of
/// `J(Q_v)/2J(Q_v)` and `J[2](Q_v)`, and their ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMassRow {
    /// `None` is the archimedean place, `Some(p)` a finite prime.
    pub place: Option<u64>,
    pub jmod2j: BigRational,
    pub j2: BigRational,
    pub ratio: BigRational,
}

/// The local mass ratios `rho_v = #(J(Q_v)/2J(Q_v)) / #J[2](Q_v)` at the
/// archimedean place, at 2, and at the odd primes dividing the
/// discriminant. Their product is 1: `rho_p = 1` for odd `p`, `rho_2 = 2^n`
/// and `rho_infinity = 2^(-n)`.
pub fn local_mass_ratios(
    curve: &HyperCurve,
) -> Result<(Vec<LocalMassRow>, BigRational), PadicError> {
    let f = curve.poly();
    let n = curve.genus();
    let disc = curve.discriminant();
    if disc.is_zero() {
        return Err(PadicError::Inseparable);
    }
    let mut rows = Vec::new();
    // archimedean place: #(J(R)/2J(R)) = 2^m, #J[2](R) = 2^(m+n)
    let m_inf = real_component(&f).map_err(|_| PadicError::Inseparable)?;
    let jm = BigRational::from_integer(BigInt::one() << m_inf);
    let j2 = BigRational::from_integer(BigInt::one() << (m_inf + n));
    rows.push(LocalMassRow {
        place: None,
        ratio: &jm / &j2,
        jmod2j: jm,
        j2,
    });
    let mut primes = vec![2u64];
    primes.extend(odd_prime_divisors(&disc));
    for p in primes {
        let jm = BigRational::from_integer(jmod2j_local_order(&f, p, n)?);
        let j2 = BigRational::from_integer(j2_local_order(&f, p)?);
        rows.push(LocalMassRow {
            place: Some(p),
            ratio: &jm / &j2,
            jmod2j: jm,
            j2,
        });
    }
    let product = rows
        .iter()
        .fold(BigRational::one(), |acc, row| acc * &row.ratio);
    Ok((rows, product))
}

fn odd_prime_divisors(v: &BigInt) -> Vec<u64> {
    let mut v = v.abs();
    let mut out = Vec::new();
    let two = BigInt::from(2);
    while (&v % &two).is_zero() {
        v /= &two;
    }
    let mut q = BigInt::from(3);
    while &q * &q <= v {
        if (&v % &q).is_zero() {
            out.push(q.to_string().parse().unwrap());
            while (&v % &q).is_zero() {
                v /= &q;
            }
        }
        q += 2;
    }
    if v > BigInt::one() {
        out.push(v.to_string().parse().unwrap());
    }
    out
}
