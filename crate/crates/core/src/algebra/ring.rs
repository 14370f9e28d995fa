//! Coefficient rings used throughout the crate, in carrier style: a ring is a
//! (usually zero-sized) value whose methods operate on its element type. This
//! keeps polynomial and matrix code generic over `ZZ`, `QQ` and residue rings
//! without cloning ring state into every element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Exact division: returns `Some(q)` with `a = q*b` when such a `q`
    /// exists and is unique, `None` otherwise. Bareiss elimination relies on
    /// this being exact at the points where the algorithm guarantees
    /// divisibility.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

/// Rings in which every nonzero element (or at least every unit we ask
/// about) is invertible.
pub trait InvertibleRing: Ring {
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZZ;

impl Ring for ZZ {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
}

/// The rational numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QQ;

impl Ring for QQ {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn exact_div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
}

impl InvertibleRing for QQ {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// The residue ring `Z/mZ`, `m >= 2`. Elements are canonical representatives
/// in `[0, m)`. With `m` prime this is the field `F_m`; with `m = p^k` it is
/// the finite-precision model of `Z_p` used by the p-adic routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMod {
    modulus: BigInt,
}

impl ZMod {
    pub fn new(modulus: BigInt) -> Self {
        assert!(modulus >= BigInt::from(2), "modulus must be at least 2");
        ZMod { modulus }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        let r = a % &self.modulus;
        if r.is_negative() {
            r + &self.modulus
        } else {
            r
        }
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        a.gcd(&self.modulus).is_one()
    }
}

impl Ring for ZMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(&BigInt::one())
    }
    fn from_i64(&self, n: i64) -> BigInt {
        self.reduce(&BigInt::from(n))
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&(-a))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a).is_zero()
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        self.div(a, b)
    }
}

impl InvertibleRing for ZMod {
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let a = self.reduce(a);
        let ext = a.extended_gcd(&self.modulus);
        ext.gcd.is_one().then(|| self.reduce(&ext.x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_inverse_round_trip() {
        let ring = ZMod::new(BigInt::from(125));
        for a in 1..125i64 {
            let a = BigInt::from(a);
            match ring.inv(&a) {
                Some(ai) => assert!(ring.mul(&a, &ai).is_one()),
                None => assert!(!ring.is_unit(&a)),
            }
        }
    }

    #[test]
    fn zz_exact_div() {
        let z = ZZ;
        assert_eq!(
            z.exact_div(&BigInt::from(12), &BigInt::from(-4)),
            Some(BigInt::from(-3))
        );
        assert_eq!(z.exact_div(&BigInt::from(12), &BigInt::from(5)), None);
    }
}
