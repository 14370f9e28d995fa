//! The polynomial ring over a carrier ring, itself packaged as a carrier
//! ring. This is what lets Bareiss elimination run over `Z[x]` for the
//! pencil determinant.

use super::poly::Poly;
use super::ring::Ring;

#[derive(Clone)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }
}

impl<R: Ring> Ring for PolyRing<R>
where
    R::Elem: Clone + PartialEq + std::fmt::Debug,
{
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        Poly::constant(&self.base, self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        Poly::constant(&self.base, self.base.from_i64(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.base, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.base, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.base, b)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    /// Exact polynomial division: `Some(q)` iff `a = q*b` exactly.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Poly::zero());
        }
        if a.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lead_b = b.leading().unwrap();
        let mut rem: Vec<R::Elem> = a.coeffs().to_vec();
        let mut quot = vec![self.base.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if self.base.is_zero(&rem[i]) {
                continue;
            }
            let q = self.base.exact_div(&rem[i], lead_b)?;
            for (j, c) in b.coeffs().iter().enumerate() {
                rem[i - db + j] = self.base.sub(&rem[i - db + j], &self.base.mul(&q, c));
            }
            quot[i - db] = q;
        }
        if rem.iter().any(|c| !self.base.is_zero(c)) {
            return None;
        }
        Some(Poly::from_coeffs(&self.base, quot))
    }
}
