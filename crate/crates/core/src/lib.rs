//! Computational core for the orbit side of 2-descent on Jacobians of odd
//! hyperelliptic curves `y^2 = f(x)`: exact algebra, curve enumeration by
//! height, the self-adjoint operator representation of the split odd
//! orthogonal group, finite-field orbit censuses, p-adic normalization, and
//! the Mumford-divisor-to-integral-orbit pipeline.

pub mod algebra;
pub mod curves;
pub mod descent;
pub mod error;
pub mod finite;
pub mod orbit;
pub mod padic;
