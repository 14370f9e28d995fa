//! Exact arbitrary-precision algebra: carrier rings, dense polynomials,
//! fraction-free matrix algebra, prime-field polynomial factorization and
//! integer lattices in Hermite normal form.

pub mod fp;
pub mod lattice;
pub mod mat;
pub mod poly;
pub mod ring;
pub mod ring_poly;

pub use lattice::{hnf, LatticeBasis};
pub use mat::{anti_identity, anti_trace, charpoly, charpoly_pencil, charpoly_pencil_in, Mat, MatZ};
pub use poly::{
    cauchy_root_bound, discriminant, isolate_real_roots, resultant, sturm_real_root_count, Poly,
    PolyQ, PolyZ, RootInterval,
};
pub use ring::{InvertibleRing, Ring, ZMod, QQ, ZZ};
