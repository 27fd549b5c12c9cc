//! Tangent cones of monomial curves in affine 3-space.
//!
//! Given a numerical semigroup `<n1, n2, n3>` this crate computes a minimal
//! generating set of the ideal of initial forms of the defining ideal of its
//! semigroup ring, together with the Herzog data it is built from, a small
//! Groebner basis engine, a brute-force lattice oracle and Betti numbers of
//! monomial ideals.

pub mod betti;
pub mod error;
pub mod fraction;
pub mod groebner;
pub mod monomial;
pub mod oracle;
pub mod semigroup;
pub mod tangent_cone;
