//! Milnor numbers, polar multiplicities and Poincaré–Hopf indices of
//! codimension-two determinantal singularities, computed exactly.
//!
//! The pipeline smooths the presentation matrix by a constant perturbation,
//! counts the critical points of a linear form on the smoothing with a
//! Gröbner basis, certifies that they are non-degenerate, and recovers the
//! Milnor number from the Euler characteristic of the fibre.

pub mod catalog;
pub mod gbasis;
pub mod invariants;
pub mod matgerm;
pub mod polycore;

pub use polycore::{parse_poly, Monomial, Ordering, Poly, PolyError, Rational, Ring};
