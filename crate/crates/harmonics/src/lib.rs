//! Exact-arithmetic calculus for harmonic differential forms of the
//! symmetric group: sparse superspace algebra with rational coefficients,
//! the subset/composition bijection and its statistics, marked staircase
//! diagrams, the Pieri and extreme-hook relation families, and graded
//! linear algebra over ℚ for filtrations by Tanisaki quotients.

pub mod comb;
pub mod monomial;
pub mod ops;
pub mod poly;
pub mod relations;
pub mod span;
pub mod staircase;
pub mod text;

pub use monomial::{normalize_theta, Monomial};
pub use poly::SuperPolynomial;
