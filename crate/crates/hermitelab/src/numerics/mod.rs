//! Shared numerical substrate: quadrature rules, special combinatorial
//! functions, seedable RNG streams and dense linear algebra.

pub mod linalg;
pub mod quadrature;
pub mod rng;
pub mod special;

pub use quadrature::{adaptive_simpson, gaussian_expectation, QuadratureKind, QuadratureRule};
pub use rng::RngStream;
