//! Exact scalars, polynomials, Laurent polynomials and their matrices.

pub mod laurent;
pub mod linalg;
pub mod lmat;
pub mod poly;
pub mod rational;

pub use laurent::LaurentPoly;
pub use linalg::{Inconsistent, RatMatrix, Solution};
pub use lmat::LaurentMatrix;
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, Rational};
