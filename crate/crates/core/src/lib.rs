//! Exact construction and verification of Taylor-operator factorizations for
//! Hermite subdivision masks satisfying a spectral condition of order `n >= d`.
//!
//! Everything except the [`remainder`] module runs in exact rational
//! arithmetic. Difference operators are stored as symbols
//! `L*(z) = Σ L(β) z^-β`, masks as `A#(z) = Σ A(α) z^α`, so that
//! `T S_A = 2^-j S_B T` becomes `T*(z) A#(z) = 2^-j B#(z) T*(z²)`.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod factorization;
pub mod format;
pub mod operators;
pub mod par;
pub mod polyseq;
pub mod remainder;
pub mod spectral;
pub mod subdivision;

pub use algebra::{LaurentMatrix, LaurentPoly, Poly, RatMatrix, Rational};
pub use error::{Error, Result};
