//! Exact rational linear algebra: dense matrices, characteristic polynomials,
//! integer-spectrum eigenprojectors and the `γ^M` functional calculus.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod spectrum;

pub use field::{format_rational, parse_rational, Field, Rational};
pub use matrix::{flip, leg_permutation, ComplexMatrix, Matrix, RationalMatrix};
pub use poly::{charpoly, UniPoly};
pub use spectrum::{
    gamma_power, gamma_power_from_spectrum, gamma_power_in, integer_spectrum, rational_spectrum,
    GammaMatrix, GammaValue, Spectrum, SpectrumError,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
    #[error("empty product")]
    Empty,
}
