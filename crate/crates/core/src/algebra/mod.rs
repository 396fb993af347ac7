//! Exact arithmetic: rationals and prime fields, sparse polynomials in the
//! coordinates `y_{it}`, polynomials in `τ` over them, and determinants.

mod det;
mod poly;
mod scalar;
mod tau;

use thiserror::Error;

use crate::involution::Root;

pub use det::{det, submatrix, Ring};
pub use poly::{FpPoly, Monomial, Poly, Variable};
pub use scalar::{is_prime, Domain, Fp, Scalar};
pub use tau::{tau_normalize, TauPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different scalar domains")]
    MixedDomains,
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("no value assigned to y[{},{}]", .0.i, .0.j)]
    MissingAssignment(Root),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{value} is not invertible modulo {p}")]
    NotInvertible { value: String, p: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}
