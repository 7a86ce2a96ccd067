//! Exact field and univariate polynomial arithmetic over Q, F_p and
//! towers of finite extensions.

mod factor;
mod field;
mod parse;
mod poly;

pub use factor::{
    factor_fq, factor_fq_seeded, frobenius_decompose, is_irreducible, local_valuation,
    squarefree_decomposition, DEFAULT_SEED,
};
pub use field::{FieldDesc, FieldElem};
pub use parse::{parse_integer_poly, parse_poly};
pub use poly::Poly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("operation requires a finite field")]
    CharZeroUnsupported,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial does not divide exactly")]
    NotDivisible,
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}
