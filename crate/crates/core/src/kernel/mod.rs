//! Exact multivariate polynomials over `Q` and `F_p`, Gröbner bases and
//! ideal operations.

mod coeff;
mod fitting;
mod groebner;
mod ideal;
mod order;
mod poly;

pub use coeff::{Coeff, Field};
pub use fitting::{determinant, fitting0};
pub use groebner::{current_step_limit, groebner_basis, normal_form, with_step_limit, DEFAULT_STEP_LIMIT};
pub use ideal::Ideal;
pub use order::MonomialOrder;
pub use poly::{Monomial, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("{0} is not a supported prime modulus")]
    NotAPrime(u64),
    #[error("denominator of {0} vanishes in characteristic {1}")]
    DenominatorVanishes(String, u64),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has no image in the target ring")]
    VariableNotAvailable(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live in different polynomial rings")]
    AmbientMismatch,
    #[error("resource limit of {limit} reduction steps exceeded")]
    ResourceLimit { limit: u64 },
    #[error("empty spectrum: the ideal is the unit ideal")]
    EmptySpectrum,
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
}
