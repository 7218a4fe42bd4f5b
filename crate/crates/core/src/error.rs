use thiserror::Error;

use crate::diffring::DiffPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `D_x^{-1}` was applied to something outside the image of `D_x`.
    #[error("not a total x-derivative (Euler residual {euler_residual})")]
    NotATotalDerivative { euler_residual: DiffPoly },

    #[error("parameter-function symbols are not supported by the {equation} equation")]
    ParameterNotSupported { equation: String },

    #[error("jet index {index} exceeds the safety limit {limit}")]
    JetLimit { index: u32, limit: u32 },

    #[error("operator node {0} cannot be evaluated here")]
    UnsupportedNode(&'static str),

    #[error("characteristic is not projectable: {0}")]
    NotProjectable(String),

    #[error("bare dependent variable w present; only derivatives w_k (k >= 1) can be substituted")]
    BareDependentVariable,

    #[error("order {order} exceeds the coordinate bound {max}")]
    OrderExceeded { order: u32, max: u32 },

    #[error("ansatz has {size} monomials, above the cap of {cap}")]
    AnsatzTooLarge { size: usize, cap: usize },

    #[error("characteristics belong to different equations ({0} vs {1})")]
    EquationMismatch(String, String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
