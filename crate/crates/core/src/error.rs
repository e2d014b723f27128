use thiserror::Error;

use crate::gf::Level;

/// Error raised by the polynomial / element parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position} in {input:?}")]
pub struct ParseError {
    pub input: String,
    /// Byte offset of the offending character.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field tower: {0}")]
    InvalidTower(String),

    #[error("field mismatch: {left:?} operand combined with {right:?} operand")]
    TowerMismatch { left: Level, right: Level },

    #[error("element value {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u32, order: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("coefficient domain: `{symbol}` is not allowed in {level:?}-field coefficients ({input:?})")]
    CoefficientDomain {
        symbol: char,
        level: Level,
        input: String,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Theorem preconditions on the generator polynomials that do not hold.
    #[error("conditions violated: {}", .0.join("; "))]
    Conditions(Vec<String>),

    #[error("generators are not in canonical form ({0}); use module_closure instead")]
    NotCanonical(String),

    #[error("enumeration needs {required} codewords but the budget is {budget}; use the sampling bound")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("singleton bound violated: |C| = {size} exceeds {bound} (miscomputed distance?)")]
    SingletonViolation { size: u128, bound: u128 },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("unknown table id {0:?}")]
    UnknownTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
