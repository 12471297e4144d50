use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("invalid field spec {0:?}: expected \"Q\" or \"F<p>\" with p an odd prime")]
    InvalidField(String),

    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),

    #[error("context mismatch: r={left_r} over {left_field} vs r={right_r} over {right_field}")]
    ContextMismatch {
        left_r: usize,
        left_field: FieldSpec,
        right_r: usize,
        right_field: FieldSpec,
    },

    #[error("matrix dimension must be at least 2, got r={0}")]
    DimensionTooSmall(usize),

    #[error("index ({i},{j}) is not a strictly upper triangular position for r={r}")]
    InvalidIndex { i: usize, j: usize, r: usize },

    #[error("matrix power requires exponent >= 1")]
    ZeroPower,

    #[error("triangular matrix is singular: zero diagonal entry at position {0}")]
    Singular(usize),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operation requires a linear map, got an affine map")]
    AffineMap,

    #[error("operation requires r >= {required}, got r={r}")]
    RankTooSmall { required: usize, r: usize },

    #[error("matrix is not of superdiagonal form with all superdiagonal entries nonzero")]
    NotSuperdiagonal,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("map is not centralizing: residual image of basis unit e_{{{i},{j}}} leaves Omega")]
    ResidualOutsideOmega { i: usize, j: usize },

    #[error("map is not commuting: {0}")]
    NotCommuting(String),

    #[error("malformed document: {0}")]
    Format(String),
}
