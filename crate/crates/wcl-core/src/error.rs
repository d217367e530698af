use alloc::string::String;

use crate::semiring::SemiringId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("mixed semirings: {left} and {right}")]
    MixedSemiring { left: SemiringId, right: SemiringId },

    #[error("value {value} is outside the carrier of {semiring}")]
    OutOfCarrier { semiring: SemiringId, value: String },

    #[error("invalid {semiring} weight literal `{literal}`")]
    BadLiteral { semiring: SemiringId, literal: String },

    #[error("universe too large: {what} over {ports} ports exceeds the cap of {cap} ports")]
    UniverseTooLarge {
        what: &'static str,
        ports: usize,
        cap: usize,
    },

    #[error("{what}: size {size} exceeds the cap of {cap}; {hint}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("port `{0}` is not in the port universe")]
    UnknownPort(String),

    #[error("duplicate port `{0}`")]
    DuplicatePort(String),

    #[error("at most 64 ports are supported, got {0}")]
    TooManyPorts(usize),

    #[error("interactions must be nonempty")]
    EmptyInteraction,

    #[error("configurations must be nonempty")]
    EmptyConfiguration,

    #[error("unknown component type `{0}`")]
    UnknownType(String),

    #[error("duplicate component type `{0}`")]
    DuplicateType(String),

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("duplicate component `{0}`")]
    DuplicateComponent(String),

    #[error("variable `{0}` is free; evaluated formulas must be closed")]
    FreeVariable(String),

    #[error("variable `{0}` is bound in the formula and cannot be substituted")]
    BoundVariable(String),

    #[error("invalid distance matrix: {0}")]
    BadMatrix(String),

    #[error("weight table is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    WeightShape {
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
}
