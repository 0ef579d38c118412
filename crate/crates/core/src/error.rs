use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot add quantities of pi-power {left} and {right}")]
    PiPowerMismatch { left: u32, right: u32 },

    #[error("integrand does not decay: numerator degree {numerator_degree} with denominator degree {denominator_degree}")]
    DecayViolated {
        numerator_degree: usize,
        denominator_degree: usize,
    },

    #[error("symbol expansion too shallow for target order {target}: {reason}")]
    InsufficientDepth { target: i32, reason: String },

    #[error("missing x_n-derivative for a symbol of order {order}")]
    MissingJet { order: i32 },

    #[error("density term violates the selection rule: r={r} l={l} k={k} j={j} |alpha|={alpha}")]
    SelectionRule {
        r: i32,
        l: i32,
        k: u32,
        j: u32,
        alpha: u32,
    },

    #[error("unrecognized invariant: residual monomials {monomials:?}")]
    UnrecognizedInvariant { monomials: Vec<String> },

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
