use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid atom: frequency {frequency}, amplitude {re}+{im}i")]
    InvalidAtom { frequency: f64, re: f64, im: f64 },

    #[error("multiplier is not finite at frequency {lambda}")]
    MultiplierSingular { lambda: f64 },

    #[error("difference order must be at least 1, got {0}")]
    InvalidOrder(u32),

    #[error("quadrature failed to reach tolerance {tol:e} on [{a}, {b}] (error estimate {estimate:e})")]
    QuadratureFailure { a: f64, b: f64, tol: f64, estimate: f64 },

    #[error("operator S is not invertible on the range of T at index {index}")]
    NotInvertibleOnRange { index: usize },

    #[error("bound diverges: residual symbol is nonzero at frequency {lambda} where the kernel vanishes")]
    DivergentBound { lambda: f64 },

    #[error("symbol {label} is outside the class Psi: {reason}")]
    PsiClassViolation { label: String, reason: String },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid linear method: {0}")]
    InvalidMethod(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error{}: {message}", location(.line, .field))]
    Config {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },

    #[error("check `{name}` failed: {source}")]
    Check { name: String, source: Box<Error> },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

fn location(line: &Option<usize>, field: &Option<String>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!(" at line {l}, field `{f}`"),
        (Some(l), None) => format!(" at line {l}"),
        (None, Some(f)) => format!(" in field `{f}`"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    pub(crate) fn config_field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            line: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
