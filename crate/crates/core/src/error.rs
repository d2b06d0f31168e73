use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse exact scalar from {0:?}")]
pub struct ParseScalarError(pub String);

/// Diagnostic codes attached to rejected model and chart files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagCode {
    Parse,
    Field,
    Dim,
    Antisym,
    Jacobi,
    Unimodular,
    Complex,
    Orthogonal,
    Nijenhuis,
    Closed,
    Lck,
    Vaisman,
    Chart,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Parse => "E-PARSE",
            DiagCode::Field => "E-FIELD",
            DiagCode::Dim => "E-DIM",
            DiagCode::Antisym => "E-ANTISYM",
            DiagCode::Jacobi => "E-JACOBI",
            DiagCode::Unimodular => "E-UNIMOD",
            DiagCode::Complex => "E-CPLX",
            DiagCode::Orthogonal => "E-JORTH",
            DiagCode::Nijenhuis => "E-NIJ",
            DiagCode::Closed => "E-CLOSED",
            DiagCode::Lck => "E-LCK",
            DiagCode::Vaisman => "E-VAISMAN",
            DiagCode::Chart => "E-CHART",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("forms live on different frames (dimension {left} vs {right})")]
    FrameMismatch { left: usize, right: usize },
    #[error("operation requires a homogeneous form, got degrees {0:?}")]
    NotHomogeneous(Vec<usize>),
    #[error("degree {degree} exceeds complex dimension {n}")]
    DegreeTooHigh { degree: usize, n: usize },
    #[error("unsupported complex dimension {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),
    #[error("jet order exhausted: cannot differentiate an order-0 jet")]
    JetOrderExhausted,
    #[error("metric is not locally conformally Kähler at this jet order: {0}")]
    NotLck(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("unknown catalog model {0:?}")]
    UnknownModel(String),
    #[error("{code}: {message}")]
    Invalid { code: DiagCode, message: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
}

impl Error {
    pub fn invalid(code: DiagCode, message: impl Into<String>) -> Self {
        Error::Invalid {
            code,
            message: message.into(),
        }
    }

    pub fn code(&self) -> Option<DiagCode> {
        match self {
            Error::Invalid { code, .. } => Some(*code),
            Error::Scalar(_) => Some(DiagCode::Field),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
