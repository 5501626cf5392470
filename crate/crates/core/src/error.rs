use thiserror::Error;

/// Domain errors. Each variant carries a stable machine-readable code
/// (see [`Error::code`]) that the CLI and the C ABI expose unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole at kappa: {0}")]
    PoleAtKappa(String),
    #[error("pole at s: {0}")]
    PoleAtS(String),
    #[error("singular Gram matrix: {0}")]
    SingularGram(String),
    #[error("singular linear system: {0}")]
    SingularSystem(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("zero Pochhammer factor: {0}")]
    ZeroPochhammer(String),
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("polynomial contains a non-T variable: {0}")]
    NonTVariable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::PoleAtKappa(_) => "PoleAtKappa",
            Error::PoleAtS(_) => "PoleAtS",
            Error::SingularGram(_) => "SingularGram",
            Error::SingularSystem(_) => "SingularSystem",
            Error::AmbientMismatch(_) => "AmbientMismatch",
            Error::ZeroPochhammer(_) => "ZeroPochhammer",
            Error::NonHomogeneous(_) => "NonHomogeneous",
            Error::NonTVariable(_) => "NonTVariable",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "ParseError",
        }
    }

    /// `{"error": code, "message": text}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": self.code(), "message": self.to_string() })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
