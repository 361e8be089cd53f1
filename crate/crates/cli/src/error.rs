use chow_core::ltmatrix::MatrixError;
use chow_core::poly::PolyError;
use chow_core::poset::PosetError;
use chow_core::realroot::RealRootError;
use chow_core::toeplitz::SeriesError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("precondition ({invariant}): {message}")]
    Precondition { invariant: String, message: String },
    #[error("oracle mismatch: {0}")]
    Oracle(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn precondition(invariant: &str, message: impl Into<String>) -> Self {
        CliError::Precondition { invariant: invariant.to_string(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Precondition { .. } => 3,
            CliError::Oracle(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Schema(_) => "schema",
            CliError::Precondition { .. } => "precondition",
            CliError::Oracle(_) => "oracle",
            CliError::Io(_) => "io",
        };
        let mut v = json!({ "error": kind, "message": self.to_string() });
        if let CliError::Precondition { invariant, .. } = self {
            v["invariant"] = json!(invariant);
        }
        v
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        let invariant = match &e {
            MatrixError::Schema(_) | MatrixError::Shape { .. } => return CliError::Schema(e.to_string()),
            MatrixError::RouteMismatch(_) | MatrixError::PostCheck(_) => return CliError::Oracle(e.to_string()),
            MatrixError::Diagonal { .. } => "diagonal",
            MatrixError::IndexRange { .. } => "index range",
            MatrixError::ShapeMismatch { .. } => "square minor",
            MatrixError::SizeBound { .. } => "size bound",
            MatrixError::ZeroScale { .. } | MatrixError::ScaleStart => "scale factors",
            MatrixError::NegativeLambda { .. } => "nonnegative lambda",
            MatrixError::DegreeBound { .. } => "degree bound",
            MatrixError::SetRange(_) => "set range",
        };
        CliError::precondition(invariant, e.to_string())
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        let invariant = match &e {
            PosetError::Schema(_) => return CliError::Schema(e.to_string()),
            PosetError::NotAntisymmetric { .. } => "antisymmetry".to_string(),
            PosetError::WeakRank { axiom, .. } => format!("weak-rank {axiom}"),
            PosetError::NoLeastElement => "least element".into(),
            PosetError::NotBounded => "bounded".into(),
            PosetError::RankTooSmall { .. } => "rank".into(),
            PosetError::HostMismatch => "host".into(),
            PosetError::NonUnitDiagonal { .. } => "unit diagonal".into(),
            PosetError::Kls { .. } => "KLS".into(),
            PosetError::NonScalar { .. } => "scalar g".into(),
            PosetError::DegreeExceedsRank { .. } => "degree bound".into(),
            PosetError::NotDivisible { .. } => "divisibility".into(),
            PosetError::SelectionOutOfRange(_) => "rank selection".into(),
            PosetError::NotAntichain { .. } => "antichain".into(),
            PosetError::RankRange { .. } => "rank range".into(),
            PosetError::Covering { .. } => "covering".into(),
            PosetError::Argument(_) => "argument".into(),
        };
        CliError::Precondition { invariant, message: e.to_string() }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        let invariant = match &e {
            SeriesError::Schema(_) => return CliError::Schema(e.to_string()),
            SeriesError::InexactDivision { .. } | SeriesError::Identity(_) => return CliError::Oracle(e.to_string()),
            SeriesError::A0 { .. } => "a0",
            SeriesError::NonUnit => "unit constant term",
            SeriesError::NegativeParameter(_) => "nonnegative parameters",
            SeriesError::ZeroFactorial { .. } => "nonzero factorial",
            SeriesError::FactorialStart => "factorial start",
            SeriesError::Order { .. } => "truncation order",
            SeriesError::SizeBound { .. } => "size bound",
        };
        CliError::precondition(invariant, e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<RealRootError> for CliError {
    fn from(e: RealRootError) -> Self {
        CliError::precondition("real-root input", e.to_string())
    }
}
