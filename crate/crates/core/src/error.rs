use thiserror::Error;

use crate::fusion_data::Label;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown catalog dataset `{0}`")]
    UnknownCatalog(String),

    #[error("label {0} out of range")]
    UnknownLabel(usize),

    #[error("subcategory must contain the unit label 0")]
    MissingUnit,

    #[error("subcategory not closed under fusion: {a} x {b} contains {c}, which is not a member")]
    NotFusionClosed { a: Label, b: Label, c: Label },

    #[error("subcategory not closed under duals: dual of {a} is {dual}, which is not a member")]
    NotDualClosed { a: Label, dual: Label },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("tube elements belong to different algebras")]
    AlgebraMismatch,

    #[error("eigenvalue clustering is ambiguous (gap {gap:e} within 10x of tolerance {tol:e}); adjust --cluster-tol")]
    ClusteringAmbiguous { gap: f64, tol: f64 },

    #[error("rank inconsistency: {0}")]
    RankInconsistency(String),

    #[error("block trace is not positive ({0:e})")]
    NonPositiveTrace(f64),

    #[error("block dimension mismatch: trace route gives {from_trace}, object route gives {from_objects}")]
    DimensionMismatch { from_trace: f64, from_objects: f64 },

    #[error("half-braiding extraction failed: {0}")]
    Extraction(String),

    #[error("fusion table is not associative (max defect {0})")]
    Associativity(i64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Bad or unreadable input, as opposed to a failed computation.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownCatalog(_)
                | Error::UnknownLabel(_)
                | Error::MissingUnit
                | Error::NotFusionClosed { .. }
                | Error::NotDualClosed { .. }
                | Error::Shape(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
