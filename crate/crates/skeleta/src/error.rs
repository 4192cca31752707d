use skeleta_core::cohomology::CohomologyError;
use skeleta_core::crosssection::CrossError;
use skeleta_core::morse::PolarizationError;
use skeleta_core::skeleton::ValidationError;

use crate::format::FormatError;
use crate::svg::SvgError;

/// Failures that stop a command before any verdict; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid instance: {0}")]
    Invalid(Box<ValidationError>),
    #[error("no usable covector: {0}")]
    Polarization(#[from] PolarizationError),
    #[error(transparent)]
    Svg(#[from] SvgError),
    #[error(transparent)]
    Cross(#[from] CrossError),
    #[error("not a class: {0}")]
    Cohomology(#[from] CohomologyError),
    #[error("cannot serialize output: {0}")]
    Json(serde_json::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl From<ValidationError> for CliError {
    fn from(e: ValidationError) -> Self {
        CliError::Invalid(Box::new(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
