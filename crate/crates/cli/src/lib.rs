//! Batch front end for `schur-rigidity`: problem files in, JSON or text
//! reports out. Exit codes are 0 (verified), 1 (verification failed) and
//! 2 (invalid input).

pub mod commands;
pub mod demo;
pub mod model;
pub mod render;

use schur_rigidity::{Error, SamplePlan, Tolerances};

pub use model::{ProblemFile, RationalJson, Report, Status};

/// A failure that ends a command early, tagged with its report status.
#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Invalid,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Fail,
            message: message.into(),
        }
    }

    /// Input-shaped errors map to `Invalid`, everything else to `Fail`.
    pub fn from_core(e: Error) -> Self {
        let message = match &e {
            Error::InvalidData(m) => m.clone(),
            other => other.to_string(),
        };
        let status = match e {
            Error::InvalidData(_)
            | Error::InvalidArgument(_)
            | Error::InvalidContactPoint
            | Error::InadmissibleParameter(_)
            | Error::NonHermitianP(_)
            | Error::SingularP
            | Error::PVanishesAtZ1(_)
            | Error::DegreeTooLarge(_)
            | Error::ZeroDenominator
            | Error::BoundaryPole(_) => Status::Invalid,
            _ => Status::Fail,
        };
        CliError { status, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::from_core(e)
    }
}

/// Tolerances and sampling settings shared by every command.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Settings {
    pub tol: Tolerances,
    pub plan: SamplePlan,
}

impl Settings {
    pub fn validate(&self) -> CliResult<()> {
        let t = &self.tol;
        for (name, v) in [("tol-root", t.root), ("tol-circle", t.circle), ("tol-order", t.order)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::invalid(format!("{name} must lie in (0, 1)")));
            }
        }
        self.plan.validate().map_err(CliError::from_core)
    }
}
