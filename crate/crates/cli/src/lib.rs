//! Command-line front end for the root-datum analysis library.
//!
//! Three entry points, shared by the binary and the integration tests:
//!
//! * [`report`] — analyze one (group, degree) pair into a serializable
//!   report;
//! * [`table`] — the Levi / relative-Weyl table over whole families, with
//!   the closed-form laws it is checked against;
//! * [`verify`] — the conformance sweeps (oracle equivalence, uniqueness,
//!   invariance, faithfulness, stability equivalence, slope properties).

pub mod input;
pub mod report;
pub mod table;
pub mod verify;

use levi_slope_core::Error as CoreError;

/// Process exit codes: `0` ok, `1` verification failure, `2` bad input,
/// `3` resource cap hit.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn bad_input(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        let code = match &e {
            CoreError::WeylCap { .. }
            | CoreError::OrbitCap { .. }
            | CoreError::SubsetRankCap { .. } => 3,
            CoreError::InvalidRootDatum(_)
            | CoreError::InvalidSimpleType { .. }
            | CoreError::DimensionMismatch { .. }
            | CoreError::NodeOutOfRange { .. } => 2,
            CoreError::CoxeterIdentification(_) | CoreError::Overflow => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
