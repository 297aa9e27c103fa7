use std::fmt;

use kss_core::{CertifyError, InvariantError, ModelError, PolytopeError};

/// A command failure, split by who is at fault.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input: unreadable file, bad JSON, malformed rational,
    /// unknown label or kind.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that violates a precondition of the computation.
    #[error("contract violation: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Contract(_) => 3,
        }
    }

    pub(crate) fn parse(msg: impl fmt::Display) -> Self {
        CliError::Parse(msg.to_string())
    }

    pub(crate) fn contract(msg: impl fmt::Display) -> Self {
        CliError::Contract(msg.to_string())
    }
}

macro_rules! contract_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Contract(e.to_string())
            }
        })*
    };
}

contract_from!(ModelError, PolytopeError, InvariantError, CertifyError);
