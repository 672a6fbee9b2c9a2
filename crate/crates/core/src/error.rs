use thiserror::Error;

use crate::factor::PrimeFactor;
use crate::Natural;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(Natural),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("{what} is outside the supported range (limit {limit})")]
    ResourceGuard { what: String, limit: u64 },

    #[error("could not fully factor F_{j}: cofactor {cofactor} left after {} known factor(s)", partial.len())]
    FactorizationLimit {
        j: u64,
        partial: Vec<PrimeFactor>,
        cofactor: Natural,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::OutOfDomain(msg.into())
    }

    /// True for errors caused by a configured size limit rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::ResourceGuard { .. } | Error::FactorizationLimit { .. }
        )
    }
}
