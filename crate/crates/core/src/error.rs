use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("polygon is not convex at vertex {vertex}")]
    NotConvex { vertex: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible angles: {0}")]
    InfeasibleAngles(String),

    #[error("construction failed at vertex {vertex}: {reason}")]
    ConstructionFailure { vertex: usize, reason: String },

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// `n = 2^s` with `s >= min_exp`.
pub(crate) fn require_power_of_two(n: usize, min_exp: u32) -> Result<()> {
    if n.is_power_of_two() && n.trailing_zeros() >= min_exp {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "n = {n} must be a power of two 2^s with s >= {min_exp}"
        )))
    }
}
