use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the operation's domain (k = 0, n < 2, bad label, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A side word with a forbidden transition.
    #[error("inadmissible step {from} -> {to} at position {position}: side {from} only reaches sides {allowed:?}")]
    Inadmissible {
        position: usize,
        from: u32,
        to: u32,
        allowed: (u32, u32),
    },

    /// The brute-force enumeration would exceed its configured cap.
    #[error("resource cap exceeded: period {n} is above the enumeration cap {cap} (raise --max-oracle-n to override)")]
    ResourceCap { n: usize, cap: usize },

    #[error("singular return map: slope {slope} is too close to 1")]
    SingularMap { slope: f64 },

    #[error("fixed-point iteration did not converge after {iterations} iterations (last iterate {last}, gap {gap:e})")]
    NoConvergence {
        iterations: usize,
        last: f64,
        gap: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
