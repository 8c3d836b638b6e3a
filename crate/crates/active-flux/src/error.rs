use std::fmt;

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the solver library.
#[derive(Debug, Clone)]
pub enum Error {
    /// An operation received a state outside its mathematical domain,
    /// e.g. non-positive density where a velocity must be formed.
    Domain(String),
    /// Invalid configuration (grid, limiter flags, splitting choice, ...).
    Config(String),
    /// A time-marching run could not be completed. Carries the simulation
    /// time of the failed step and a human-readable diagnostic naming the
    /// first offending cell or interface.
    Abort { time: f64, detail: String },
    /// An iterative root solve failed to reach its tolerance.
    RootFind(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Abort { time, detail } => {
                write!(f, "run aborted at t = {time:.6e}: {detail}")
            }
            Error::RootFind(msg) => write!(f, "root finding failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
