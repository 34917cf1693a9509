use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unphysical state: Bloch vector norm {norm} exceeds 1")]
    UnphysicalState { norm: f64 },

    #[error("invalid observable: axis norm {norm} is not 1")]
    InvalidObservable { norm: f64 },

    #[error("{quantity} = {value} lies outside {domain}")]
    Domain {
        quantity: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no counts recorded for observable {0}")]
    ZeroCounts(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by physically meaningless input values.
    pub fn is_unphysical_input(&self) -> bool {
        matches!(
            self,
            Error::UnphysicalState { .. } | Error::InvalidObservable { .. } | Error::Domain { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Csv(_))
    }
}
