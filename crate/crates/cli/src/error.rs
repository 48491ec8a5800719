use thiserror::Error;

/// Everything a command can fail with. The process exit code is part of the
/// interface: see [`CliError::exit_code`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] hlbound::Error),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

impl CliError {
    /// 1 for a failed verification, 2 for mathematical domain errors, 3 for
    /// unreadable or malformed input.
    pub fn exit_code(&self) -> u8 {
        use hlbound::Error as E;
        match self {
            Self::Verification(_) => EXIT_VERIFICATION,
            Self::Domain(_) => EXIT_DOMAIN,
            Self::Input(_) | Self::Io(_) => EXIT_INPUT,
            Self::Library(e) => match e {
                E::ParseExponent(_)
                | E::InvalidPolynomial(_)
                | E::ZeroPolynomial
                | E::DimensionMismatch { .. } => EXIT_INPUT,
                E::Domain(_)
                | E::DegenerateDomain(_)
                | E::NonFinite(_)
                | E::NoClosedForm { .. }
                | E::InvalidConfig(_) => EXIT_DOMAIN,
            },
        }
    }
}
