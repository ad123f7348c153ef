use std::fmt;

use tbulge_core::config::ConfigError;
use tbulge_core::oracle::OracleError;
use tbulge_core::sweep::SweepError;
use tbulge_core::RouterError;

/// A failed command and its exit code class.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: unreadable or invalid configuration or flags.
    Config(String),
    /// Exit 3: no propagating solution at the requested kinematics.
    Kinematics(String),
    /// Exit 4: the oracle disagrees with the closed form.
    Verification(String),
    /// Exit 1: output could not be written.
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Kinematics(_) => 3,
            Failure::Verification(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) | Failure::Kinematics(m) | Failure::Verification(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<RouterError> for Failure {
    fn from(e: RouterError) -> Self {
        match e {
            RouterError::InvalidParameter { .. } | RouterError::InvalidSite => Failure::Config(e.to_string()),
            RouterError::WavenumberOutOfBand(_)
            | RouterError::ChannelAEvanescent { .. }
            | RouterError::ChannelBEvanescent { .. }
            | RouterError::DegenerateChannel { .. } => Failure::Kinematics(e.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Params(r) => r.into(),
            ConfigError::Grid(s) => s.into(),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Router(r) => r.into(),
            SweepError::Invalid(_) => Failure::Config(e.to_string()),
            SweepError::Conservation { .. } => Failure::Verification(e.to_string()),
            SweepError::Io(_) | SweepError::Json(_) => Failure::Io(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Router(r) => r.into(),
            OracleError::Config(_) => Failure::Config(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
