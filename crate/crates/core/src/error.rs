use thiserror::Error;

/// Errors raised while validating inputs or evaluating the scattering problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouterError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("wavenumber k_a = {0} outside the open interval (0, pi)")]
    WavenumberOutOfBand(f64),

    #[error("energy {energy} is outside the band of channel a")]
    ChannelAEvanescent { energy: f64 },

    #[error("channel b evanescent at energy {energy} (band argument {argument})")]
    ChannelBEvanescent { energy: f64, argument: f64 },

    #[error("degenerate channel: group velocity v_{channel} = {velocity}")]
    DegenerateChannel { channel: char, velocity: f64 },

    #[error("site index 0 does not exist on the semi-infinite waveguide (sites start at 1)")]
    InvalidSite,
}

pub type Result<T, E = RouterError> = std::result::Result<T, E>;
