//! Gaussian states and channels in Siegel disk coordinates.
//!
//! States live in the double disk as symmetric matrices `𝒜`, channels act on
//! them by matrix fractional transformations, and the covariance picture is
//! kept alongside as an independent reference.

pub mod error;
pub mod linalg;
pub mod siegel;
pub mod states;
pub mod dynamics;
pub mod fock_bargmann;
pub mod oracle;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ToleranceConfig, C64};
