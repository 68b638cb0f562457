pub mod error;
pub mod mittag_leffler;
pub mod numerics;
pub mod pollard;
pub mod special;
pub mod spectral;
pub mod stable;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{IntegralResult, QuadratureConfig};
