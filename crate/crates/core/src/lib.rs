pub mod cli;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod localization;
pub mod wkb;
pub mod models;
pub mod numerics;

pub use error::{Error, Result};
