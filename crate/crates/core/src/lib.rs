//! Exact computations with integrable modules of `gl_∞`.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod lr_tensor;
pub mod realized;
pub mod scalar;
pub mod singular;
pub mod verma;
pub mod weights;

pub use error::{Error, Result};
