//! Exact computations on finite posets, idealoids, frames, stably compact spaces
//! and sheaves over them.

pub mod error;
pub mod frame;
pub mod idealoid;
pub mod json;
pub mod order;
pub mod rational;
pub mod sheaf;
pub mod space;

pub use error::{Error, Result};
pub use rational::Q;
