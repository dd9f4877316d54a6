pub mod arith;
pub mod error;
pub mod io;
pub mod linalg;
pub mod modcore;
pub mod reduction;
pub mod staircase;
pub mod trunc;
pub mod verify;

pub use error::{Error, Result};
