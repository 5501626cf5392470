pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod weyl;
pub mod bases;
pub mod genfun;
pub mod pullback;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
