//! Exact computations with Cox rings of Del Pezzo surfaces.

pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod picard;
pub mod plane;
pub mod relations;
pub mod rulings;
pub mod verify;

pub use error::{Error, Result};
