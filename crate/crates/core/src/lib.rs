pub mod algebra;
pub mod error;
pub mod finite_fields;
pub mod forms;
pub mod function_fields;
pub mod galois_ring;
pub mod kato;
pub mod milnor;
pub mod random;
pub mod witt;

pub use error::{Error, Result};
