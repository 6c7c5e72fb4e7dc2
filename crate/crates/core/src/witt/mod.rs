//! Witt vectors: universal structure polynomials, their cache, and vector arithmetic.

pub mod cache;
pub mod structure;
pub mod vector;

pub use cache::{set_cache_dir, witt_structure};
pub use structure::{Family, WittStructure};
pub use vector::{
    gr_to_witt, int_to_prime_witt, prime_witt_to_int, witt_arith, witt_as_solve, witt_maps, witt_to_gr, witt_trace, WittMap, WittOp,
    WittTrace, WittVector,
};
