//! Relations, order adjunctions, polar factorization, concept lattices,
//! classifications and institutions over finite sets.

pub mod bits;
pub mod clg;
pub mod clsn;
pub mod config;
pub mod error;
pub mod finrel;
pub mod formats;
pub mod galois;
pub mod institution;
pub mod laws;
pub mod order;

pub use error::{Error, Result};
