//! Stiefel-Whitney and Hasse-Witt bookkeeping over Q, its completions and finite fields.

pub mod arith;
pub mod coh;
pub mod error;
pub mod linalg;
pub mod orthorep;
pub mod poly;
pub mod profile;
pub mod quadform;
pub mod traceform;

pub use error::{Error, Result};
