//! Symmetric strict perfect complexes over Q, the constructions relating them, and the total
//! Hasse-Witt class `w` truncated above degree 2.

pub mod complex;
mod error;
mod json;
pub mod laws;
pub mod random;
pub mod sym;

pub use complex::{
    bidual_can, cone, cone_inclusion, cone_map, cone_projection, dual, dual_map, dual_shift_iso, fib, find_homotopy, Cx,
    CxMap, GMap, Homotopy, Triple,
};
pub use error::{Error, Result};
pub use json::{matrix_from_json, matrix_to_json};
pub use laws::{law_suite, LawResult, LAW_NAMES};
#[cfg(test)]
mod tests;

pub use sym::{
    cbar, k_natural, lagrangean_check, m_construction, make_symmetric, solve_symmetric_homotopy, w, SymBundle, SymCx,
};
