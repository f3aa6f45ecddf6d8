//! Mod-2 Galois cohomology of Q, its completions and finite fields, in degrees at most 2.

mod field;
mod h2;
mod square;
mod trunc;

pub use field::{BaseField, Place};
pub use h2::{boundary, c_ell, cbar1, cup, hilbert_symbol, CharClass, H2Class};
pub use square::{sqclass, sqclass_int, SquareClass};
pub use trunc::{minus_one_power, TruncClass};
