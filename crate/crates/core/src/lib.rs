//! Exact factorization of SL₂ matrices over rings of S-integers into
//! elementary matrices.
//!
//! The modules build on each other:
//!
//! - [`ring`]: ℤ, ℤ[1/m] and ℤ[√d][1/m] with exact arithmetic and unit-group helpers.
//! - [`sl2`]: 2×2 matrices in `(a c; b d)` layout, the generators `U`, `L`, `D`, `t`
//!   and alternating words.
//! - [`continuant`]: Euler continuants and the equations of the factorization varieties.
//! - [`varieties`]: producing and transporting points of those varieties.
//! - [`orbit`]: the unit action that turns one integral point into many.
//! - [`density`]: exact degree-bounded Zariski-density witnesses.
//! - [`json`]: the JSON encodings used by the command-line tool.

pub mod continuant;
pub mod density;
mod error;
pub mod json;
pub mod orbit;
pub mod ring;
pub mod sl2;
pub mod varieties;

pub use error::{Error, Result};
pub use ring::{Elem, Ring, RingError, RingKind};
pub use sl2::{Mat2, Shape, Word};
pub use varieties::PointTuple;
