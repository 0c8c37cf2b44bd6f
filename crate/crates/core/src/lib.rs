//! Monomial ideals in small polynomial rings: decompositions, depth via
//! Betti numbers, dimension filtrations, and clean / pretty clean prime
//! filtrations with their Stanley decompositions.
//!
//! See `examples/` for one runnable program per capability.

pub mod campaign;
pub mod construction;
pub mod decomposition;
pub mod error;
pub mod filtration;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod stanley;

pub use error::{AlgebraError, ConstructionError};
pub use monomial::{Ambient, Monomial, MonomialIdeal, MonomialPrime};
pub use parse::{parse_ideal, parse_monomial};
