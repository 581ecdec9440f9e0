//! Exact computation with Salem and Pisot polynomials.

pub mod error;
pub mod polyring;
pub mod unitcircle;
pub mod cyclofactor;
pub mod circle;
pub mod families;
pub mod search;
pub mod tables;

pub use error::{Error, Result};
pub use polyring::{Enclosure, IntPoly, Rational, Sign};
