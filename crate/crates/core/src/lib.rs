//! Exact block classification and Verma-flag formulas for the non-integral
//! BGG category O of the exceptional Lie superalgebra D(2|1;ζ).

pub mod algebra;
pub mod block;
pub mod character;
pub mod duality;
pub mod error;
pub mod export;
pub mod formulas;
pub mod gl;
pub mod rational;
pub mod transport;
pub mod verify;

pub use algebra::{Root, Weight, WeylElement, WeylSubgroup, ZetaParam};
pub use character::{FormalCharacter, VermaVector};
pub use error::{Error, Result};
pub use rational::Rational;
