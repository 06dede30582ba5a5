//! Dense bit-packed linear algebra over GF(2).

mod matrix;
pub mod span;
mod vector;

pub use matrix::{BitMatrix, Echelon};
pub use vector::BitVector;
