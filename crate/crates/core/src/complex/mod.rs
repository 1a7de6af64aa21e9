//! Monoidal complexes and their toric face rings.

mod normalize;
mod ring;
mod structure;

pub use ring::RingElem;
pub use structure::{MonoidalComplex, OrbitRow, OrbitTable};
