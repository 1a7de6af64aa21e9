//! h-differential forms of monoidal complexes, computed degree by degree.

mod fiber;
mod forms;
pub mod wedge;

pub use fiber::{hdiff_general, BettiMode, BettiTable, FiberComplex, PairDimRow};
pub use forms::{DeRham, FormSpace, GradedForm, PairFilter};

#[cfg(test)]
mod tests;
