//! Affine monoids and their normalizations.

mod affine;
mod extract;
mod hilbert;
mod relative;
mod strata;

pub use affine::{AffineMonoid, Characteristic, MembershipOracle};
pub use extract::DEFAULT_BOX_RADIUS;
pub use hilbert::hilbert_basis;
pub use relative::{relative_sn, relative_wn, RelativeNormalization};
pub use strata::{p_saturation, StratifiedMonoid};
