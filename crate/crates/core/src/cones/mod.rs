//! Rational polyhedral cones and fans.

mod cone;
mod fan;

pub use cone::Cone;
pub use fan::Fan;
