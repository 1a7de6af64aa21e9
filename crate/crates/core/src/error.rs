use thiserror::Error;

use crate::linalg::fmt_vector;
use crate::linalg::Vector;

/// Errors raised by the library. Cones are rendered by their canonical
/// generators so that messages stay readable without the fan at hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis vector {} of the sublattice is not contained in the superlattice", fmt_vector(.witness))]
    NotASublattice { witness: Vector },

    #[error("cone {face} is not a face of {cone}")]
    NotAFace { face: String, cone: String },

    #[error("fan is missing face {face} of cone {cone}")]
    MissingFace { cone: String, face: String },

    #[error("cones {first} and {second} meet in {meet}, which is not a common face (witness {})", fmt_vector(.witness))]
    BadIntersection {
        first: String,
        second: String,
        meet: String,
        witness: Vector,
    },

    #[error("cone {0} appears twice in the fan")]
    DuplicateCone(String),

    #[error("a fan must contain at least one cone")]
    EmptyFan,

    #[error("cone {0} is not in the fan")]
    ConeNotInFan(String),

    #[error("cone list is not a subfan: {0}")]
    NotASubfan(String),

    #[error("monoid over {cone} generates {generated} instead")]
    GenerationFailure { cone: String, generated: String },

    #[error("monoids over {face} and {cone} are incompatible (witness {})", fmt_vector(.witness))]
    CompatibilityFailure {
        face: String,
        cone: String,
        witness: Vector,
    },

    #[error("generator extraction incomplete at degree bound {degree_bound} (first ungenerated element {})", fmt_vector(.witness))]
    GeneratorExtractionIncomplete { degree_bound: u64, witness: Vector },

    #[error("extension is not finite: generator {} does not lie in the cone of the base monoid", fmt_vector(.witness))]
    NotFiniteExtension { witness: Vector },

    #[error("base monoid is not contained in the extension (generator {})", fmt_vector(.witness))]
    NotAnExtension { witness: Vector },

    #[error("bad lattice family over {face} inside {cone}: {reason}")]
    BadLatticeFamily {
        face: String,
        cone: String,
        reason: String,
    },

    #[error("stratum data invalid over {face}: {reason}")]
    BadStrata { face: String, reason: String },

    #[error("complex is not weakly normal in characteristic 0")]
    NotWeaklyNormal,

    #[error("degree {} is not in the support of the complex", fmt_vector(.0))]
    DegreeNotInSupport(Vector),

    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

impl Error {
    /// Name of the error variant, stable across releases.
    pub fn class(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotASublattice { .. } => "NotASublattice",
            Error::NotAFace { .. } => "NotAFace",
            Error::MissingFace { .. } => "MissingFace",
            Error::BadIntersection { .. } => "BadIntersection",
            Error::DuplicateCone(_) => "DuplicateCone",
            Error::EmptyFan => "EmptyFan",
            Error::ConeNotInFan(_) => "ConeNotInFan",
            Error::NotASubfan(_) => "NotASubfan",
            Error::GenerationFailure { .. } => "GenerationFailure",
            Error::CompatibilityFailure { .. } => "CompatibilityFailure",
            Error::GeneratorExtractionIncomplete { .. } => "GeneratorExtractionIncomplete",
            Error::NotFiniteExtension { .. } => "NotFiniteExtension",
            Error::NotAnExtension { .. } => "NotAnExtension",
            Error::BadLatticeFamily { .. } => "BadLatticeFamily",
            Error::BadStrata { .. } => "BadStrata",
            Error::NotWeaklyNormal => "NotWeaklyNormal",
            Error::DegreeNotInSupport(_) => "DegreeNotInSupport",
            Error::InvalidCharacteristic(_) => "InvalidCharacteristic",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::Parse(_) => "ParseError",
            Error::Postcondition(_) => "Postcondition",
        }
    }

    /// The lattice point certifying the failure, when there is one.
    pub fn witness(&self) -> Option<&Vector> {
        match self {
            Error::NotASublattice { witness }
            | Error::BadIntersection { witness, .. }
            | Error::CompatibilityFailure { witness, .. }
            | Error::GeneratorExtractionIncomplete { witness, .. }
            | Error::NotFiniteExtension { witness }
            | Error::NotAnExtension { witness } => Some(witness),
            Error::DegreeNotInSupport(m) => Some(m),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
