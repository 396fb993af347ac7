//! The coadjoint action of `UT(n, F_p)` on `𝔫*`, orbit enumeration by
//! breadth-first search, and orbit-wide checks of the generator list.

mod enumerate;
mod point;
mod verify;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::ideal::IdealError;

pub use enumerate::{orbit_enumerate, orbit_enumerate_sequential, Orbit};
pub use point::{coadjoint, coord_count, coord_index, scalar_to_fp, FFPoint, GroupElement};
pub use verify::{
    check_invariance, survey, survey_max_n, verify, verify_generators, GeneratorVerdict, InvarianceReport,
    OrbitReport, VerifyOptions, CAVEAT,
};

/// Default bound on the number of orbit points held in memory.
pub const DEFAULT_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} is too large for byte-packed coordinates")]
    PrimeTooLarge(u32),
    #[error("{0}")]
    Shape(String),
    #[error("orbit exceeds the limit of {limit} points")]
    LimitExceeded { limit: usize },
    #[error("survey over S_{n} at p = {p} is outside the supported range (p=2: n<=6, p=3: n<=5, p=5: n<=4)")]
    Guard { n: usize, p: u32 },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
