//! Order-4 linear divisibility sequences.
//!
//! The crate is split along the lines of the underlying mathematics:
//!
//! * [`seqcore`]: exact recurrences, Lucas sequences and divisibility checks.
//! * [`ball`]: certified arbitrary-precision real and complex balls.
//! * [`polyalg`]: integer polynomials, companion and Kronecker matrices, the
//!   standard quartic and the pair-product divisor sequence.
//! * [`factor`]: composing two Lucas sequences and splitting a standard
//!   sequence back into two order-2 factors.
//! * [`salem`]: Salem standard quartics and certified nearest-integer
//!   sequences `E(λαⁿ)`.
//! * [`errata`]: machine-readable list of printed formulas that the
//!   implementation corrects.

pub mod ball;
pub mod errata;
pub mod factor;
pub mod polyalg;
pub mod salem;
pub mod seqcore;

pub use ball::{Ball, BallError, CBall, Dyadic};
pub use factor::{
    classify_ring, compose_lucas, equivalent_factorizations, factor_standard, verify_factorization,
    ComplexQuadratic, FactorError, Factorization, QuadraticFactorPair, RingClass, VerifyReport,
};
pub use polyalg::{IntMatrix, IntPoly, PolyError, StandardParams};
pub use salem::{
    binet_coefficients, is_salem_standard, nearest_integer_sequence, region_bounds, SalemError,
    SalemQuartic, SmallnessVerdict, Verdict,
};
pub use seqcore::{lucas_u, LinearRecurrence, LucasParams, SeqError, SequenceWindow};

/// Starting precision, in bits, for every certified computation.
pub const DEFAULT_PRECISION: u32 = 256;

/// Precision ceiling for adaptive doubling.
pub const MAX_PRECISION: u32 = 16384;
