//! Explicit constructions of graphs whose cycles all have distinct lengths,
//! together with the machinery needed to check them: cycle spectra computed
//! both structurally and by exhaustive enumeration, exact closed-form audits,
//! rational evaluation of the asymptotic constants the constructions reach,
//! and a brute-force oracle for very small orders.
//!
//! Closed-form arithmetic is written once, generic over [`Scalar`], and used
//! with [`Rational`] wherever a decision depends on the result. [`Real`] is
//! only used to render values for humans.

pub mod bounds;
pub mod constructions;
pub mod graph;
pub mod oracle;
pub mod scalar;
pub mod spectrum;

pub use scalar::Scalar;

/// Arbitrary-precision exact fraction, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Floating-point scalar used for display only.
pub type Real = f64;

/// Single-precision variant of [`Real`].
pub type Real32 = f32;

/// Fixed-width exact fraction; overflows on large inputs, handy for quick checks.
pub type SmallRational = num_rational::Ratio<i128>;

pub use constructions::{build_theorem5, build_theorem6, Params5, Params6};
pub use graph::{materialize, Block, ChordSpec, ConstructionPlan, Counts, Graph};
pub use spectrum::{
    block_spectrum, enumerate_cycles_exact, verify, CycleSpectrum, VerificationReport, VerifyMode,
};
