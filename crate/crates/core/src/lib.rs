//! Hyperbolic antiderivatives of real-rooted polynomials.
//!
//! A polynomial is *hyperbolic* when all of its roots are real. Every
//! derivative of a hyperbolic polynomial is hyperbolic, but the converse
//! fails from degree four on: `(x − 1)²(x − 4)²` has no real-rooted
//! antiderivative at all. This crate decides the question for a polynomial
//! given by its zeros, computes the interval of admissible integration
//! constants, builds and verifies witness antiderivatives, and carries the
//! closed-form quartic tests together with an independent brute-force oracle.
//!
//! All algorithms are generic over [`Scalar`]. [`Rational`] (exact) is the
//! main instantiation; `f64` gives a tolerance-based floating mode.
//!
//! ```
//! use hyperlift::{feasibility_general, ExactZeros, Rational, Scalar};
//!
//! let zeros = ExactZeros::from_unsorted(
//!     [4, 4, 1, 1].into_iter().map(Rational::from_int).collect(),
//! )
//! .unwrap();
//! let report = feasibility_general(&zeros).unwrap();
//! assert!(!report.feasible);
//! assert_eq!(report.violated_pairs, vec![(4, 1)]);
//! ```

pub mod criterion;
pub mod error;
pub mod oracle;
pub mod polynomial;
pub mod scalar;
pub mod witness;

pub use criterion::{
    critical_values, feasibility_general, feasibility_general_with, inequality_count,
    inequality_pairs, normalize_quartic, quartic_a_form, quartic_b_form, quartic_feasible,
    quartic_feasible_with, quartic_st_test, CriterionReport, QuarticNormalization, QuarticReport,
};
pub use error::{Error, Result};
pub use oracle::{fuzz, fuzz_with, oracle_feasible, FuzzConfig, FuzzReport};
pub use polynomial::{Poly, SturmSequence, Zeros};
pub use scalar::Scalar;
pub use witness::{
    iterated_lift, iterated_lift_with, lift, lift_any, lift_any_with, lift_with, verify_witness,
    LiftOutcome, Witness, WitnessChain, WitnessError,
};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactPoly = Poly<Rational>;
pub type ExactZeros = Zeros<Rational>;
pub type ExactCriterionReport = CriterionReport<Rational>;
pub type ExactQuarticReport = QuarticReport<Rational>;
pub type ExactWitness = Witness<Rational>;

pub type FloatPoly = Poly<f64>;
pub type FloatZeros = Zeros<f64>;
pub type FloatCriterionReport = CriterionReport<f64>;
pub type FloatQuarticReport = QuarticReport<f64>;
pub type FloatWitness = Witness<f64>;
