//! Exact K-stability invariants for log Fano pairs on projective spaces and
//! smooth quadrics with hypersurface boundaries.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] – ambient varieties reduced to (dimension, volume multiplier,
//!   anticanonical level), boundary entries, and exact affine forms in the
//!   boundary coefficients.
//! * [`invariants`] – log discrepancy, S- and beta-invariants as affine forms,
//!   pseudo-effective thresholds, the Maeda-type gap constants, the μ value and
//!   a quadrature oracle for S.
//! * [`polytope`] – exact rational polytopes (double description), hulls,
//!   containment, equality and linear minimisation.
//! * [`certify`] – anchors with re-checkable K-semistability certificates and
//!   the domain verdict.
//!
//! All arithmetic is over arbitrary-precision rationals; only the quadrature
//! oracle uses floating point.

#![allow(clippy::result_large_err)]

pub mod certify;
pub mod invariants;
pub mod model;
pub mod polytope;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub use certify::{
    certify_domain, cone_reduction, lc_calabi_yau_anchor, quadric_fact_interval,
    verify_cone_theorems, zz_upper_bound, Anchor, Axiom, Certificate, CertifyError, ConeData,
    ConeTheorem, IntervalSource, QuadricFact, Verdict, VerdictStatus,
};
pub use invariants::{
    beta_form, log_discrepancy_form, maeda_gap_constants, mu_value, pseudo_effective_threshold,
    s_invariant_form, s_invariant_numeric, DivisorRef, InvariantError,
};
pub use model::{
    AffineForm, AmbientKind, AmbientModel, BoundaryEntry, CoefficientPoint, ModelError,
    PairFamily,
};
pub use polytope::{
    convex_hull, enumerate_vertices, necessary_region, HalfSpace, Polytope, PolytopeError,
};
