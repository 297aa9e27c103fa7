//! Log discrepancy, S- and beta-invariants of hypersurface divisors, as exact
//! affine forms in the boundary coefficients.
//!
//! With `E` a prime hypersurface of degree `d` and level `s = s(c)`, the class
//! `-(K_X + Δ) - tE` is `(s - t·d)·H`, so
//!
//! ```text
//! S(E) = 1/(C s^n) ∫_0^{s/d} C (s - t d)^n dt = s / (d (n + 1))
//! ```
//!
//! which is affine in `c`. [`s_invariant_numeric`] integrates the defining
//! integral directly and serves as an independent check on that closed form.

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::model::{AffineForm, CoefficientPoint, ModelError, PairFamily};
use crate::polytope::{Polytope, PolytopeError};
use crate::{integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("boundary index {index} out of range for {k} boundary entries")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("external divisor degree must be positive, got {0}")]
    NonPositiveDegree(Rational),
    #[error("Simpson quadrature needs an even subdivision count >= 2, got {0}")]
    Subdivisions(usize),
    #[error("dimension must be >= 1")]
    ZeroDimension,
}

/// A prime divisor on the ambient variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DivisorRef {
    /// The prime hypersurface underlying boundary entry `i`.
    Boundary(usize),
    /// A general smooth prime hypersurface of the given degree, not in the
    /// boundary support.
    External(Rational),
}

impl DivisorRef {
    /// Degree of the prime divisor in units of `H`.
    pub fn degree(&self, family: &PairFamily) -> Result<Rational, InvariantError> {
        match self {
            DivisorRef::Boundary(i) => family
                .entry(*i)
                .map(|e| e.prime_degree().clone())
                .ok_or(InvariantError::IndexOutOfRange {
                    index: *i,
                    k: family.k(),
                }),
            DivisorRef::External(d) => {
                if d.is_positive() {
                    Ok(d.clone())
                } else {
                    Err(InvariantError::NonPositiveDegree(d.clone()))
                }
            }
        }
    }
}

/// `A(E) = 1 - coeff_E(Δ)`.
pub fn log_discrepancy_form(
    family: &PairFamily,
    divisor: &DivisorRef,
) -> Result<AffineForm, InvariantError> {
    divisor.degree(family)?;
    let mut form = AffineForm::constant_form(Rational::one(), family.k());
    if let DivisorRef::Boundary(i) = divisor {
        let m = family.boundary()[*i].multiplier();
        form = &form - &(&AffineForm::coordinate(*i, family.k()) * m);
    }
    Ok(form)
}

/// `S(E) = s(c) / (d (n + 1))`.
pub fn s_invariant_form(
    family: &PairFamily,
    divisor: &DivisorRef,
) -> Result<AffineForm, InvariantError> {
    let d = divisor.degree(family)?;
    let n = integer(i64::from(family.ambient().dim()));
    let factor = (d * (n + Rational::one())).recip();
    Ok(family.level_form().scale(&factor))
}

/// `β(E) = A(E) - S(E)`.
pub fn beta_form(family: &PairFamily, divisor: &DivisorRef) -> Result<AffineForm, InvariantError> {
    let a = log_discrepancy_form(family, divisor)?;
    let s = s_invariant_form(family, divisor)?;
    Ok(&a - &s)
}

/// Exact S at a point; requires a non-negative level.
pub fn s_invariant(
    family: &PairFamily,
    c: &CoefficientPoint,
    divisor: &DivisorRef,
) -> Result<Rational, InvariantError> {
    let level = nonnegative_level(family, c)?;
    let d = divisor.degree(family)?;
    let n = integer(i64::from(family.ambient().dim()));
    Ok(level / (d * (n + Rational::one())))
}

fn nonnegative_level(family: &PairFamily, c: &CoefficientPoint) -> Result<Rational, InvariantError> {
    let level = family.level(c)?;
    if level.is_negative() {
        return Err(ModelError::NegativeLevel(level).into());
    }
    Ok(level)
}

/// Composite Simpson quadrature of
/// `(1 / vol(-K-Δ)) ∫_0^{s/d} vol(-K-Δ - tE) dt` over the exact support
/// interval. Returns 0 at level 0.
pub fn s_invariant_numeric(
    family: &PairFamily,
    c: &CoefficientPoint,
    divisor: &DivisorRef,
    subdivisions: usize,
) -> Result<f64, InvariantError> {
    if subdivisions < 2 || !subdivisions.is_multiple_of(2) {
        return Err(InvariantError::Subdivisions(subdivisions));
    }
    let level = nonnegative_level(family, c)?;
    let d = divisor.degree(family)?;
    if level.is_zero() {
        return Ok(0.0);
    }
    let ambient = family.ambient();
    let cm = ambient.volume_multiplier().to_f64().unwrap_or(f64::NAN);
    let n = ambient.dim() as i32;
    let s = level.to_f64().unwrap_or(f64::NAN);
    let deg = d.to_f64().unwrap_or(f64::NAN);

    let vol = |t: f64| cm * (s - t * deg).max(0.0).powi(n);
    let total = vol(0.0);
    let upper = s / deg;
    let h = upper / subdivisions as f64;
    let mut acc = vol(0.0) + vol(upper);
    for j in 1..subdivisions {
        let weight = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * vol(j as f64 * h);
    }
    Ok(acc * h / 3.0 / total)
}

/// Pseudo-effective threshold `τ(E; -K-Δ) = s(c)/d`.
pub fn pseudo_effective_threshold(
    family: &PairFamily,
    c: &CoefficientPoint,
    divisor: &DivisorRef,
) -> Result<Rational, InvariantError> {
    let level = nonnegative_level(family, c)?;
    Ok(level / divisor.degree(family)?)
}

/// The pseudo-effective threshold bound `a_d = 1/(d+1)` and the resulting
/// coefficient gap `ε_d = a_d / (2(d+1))` for Maeda-type pairs of
/// dimension `d`.
pub fn maeda_gap_constants(d: u32) -> Result<(Rational, Rational), InvariantError> {
    if d == 0 {
        return Err(InvariantError::ZeroDimension);
    }
    let d1 = integer(i64::from(d) + 1);
    let a = d1.recip();
    let eps = &a / (integer(2) * &d1);
    Ok((a, eps))
}

/// `μ = min Σ c_i` over a domain polytope.
pub fn mu_value(domain: &Polytope) -> Result<Rational, InvariantError> {
    Ok(domain.linear_min(&AffineForm::coordinate_sum(domain.dim()))?)
}
