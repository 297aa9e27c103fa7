//! Ambient varieties, boundary entries and affine forms in the boundary
//! coefficients.
//!
//! Every ambient handled here has Picard rank one with ample generator `H`,
//! and the volume of `m·H` is `C·m^n` for all rational `m ≥ 0`. The class
//! `-K_X - Σ c_i·D_i` is then `s(c)·H` where the *level* `s(c) = κ - Σ c_i·e_i`
//! is affine in the coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::{integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("projective space needs dimension >= 1, got {0}")]
    ProjectiveDimension(u32),
    #[error("quadric needs dimension >= 2, got {0}")]
    QuadricDimension(u32),
    #[error("boundary entry `{label}`: prime degree must be positive, got {value}")]
    NonPositiveDegree { label: String, value: Rational },
    #[error("boundary entry `{label}`: multiplier must be positive, got {value}")]
    NonPositiveMultiplier { label: String, value: Rational },
    #[error("duplicate boundary label `{0}`")]
    DuplicateLabel(String),
    #[error("coefficient point has {found} coordinates, family has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("level {0} is negative: the class is not pseudo-effective")]
    NegativeLevel(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbientKind {
    ProjectiveSpace,
    Quadric,
}

/// A Picard-rank-one Fano ambient reduced to the data the invariants need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientModel {
    kind: AmbientKind,
    dim: u32,
    volume_multiplier: Rational,
    anticanonical_level: Rational,
}

impl AmbientModel {
    /// `P^n`: `H^n = 1`, `-K = (n+1)H`.
    pub fn projective_space(n: u32) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::ProjectiveDimension(n));
        }
        Ok(AmbientModel {
            kind: AmbientKind::ProjectiveSpace,
            dim: n,
            volume_multiplier: Rational::one(),
            anticanonical_level: integer(i64::from(n) + 1),
        })
    }

    /// Smooth quadric `Q_l ⊂ P^{l+1}`: `H^l = 2`, `-K = lH`.
    pub fn quadric(l: u32) -> Result<Self, ModelError> {
        if l < 2 {
            return Err(ModelError::QuadricDimension(l));
        }
        Ok(AmbientModel {
            kind: AmbientKind::Quadric,
            dim: l,
            volume_multiplier: integer(2),
            anticanonical_level: integer(i64::from(l)),
        })
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn volume_multiplier(&self) -> &Rational {
        &self.volume_multiplier
    }

    pub fn anticanonical_level(&self) -> &Rational {
        &self.anticanonical_level
    }

    /// Volume of the class `m·H`, i.e. `C·m^n`. Requires `m ≥ 0`.
    pub fn volume_of_multiple(&self, m: &Rational) -> Result<Rational, ModelError> {
        if m.is_negative() {
            return Err(ModelError::NegativeLevel(m.clone()));
        }
        Ok(&self.volume_multiplier * pow(m, self.dim))
    }
}

impl fmt::Display for AmbientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AmbientKind::ProjectiveSpace => write!(f, "P^{}", self.dim),
            AmbientKind::Quadric => write!(f, "Q_{}", self.dim),
        }
    }
}

pub(crate) fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// One boundary Q-divisor `m_i · D_i` with `D_i` a smooth prime hypersurface
/// of degree `d_i` (in units of `H`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryEntry {
    label: String,
    prime_degree: Rational,
    multiplier: Rational,
}

impl BoundaryEntry {
    pub fn new(
        label: impl Into<String>,
        prime_degree: Rational,
        multiplier: Rational,
    ) -> Result<Self, ModelError> {
        let label = label.into();
        if !prime_degree.is_positive() {
            return Err(ModelError::NonPositiveDegree {
                label,
                value: prime_degree,
            });
        }
        if !multiplier.is_positive() {
            return Err(ModelError::NonPositiveMultiplier {
                label,
                value: multiplier,
            });
        }
        Ok(BoundaryEntry {
            label,
            prime_degree,
            multiplier,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn prime_degree(&self) -> &Rational {
        &self.prime_degree
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }

    /// `e_i = m_i · d_i`, the degree of the boundary Q-divisor.
    pub fn effective_degree(&self) -> Rational {
        &self.multiplier * &self.prime_degree
    }
}

/// An ambient plus an ordered list of boundary entries; the entries index the
/// coordinates of coefficient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFamily {
    ambient: AmbientModel,
    boundary: Vec<BoundaryEntry>,
}

impl PairFamily {
    pub fn new(ambient: AmbientModel, boundary: Vec<BoundaryEntry>) -> Result<Self, ModelError> {
        for (i, entry) in boundary.iter().enumerate() {
            if boundary[..i].iter().any(|e| e.label == entry.label) {
                return Err(ModelError::DuplicateLabel(entry.label.clone()));
            }
        }
        Ok(PairFamily { ambient, boundary })
    }

    pub fn ambient(&self) -> &AmbientModel {
        &self.ambient
    }

    pub fn boundary(&self) -> &[BoundaryEntry] {
        &self.boundary
    }

    pub fn entry(&self, i: usize) -> Option<&BoundaryEntry> {
        self.boundary.get(i)
    }

    /// Dimension of coefficient space.
    pub fn k(&self) -> usize {
        self.boundary.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.boundary.iter().position(|e| e.label == label)
    }

    pub fn check_point(&self, c: &CoefficientPoint) -> Result<(), ModelError> {
        if c.len() != self.k() {
            return Err(ModelError::DimensionMismatch {
                expected: self.k(),
                found: c.len(),
            });
        }
        Ok(())
    }

    /// `s(c) = κ - Σ e_i·c_i` as an affine form.
    pub fn level_form(&self) -> AffineForm {
        AffineForm::new(
            self.ambient.anticanonical_level.clone(),
            self.boundary
                .iter()
                .map(|e| -e.effective_degree())
                .collect(),
        )
    }

    pub fn level(&self, c: &CoefficientPoint) -> Result<Rational, ModelError> {
        self.check_point(c)?;
        Ok(self.level_form().evaluate(c))
    }

    /// `vol(-K_X - Σ c_i D_i) = C·s(c)^n`.
    pub fn volume(&self, c: &CoefficientPoint) -> Result<Rational, ModelError> {
        let s = self.level(c)?;
        self.ambient.volume_of_multiple(&s)
    }

    /// Prime coefficients `m_i·c_i` of the boundary at `c`.
    pub fn prime_coefficients(&self, c: &CoefficientPoint) -> Result<Vec<Rational>, ModelError> {
        self.check_point(c)?;
        Ok(self
            .boundary
            .iter()
            .zip(c.iter())
            .map(|(e, ci)| e.multiplier() * ci)
            .collect())
    }
}

impl fmt::Display for PairFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.ambient)?;
        for (i, e) in self.boundary.iter().enumerate() {
            let sep = if i == 0 { ", " } else { " + " };
            if e.multiplier.is_one() {
                write!(f, "{sep}{}", e.label)?;
            } else {
                write!(f, "{sep}{}·{}", e.multiplier, e.label)?;
            }
        }
        write!(f, ")")
    }
}

/// A point `(c_1, ..., c_k)` of coefficient space. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoefficientPoint(Vec<Rational>);

impl CoefficientPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        CoefficientPoint(coords)
    }

    pub fn origin(k: usize) -> Self {
        CoefficientPoint(vec![Rational::zero(); k])
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Self {
        CoefficientPoint(coords.iter().map(|&(n, d)| crate::rational(n, d)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl From<Vec<Rational>> for CoefficientPoint {
    fn from(v: Vec<Rational>) -> Self {
        CoefficientPoint(v)
    }
}

impl std::ops::Index<usize> for CoefficientPoint {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for CoefficientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Exact affine function `constant + Σ coeffs_i·c_i` of the coefficient
/// vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    constant: Rational,
    coeffs: Vec<Rational>,
}

impl AffineForm {
    pub fn new(constant: Rational, coeffs: Vec<Rational>) -> Self {
        AffineForm { constant, coeffs }
    }

    pub fn constant_form(constant: Rational, k: usize) -> Self {
        AffineForm::new(constant, vec![Rational::zero(); k])
    }

    pub fn zero(k: usize) -> Self {
        AffineForm::constant_form(Rational::zero(), k)
    }

    /// The coordinate function `c_i`.
    pub fn coordinate(i: usize, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs[i] = Rational::one();
        AffineForm::new(Rational::zero(), coeffs)
    }

    /// `Σ c_i`.
    pub fn coordinate_sum(k: usize) -> Self {
        AffineForm::new(Rational::zero(), vec![Rational::one(); k])
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Panics if `c` has the wrong number of coordinates.
    pub fn evaluate(&self, c: &CoefficientPoint) -> Rational {
        self.evaluate_slice(c.coords())
    }

    pub fn evaluate_slice(&self, c: &[Rational]) -> Rational {
        assert_eq!(
            c.len(),
            self.coeffs.len(),
            "affine form of arity {} evaluated at a point of dimension {}",
            self.coeffs.len(),
            c.len()
        );
        self.coeffs
            .iter()
            .zip(c)
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }

    pub fn scale(&self, factor: &Rational) -> AffineForm {
        AffineForm::new(
            &self.constant * factor,
            self.coeffs.iter().map(|a| a * factor).collect(),
        )
    }

    /// Renders with the given variable names, e.g. `1/2 - 2/3·x + 1/6·y`.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.k());
        let mut out = String::new();
        if !self.constant.is_zero() {
            out.push_str(&self.constant.to_string());
        }
        for (a, name) in self.coeffs.iter().zip(names) {
            if a.is_zero() {
                continue;
            }
            let magnitude = a.abs();
            let term = if magnitude.is_one() {
                name.clone()
            } else {
                format!("{magnitude}·{name}")
            };
            match (out.is_empty(), a.is_negative()) {
                (true, false) => out.push_str(&term),
                (true, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Default coordinate names: `x, y, z` for up to three coordinates, else
/// `c1, ..., ck`.
pub fn variable_names(k: usize) -> Vec<String> {
    if k <= 3 {
        ["x", "y", "z"][..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("c{i}")).collect()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&variable_names(self.k())))
    }
}

impl Add for &AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: &AffineForm) -> AffineForm {
        assert_eq!(self.k(), rhs.k());
        AffineForm::new(
            &self.constant + &rhs.constant,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: &AffineForm) -> AffineForm {
        self + &(-rhs)
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        AffineForm::new(-&self.constant, self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rational> for &AffineForm {
    type Output = AffineForm;
    fn mul(self, rhs: &Rational) -> AffineForm {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;
    use proptest::prelude::*;

    fn two_conics() -> PairFamily {
        PairFamily::new(
            AmbientModel::projective_space(2).unwrap(),
            vec![
                BoundaryEntry::new("Q1", integer(2), rational(3, 2)).unwrap(),
                BoundaryEntry::new("Q2", integer(2), rational(3, 2)).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn projective_space_data() {
        let p2 = AmbientModel::projective_space(2).unwrap();
        assert_eq!((p2.dim(), p2.volume_multiplier(), p2.anticanonical_level()), (2, &integer(1), &integer(3)));
        let p3 = AmbientModel::projective_space(3).unwrap();
        assert_eq!(p3.anticanonical_level(), &integer(4));
        assert_eq!(
            AmbientModel::projective_space(0),
            Err(ModelError::ProjectiveDimension(0))
        );
    }

    #[test]
    fn quadric_data() {
        let q2 = AmbientModel::quadric(2).unwrap();
        assert_eq!((q2.dim(), q2.volume_multiplier(), q2.anticanonical_level()), (2, &integer(2), &integer(2)));
        let q4 = AmbientModel::quadric(4).unwrap();
        assert_eq!((q4.dim(), q4.volume_multiplier(), q4.anticanonical_level()), (4, &integer(2), &integer(4)));
        assert_eq!(AmbientModel::quadric(1), Err(ModelError::QuadricDimension(1)));
    }

    #[test]
    fn boundary_rejects_non_positive_data() {
        assert!(BoundaryEntry::new("Q", integer(0), integer(1)).is_err());
        assert!(BoundaryEntry::new("Q", integer(2), rational(-1, 2)).is_err());
        let p2 = AmbientModel::projective_space(2).unwrap();
        let l = BoundaryEntry::new("L", integer(1), integer(1)).unwrap();
        assert_eq!(
            PairFamily::new(p2, vec![l.clone(), l]),
            Err(ModelError::DuplicateLabel("L".into()))
        );
    }

    #[test]
    fn level_examples() {
        for n in 1..6u32 {
            let fam = PairFamily::new(
                AmbientModel::projective_space(n).unwrap(),
                vec![
                    BoundaryEntry::new("Q", integer(2), integer(1)).unwrap(),
                    BoundaryEntry::new("L", integer(1), integer(1)).unwrap(),
                ],
            )
            .unwrap();
            assert_eq!(fam.level(&CoefficientPoint::origin(2)).unwrap(), integer(i64::from(n) + 1));
        }
        let fam = two_conics();
        let c = CoefficientPoint::from_ints(&[(1, 3), (2, 3)]);
        assert_eq!(fam.level(&c).unwrap(), integer(0));

        let conic_line = PairFamily::new(
            AmbientModel::projective_space(2).unwrap(),
            vec![
                BoundaryEntry::new("Q", integer(2), rational(3, 2)).unwrap(),
                BoundaryEntry::new("L", integer(1), integer(3)).unwrap(),
            ],
        )
        .unwrap();
        // 3 - 3·(1/2) = 3/2
        assert_eq!(
            conic_line.level(&CoefficientPoint::from_ints(&[(1, 2), (0, 1)])).unwrap(),
            rational(3, 2)
        );
    }

    #[test]
    fn volume_examples() {
        let bare = PairFamily::new(AmbientModel::projective_space(2).unwrap(), vec![]).unwrap();
        assert_eq!(bare.volume(&CoefficientPoint::origin(0)).unwrap(), integer(9));
        let fam = two_conics();
        assert_eq!(
            fam.volume(&CoefficientPoint::from_ints(&[(1, 3), (2, 3)])).unwrap(),
            integer(0)
        );
        let q3 = PairFamily::new(
            AmbientModel::quadric(3).unwrap(),
            vec![BoundaryEntry::new("H", integer(1), integer(1)).unwrap()],
        )
        .unwrap();
        assert_eq!(q3.volume(&CoefficientPoint::from_ints(&[(1, 1)])).unwrap(), integer(16));
        assert!(matches!(
            fam.volume(&CoefficientPoint::from_ints(&[(1, 1), (1, 1)])),
            Err(ModelError::NegativeLevel(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let fam = two_conics();
        assert_eq!(
            fam.level(&CoefficientPoint::origin(3)),
            Err(ModelError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn render_forms() {
        let f = AffineForm::new(
            rational(1, 2),
            vec![rational(-2, 3), rational(1, 6)],
        );
        assert_eq!(f.to_string(), "1/2 - 2/3·x + 1/6·y");
        assert_eq!(AffineForm::zero(3).to_string(), "0");
        let g = AffineForm::new(integer(0), vec![integer(-1), integer(1)]);
        assert_eq!(g.to_string(), "-x + y");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rational(n, d))
    }

    fn positive_rational() -> impl Strategy<Value = Rational> {
        (1i64..12, 1i64..6).prop_map(|(n, d)| rational(n, d))
    }

    proptest! {
        #[test]
        fn level_matches_level_form(
            n in 1u32..8,
            entries in prop::collection::vec((positive_rational(), positive_rational()), 0..5),
            seed in prop::collection::vec(small_rational(), 5),
        ) {
            let boundary = entries
                .iter()
                .enumerate()
                .map(|(i, (d, m))| BoundaryEntry::new(format!("D{i}"), d.clone(), m.clone()).unwrap())
                .collect::<Vec<_>>();
            let k = boundary.len();
            let fam = PairFamily::new(AmbientModel::projective_space(n).unwrap(), boundary).unwrap();
            let form = fam.level_form();
            prop_assert_eq!(form.constant(), &integer(i64::from(n) + 1));
            for (i, e) in fam.boundary().iter().enumerate() {
                prop_assert_eq!(&form.coeffs()[i], &-e.effective_degree());
            }
            let c = CoefficientPoint::new(seed[..k].to_vec());
            let direct = fam.boundary().iter().zip(c.iter())
                .fold(integer(i64::from(n) + 1), |acc, (e, x)| acc - e.effective_degree() * x);
            prop_assert_eq!(fam.level(&c).unwrap(), direct);
        }

        #[test]
        fn volume_is_power_of_level_and_monotone(
            l in 2u32..7,
            d in positive_rational(),
            m in positive_rational(),
            t in (0i64..50, 1i64..50),
            dt in (1i64..20, 1i64..50),
        ) {
            let fam = PairFamily::new(
                AmbientModel::quadric(l).unwrap(),
                vec![BoundaryEntry::new("D", d, m).unwrap()],
            ).unwrap();
            let c0 = CoefficientPoint::new(vec![rational(t.0, t.1)]);
            let c1 = CoefficientPoint::new(vec![rational(t.0, t.1) + rational(dt.0, dt.1)]);
            if let (Ok(v0), Ok(v1)) = (fam.volume(&c0), fam.volume(&c1)) {
                prop_assert_eq!(&v0, &(integer(2) * pow(&fam.level(&c0).unwrap(), l)));
                prop_assert!(v1 <= v0);
            }
        }
    }
}
