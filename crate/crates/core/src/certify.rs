//! Sufficient conditions for K-semistability and the domain verdict.
//!
//! An [`Anchor`] is a coefficient point with a [`Certificate`] that can be
//! re-checked on its own. The certified region is the convex hull of the
//! anchors (interpolation); the verdict compares it with the necessary
//! region cut out by the beta conditions.
//!
//! Results that are used but not proved here (K-semistability of the ambient,
//! of boundary hypersurfaces, the interval and cone lemmas, ...) are recorded
//! as [`Axiom`]s on every certificate that relies on them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::invariants::InvariantError;
use crate::model::{
    AmbientKind, AmbientModel, BoundaryEntry, CoefficientPoint, ModelError, PairFamily,
};
use crate::polytope::{convex_hull, necessary_region, Polytope, PolytopeError};
use crate::{integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("λ must lie in (0, 1), got {0}")]
    Lambda(Rational),
    #[error("{what}: parameter {value} out of range")]
    Parameter { what: &'static str, value: u32 },
    #[error("level at {point} is {level}, not 0")]
    NotCalabiYau { point: CoefficientPoint, level: Rational },
    #[error("base pair must be log Fano (level {0} is not positive)")]
    BaseNotLogFano(Rational),
    #[error("polarization degree must be positive, got {0}")]
    Polarization(Rational),
    #[error("cone index r = {r} outside (0, {max}]")]
    ConeIndex { r: Rational, max: Rational },
    #[error("certificate for {point} does not check: {reason}")]
    InvalidCertificate {
        point: CoefficientPoint,
        reason: String,
    },
    #[error("anchor {0} lies outside the necessary region")]
    AnchorOutsideNecessary(CoefficientPoint),
}

/// Known results a certificate rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    AmbientKss,
    HypersurfaceKss,
    IntervalLemma,
    LogSmoothBoundary,
    LcCalabiYauCriterion,
    QuadricDegeneration,
    ConeLemma,
    Interpolation,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::AmbientKss,
        Axiom::HypersurfaceKss,
        Axiom::IntervalLemma,
        Axiom::LogSmoothBoundary,
        Axiom::LcCalabiYauCriterion,
        Axiom::QuadricDegeneration,
        Axiom::ConeLemma,
        Axiom::Interpolation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::AmbientKss => "ambient_kss",
            Axiom::HypersurfaceKss => "hypersurface_kss",
            Axiom::IntervalLemma => "interval_lemma",
            Axiom::LogSmoothBoundary => "log_smooth_boundary",
            Axiom::LcCalabiYauCriterion => "lc_calabi_yau_criterion",
            Axiom::QuadricDegeneration => "quadric_degeneration",
            Axiom::ConeLemma => "cone_lemma",
            Axiom::Interpolation => "interpolation",
        }
    }

    pub fn from_name(name: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::AmbientKss => "projective spaces and smooth quadrics are K-semistable",
            Axiom::HypersurfaceKss => "the smooth boundary hypersurface is itself K-semistable",
            Axiom::IntervalLemma => {
                "for K-semistable V and S ~ -λK_V with 0 < λ < 1, (V, aS) is K-semistable iff a <= 1 - r/n, r = 1/λ - 1"
            }
            Axiom::LogSmoothBoundary => "boundary components are smooth and meet transversally",
            Axiom::LcCalabiYauCriterion => {
                "a log Calabi-Yau pair is K-semistable iff it is log canonical"
            }
            Axiom::QuadricDegeneration => {
                "(P^n, (n+1)/(2n) Q) degenerates to the cone over Q in P(1^{n+1}, 2)"
            }
            Axiom::ConeLemma => {
                "a log Fano pair is K-semistable iff its projective cone with infinity coefficient 1 - r/(n+1) is"
            }
            Axiom::Interpolation => {
                "convex combinations of K-semistable boundaries proportional to -K are K-semistable"
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `1 - r/n` with `r = 1/λ - 1`: the right end of the K-semistable interval
/// of `(V, aS)` for `S ~ -λK_V`, `dim V = n`.
pub fn zz_upper_bound(n: u32, lambda: &Rational) -> Result<Rational, CertifyError> {
    if n == 0 {
        return Err(CertifyError::Parameter {
            what: "dimension",
            value: n,
        });
    }
    if !lambda.is_positive() || *lambda >= Rational::one() {
        return Err(CertifyError::Lambda(lambda.clone()));
    }
    let r = lambda.recip() - Rational::one();
    Ok(Rational::one() - r / integer(i64::from(n)))
}

/// The three quadric facts derived from the interval lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuadricFact {
    /// `(P^n, aQ)` for a smooth quadric `Q`: `a ≤ (n+1)/(2n)`.
    ConicInProjectiveSpace,
    /// `(Q_l, a·Q_{l-1})`, hyperplane section: `a ≤ 1/l`.
    HyperplaneSection,
    /// `(Q_l, a·Q'|_{Q_l})`, quadric section: `a ≤ (l+4)/(2(l+1))`.
    QuadricSection,
}

impl QuadricFact {
    pub fn from_index(i: u8) -> Option<QuadricFact> {
        match i {
            1 => Some(QuadricFact::ConicInProjectiveSpace),
            2 => Some(QuadricFact::HyperplaneSection),
            3 => Some(QuadricFact::QuadricSection),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            QuadricFact::ConicInProjectiveSpace => 1,
            QuadricFact::HyperplaneSection => 2,
            QuadricFact::QuadricSection => 3,
        }
    }
}

pub fn quadric_fact_interval(fact: QuadricFact, n_or_l: u32) -> Result<Rational, CertifyError> {
    if n_or_l < 2 {
        return Err(CertifyError::Parameter {
            what: "quadric fact dimension",
            value: n_or_l,
        });
    }
    let x = i64::from(n_or_l);
    Ok(match fact {
        QuadricFact::ConicInProjectiveSpace => crate::rational(x + 1, 2 * x),
        QuadricFact::HyperplaneSection => crate::rational(1, x),
        // Written with n = l + 1 this is (n + 3) / (2n).
        QuadricFact::QuadricSection => crate::rational(x + 4, 2 * (x + 1)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeData {
    pub r: Rational,
    pub infinity_coefficient: Rational,
}

/// Cone over a log Fano base `(V, Δ)` polarised by `L = m·H` with
/// `L ~ -(1/r)(K_V + Δ)`: returns `r = s/m` and the infinity-divisor
/// coefficient `1 - r/(dim V + 1)`.
pub fn cone_reduction(
    base: &PairFamily,
    base_c: &CoefficientPoint,
    polarization_degree: &Rational,
) -> Result<ConeData, CertifyError> {
    let s = base.level(base_c)?;
    if !s.is_positive() {
        return Err(CertifyError::BaseNotLogFano(s));
    }
    if !polarization_degree.is_positive() {
        return Err(CertifyError::Polarization(polarization_degree.clone()));
    }
    let r = s / polarization_degree;
    let max = integer(i64::from(base.ambient().dim()) + 1);
    if r > max {
        return Err(CertifyError::ConeIndex { r, max });
    }
    let infinity_coefficient = Rational::one() - &r / &max;
    Ok(ConeData {
        r,
        infinity_coefficient,
    })
}

/// The two cone-construction statements on `P^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeTheorem {
    /// `(P^n, n/(2(n-1)) Q + 1/(n-1) L)` is K-semistable for `n ≥ 2`.
    QuadricAndHyperplane,
    /// `(P^n, (n+1)/(2(n-1)) (Q + Q'))` is K-semistable for `n ≥ 3`.
    TwoQuadrics,
}

impl ConeTheorem {
    pub fn min_dim(self) -> u32 {
        match self {
            ConeTheorem::QuadricAndHyperplane => 2,
            ConeTheorem::TwoQuadrics => 3,
        }
    }

    /// Degree of the second boundary divisor (the first is a quadric).
    pub fn other_degree(self) -> i64 {
        match self {
            ConeTheorem::QuadricAndHyperplane => 1,
            ConeTheorem::TwoQuadrics => 2,
        }
    }

    /// Prime coefficients `(a, b)` of `Q` and of the other divisor.
    pub fn target(self, n: u32) -> (Rational, Rational) {
        let n = i64::from(n);
        match self {
            ConeTheorem::QuadricAndHyperplane => {
                (crate::rational(n, 2 * (n - 1)), crate::rational(1, n - 1))
            }
            ConeTheorem::TwoQuadrics => {
                let a = crate::rational(n + 1, 2 * (n - 1));
                (a.clone(), a)
            }
        }
    }

    /// Closed-form cone index.
    pub fn r_formula(self, n: u32) -> Rational {
        let n1 = integer(i64::from(n) - 1);
        let (_, b) = self.target(n);
        let section = &b * integer(self.other_degree());
        (n1 - section) / integer(2)
    }

    fn check_dim(self, n: u32) -> Result<(), CertifyError> {
        if n < self.min_dim() {
            return Err(CertifyError::Parameter {
                what: "cone theorem dimension",
                value: n,
            });
        }
        Ok(())
    }

    /// `(P^n, Q + D)` with reduced boundary.
    fn ambient_family(self, n: u32) -> Result<PairFamily, CertifyError> {
        Ok(PairFamily::new(
            AmbientModel::projective_space(n)?,
            vec![
                BoundaryEntry::new("Q", integer(2), Rational::one())?,
                BoundaryEntry::new("D", integer(self.other_degree()), Rational::one())?,
            ],
        )?)
    }

    /// Base of the cone: `(Q_{n-1}, b·(D ∩ Q))`.
    fn base(self, n: u32) -> Result<(PairFamily, CoefficientPoint), CertifyError> {
        let family = PairFamily::new(
            AmbientModel::quadric(n - 1)?,
            vec![BoundaryEntry::new(
                "D|Q",
                integer(self.other_degree()),
                Rational::one(),
            )?],
        )?;
        Ok((family, CoefficientPoint::new(vec![self.target(n).1])))
    }

    fn rests_on_cone(self, n: u32) -> bool {
        self.r_formula(n).is_positive()
    }

    fn axioms(self, n: u32) -> BTreeSet<Axiom> {
        if self.rests_on_cone(n) {
            [
                Axiom::AmbientKss,
                Axiom::HypersurfaceKss,
                Axiom::IntervalLemma,
                Axiom::LogSmoothBoundary,
                Axiom::QuadricDegeneration,
                Axiom::ConeLemma,
            ]
            .into()
        } else {
            [Axiom::LogSmoothBoundary, Axiom::LcCalabiYauCriterion].into()
        }
    }
}

/// Re-derives a cone theorem in dimension `n`.
///
/// When the closed-form cone index is positive this checks that the cone
/// over the quadric base reproduces it together with the target
/// coefficient `1 - r/n`, and that the base coefficient lies in the quadric
/// fact interval. When the index is zero (`n = 2` resp. `n = 3`) the target
/// pair is log Calabi-Yau and is checked to be log canonical instead.
pub fn verify_cone_theorems(theorem: ConeTheorem, n: u32) -> Result<bool, CertifyError> {
    theorem.check_dim(n)?;
    let (a, b) = theorem.target(n);
    let r = theorem.r_formula(n);
    let nn = integer(i64::from(n));
    if a != Rational::one() - &r / &nn {
        return Ok(false);
    }
    if !theorem.rests_on_cone(n) {
        if !r.is_zero() {
            return Ok(false);
        }
        let family = theorem.ambient_family(n)?;
        let point = CoefficientPoint::new(vec![a, b]);
        if !family.level(&point)?.is_zero() {
            return Ok(false);
        }
        return lc_calabi_yau_anchor(&family, &point);
    }
    let (base, base_c) = theorem.base(n)?;
    let cone = cone_reduction(&base, &base_c, &integer(2))?;
    if cone.r != r || cone.infinity_coefficient != a {
        return Ok(false);
    }
    let fact = match theorem {
        ConeTheorem::QuadricAndHyperplane => QuadricFact::HyperplaneSection,
        ConeTheorem::TwoQuadrics => QuadricFact::QuadricSection,
    };
    Ok(b <= quadric_fact_interval(fact, n - 1)?)
}

/// For a level-0 point: log smooth boundary is log canonical iff every prime
/// coefficient lies in `[0, 1]`.
pub fn lc_calabi_yau_anchor(family: &PairFamily, c: &CoefficientPoint) -> Result<bool, CertifyError> {
    let level = family.level(c)?;
    if !level.is_zero() {
        return Err(CertifyError::NotCalabiYau {
            point: c.clone(),
            level,
        });
    }
    Ok(family
        .prime_coefficients(c)?
        .iter()
        .all(|a| !a.is_negative() && *a <= Rational::one()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalSource {
    ZhouZhang { n: u32, lambda: Rational },
    QuadricFact { fact: QuadricFact, param: u32 },
}

impl IntervalSource {
    fn bound(&self) -> Result<Rational, CertifyError> {
        match self {
            IntervalSource::ZhouZhang { n, lambda } => zz_upper_bound(*n, lambda),
            IntervalSource::QuadricFact { fact, param } => quadric_fact_interval(*fact, *param),
        }
    }

    /// Whether this source describes boundary entry `entry` on `ambient`.
    fn matches(&self, ambient: &AmbientModel, entry: &BoundaryEntry) -> bool {
        let d = entry.prime_degree();
        match self {
            IntervalSource::ZhouZhang { n, lambda } => {
                *n == ambient.dim() && *lambda == d / ambient.anticanonical_level()
            }
            IntervalSource::QuadricFact { fact, param } => {
                *param == ambient.dim()
                    && match fact {
                        QuadricFact::ConicInProjectiveSpace => {
                            ambient.kind() == AmbientKind::ProjectiveSpace && *d == integer(2)
                        }
                        QuadricFact::HyperplaneSection => {
                            ambient.kind() == AmbientKind::Quadric && d.is_one()
                        }
                        QuadricFact::QuadricSection => {
                            ambient.kind() == AmbientKind::Quadric && *d == integer(2)
                        }
                    }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The origin: the bare ambient is K-semistable.
    AxiomBareFano,
    /// A point on coordinate axis `coordinate` whose prime coefficient lies
    /// in a known K-semistable interval `[0, prime_bound]`.
    KnownInterval {
        coordinate: usize,
        source: IntervalSource,
        prime_bound: Rational,
    },
    /// A log canonical log Calabi-Yau point.
    LcCalabiYau,
    /// A point realised by one of the cone theorems.
    ConeReduction {
        theorem: ConeTheorem,
        n: u32,
        quadric_coordinate: usize,
        other_coordinate: usize,
        r: Rational,
        infinity_coefficient: Rational,
    },
    /// A convex combination of certified anchors.
    ConvexCombination {
        weights: Vec<Rational>,
        anchors: Vec<Anchor>,
    },
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::AxiomBareFano => "axiom_bare_fano",
            Certificate::KnownInterval { .. } => "known_interval",
            Certificate::LcCalabiYau => "lc_calabi_yau",
            Certificate::ConeReduction { .. } => "cone_reduction",
            Certificate::ConvexCombination { .. } => "convex_combination",
        }
    }

    pub fn axioms(&self) -> BTreeSet<Axiom> {
        match self {
            Certificate::AxiomBareFano => [Axiom::AmbientKss].into(),
            Certificate::KnownInterval { .. } => [
                Axiom::AmbientKss,
                Axiom::HypersurfaceKss,
                Axiom::IntervalLemma,
            ]
            .into(),
            Certificate::LcCalabiYau => [Axiom::LogSmoothBoundary, Axiom::LcCalabiYauCriterion].into(),
            Certificate::ConeReduction { theorem, n, .. } => theorem.axioms(*n),
            Certificate::ConvexCombination { anchors, .. } => {
                let mut set: BTreeSet<Axiom> = [Axiom::Interpolation].into();
                for a in anchors {
                    set.extend(a.certificate.axioms());
                }
                set
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::AxiomBareFano => write!(f, "bare ambient"),
            Certificate::KnownInterval {
                coordinate,
                source,
                prime_bound,
            } => {
                write!(f, "known interval on coordinate {coordinate}: prime coefficient <= {prime_bound}")?;
                match source {
                    IntervalSource::ZhouZhang { n, lambda } => {
                        write!(f, " (interval lemma, n = {n}, lambda = {lambda})")
                    }
                    IntervalSource::QuadricFact { fact, param } => {
                        write!(f, " (quadric fact {}, parameter {param})", fact.index())
                    }
                }
            }
            Certificate::LcCalabiYau => write!(f, "log canonical log Calabi-Yau"),
            Certificate::ConeReduction {
                theorem,
                n,
                r,
                infinity_coefficient,
                ..
            } => {
                let name = match theorem {
                    ConeTheorem::QuadricAndHyperplane => "quadric + hyperplane",
                    ConeTheorem::TwoQuadrics => "two quadrics",
                };
                write!(
                    f,
                    "cone theorem ({name}) on P^{n}: r = {r}, infinity coefficient {infinity_coefficient}"
                )
            }
            Certificate::ConvexCombination { weights, .. } => {
                write!(f, "convex combination of {} anchors", weights.len())
            }
        }
    }
}

/// A coefficient point with a K-semistability certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    pub point: CoefficientPoint,
    pub certificate: Certificate,
}

impl Anchor {
    pub fn new(point: CoefficientPoint, certificate: Certificate) -> Self {
        Anchor { point, certificate }
    }

    /// Re-runs the certificate's defining check against `family`.
    pub fn validate(&self, family: &PairFamily) -> Result<(), CertifyError> {
        family.check_point(&self.point)?;
        let fail = |reason: String| {
            Err(CertifyError::InvalidCertificate {
                point: self.point.clone(),
                reason,
            })
        };
        let point = &self.point;
        match &self.certificate {
            Certificate::AxiomBareFano => {
                if !point.is_origin() {
                    return fail("bare ambient certificate on a non-zero point".into());
                }
            }
            Certificate::KnownInterval {
                coordinate,
                source,
                prime_bound,
            } => {
                let Some(entry) = family.entry(*coordinate) else {
                    return fail(format!("coordinate {coordinate} out of range"));
                };
                if !source.matches(family.ambient(), entry) {
                    return fail("interval source does not match the boundary entry".into());
                }
                if source.bound()? != *prime_bound {
                    return fail(format!("stated bound {prime_bound} differs from the source"));
                }
                let off_axis = point
                    .iter()
                    .enumerate()
                    .any(|(i, x)| i != *coordinate && !x.is_zero());
                if off_axis {
                    return fail("point is not on the coordinate axis".into());
                }
                let c = &point[*coordinate];
                let a = entry.multiplier() * c;
                if c.is_negative() || *c > Rational::one() || a > *prime_bound {
                    return fail(format!("prime coefficient {a} outside [0, {prime_bound}]"));
                }
            }
            Certificate::LcCalabiYau => {
                if !lc_calabi_yau_anchor(family, point)? {
                    return fail("pair is not log canonical".into());
                }
            }
            Certificate::ConeReduction {
                theorem,
                n,
                quadric_coordinate,
                other_coordinate,
                r,
                infinity_coefficient,
            } => {
                let (q, o) = (*quadric_coordinate, *other_coordinate);
                if q == o || q >= family.k() || o >= family.k() {
                    return fail("invalid coordinate pair".into());
                }
                let ambient = family.ambient();
                if ambient.kind() != AmbientKind::ProjectiveSpace || ambient.dim() != *n {
                    return fail(format!("ambient is not P^{n}"));
                }
                let entries = family.boundary();
                if *entries[q].prime_degree() != integer(2)
                    || *entries[o].prime_degree() != integer(theorem.other_degree())
                {
                    return fail("boundary degrees do not match the theorem".into());
                }
                if !verify_cone_theorems(*theorem, *n)? {
                    return fail("cone theorem does not verify".into());
                }
                if *r != theorem.r_formula(*n) {
                    return fail(format!("stated r = {r} differs from the closed form"));
                }
                let (a, b) = theorem.target(*n);
                if *infinity_coefficient != a {
                    return fail("stated infinity coefficient differs".into());
                }
                let prime = family.prime_coefficients(point)?;
                let others_zero = prime
                    .iter()
                    .enumerate()
                    .all(|(i, x)| i == q || i == o || x.is_zero());
                if prime[q] != a || prime[o] != b || !others_zero {
                    return fail("point does not realise the theorem's pair".into());
                }
            }
            Certificate::ConvexCombination { weights, anchors } => {
                if weights.is_empty() || weights.len() != anchors.len() {
                    return fail("weights and anchors must be non-empty and of equal length".into());
                }
                if weights.iter().any(Signed::is_negative) {
                    return fail("negative weight".into());
                }
                let total = weights.iter().fold(Rational::zero(), |acc, w| acc + w);
                if !total.is_one() {
                    return fail(format!("weights sum to {total}"));
                }
                let mut combo = vec![Rational::zero(); family.k()];
                for (w, anchor) in weights.iter().zip(anchors) {
                    anchor.validate(family)?;
                    for (slot, x) in combo.iter_mut().zip(anchor.point.iter()) {
                        *slot += w * x;
                    }
                }
                if combo != point.coords() {
                    return fail("point is not the stated combination".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    Determined,
    Gap,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Determined => "determined",
            VerdictStatus::Gap => "gap",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub necessary: Polytope,
    pub certified: Polytope,
    pub anchors: Vec<Anchor>,
    pub axioms: BTreeSet<Axiom>,
}

impl Verdict {
    /// The domain itself when determined.
    pub fn domain(&self) -> Option<&Polytope> {
        (self.status == VerdictStatus::Determined).then_some(&self.certified)
    }
}

/// Anchors derived from the shape of the family.
pub fn auto_anchors(family: &PairFamily, necessary: &Polytope) -> Result<Vec<Anchor>, CertifyError> {
    let k = family.k();
    let ambient = family.ambient();
    let mut anchors = vec![Anchor::new(CoefficientPoint::origin(k), Certificate::AxiomBareFano)];

    for (i, entry) in family.boundary().iter().enumerate() {
        let Some(source) = interval_source(ambient, entry) else {
            continue;
        };
        let prime_bound = source.bound()?;
        let c = (&prime_bound / entry.multiplier()).min(Rational::one());
        if c.is_zero() {
            continue;
        }
        let mut coords = vec![Rational::zero(); k];
        coords[i] = c;
        anchors.push(Anchor::new(
            CoefficientPoint::new(coords),
            Certificate::KnownInterval {
                coordinate: i,
                source,
                prime_bound,
            },
        ));
    }

    for v in necessary.vertices_on(&family.level_form()) {
        if lc_calabi_yau_anchor(family, v)? {
            anchors.push(Anchor::new(v.clone(), Certificate::LcCalabiYau));
        }
    }

    if ambient.kind() == AmbientKind::ProjectiveSpace {
        let n = ambient.dim();
        let entries = family.boundary();
        for q in 0..k {
            for o in 0..k {
                if q == o || *entries[q].prime_degree() != integer(2) {
                    continue;
                }
                let theorem = if entries[o].prime_degree().is_one() {
                    ConeTheorem::QuadricAndHyperplane
                } else if *entries[o].prime_degree() == integer(2) && q < o {
                    ConeTheorem::TwoQuadrics
                } else {
                    continue;
                };
                if n < theorem.min_dim() || !verify_cone_theorems(theorem, n)? {
                    continue;
                }
                let (a, b) = theorem.target(n);
                let cq = a / entries[q].multiplier();
                let co = b / entries[o].multiplier();
                if cq > Rational::one() || co > Rational::one() {
                    continue;
                }
                let mut coords = vec![Rational::zero(); k];
                coords[q] = cq;
                coords[o] = co;
                anchors.push(Anchor::new(
                    CoefficientPoint::new(coords),
                    Certificate::ConeReduction {
                        theorem,
                        n,
                        quadric_coordinate: q,
                        other_coordinate: o,
                        r: theorem.r_formula(n),
                        infinity_coefficient: theorem.target(n).0,
                    },
                ));
            }
        }
    }
    Ok(anchors)
}

/// Picks the interval result that applies to a single boundary divisor.
///
/// Quadric sections of quadrics use the interval lemma directly: the bound
/// `(l+4)/(2(l+1))` of the third quadric fact exceeds the beta bound
/// `(l+2)/(2l)` of the quadric section itself.
fn interval_source(ambient: &AmbientModel, entry: &BoundaryEntry) -> Option<IntervalSource> {
    let d = entry.prime_degree();
    let n = ambient.dim();
    match ambient.kind() {
        AmbientKind::ProjectiveSpace if *d == integer(2) && n >= 2 => {
            return Some(IntervalSource::QuadricFact {
                fact: QuadricFact::ConicInProjectiveSpace,
                param: n,
            })
        }
        AmbientKind::Quadric if d.is_one() => {
            return Some(IntervalSource::QuadricFact {
                fact: QuadricFact::HyperplaneSection,
                param: n,
            })
        }
        _ => {}
    }
    let lambda = d / ambient.anticanonical_level();
    (d.is_integer() && lambda < Rational::one()).then_some(IntervalSource::ZhouZhang { n, lambda })
}

/// Builds the necessary region, certifies anchors (auto-generated plus
/// `extra`), hulls them and compares.
pub fn certify_domain(family: &PairFamily, extra: &[Anchor]) -> Result<Verdict, CertifyError> {
    let necessary = necessary_region(family)?;
    let mut anchors: Vec<Anchor> = Vec::new();
    for anchor in auto_anchors(family, &necessary)?.into_iter().chain(extra.iter().cloned()) {
        anchor.validate(family)?;
        if !necessary.contains(&anchor.point) {
            return Err(CertifyError::AnchorOutsideNecessary(anchor.point));
        }
        if anchors.iter().all(|a| a.point != anchor.point) {
            anchors.push(anchor);
        }
    }
    let points: Vec<CoefficientPoint> = anchors.iter().map(|a| a.point.clone()).collect();
    let certified = convex_hull(family.k(), &points)?;

    let mut axioms: BTreeSet<Axiom> = BTreeSet::new();
    for a in &anchors {
        axioms.extend(a.certificate.axioms());
    }
    if anchors.len() > 1 {
        axioms.insert(Axiom::Interpolation);
    }
    let status = if certified.equal(&necessary) {
        VerdictStatus::Determined
    } else {
        VerdictStatus::Gap
    };
    Ok(Verdict {
        status,
        necessary,
        certified,
        anchors,
        axioms,
    })
}
