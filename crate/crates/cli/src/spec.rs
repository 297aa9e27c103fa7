//! The JSON input document describing a pair family, plus the exact
//! rational string encoding shared with reports.

use std::fmt;
use std::str::FromStr;

use kss_core::{
    AmbientKind, AmbientModel, Anchor, BoundaryEntry, Certificate, CoefficientPoint, ConeTheorem,
    DivisorRef, IntervalSource, PairFamily, QuadricFact, Rational,
};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// Parses `"p/q"` or an integer string. Decimal points and exponents are
/// rejected so that nothing is ever rounded on the way in.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    let bad = |why: &str| CliError::parse(format!("malformed rational {s:?}: {why}"));
    if t.is_empty() {
        return Err(bad("empty"));
    }
    if t.contains(['.', 'e', 'E']) {
        return Err(bad("floats are not accepted, write p/q"));
    }
    Rational::from_str(t).map_err(|e| bad(&e.to_string()))
}

/// Parses a comma-separated coefficient list, e.g. `"1/2,0"`. The empty
/// string is the point with no coordinates.
pub fn parse_point(s: &str) -> Result<CoefficientPoint, CliError> {
    if s.trim().is_empty() {
        return Ok(CoefficientPoint::new(Vec::new()));
    }
    s.split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map(CoefficientPoint::new)
}

/// An exact rational serialised as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact(r.clone())
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Exact).map_err(de::Error::custom)
    }
}

pub fn exact_vec(v: &[Rational]) -> Vec<Exact> {
    v.iter().map(Exact::from).collect()
}

fn rationals(v: &[Exact]) -> Vec<Rational> {
    v.iter().map(|e| e.0.clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientKindSpec {
    ProjectiveSpace,
    Quadric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    pub kind: AmbientKindSpec,
    pub dim: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    pub label: String,
    pub prime_degree: Exact,
    pub multiplier: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IntervalSourceSpec {
    ZhouZhang { n: u32, lambda: Exact },
    QuadricFact { fact: u8, param: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeTheoremSpec {
    QuadricAndHyperplane,
    TwoQuadrics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificateSpec {
    AxiomBareFano,
    KnownInterval {
        coordinate: usize,
        source: IntervalSourceSpec,
        prime_bound: Exact,
    },
    LcCalabiYau,
    ConeReduction {
        theorem: ConeTheoremSpec,
        n: u32,
        quadric_coordinate: usize,
        other_coordinate: usize,
        r: Exact,
        infinity_coefficient: Exact,
    },
    ConvexCombination {
        weights: Vec<Exact>,
        anchors: Vec<AnchorSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorSpec {
    pub point: Vec<Exact>,
    pub certificate: CertificateSpec,
}

/// Input document: `{"format_version": 1, "ambient": ..., "boundary": [...],
/// "anchors": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub format_version: u32,
    pub ambient: AmbientSpec,
    pub boundary: Vec<BoundarySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchors: Vec<AnchorSpec>,
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: FamilySpec = serde_json::from_str(text).map_err(CliError::parse)?;
        if spec.format_version != FORMAT_VERSION {
            return Err(CliError::parse(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                spec.format_version
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialises")
    }

    /// Builds the family. Invalid dimensions, degrees or duplicate labels
    /// are contract violations.
    pub fn family(&self) -> Result<PairFamily, CliError> {
        let ambient = match self.ambient.kind {
            AmbientKindSpec::ProjectiveSpace => AmbientModel::projective_space(self.ambient.dim)?,
            AmbientKindSpec::Quadric => AmbientModel::quadric(self.ambient.dim)?,
        };
        let entries = self
            .boundary
            .iter()
            .map(|b| {
                BoundaryEntry::new(b.label.clone(), b.prime_degree.0.clone(), b.multiplier.0.clone())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PairFamily::new(ambient, entries)?)
    }

    pub fn anchors(&self) -> Result<Vec<Anchor>, CliError> {
        self.anchors.iter().map(AnchorSpec::to_anchor).collect()
    }

    pub fn from_family(family: &PairFamily) -> Self {
        let ambient = family.ambient();
        FamilySpec {
            format_version: FORMAT_VERSION,
            ambient: AmbientSpec {
                kind: match ambient.kind() {
                    AmbientKind::ProjectiveSpace => AmbientKindSpec::ProjectiveSpace,
                    AmbientKind::Quadric => AmbientKindSpec::Quadric,
                },
                dim: ambient.dim(),
            },
            boundary: family
                .boundary()
                .iter()
                .map(|b| BoundarySpec {
                    label: b.label().to_string(),
                    prime_degree: b.prime_degree().into(),
                    multiplier: b.multiplier().into(),
                })
                .collect(),
            anchors: Vec::new(),
        }
    }
}

impl AnchorSpec {
    pub fn to_anchor(&self) -> Result<Anchor, CliError> {
        Ok(Anchor::new(
            CoefficientPoint::new(rationals(&self.point)),
            self.certificate.to_certificate()?,
        ))
    }

    pub fn from_anchor(anchor: &Anchor) -> Self {
        AnchorSpec {
            point: exact_vec(anchor.point.coords()),
            certificate: CertificateSpec::from_certificate(&anchor.certificate),
        }
    }
}

impl CertificateSpec {
    pub fn to_certificate(&self) -> Result<Certificate, CliError> {
        Ok(match self {
            CertificateSpec::AxiomBareFano => Certificate::AxiomBareFano,
            CertificateSpec::LcCalabiYau => Certificate::LcCalabiYau,
            CertificateSpec::KnownInterval {
                coordinate,
                source,
                prime_bound,
            } => Certificate::KnownInterval {
                coordinate: *coordinate,
                source: match source {
                    IntervalSourceSpec::ZhouZhang { n, lambda } => IntervalSource::ZhouZhang {
                        n: *n,
                        lambda: lambda.0.clone(),
                    },
                    IntervalSourceSpec::QuadricFact { fact, param } => IntervalSource::QuadricFact {
                        fact: QuadricFact::from_index(*fact).ok_or_else(|| {
                            CliError::parse(format!("unknown quadric fact {fact} (expected 1, 2 or 3)"))
                        })?,
                        param: *param,
                    },
                },
                prime_bound: prime_bound.0.clone(),
            },
            CertificateSpec::ConeReduction {
                theorem,
                n,
                quadric_coordinate,
                other_coordinate,
                r,
                infinity_coefficient,
            } => Certificate::ConeReduction {
                theorem: match theorem {
                    ConeTheoremSpec::QuadricAndHyperplane => ConeTheorem::QuadricAndHyperplane,
                    ConeTheoremSpec::TwoQuadrics => ConeTheorem::TwoQuadrics,
                },
                n: *n,
                quadric_coordinate: *quadric_coordinate,
                other_coordinate: *other_coordinate,
                r: r.0.clone(),
                infinity_coefficient: infinity_coefficient.0.clone(),
            },
            CertificateSpec::ConvexCombination { weights, anchors } => Certificate::ConvexCombination {
                weights: rationals(weights),
                anchors: anchors
                    .iter()
                    .map(AnchorSpec::to_anchor)
                    .collect::<Result<_, _>>()?,
            },
        })
    }

    pub fn from_certificate(c: &Certificate) -> Self {
        match c {
            Certificate::AxiomBareFano => CertificateSpec::AxiomBareFano,
            Certificate::LcCalabiYau => CertificateSpec::LcCalabiYau,
            Certificate::KnownInterval {
                coordinate,
                source,
                prime_bound,
            } => CertificateSpec::KnownInterval {
                coordinate: *coordinate,
                source: match source {
                    IntervalSource::ZhouZhang { n, lambda } => IntervalSourceSpec::ZhouZhang {
                        n: *n,
                        lambda: lambda.into(),
                    },
                    IntervalSource::QuadricFact { fact, param } => IntervalSourceSpec::QuadricFact {
                        fact: fact.index(),
                        param: *param,
                    },
                },
                prime_bound: prime_bound.into(),
            },
            Certificate::ConeReduction {
                theorem,
                n,
                quadric_coordinate,
                other_coordinate,
                r,
                infinity_coefficient,
            } => CertificateSpec::ConeReduction {
                theorem: match theorem {
                    ConeTheorem::QuadricAndHyperplane => ConeTheoremSpec::QuadricAndHyperplane,
                    ConeTheorem::TwoQuadrics => ConeTheoremSpec::TwoQuadrics,
                },
                n: *n,
                quadric_coordinate: *quadric_coordinate,
                other_coordinate: *other_coordinate,
                r: r.into(),
                infinity_coefficient: infinity_coefficient.into(),
            },
            Certificate::ConvexCombination { weights, anchors } => CertificateSpec::ConvexCombination {
                weights: exact_vec(weights),
                anchors: anchors.iter().map(AnchorSpec::from_anchor).collect(),
            },
        }
    }
}

/// Resolves a divisor argument: a boundary label, or `external:<d>` for a
/// prime divisor of degree `d` not in the boundary.
pub fn parse_divisor(family: &PairFamily, arg: &str) -> Result<DivisorRef, CliError> {
    if let Some(d) = arg.strip_prefix("external:") {
        return Ok(DivisorRef::External(parse_rational(d)?));
    }
    family
        .index_of(arg)
        .map(DivisorRef::Boundary)
        .ok_or_else(|| {
            let known: Vec<&str> = family.boundary().iter().map(|b| b.label()).collect();
            CliError::parse(format!(
                "unknown divisor {arg:?}; boundary labels are [{}], or use external:<degree>",
                known.join(", ")
            ))
        })
}
