//! The domain report: a serialisable summary of the necessary region, the
//! certified region and the beta forms, with a JSON and a text rendering.

use std::fmt::Write as _;

use kss_core::model::variable_names;
use kss_core::{
    beta_form, mu_value, necessary_region, AffineForm, Axiom, DivisorRef, PairFamily, Polytope,
    Verdict, VerdictStatus,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spec::{exact_vec, AnchorSpec, Exact, FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coordinate {
    pub name: String,
    pub label: String,
}

/// An affine form `constant + Σ coeffs[i]·c_i`; `text` is the rendering in
/// the report's coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormReport {
    pub constant: Exact,
    pub coeffs: Vec<Exact>,
    pub text: String,
}

impl FormReport {
    fn new(form: &AffineForm, names: &[String]) -> Self {
        FormReport {
            constant: form.constant().into(),
            coeffs: exact_vec(form.coeffs()),
            text: form.render(names),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaReport {
    pub divisor: String,
    pub form: FormReport,
}

/// Half-spaces are `form >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NecessaryReport {
    pub hrep: Vec<FormReport>,
    pub vrep: Vec<Vec<Exact>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifiedReport {
    pub vrep: Vec<Vec<Exact>>,
    pub anchors: Vec<AnchorSpec>,
    pub axioms: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReport {
    Determined,
    Gap,
}

/// μ over the necessary region and, after certification, over the
/// certified region. For a determined domain the two agree and equal μ;
/// for a gap they bracket it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuReport {
    pub necessary: Exact,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainReport {
    pub format_version: u32,
    pub family: String,
    pub coordinates: Vec<Coordinate>,
    pub necessary: NecessaryReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<CertifiedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
    pub mu: MuReport,
    pub beta_forms: Vec<BetaReport>,
}

fn vrep(p: &Polytope) -> Vec<Vec<Exact>> {
    p.vertices().iter().map(|v| exact_vec(v.coords())).collect()
}

impl DomainReport {
    /// Report on the necessary region only.
    pub fn necessary(family: &PairFamily) -> Result<Self, CliError> {
        let region = necessary_region(family)?;
        Self::build(family, &region, None)
    }

    /// Report including certification and verdict.
    pub fn certified(family: &PairFamily, verdict: &Verdict) -> Result<Self, CliError> {
        Self::build(family, &verdict.necessary, Some(verdict))
    }

    fn build(family: &PairFamily, necessary: &Polytope, verdict: Option<&Verdict>) -> Result<Self, CliError> {
        let names = variable_names(family.k());
        let beta_forms = (0..family.k())
            .map(|i| {
                let form = beta_form(family, &DivisorRef::Boundary(i))?;
                Ok(BetaReport {
                    divisor: family.boundary()[i].label().to_string(),
                    form: FormReport::new(&form, &names),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let certified = verdict.map(|v| CertifiedReport {
            vrep: vrep(&v.certified),
            anchors: v.anchors.iter().map(AnchorSpec::from_anchor).collect(),
            axioms: v.axioms.iter().map(|a| a.name().to_string()).collect(),
        });
        let mu = MuReport {
            necessary: mu_value(necessary)?.into(),
            certified: verdict.map(|v| mu_value(&v.certified)).transpose()?.map(Exact),
        };
        Ok(DomainReport {
            format_version: FORMAT_VERSION,
            family: family.to_string(),
            coordinates: names
                .iter()
                .zip(family.boundary())
                .map(|(name, b)| Coordinate {
                    name: name.clone(),
                    label: b.label().to_string(),
                })
                .collect(),
            necessary: NecessaryReport {
                hrep: necessary.hrep().iter().map(|h| FormReport::new(h.form(), &names)).collect(),
                vrep: vrep(necessary),
            },
            certified,
            verdict: verdict.map(|v| match v.status {
                VerdictStatus::Determined => VerdictReport::Determined,
                VerdictStatus::Gap => VerdictReport::Gap,
            }),
            mu,
            beta_forms,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::parse)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// The human-readable rendering. Every number printed here is taken
    /// from the same fields as the JSON rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "format_version: {}", self.format_version);
        let _ = writeln!(w, "family: {}", self.family);
        let coords: Vec<String> = self
            .coordinates
            .iter()
            .map(|c| format!("{} = {}", c.name, c.label))
            .collect();
        let _ = writeln!(w, "coordinates: {}", coords.join(", "));
        let _ = writeln!(w, "necessary region:");
        let _ = writeln!(w, "  half-spaces:");
        for h in &self.necessary.hrep {
            let _ = writeln!(w, "    {} >= 0", h.text);
        }
        let _ = writeln!(w, "  vertices:");
        for v in &self.necessary.vrep {
            let _ = writeln!(w, "    {}", point_text(v));
        }
        let _ = writeln!(w, "beta forms:");
        for b in &self.beta_forms {
            let _ = writeln!(w, "  beta({}) = {}", b.divisor, b.form.text);
        }
        if let Some(c) = &self.certified {
            let _ = writeln!(w, "certified region:");
            let _ = writeln!(w, "  vertices:");
            for v in &c.vrep {
                let _ = writeln!(w, "    {}", point_text(v));
            }
            let _ = writeln!(w, "  anchors:");
            for a in &c.anchors {
                let detail = a
                    .certificate
                    .to_certificate()
                    .map(|c| c.to_string())
                    .unwrap_or_else(|e| e.to_string());
                let _ = writeln!(w, "    {}  {}", point_text(&a.point), detail);
            }
            let _ = writeln!(w, "  axioms:");
            for name in &c.axioms {
                match Axiom::from_name(name) {
                    Some(ax) => {
                        let _ = writeln!(w, "    {name}: {}", ax.statement());
                    }
                    None => {
                        let _ = writeln!(w, "    {name}");
                    }
                }
            }
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(w, "verdict: {}", verdict_text(v));
        }
        let _ = writeln!(w, "mu: {}", self.mu_text());
        out
    }

    /// Whether μ is pinned down: always on a determined domain, and on a gap
    /// when both regions give the same minimum.
    pub fn mu_is_exact(&self) -> bool {
        match &self.mu.certified {
            Some(c) => *c == self.mu.necessary,
            None => true,
        }
    }

    /// μ as printed by the `mu` command: the exact value when known,
    /// otherwise the bracket `[necessary, certified]`.
    pub fn mu_text(&self) -> String {
        match &self.mu.certified {
            Some(c) if !self.mu_is_exact() => format!("[{}, {}]", self.mu.necessary, c),
            _ => self.mu.necessary.to_string(),
        }
    }
}

pub fn verdict_text(v: VerdictReport) -> &'static str {
    match v {
        VerdictReport::Determined => "determined",
        VerdictReport::Gap => "gap",
    }
}

pub fn point_text(p: &[Exact]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
