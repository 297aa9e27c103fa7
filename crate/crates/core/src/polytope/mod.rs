//! Exact bounded polyhedra in coefficient space.
//!
//! A [`Polytope`] carries both an H-representation (half-spaces `form ≥ 0`)
//! and its irredundant vertex list, sorted lexicographically. Lower
//! dimensional polytopes are allowed; their H-representation may contain
//! opposite pairs of half-spaces encoding equations. The empty set is a
//! regular value with no vertices.

mod dd;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::invariants::{beta_form, DivisorRef};
use crate::model::{AffineForm, CoefficientPoint, PairFamily};
use crate::Rational;

use dd::{cone_generators, rank};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytopes need at least one coordinate")]
    ZeroDimension,
    #[error("expected dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("half-space `{0} >= 0` is never satisfied")]
    Infeasible(String),
    #[error("the half-spaces describe an unbounded region")]
    Unbounded,
    #[error("operation needs a non-empty polytope")]
    Empty,
}

/// The closed half-space `form ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    form: AffineForm,
}

impl HalfSpace {
    /// Rejects constant forms with negative constant.
    pub fn new(form: AffineForm) -> Result<Self, PolytopeError> {
        if form.is_constant() && form.constant().is_negative() {
            return Err(PolytopeError::Infeasible(form.to_string()));
        }
        Ok(HalfSpace { form })
    }

    /// `c_i ≥ bound`.
    pub fn lower_bound(i: usize, k: usize, bound: Rational) -> Self {
        let form = &AffineForm::coordinate(i, k) - &AffineForm::constant_form(bound, k);
        HalfSpace { form }
    }

    /// `c_i ≤ bound`.
    pub fn upper_bound(i: usize, k: usize, bound: Rational) -> Self {
        let form = &AffineForm::constant_form(bound, k) - &AffineForm::coordinate(i, k);
        HalfSpace { form }
    }

    pub fn form(&self) -> &AffineForm {
        &self.form
    }

    pub fn slack(&self, c: &CoefficientPoint) -> Rational {
        self.form.evaluate(c)
    }

    pub fn contains(&self, c: &CoefficientPoint) -> bool {
        !self.slack(c).is_negative()
    }

    fn homogeneous_row(&self) -> Vec<Rational> {
        std::iter::once(self.form.constant().clone())
            .chain(self.form.coeffs().iter().cloned())
            .collect()
    }
}

impl std::fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} >= 0", self.form)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    hrep: Vec<HalfSpace>,
    vertices: Vec<CoefficientPoint>,
}

impl Polytope {
    /// Intersection of the given half-spaces; fails if it is unbounded.
    pub fn from_hrep(dim: usize, hrep: Vec<HalfSpace>) -> Result<Self, PolytopeError> {
        let vertices = enumerate_vertices(dim, &hrep)?;
        Ok(Polytope {
            dim,
            hrep,
            vertices,
        })
    }

    /// The empty polytope, described by `c_1 ≥ 1` and `c_1 ≤ 0`.
    pub fn empty(dim: usize) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        Ok(Polytope {
            dim,
            hrep: vec![
                HalfSpace::lower_bound(0, dim, Rational::one()),
                HalfSpace::upper_bound(0, dim, Rational::zero()),
            ],
            vertices: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    /// Irredundant vertices in lexicographic order.
    pub fn vertices(&self) -> &[CoefficientPoint] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Panics if `c` has the wrong dimension.
    pub fn contains(&self, c: &CoefficientPoint) -> bool {
        assert_eq!(c.len(), self.dim, "point dimension mismatch");
        self.hrep.iter().all(|h| h.contains(c))
    }

    pub fn is_subset_of(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.vertices.iter().all(|v| other.contains(v))
    }

    /// Set equality by mutual vertex containment.
    pub fn equal(&self, other: &Polytope) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Minimum of an affine objective; attained at a vertex.
    pub fn linear_min(&self, objective: &AffineForm) -> Result<Rational, PolytopeError> {
        if objective.k() != self.dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.dim,
                found: objective.k(),
            });
        }
        self.vertices
            .iter()
            .map(|v| objective.evaluate(v))
            .min()
            .ok_or(PolytopeError::Empty)
    }

    /// Vertices lying on the hyperplane `form = 0`.
    pub fn vertices_on(&self, form: &AffineForm) -> Vec<&CoefficientPoint> {
        self.vertices
            .iter()
            .filter(|v| form.evaluate(v).is_zero())
            .collect()
    }
}

/// Exact irredundant vertex list of a bounded intersection of half-spaces,
/// sorted lexicographically. An infeasible system yields an empty list.
pub fn enumerate_vertices(
    dim: usize,
    hrep: &[HalfSpace],
) -> Result<Vec<CoefficientPoint>, PolytopeError> {
    if dim == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if let Some(h) = hrep.iter().find(|h| h.form.k() != dim) {
        return Err(PolytopeError::DimensionMismatch {
            expected: dim,
            found: h.form.k(),
        });
    }
    // Homogenise: (x0, x) with x0 >= 0 and b·x0 + a·x >= 0.
    let mut rows = Vec::with_capacity(hrep.len() + 1);
    let mut x0 = vec![Rational::zero(); dim + 1];
    x0[0] = Rational::one();
    rows.push(x0);
    rows.extend(hrep.iter().map(HalfSpace::homogeneous_row));
    let gens = cone_generators(dim + 1, &rows);

    let mut vertices = Vec::new();
    let mut recession = !gens.lineality.is_empty();
    for ray in gens.rays {
        if ray[0].is_positive() {
            let scale = ray[0].clone();
            vertices.push(CoefficientPoint::new(
                ray[1..].iter().map(|x| x / &scale).collect(),
            ));
        } else {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Ok(vertices);
    }
    if recession {
        return Err(PolytopeError::Unbounded);
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

/// Convex hull of finitely many points, with an irredundant vertex list and
/// a facet (plus equation) H-representation. The result does not depend on
/// the order or multiplicity of the input points.
pub fn convex_hull(dim: usize, points: &[CoefficientPoint]) -> Result<Polytope, PolytopeError> {
    if dim == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(PolytopeError::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return Polytope::empty(dim);
    }

    // Valid inequalities b + a·x >= 0 form the cone {(b, a) : b + a·p >= 0}.
    let rows: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| {
            std::iter::once(Rational::one())
                .chain(p.iter().cloned())
                .collect()
        })
        .collect();
    let gens = cone_generators(dim + 1, &rows);

    let to_form = |g: &[Rational]| AffineForm::new(g[0].clone(), g[1..].to_vec());
    let mut hrep = Vec::new();
    for ray in &gens.rays {
        let form = to_form(ray);
        if !form.is_constant() {
            hrep.push(HalfSpace { form });
        }
    }
    for l in &gens.lineality {
        let form = to_form(l);
        hrep.push(HalfSpace { form: -&form });
        hrep.push(HalfSpace { form });
    }

    let vertices = pts
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<Rational>> = hrep
                .iter()
                .filter(|h| h.slack(p).is_zero())
                .map(|h| h.form.coeffs().to_vec())
                .collect();
            rank(&tight) == dim
        })
        .collect();
    Ok(Polytope {
        dim,
        hrep,
        vertices,
    })
}

/// The closed region cut out by `0 ≤ c_i ≤ 1`, level `≥ 0` and
/// `β(D_i) ≥ 0` for every boundary prime divisor.
pub fn necessary_region(family: &PairFamily) -> Result<Polytope, PolytopeError> {
    let k = family.k();
    if k == 0 {
        return Err(PolytopeError::ZeroDimension);
    }
    let mut hrep = Vec::with_capacity(3 * k + 1);
    for i in 0..k {
        hrep.push(HalfSpace::lower_bound(i, k, Rational::zero()));
        hrep.push(HalfSpace::upper_bound(i, k, Rational::one()));
    }
    hrep.push(HalfSpace {
        form: family.level_form(),
    });
    for i in 0..k {
        let form = beta_form(family, &DivisorRef::Boundary(i))
            .expect("boundary index is in range");
        hrep.push(HalfSpace::new(form)?);
    }
    Polytope::from_hrep(k, hrep)
}
