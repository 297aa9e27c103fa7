//! Shared helpers for integration tests: family builders, a brute-force
//! vertex enumerator and random bounded half-space systems.
#![allow(dead_code)]

use kss_core::{
    integer, rational, AffineForm, AmbientModel, BoundaryEntry, CoefficientPoint, HalfSpace,
    PairFamily, Rational,
};
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn family(ambient: AmbientModel, entries: &[(&str, i64, (i64, i64))]) -> PairFamily {
    PairFamily::new(
        ambient,
        entries
            .iter()
            .map(|&(l, d, (mn, md))| BoundaryEntry::new(l, integer(d), rational(mn, md)).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn pn(n: u32) -> AmbientModel {
    AmbientModel::projective_space(n).unwrap()
}

pub fn two_lines() -> PairFamily {
    family(pn(2), &[("L1", 1, (3, 1)), ("L2", 1, (3, 1))])
}

pub fn two_conics() -> PairFamily {
    family(pn(2), &[("Q1", 2, (3, 2)), ("Q2", 2, (3, 2))])
}

pub fn conic_line() -> PairFamily {
    family(pn(2), &[("Q", 2, (3, 2)), ("L", 1, (3, 1))])
}

pub fn quadric_hyperplane(n: u32) -> PairFamily {
    family(pn(n), &[("Q", 2, (1, 1)), ("L", 1, (1, 1))])
}

pub fn two_quadrics(n: u32) -> PairFamily {
    family(pn(n), &[("Q", 2, (1, 1)), ("Q'", 2, (1, 1))])
}

pub fn point(coords: &[Rational]) -> CoefficientPoint {
    CoefficientPoint::new(coords.to_vec())
}

pub fn sorted(mut v: Vec<CoefficientPoint>) -> Vec<CoefficientPoint> {
    v.sort();
    v.dedup();
    v
}

/// Solves a square rational system; `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot_row[col];
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of a bounded system by trying every k-subset of constraints as
/// an equality system. Exponential, for small test systems only.
pub fn brute_force_vertices(k: usize, hrep: &[HalfSpace]) -> Vec<CoefficientPoint> {
    let mut found = Vec::new();
    for subset in combinations(hrep.len(), k) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| hrep[i].form().coeffs().to_vec()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| -hrep[i].form().constant()).collect();
        if let Some(x) = solve(a, b) {
            let p = CoefficientPoint::new(x);
            if hrep.iter().all(|h| !h.form().evaluate(&p).is_negative()) {
                found.push(p);
            }
        }
    }
    sorted(found)
}

pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    rational(rng.gen_range(lo * den..=hi * den), den)
}

/// A box `[-3, 3]^k` cut by a few random half-spaces with small integer
/// coefficients. Bounded by construction; possibly empty or degenerate.
pub fn random_bounded_system<R: Rng>(rng: &mut R, k: usize) -> Vec<HalfSpace> {
    let mut hrep = Vec::new();
    for i in 0..k {
        hrep.push(HalfSpace::lower_bound(i, k, integer(-3)));
        hrep.push(HalfSpace::upper_bound(i, k, integer(3)));
    }
    let extra = rng.gen_range(1..=4);
    for _ in 0..extra {
        let coeffs: Vec<Rational> = (0..k).map(|_| integer(rng.gen_range(-3..=3))).collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let constant = integer(rng.gen_range(-2..=6));
        hrep.push(HalfSpace::new(AffineForm::new(constant, coeffs)).unwrap());
    }
    hrep
}

pub fn one() -> Rational {
    Rational::one()
}
