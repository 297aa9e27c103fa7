//! Double description over exact rationals.
//!
//! Computes generators (extreme rays plus a lineality basis) of the cone
//! `{x ∈ Q^d : row · x ≥ 0 for every row}` by inserting one row at a time,
//! starting from the whole space. Adjacency of rays is decided with the
//! combinatorial test on zero sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

struct Ray {
    coords: Vec<Rational>,
    /// Indices of processed rows on which this ray is tight, ascending.
    zeros: Vec<usize>,
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales `v` to the primitive integer vector on the same ray.
pub(crate) fn normalize(v: &mut [Rational]) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return;
    }
    for (slot, n) in v.iter_mut().zip(ints) {
        *slot = Rational::from_integer(n / &gcd);
    }
}

fn axpy(target: &mut [Rational], factor: &Rational, source: &[Rational]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= factor * s;
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset_sorted(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for x in small {
        while j < big.len() && big[j] < *x {
            j += 1;
        }
        if j == big.len() || big[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

pub(crate) fn cone_generators(d: usize, rows: &[Vec<Rational>]) -> ConeGenerators {
    let mut lineality: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut e = vec![Rational::zero(); d];
            e[i] = Rational::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (j, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), d);
        if let Some(pos) = lineality.iter().position(|l| !dot(row, l).is_zero()) {
            let mut pivot = lineality.swap_remove(pos);
            let mut pv = dot(row, &pivot);
            if pv.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -x.clone());
                pv = -pv;
            }
            for l in lineality.iter_mut() {
                let f = dot(row, l) / &pv;
                if !f.is_zero() {
                    axpy(l, &f, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(row, &r.coords) / &pv;
                if !f.is_zero() {
                    axpy(&mut r.coords, &f, &pivot);
                    normalize(&mut r.coords);
                }
                r.zeros.push(j);
            }
            normalize(&mut pivot);
            rays.push(Ray {
                coords: pivot,
                zeros: (0..j).collect(),
            });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let negatives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if negatives.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.push(j);
                }
            }
            continue;
        }
        let positives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &positives {
            for &n in &negatives {
                let common = intersect_sorted(&rays[p].zeros, &rays[n].zeros);
                let adjacent = (0..rays.len())
                    .filter(|&o| o != p && o != n)
                    .all(|o| !is_subset_sorted(&common, &rays[o].zeros));
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<Rational> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xn, xp)| &values[p] * xn - &values[n] * xp)
                    .collect();
                normalize(&mut coords);
                let mut zeros = common;
                zeros.push(j);
                fresh.push(Ray { coords, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zeros.push(j);
            }
            next.push(r);
        }
        for r in fresh {
            if !next.iter().any(|o| o.coords == r.coords) {
                next.push(r);
            }
        }
        rays = next;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.coords).collect(),
        lineality,
    }
}

/// Rank of a list of rational row vectors.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = &row[c] / &pivot[c];
            if !f.is_zero() {
                axpy(row, &f, &pivot);
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
