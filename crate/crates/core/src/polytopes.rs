//! Classical spheres: cyclic polytopes, cross-polytopes, stacked spheres.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::complex::{Face, PureComplex, Vertex};
use crate::error::{Error, Result};

fn v(label: i32) -> Vertex {
    Vertex::new(label).expect("construction labels are nonzero")
}

fn positive_face(labels: impl IntoIterator<Item = usize>) -> Face {
    Face::from_sorted(labels.into_iter().map(|l| v(l as i32)).collect())
}

/// Gale evenness: between any two non-members the number of members is even.
/// `members` must be sorted and drawn from `[1, n]`.
pub fn satisfies_gale_evenness(members: &[usize], n: usize) -> bool {
    let mut inside = 0usize;
    let mut seen_gap = false;
    let mut next = members.iter().peekable();
    for x in 1..=n {
        if next.peek() == Some(&&x) {
            next.next();
            inside += 1;
        } else {
            if seen_gap && inside % 2 == 1 {
                return false;
            }
            seen_gap = true;
            inside = 0;
        }
    }
    true
}

/// Boundary of the cyclic polytope `C(d, n)` on vertices `[1, n]`.
pub fn cyclic_boundary(d: usize, n: usize) -> Result<PureComplex> {
    if d < 2 {
        return Err(Error::InvalidParameters(format!(
            "cyclic polytope needs d >= 2, got {d}"
        )));
    }
    if n <= d {
        return Err(Error::TooFewVertices { min: d, got: n });
    }
    let facets: BTreeSet<Face> = (1..=n)
        .combinations(d)
        .filter(|c| satisfies_gale_evenness(c, n))
        .map(positive_face)
        .collect();
    Ok(PureComplex::from_facets_unchecked(d as isize - 1, facets))
}

/// Closed form for `f_{d-1}(∂C(d, n))`.
pub fn cyclic_facet_count(d: usize, n: usize) -> u64 {
    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }
    if n <= d {
        return 0;
    }
    let (d, n) = (d as u64, n as u64);
    let m = d / 2;
    if d % 2 == 0 {
        n * binomial(n - m, m) / (n - m)
    } else {
        2 * binomial(n - m - 1, m)
    }
}

/// Boundary of the `d`-dimensional cross-polytope on `±[1, d]`.
pub fn cross_boundary(d: usize) -> Result<PureComplex> {
    if d == 0 || d > 24 {
        return Err(Error::InvalidParameters(format!(
            "cross-polytope dimension must be in 1..=24, got {d}"
        )));
    }
    let facets: BTreeSet<Face> = (0u32..1 << d)
        .map(|mask| {
            Face::new((1..=d as i32).map(|i| {
                if mask >> (i - 1) & 1 == 1 {
                    v(-i)
                } else {
                    v(i)
                }
            }))
        })
        .collect();
    Ok(PureComplex::from_facets_unchecked(d as isize - 1, facets))
}

/// Boundary of the `d`-simplex on `[1, d+1]`.
pub fn simplex_boundary(d: usize) -> PureComplex {
    PureComplex::simplex(positive_face(1..=d + 1)).boundary()
}

/// A stacked `(d-1)`-sphere on `[1, n]`.
///
/// Starting from the boundary of the `d`-simplex, each step removes the
/// lexicographically smallest facet avoiding the newest vertex and cones its
/// boundary from the next label.
pub fn stacked_sphere(d: usize, n: usize) -> Result<PureComplex> {
    if d < 2 {
        return Err(Error::InvalidParameters(format!(
            "stacked sphere needs d >= 2, got {d}"
        )));
    }
    if n <= d {
        return Err(Error::TooFewVertices { min: d, got: n });
    }
    let mut facets: BTreeSet<Face> = simplex_boundary(d).facets().clone();
    for label in d + 2..=n {
        let newest = v(label as i32 - 1);
        let target = facets
            .iter()
            .find(|f| !f.contains(newest))
            .cloned()
            .expect("a stacked sphere always has a facet avoiding one vertex");
        facets.remove(&target);
        let apex = v(label as i32);
        facets.extend(target.ridges().map(|r| r.with(apex)));
    }
    Ok(PureComplex::from_facets_unchecked(d as isize - 1, facets))
}
