//! Simplicial homology with GF(2) coefficients.

use std::collections::HashMap;

use crate::complex::{Face, PureComplex};
use crate::error::Result;

pub const DEFAULT_HOMOLOGY_LIMIT: usize = 2_000_000;

/// Unreduced Betti numbers `(b_0, ..., b_dim)` over GF(2).
pub fn gf2_betti(delta: &PureComplex) -> Result<Vec<usize>> {
    gf2_betti_with_limit(delta, DEFAULT_HOMOLOGY_LIMIT)
}

pub fn gf2_betti_with_limit(delta: &PureComplex, limit: usize) -> Result<Vec<usize>> {
    let levels = delta.faces_by_size(limit)?;
    if levels.len() < 2 {
        return Ok(Vec::new());
    }
    // levels[s] holds faces of cardinality s; chains live in sizes 1..=top.
    let top = levels.len() - 1;
    // rank[s] = rank of the boundary map from size-s chains to size-(s-1) chains
    let mut rank = vec![0usize; top + 2];
    for s in 2..=top {
        rank[s] = boundary_rank(&levels[s - 1], &levels[s]);
    }
    Ok((1..=top)
        .map(|s| levels[s].len() - rank[s] - rank[s + 1])
        .collect())
}

/// Rank over GF(2) of the boundary map from `faces` to `ridges`.
fn boundary_rank(ridges: &[Face], faces: &[Face]) -> usize {
    let index: HashMap<&Face, u32> = ridges
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i as u32))
        .collect();
    // column reduction keyed by the largest row index
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for face in faces {
        let mut col: Vec<u32> = face.ridges().map(|r| index[&r]).collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = xor_sorted(&col, p),
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Betti profile of a `dim`-sphere: `(1, 0, ..., 0, 1)`.
pub fn sphere_betti(dim: usize) -> Vec<usize> {
    let mut b = vec![0; dim + 1];
    b[0] += 1;
    b[dim] += 1;
    b
}
