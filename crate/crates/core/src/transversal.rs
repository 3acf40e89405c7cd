//! Transversals (hitting sets) of facet hypergraphs.
//!
//! The exact solver is a branch-and-bound over a dense relabelling of the
//! vertices. Vertices are indexed in ascending label order, so "smallest
//! index" and "smallest label" tie-breaks coincide.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::Serialize;

use crate::complex::{Face, PureComplex, Vertex};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<Vertex>,
    edges: Vec<Face>,
}

impl Hypergraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Face>,
    ) -> Result<Self> {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let edges: BTreeSet<Face> = edges.into_iter().collect();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
            if let Some(v) = e.vertices().iter().find(|v| !vertices.contains(v)) {
                return Err(Error::UnknownVertex(v.get()));
            }
        }
        Ok(Hypergraph {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn is_transversal(&self, t: &BTreeSet<Vertex>) -> Result<bool> {
        if let Some(v) = t.iter().find(|v| self.vertices.binary_search(v).is_err()) {
            return Err(Error::UnknownVertex(v.get()));
        }
        Ok(self
            .edges
            .iter()
            .all(|e| e.vertices().iter().any(|v| t.contains(v))))
    }
}

/// Vertices of the complex against its facets.
pub fn facet_hypergraph(delta: &PureComplex) -> Result<Hypergraph> {
    Hypergraph::new(delta.vertex_set(), delta.facets().iter().cloned())
}

/// Repeatedly takes the vertex meeting the most uncovered edges, smallest
/// label first on ties.
pub fn greedy_transversal(h: &Hypergraph) -> BTreeSet<Vertex> {
    let mut uncovered: Vec<&Face> = h.edges.iter().collect();
    let mut picked = BTreeSet::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, Vertex)> = None;
        for &v in &h.vertices {
            let deg = uncovered.iter().filter(|e| e.contains(v)).count();
            if best.is_none_or(|(d, _)| deg > d) {
                best = Some((deg, v));
            }
        }
        let (_, v) = best.expect("uncovered edges have vertices");
        picked.insert(v);
        uncovered.retain(|e| !e.contains(v));
    }
    picked
}

/// Size of a maximal family of pairwise disjoint edges, built greedily in
/// lexicographic edge order.
pub fn matching_lower_bound(h: &Hypergraph) -> usize {
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut count = 0;
    for e in &h.edges {
        if e.vertices().iter().all(|v| !used.contains(v)) {
            used.extend(e.vertices().iter().copied());
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalCertificate {
    pub hitting_set: BTreeSet<Vertex>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

/// Fixed-width bitsets stored back to back in one buffer.
struct Bits {
    words: usize,
}

impl Bits {
    fn count(&self, set: &[u64]) -> u32 {
        set.iter().map(|w| w.count_ones()).sum()
    }

    fn test(&self, set: &[u64], i: usize) -> bool {
        set[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&self, set: &mut [u64], i: usize) {
        set[i / 64] |= 1 << (i % 64);
    }

    fn intersects(&self, a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }
}

struct Search {
    bits: Bits,
    vertex_count: usize,
    best: Vec<u64>,
    best_size: usize,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl Search {
    /// `edges` holds the uncovered edges, each restricted to vertices that
    /// are still allowed.
    fn explore(&mut self, edges: &[u64], chosen: &mut Vec<u64>, chosen_size: usize) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        let w = self.bits.words;
        if edges.is_empty() {
            if chosen_size < self.best_size {
                self.best_size = chosen_size;
                self.best.clone_from(chosen);
            }
            return;
        }
        if chosen_size + 1 >= self.best_size {
            return;
        }

        // Singleton edges force their vertex.
        let mut forced = vec![0u64; w];
        for e in edges.chunks_exact(w) {
            match self.bits.count(e) {
                0 => return,
                1 => forced.iter_mut().zip(e).for_each(|(f, x)| *f |= x),
                _ => {}
            }
        }
        let forced_size = self.bits.count(&forced) as usize;
        if forced_size > 0 {
            let saved = chosen.clone();
            chosen.iter_mut().zip(&forced).for_each(|(c, f)| *c |= f);
            let rest: Vec<u64> = edges
                .chunks_exact(w)
                .filter(|e| !self.bits.intersects(e, &forced))
                .flatten()
                .copied()
                .collect();
            self.explore(&rest, chosen, chosen_size + forced_size);
            *chosen = saved;
            return;
        }

        if chosen_size + self.disjoint_bound(edges) >= self.best_size {
            return;
        }

        let mut degree = vec![0u32; self.vertex_count];
        for e in edges.chunks_exact(w) {
            for (wi, &word) in e.iter().enumerate() {
                let mut x = word;
                while x != 0 {
                    degree[wi * 64 + x.trailing_zeros() as usize] += 1;
                    x &= x - 1;
                }
            }
        }
        let v = (0..self.vertex_count)
            .max_by_key(|&i| (degree[i], std::cmp::Reverse(i)))
            .expect("nonempty vertex set");

        // include v
        self.bits.set(chosen, v);
        let with: Vec<u64> = edges
            .chunks_exact(w)
            .filter(|e| !self.bits.test(e, v))
            .flatten()
            .copied()
            .collect();
        self.explore(&with, chosen, chosen_size + 1);
        chosen[v / 64] &= !(1 << (v % 64));

        // exclude v
        let mut without = edges.to_vec();
        for e in without.chunks_exact_mut(w) {
            e[v / 64] &= !(1 << (v % 64));
        }
        self.explore(&without, chosen, chosen_size);
    }

    /// Greedy disjoint edges, smallest first.
    fn disjoint_bound(&self, edges: &[u64]) -> usize {
        let w = self.bits.words;
        let mut order: Vec<(u32, usize)> = edges
            .chunks_exact(w)
            .enumerate()
            .map(|(i, e)| (self.bits.count(e), i))
            .collect();
        order.sort_unstable();
        let mut used = vec![0u64; w];
        let mut count = 0;
        for (_, i) in order {
            let e = &edges[i * w..(i + 1) * w];
            if !self.bits.intersects(e, &used) {
                used.iter_mut().zip(e).for_each(|(u, x)| *u |= x);
                count += 1;
            }
        }
        count
    }
}

/// Minimum transversal by branch-and-bound, seeded with the greedy solution.
///
/// When the budget runs out the certificate carries the best transversal
/// found and the root lower bound.
pub fn exact_transversal(h: &Hypergraph, budget: Duration) -> TransversalCertificate {
    let start = Instant::now();
    let seed = greedy_transversal(h);
    let root_bound = matching_lower_bound(h);
    let vertex_count = h.vertices.len();
    let bits = Bits {
        words: vertex_count.div_ceil(64).max(1),
    };
    let w = bits.words;
    let index = |v: &Vertex| {
        h.vertices
            .binary_search(v)
            .expect("edge vertices are known")
    };

    let mut edges = vec![0u64; h.edges.len() * w];
    for (e, slot) in h.edges.iter().zip(edges.chunks_exact_mut(w)) {
        for v in e.vertices() {
            bits.set(slot, index(v));
        }
    }
    let mut best = vec![0u64; w];
    for v in &seed {
        bits.set(&mut best, index(v));
    }

    let mut search = Search {
        bits,
        vertex_count,
        best_size: seed.len(),
        best,
        nodes: 0,
        deadline: start + budget,
        timed_out: false,
    };
    let mut chosen = vec![0u64; w];
    search.explore(&edges, &mut chosen, 0);

    let hitting_set: BTreeSet<Vertex> = (0..vertex_count)
        .filter(|&i| search.bits.test(&search.best, i))
        .map(|i| h.vertices[i])
        .collect();
    let upper_bound = hitting_set.len();
    let optimal = !search.timed_out;
    TransversalCertificate {
        hitting_set,
        lower_bound: if optimal {
            upper_bound
        } else {
            root_bound.min(upper_bound)
        },
        upper_bound,
        optimal,
        nodes_explored: search.nodes,
        timed_out: search.timed_out,
    }
}

/// `(lower / f_0, upper / f_0)`.
pub fn transversal_ratio(
    delta: &PureComplex,
    cert: &TransversalCertificate,
) -> (Ratio<u64>, Ratio<u64>) {
    let f0 = delta.vertex_count().max(1) as u64;
    (
        Ratio::new(cert.lower_bound as u64, f0),
        Ratio::new(cert.upper_bound as u64, f0),
    )
}

/// Known transversals of `Δ^3_n` (odd labels) and `Δ^4_n` (labels
/// congruent to 1 or 2 mod 5), each together with `±n`.
pub fn explicit_cs_transversal(d: usize, n: usize) -> Result<BTreeSet<Vertex>> {
    if n <= d {
        return Err(Error::TooFewVertices { min: d, got: n });
    }
    let keep: fn(usize) -> bool = match d {
        3 => |j| j % 2 == 1,
        4 => |j| j % 5 == 1 || j % 5 == 2,
        _ => {
            return Err(invalid(format!(
                "explicit transversals exist for d = 3, 4; got {d}"
            )))
        }
    };
    Ok((1..=n)
        .filter(|&j| keep(j) || j == n)
        .flat_map(|j| {
            let v = Vertex::new(j as i32).expect("positive label");
            [v, v.antipode()]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[i32]]) -> Hypergraph {
        let faces: Vec<Face> = edges
            .iter()
            .map(|e| Face::from_labels(e).unwrap())
            .collect();
        let verts: BTreeSet<Vertex> = faces
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        Hypergraph::new(verts, faces).unwrap()
    }

    fn set(labels: &[i32]) -> BTreeSet<Vertex> {
        labels.iter().map(|&l| Vertex::new(l).unwrap()).collect()
    }

    fn square() -> Hypergraph {
        hg(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])
    }

    #[test]
    fn construction_rules() {
        let v = set(&[1, 2]);
        assert_eq!(
            Hypergraph::new(v.clone(), [Face::empty()]),
            Err(Error::EmptyEdge)
        );
        assert_eq!(
            Hypergraph::new(v, [Face::from_labels(&[1, 3]).unwrap()]),
            Err(Error::UnknownVertex(3))
        );
        let dup = hg(&[&[1, 2], &[2, 1]]);
        assert_eq!(dup.edges().len(), 1);
    }

    #[test]
    fn transversal_checks() {
        let h = square();
        assert!(h.is_transversal(&set(&[1, 2, -1, -2])).unwrap());
        assert!(!h.is_transversal(&BTreeSet::new()).unwrap());
        assert_eq!(h.is_transversal(&set(&[7])), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn greedy() {
        assert_eq!(greedy_transversal(&hg(&[&[1, 2, 3]])), set(&[1]));
        let g = greedy_transversal(&square());
        assert_eq!(g.len(), 2);
        assert!(square().is_transversal(&g).unwrap());
    }

    #[test]
    fn matchings() {
        assert_eq!(matching_lower_bound(&hg(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(matching_lower_bound(&square()), 2);
        assert_eq!(matching_lower_bound(&hg(&[&[1, 2], &[2, 3], &[1, 3]])), 1);
    }

    #[test]
    fn exact_small() {
        let tetra = hg(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let c = exact_transversal(&tetra, DEFAULT_BUDGET);
        assert!(c.optimal);
        assert_eq!(c.upper_bound, 2);
        assert_eq!(c.lower_bound, 2);
        assert!(tetra.is_transversal(&c.hitting_set).unwrap());

        let triangle = hg(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(exact_transversal(&triangle, DEFAULT_BUDGET).upper_bound, 2);

        let none = Hypergraph::new(set(&[1, 2]), []).unwrap();
        let c = exact_transversal(&none, DEFAULT_BUDGET);
        assert_eq!((c.upper_bound, c.optimal), (0, true));
    }

    #[test]
    fn exact_handles_wide_vertex_sets() {
        // 70 disjoint pairs plus a star; needs more than one bitset word
        let mut edges: Vec<Vec<i32>> = (0..70).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        edges.push(vec![1, 3, 5]);
        let refs: Vec<&[i32]> = edges.iter().map(|e| e.as_slice()).collect();
        let h = hg(&refs);
        let c = exact_transversal(&h, DEFAULT_BUDGET);
        assert!(c.optimal);
        assert_eq!(c.upper_bound, 70);
        assert!(h.is_transversal(&c.hitting_set).unwrap());
    }

    #[test]
    fn zero_budget_times_out_gracefully() {
        let edges: Vec<Vec<i32>> = (1..=14)
            .flat_map(|a| (a + 1..=14).map(move |b| vec![a, b]))
            .collect();
        let refs: Vec<&[i32]> = edges.iter().map(|e| e.as_slice()).collect();
        let h = hg(&refs);
        let c = exact_transversal(&h, Duration::ZERO);
        assert!(c.lower_bound <= c.upper_bound);
        assert!(h.is_transversal(&c.hitting_set).unwrap());
        if c.timed_out {
            assert!(!c.optimal);
        } else {
            assert_eq!(c.upper_bound, 13);
        }
    }

    #[test]
    fn explicit_sets() {
        assert_eq!(
            explicit_cs_transversal(3, 9).unwrap(),
            set(&[1, -1, 3, -3, 5, -5, 7, -7, 9, -9])
        );
        assert_eq!(
            explicit_cs_transversal(4, 12).unwrap(),
            set(&[1, -1, 2, -2, 6, -6, 7, -7, 11, -11, 12, -12])
        );
        assert_eq!(
            explicit_cs_transversal(3, 4).unwrap(),
            set(&[1, -1, 3, -3, 4, -4])
        );
        assert!(matches!(
            explicit_cs_transversal(5, 9),
            Err(Error::InvalidParameters(_))
        ));
    }
}
