//! Pure simplicial complexes stored by their facets.
//!
//! Vertices carry nonzero signed integer labels and the antipodal map is
//! numeric negation, so centrally symmetric complexes need no extra data.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of faces materialised by [`PureComplex::f_vector`].
pub const DEFAULT_FACE_LIMIT: usize = 10_000_000;

/// A vertex label. Never zero; `-v` is the antipode of `v`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Vertex(i32);

impl Vertex {
    pub fn new(label: i32) -> Result<Self> {
        if label == 0 {
            Err(Error::ZeroLabel)
        } else {
            Ok(Vertex(label))
        }
    }

    pub const fn get(self) -> i32 {
        self.0
    }

    pub const fn antipode(self) -> Self {
        Vertex(-self.0)
    }

    pub const fn abs(self) -> u32 {
        self.0.unsigned_abs()
    }
}

impl TryFrom<i32> for Vertex {
    type Error = Error;

    fn try_from(label: i32) -> Result<Self> {
        Vertex::new(label)
    }
}

impl From<Vertex> for i32 {
    fn from(v: Vertex) -> i32 {
        v.0
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite set of vertices, kept sorted ascending by label.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Builds a face from any collection of vertices; duplicates collapse.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn from_labels(labels: &[i32]) -> Result<Self> {
        labels
            .iter()
            .map(|&l| Vertex::new(l))
            .collect::<Result<Vec<_>>>()
            .map(Face::new)
    }

    /// Wraps an already sorted, duplicate-free vector.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn labels(&self) -> Vec<i32> {
        self.0.iter().map(|v| v.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn with(&self, v: Vertex) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    /// The face with the vertex at `index` removed.
    pub fn without_index(&self, index: usize) -> Face {
        let mut out = self.0.clone();
        out.remove(index);
        Face(out)
    }

    /// All codimension-one subfaces, in the order of the dropped vertex.
    pub fn ridges(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).map(move |i| self.without_index(i))
    }

    pub fn negate(&self) -> Face {
        Face(self.0.iter().rev().map(|v| v.antipode()).collect())
    }

    pub fn has_antipodal_pair(&self) -> bool {
        self.0
            .iter()
            .any(|v| v.get() > 0 && self.contains(v.antipode()))
    }

    /// Calls `f` on every subface of the given cardinality.
    pub fn for_each_subset(&self, size: usize, mut f: impl FnMut(Face)) {
        if size > self.len() {
            return;
        }
        let n = self.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            f(Face(idx.iter().map(|&i| self.0[i]).collect()));
            let mut pos = size;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                if idx[pos] != pos + n - size {
                    break;
                }
                if pos == 0 {
                    return;
                }
            }
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<Vertex> for Face {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Face::new(iter)
    }
}

/// Face numbers `(f_{-1}, f_0, ..., f_{d})` of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        FVector { counts }
    }

    /// `f_i`; zero outside the stored range.
    pub fn f(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|j| self.counts.get(j).copied())
            .unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// A pure simplicial complex given by its facets.
///
/// A complex without facets is the distinguished `EMPTY` complex; it reports
/// dimension `-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PureComplex {
    dim: isize,
    facets: BTreeSet<Face>,
}

impl Default for PureComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl fmt::Debug for PureComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.facets.iter()).finish()
    }
}

impl PureComplex {
    pub fn empty() -> Self {
        PureComplex {
            dim: -1,
            facets: BTreeSet::new(),
        }
    }

    pub fn new(facets: impl IntoIterator<Item = Face>) -> Result<Self> {
        let facets: BTreeSet<Face> = facets.into_iter().collect();
        let mut sizes = facets.iter().map(Face::len);
        let Some(first) = sizes.next() else {
            return Ok(Self::empty());
        };
        if let Some(found) = sizes.find(|&s| s != first) {
            return Err(Error::Impure {
                expected: first,
                found,
            });
        }
        Ok(PureComplex {
            dim: first as isize - 1,
            facets,
        })
    }

    pub fn from_labels(facets: &[&[i32]]) -> Result<Self> {
        facets
            .iter()
            .map(|f| Face::from_labels(f))
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    /// The full simplex on a face.
    pub fn simplex(face: Face) -> Self {
        PureComplex {
            dim: face.dim(),
            facets: BTreeSet::from([face]),
        }
    }

    pub(crate) fn from_facets_unchecked(dim: isize, facets: BTreeSet<Face>) -> Self {
        if facets.is_empty() {
            return Self::empty();
        }
        debug_assert!(facets.iter().all(|f| f.dim() == dim));
        PureComplex { dim, facets }
    }

    /// Dimension of the facets; `-1` for `EMPTY`.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> &BTreeSet<Face> {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn contains_facet(&self, f: &Face) -> bool {
        self.facets.contains(f)
    }

    pub fn has_face(&self, f: &Face) -> bool {
        self.facets.contains(f) || self.facets.iter().any(|g| f.is_subset(g))
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    /// Every facet of `self` is a facet of `other`.
    pub fn is_subcomplex_of(&self, other: &PureComplex) -> bool {
        self.facets.is_subset(&other.facets)
    }

    /// Distinct faces of the given cardinality.
    pub fn faces_of_size(&self, size: usize) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            f.for_each_subset(size, |g| {
                out.insert(g);
            });
        }
        out
    }

    pub fn union(&self, other: &PureComplex) -> Result<PureComplex> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let facets = self.facets.union(&other.facets).cloned().collect();
        Ok(PureComplex::from_facets_unchecked(self.dim, facets))
    }

    /// `self * other`. Joining with `EMPTY` returns the other operand.
    pub fn join(&self, other: &PureComplex) -> Result<PureComplex> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let mine = self.vertex_set();
        if let Some(v) = other.vertex_set().into_iter().find(|v| mine.contains(v)) {
            return Err(Error::InvalidJoin(v.get()));
        }
        let mut facets = BTreeSet::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.insert(a.union(b));
            }
        }
        Ok(PureComplex::from_facets_unchecked(
            self.dim + other.dim + 1,
            facets,
        ))
    }

    pub fn cone(&self, apex: Vertex) -> Result<PureComplex> {
        self.join(&PureComplex::simplex(Face::from_sorted(vec![apex])))
    }

    /// `self \ other`: the subcomplex generated by facets of `self` that are
    /// not facets of `other`.
    pub fn relative_difference(&self, other: &PureComplex) -> Result<PureComplex> {
        if other.is_empty() {
            return Ok(self.clone());
        }
        if !self.is_empty() && self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let facets = self.facets.difference(&other.facets).cloned().collect();
        Ok(PureComplex::from_facets_unchecked(self.dim, facets))
    }

    /// Ridge incidence counts.
    pub fn ridge_counts(&self) -> HashMap<Face, usize> {
        let mut counts: HashMap<Face, usize> = HashMap::new();
        for f in &self.facets {
            for r in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// The complex generated by the ridges lying in exactly one facet.
    pub fn boundary(&self) -> PureComplex {
        if self.dim < 0 {
            return PureComplex::empty();
        }
        let facets = self
            .ridge_counts()
            .into_iter()
            .filter_map(|(r, c)| (c == 1).then_some(r))
            .collect();
        PureComplex::from_facets_unchecked(self.dim - 1, facets)
    }

    pub fn negate(&self) -> PureComplex {
        PureComplex {
            dim: self.dim,
            facets: self.facets.iter().map(Face::negate).collect(),
        }
    }

    pub fn link(&self, face: &Face) -> Result<PureComplex> {
        let facets: BTreeSet<Face> = self
            .facets
            .iter()
            .filter(|g| face.is_subset(g))
            .map(|g| g.difference(face))
            .collect();
        if facets.is_empty() {
            return Err(Error::FaceNotPresent(face.clone()));
        }
        Ok(PureComplex {
            dim: self.dim - face.len() as isize,
            facets,
        })
    }

    pub fn f_vector(&self) -> Result<FVector> {
        self.f_vector_with_limit(DEFAULT_FACE_LIMIT)
    }

    pub fn f_vector_with_limit(&self, limit: usize) -> Result<FVector> {
        let faces = self.faces_by_size(limit)?;
        Ok(FVector::from_counts(
            faces.iter().map(|level| level.len() as u64).collect(),
        ))
    }

    /// All faces grouped by cardinality `0..=dim+1`, each level sorted.
    pub fn faces_by_size(&self, limit: usize) -> Result<Vec<Vec<Face>>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let top = (self.dim + 1) as usize;
        let mut levels: Vec<HashSet<Face>> = vec![HashSet::new(); top + 1];
        let mut total = 0usize;
        for (size, level) in levels.iter_mut().enumerate() {
            for f in &self.facets {
                let mut over = false;
                f.for_each_subset(size, |g| {
                    if level.insert(g) {
                        total += 1;
                        over |= total > limit;
                    }
                });
                if over {
                    return Err(Error::TooLarge { limit });
                }
            }
        }
        Ok(levels
            .into_iter()
            .map(|set| {
                let mut v: Vec<Face> = set.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect())
    }
}
