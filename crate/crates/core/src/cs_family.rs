//! Centrally symmetric cs-neighborly spheres `Δ^d_n` and the balls
//! `B^{d,i}_n` defined alongside them by interlaced recursion.
//!
//! * `Δ^1_n` is the cycle `(1, ..., n, -1, ..., -n, 1)`; `Δ^d_{d+1}` is the
//!   boundary of the `(d+1)`-cross-polytope.
//! * `B^{d,j}_n` is empty for `j < 0`, and `B^{1,0}_n` is the edge `{-1, n}`.
//! * For odd `d = 2k-1`, `B^{d,k}_n = Δ^d_n \ B^{d,k-1}_n`.
//! * Otherwise `B^{d,i}_n = (B^{d-1,i}_{n-1} * n) ∪ ((-B^{d-1,i-1}_{n-1}) * (-n))`.
//! * `Δ^d_{n+1}` replaces `B = B^{d,⌈d/2⌉-1}_n` by `∂B * (n+1)` and `-B` by
//!   `∂(-B) * (-n-1)`.
//!
//! Every ball with `i <= ⌈d/2⌉ - 1` is checked to sit inside `Δ^d_n` as it is
//! built, and every replacement step checks that `B` and `-B` share no facet.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::checks::{certify_sphere, is_cs, SphereCertificate};
use crate::complex::{Face, PureComplex, Vertex};
use crate::error::{invalid, Error, Result};
use crate::polytopes::cross_boundary;

fn ceil_half(d: usize) -> usize {
    d.div_ceil(2)
}

fn label(x: i64) -> Vertex {
    Vertex::new(x as i32).expect("recursion labels are nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CsKey {
    Sphere { d: usize, n: usize },
    Ball { d: usize, i: i64, n: usize },
}

/// Memo table for the recursion. Shareable across threads; concurrent
/// builders may both compute a key, and the later insert must agree.
#[derive(Default)]
pub struct CsFamily {
    memo: RwLock<HashMap<CsKey, Arc<PureComplex>>>,
}

impl CsFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached_keys(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn memoized(
        &self,
        key: CsKey,
        build: impl FnOnce() -> Result<PureComplex>,
    ) -> Result<Arc<PureComplex>> {
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let value = Arc::new(build()?);
        let mut memo = self.memo.write().expect("memo lock");
        let stored = memo.entry(key).or_insert_with(|| Arc::clone(&value));
        if **stored != *value {
            return Err(Error::RecursionInvariantViolated(format!(
                "{key:?} computed twice with different results"
            )));
        }
        Ok(Arc::clone(stored))
    }

    /// `Δ^d_n` on `±[1, n]`.
    pub fn sphere(&self, d: usize, n: usize) -> Result<Arc<PureComplex>> {
        if d == 0 {
            return Err(invalid("Δ^d_n needs d >= 1"));
        }
        if n <= d {
            return Err(Error::TooFewVertices { min: d, got: n });
        }
        self.memoized(CsKey::Sphere { d, n }, || self.build_sphere(d, n))
    }

    fn build_sphere(&self, d: usize, n: usize) -> Result<PureComplex> {
        if d == 1 {
            return Ok(cs_cycle(n));
        }
        if n == d + 1 {
            return cross_boundary(d + 1);
        }
        let prev = self.sphere(d, n - 1)?;
        let ball = self.ball(d, ceil_half(d) as i64 - 1, n - 1)?;
        replace_antipodal_balls(&prev, &ball, label(n as i64))
            .map_err(|e| Error::RecursionInvariantViolated(format!("building Δ^{d}_{n}: {e}")))
    }

    /// `B^{d,i}_n`.
    pub fn ball(&self, d: usize, i: i64, n: usize) -> Result<Arc<PureComplex>> {
        if d == 0 || i > ceil_half(d) as i64 {
            return Err(invalid(format!(
                "B^{{d,i}}_n needs d >= 1 and i <= ⌈d/2⌉, got d = {d}, i = {i}"
            )));
        }
        if i < 0 {
            return Ok(Arc::new(PureComplex::empty()));
        }
        if n <= d {
            return Err(invalid(format!(
                "B^{{{d},{i}}}_n needs n >= {}, got {n}",
                d + 1
            )));
        }
        self.memoized(CsKey::Ball { d, i, n }, || self.build_ball(d, i, n))
    }

    fn build_ball(&self, d: usize, i: i64, n: usize) -> Result<PureComplex> {
        let ball = if d == 1 && i == 0 {
            PureComplex::simplex(Face::new([label(-1), label(n as i64)]))
        } else if d % 2 == 1 && i == ceil_half(d) as i64 {
            self.sphere(d, n)?
                .relative_difference(&*self.ball(d, i - 1, n)?)?
        } else {
            let apex = n as i64;
            let upper = cone_or_empty(&*self.ball(d - 1, i, n - 1)?, label(apex))?;
            let lower = cone_or_empty(&self.ball(d - 1, i - 1, n - 1)?.negate(), label(-apex))?;
            upper.union(&lower)?
        };
        if ball.is_empty() || ball.dim() != d as isize {
            return Err(Error::RecursionInvariantViolated(format!(
                "B^{{{d},{i}}}_{n} is not a pure {d}-complex"
            )));
        }
        if i < ceil_half(d) as i64 {
            let sphere = self.sphere(d, n)?;
            if let Some(f) = ball.facets().iter().find(|f| !sphere.contains_facet(f)) {
                return Err(Error::RecursionInvariantViolated(format!(
                    "facet {f} of B^{{{d},{i}}}_{n} is not in Δ^{d}_{n}"
                )));
            }
        }
        Ok(ball)
    }

    pub fn lambda_sphere(&self, k: usize, n: usize, edge: &Face) -> Result<LambdaSphere> {
        if k < 2 {
            return Err(invalid("Λ needs k >= 2"));
        }
        if edge.len() != 2 {
            return Err(invalid(format!("{edge} is not an edge")));
        }
        let host = self.sphere(2 * k + 1, n + 2)?;
        let complex = host.link(edge)?;
        Ok(LambdaSphere {
            edge: edge.clone(),
            certificate: certify_sphere(&complex)?,
            cs: is_cs(&complex),
            complex,
        })
    }

    /// Links of every edge of `Δ^{2k+1}_{n+2}`, in edge order.
    pub fn scan_lambda_edges(&self, k: usize, n: usize) -> Result<Vec<LambdaSphere>> {
        if k < 2 {
            return Err(invalid("Λ needs k >= 2"));
        }
        let host = self.sphere(2 * k + 1, n + 2)?;
        host.faces_of_size(2)
            .iter()
            .map(|e| self.lambda_sphere(k, n, e))
            .collect()
    }
}

/// Link of an edge of `Δ^{2k+1}_{n+2}` together with its checks.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaSphere {
    pub edge: Face,
    #[serde(skip)]
    pub complex: PureComplex,
    pub certificate: SphereCertificate,
    pub cs: bool,
}

impl LambdaSphere {
    /// Sphere profile on the expected `2n` vertices.
    pub fn is_candidate(&self, n: usize) -> bool {
        self.certificate.passed() && self.complex.vertex_count() == 2 * n
    }
}

fn cone_or_empty(c: &PureComplex, apex: Vertex) -> Result<PureComplex> {
    if c.is_empty() {
        Ok(PureComplex::empty())
    } else {
        c.cone(apex)
    }
}

/// The cycle `(1, ..., n, -1, ..., -n, 1)`.
pub fn cs_cycle(n: usize) -> PureComplex {
    let n = n as i64;
    let mut facets = BTreeSet::new();
    for j in 1..n {
        facets.insert(Face::new([label(j), label(j + 1)]));
        facets.insert(Face::new([label(-j), label(-j - 1)]));
    }
    facets.insert(Face::new([label(n), label(-1)]));
    facets.insert(Face::new([label(-n), label(1)]));
    PureComplex::from_facets_unchecked(1, facets)
}

/// Replace `ball` by `∂ball * apex` and `-ball` by `∂(-ball) * (-apex)`.
fn replace_antipodal_balls(
    sphere: &PureComplex,
    ball: &PureComplex,
    apex: Vertex,
) -> Result<PureComplex> {
    let antipodal = ball.negate();
    if let Some(f) = ball.facets().intersection(antipodal.facets()).next() {
        return Err(invalid(format!("B and -B share the facet {f}")));
    }
    for f in ball.facets().iter().chain(antipodal.facets()) {
        if !sphere.contains_facet(f) {
            return Err(Error::NotSubcomplex(f.clone()));
        }
    }
    sphere
        .relative_difference(ball)?
        .relative_difference(&antipodal)?
        .union(&ball.boundary().cone(apex)?)?
        .union(&antipodal.boundary().cone(apex.antipode())?)
}

pub fn delta_sphere(d: usize, n: usize) -> Result<PureComplex> {
    CsFamily::new().sphere(d, n).map(Arc::unwrap_or_clone)
}

pub fn cs_ball(d: usize, i: i64, n: usize) -> Result<PureComplex> {
    CsFamily::new().ball(d, i, n).map(Arc::unwrap_or_clone)
}

pub fn lambda_sphere(k: usize, n: usize, edge: &Face) -> Result<LambdaSphere> {
    CsFamily::new().lambda_sphere(k, n, edge)
}
