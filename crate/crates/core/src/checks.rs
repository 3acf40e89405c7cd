//! Structural certificates: pseudomanifold, Euler characteristic, homology,
//! neighborliness and central symmetry.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complex::{Face, PureComplex};
use crate::error::{Error, Result};
use crate::homology::{gf2_betti, sphere_betti};

#[derive(Clone, Debug, Serialize)]
pub struct PseudomanifoldReport {
    /// Ridges not lying in exactly two facets, with their incidence count.
    pub bad_ridges: Vec<(Face, usize)>,
    pub components: usize,
}

impl PseudomanifoldReport {
    pub fn passed(&self) -> bool {
        self.bad_ridges.is_empty() && self.components == 1
    }
}

pub fn pseudomanifold_report(delta: &PureComplex) -> PseudomanifoldReport {
    let facets: Vec<&Face> = delta.facets().iter().collect();
    let mut incidence: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.ridges() {
            incidence.entry(r).or_default().push(i);
        }
    }
    let mut bad_ridges: Vec<(Face, usize)> = incidence
        .iter()
        .filter(|(_, inc)| inc.len() != 2)
        .map(|(r, inc)| (r.clone(), inc.len()))
        .collect();
    bad_ridges.sort();

    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for inc in incidence.values() {
        for w in inc.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let components = (0..facets.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count();
    PseudomanifoldReport {
        bad_ridges,
        components,
    }
}

/// Every ridge lies in exactly two facets and the dual graph is connected.
pub fn is_closed_pseudomanifold(delta: &PureComplex) -> bool {
    delta.dim() >= 0 && pseudomanifold_report(delta).passed()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Every `k` vertices span a face. Vacuous for `k == 0`, false above the
/// facet cardinality.
pub fn is_k_neighborly(delta: &PureComplex, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if delta.is_empty() || k as isize > delta.dim() + 1 {
        return false;
    }
    let f0 = delta.vertex_count() as u64;
    delta.faces_of_size(k).len() as u64 == binomial(f0, k as u64)
}

/// Negation maps facets onto facets and no facet holds an antipodal pair.
pub fn is_cs(delta: &PureComplex) -> bool {
    delta
        .facets()
        .iter()
        .all(|f| !f.has_antipodal_pair() && delta.contains_facet(&f.negate()))
}

/// Every antipode-free `k`-subset of the vertex set spans a face.
pub fn is_cs_k_neighborly(delta: &PureComplex, k: usize) -> Result<bool> {
    if !is_cs(delta) {
        return Err(Error::NotCentrallySymmetric);
    }
    if k == 0 {
        return Ok(true);
    }
    if delta.is_empty() || k as isize > delta.dim() + 1 {
        return Ok(false);
    }
    // Faces of a cs complex are antipode-free, so comparing counts suffices.
    let mut classes: BTreeMap<u32, u64> = BTreeMap::new();
    for v in delta.vertex_set() {
        *classes.entry(v.abs()).or_insert(0) += 1;
    }
    let mut poly = vec![0u64; k + 1];
    poly[0] = 1;
    for &size in classes.values() {
        for j in (1..=k).rev() {
            poly[j] += size * poly[j - 1];
        }
    }
    Ok(delta.faces_of_size(k).len() as u64 == poly[k])
}

/// Euler characteristic of a `dim`-sphere.
pub fn sphere_euler(dim: isize) -> i64 {
    if dim % 2 == 0 {
        2
    } else {
        0
    }
}

/// Homology-level evidence that a complex is a sphere.
#[derive(Clone, Debug, Serialize)]
pub struct SphereCertificate {
    pub dim: isize,
    pub f_vector: Vec<u64>,
    pub euler: i64,
    pub betti: Vec<usize>,
    pub pseudomanifold: bool,
}

impl SphereCertificate {
    pub fn euler_ok(&self) -> bool {
        self.euler == sphere_euler(self.dim)
    }

    pub fn betti_ok(&self) -> bool {
        self.dim >= 0 && self.betti == sphere_betti(self.dim as usize)
    }

    pub fn passed(&self) -> bool {
        self.pseudomanifold && self.euler_ok() && self.betti_ok()
    }
}

pub fn certify_sphere(delta: &PureComplex) -> Result<SphereCertificate> {
    let f_vector = delta.f_vector()?;
    Ok(SphereCertificate {
        dim: delta.dim(),
        euler: f_vector.euler_characteristic(),
        f_vector: f_vector.counts().to_vec(),
        betti: gf2_betti(delta)?,
        pseudomanifold: is_closed_pseudomanifold(delta),
    })
}

/// Boundary is a sphere of one lower dimension and the complex is acyclic.
pub fn certify_ball(ball: &PureComplex) -> Result<bool> {
    if ball.is_empty() {
        return Ok(false);
    }
    let mut acyclic = vec![0; (ball.dim() + 1) as usize];
    acyclic[0] = 1;
    if gf2_betti(ball)? != acyclic {
        return Ok(false);
    }
    let boundary = ball.boundary();
    Ok(boundary.dim() == ball.dim() - 1 && certify_sphere(&boundary)?.passed())
}
