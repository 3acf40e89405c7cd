//! Squeezed balls, relative squeezed balls and the sewing construction.
//!
//! Elements of the pair poset are `2k`-sets `{i_1, i_1+1, ..., i_k, i_k+1}`
//! with `i_{j+1} >= i_j + 2`. They are stored by their start indices; the
//! product order on the full sorted tuples coincides with the componentwise
//! order on starts, since each tuple is `(i_1, i_1+1, ..., i_k, i_k+1)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{Face, PureComplex, Vertex};
use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairPattern {
    starts: Vec<u32>,
}

impl PairPattern {
    pub fn new(starts: Vec<u32>) -> Result<Self> {
        if starts.first() == Some(&0) {
            return Err(invalid("pair starts must be positive"));
        }
        if starts.windows(2).any(|w| w[1] < w[0] + 2) {
            return Err(invalid(format!(
                "pair starts {starts:?} must increase by at least 2"
            )));
        }
        Ok(PairPattern { starts })
    }

    pub fn k(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[u32] {
        &self.starts
    }

    pub fn face(&self) -> Face {
        Face::from_sorted(
            self.starts
                .iter()
                .flat_map(|&s| [s, s + 1])
                .map(|l| Vertex::new(l as i32).expect("pair labels are positive"))
                .collect(),
        )
    }

    /// Membership in the poset on `[m, n]`.
    pub fn within(&self, m: u32, n: u32) -> bool {
        match (self.starts.first(), self.starts.last()) {
            (Some(&first), Some(&last)) => m <= first && last < n,
            _ => true,
        }
    }

    pub fn leq(&self, other: &PairPattern) -> Result<bool> {
        if self.k() != other.k() {
            return Err(Error::ArityMismatch(self.k(), other.k()));
        }
        Ok(self.starts.iter().zip(&other.starts).all(|(a, b)| a <= b))
    }

    fn shifted_down(&self) -> Option<PairPattern> {
        (self.starts.first()? > &1).then(|| PairPattern {
            starts: self.starts.iter().map(|s| s - 1).collect(),
        })
    }
}

impl fmt::Debug for PairPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.starts)
    }
}

/// All patterns with `k` pairs inside `[m, n]`, lexicographic by starts.
pub fn enumerate_pair_poset(k: usize, m: u32, n: u32) -> Vec<PairPattern> {
    fn extend(k: usize, next: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<PairPattern>) {
        if cur.len() == k {
            out.push(PairPattern {
                starts: cur.clone(),
            });
            return;
        }
        let remaining = (k - cur.len()) as u32;
        // the last pair ends no earlier than s + 2*remaining - 1
        let mut s = next;
        while s + 2 * remaining - 1 <= n {
            cur.push(s);
            extend(k, s + 2, n, cur, out);
            cur.pop();
            s += 1;
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    extend(k, m, n, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Realized `2k`-sets of the pair poset on `[m, n]`.
pub fn pair_faces(k: usize, m: u32, n: u32) -> Vec<Face> {
    enumerate_pair_poset(k, m, n)
        .iter()
        .map(PairPattern::face)
        .collect()
}

/// A set of pairwise incomparable patterns in the poset on `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    k: usize,
    n: u32,
    members: BTreeSet<PairPattern>,
}

impl Antichain {
    pub fn new(k: usize, n: u32, members: impl IntoIterator<Item = PairPattern>) -> Result<Self> {
        let members: BTreeSet<PairPattern> = members.into_iter().collect();
        for p in &members {
            if p.k() != k {
                return Err(Error::ArityMismatch(k, p.k()));
            }
            if !p.within(1, n) {
                return Err(invalid(format!("{p:?} does not fit in [1, {n}]")));
            }
        }
        for a in &members {
            for b in &members {
                if a != b && a.leq(b)? {
                    return Err(invalid(format!("{a:?} <= {b:?}: not an antichain")));
                }
            }
        }
        Ok(Antichain { k, n, members })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<PairPattern> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The order ideal generated by the members.
    pub fn ideal(&self) -> Vec<PairPattern> {
        enumerate_pair_poset(self.k, 1, self.n)
            .into_iter()
            .filter(|p| {
                self.members
                    .iter()
                    .any(|q| p.leq(q).expect("arity checked on construction"))
            })
            .collect()
    }
}

/// `B(S)`: facets are the order ideal generated by `S`.
pub fn squeezed_ball(s: &Antichain) -> PureComplex {
    let facets = s.ideal().iter().map(PairPattern::face).collect();
    PureComplex::from_facets_unchecked(2 * s.k as isize - 1, facets)
}

/// `S - 1`: members with `i_1 > 1`, every start lowered by one.
pub fn shift_antichain(s: &Antichain) -> Antichain {
    Antichain {
        k: s.k,
        n: s.n,
        members: s
            .members
            .iter()
            .filter_map(PairPattern::shifted_down)
            .collect(),
    }
}

/// `B_S = B(S) \ B(S - 1)`.
pub fn relative_squeezed_ball(s: &Antichain) -> PureComplex {
    squeezed_ball(s)
        .relative_difference(&squeezed_ball(&shift_antichain(s)))
        .expect("both balls have dimension 2k-1")
}

/// `∂B_S`.
pub fn relative_squeezed_sphere(s: &Antichain) -> PureComplex {
    relative_squeezed_ball(s).boundary()
}

/// The antichain `{F_i = [i, i+1] ∪ [n-2k+4-i, n-i+1]}` for
/// `1 <= i <= floor(n/2) - k + 1`.
pub fn antichain_a(k: usize, n: u32) -> Result<Antichain> {
    if k < 3 || n < 2 * k as u32 + 1 {
        return Err(invalid(format!(
            "antichain A needs k >= 3 and n >= 2k+1, got k = {k}, n = {n}"
        )));
    }
    nested_antichain(k, n)
}

/// The same formula without the `k >= 3` restriction, for `k >= 1` and
/// `n >= 2k`.
pub fn nested_antichain(k: usize, n: u32) -> Result<Antichain> {
    let kk = k as u32;
    if k == 0 || n < 2 * kk {
        return Err(invalid(format!(
            "need k >= 1 and n >= 2k, got k = {k}, n = {n}"
        )));
    }
    let count = n / 2 + 1 - kk;
    let members = (1..=count).map(|i| {
        let tail = n + 4 - 2 * kk - i;
        let starts = std::iter::once(i)
            .chain((0..kk - 1).map(|j| tail + 2 * j))
            .collect();
        PairPattern::new(starts).expect("formula yields valid patterns")
    });
    Antichain::new(k, n, members)
}

/// Replace `ball` inside `sphere` by the cone over its boundary from `apex`.
pub fn sew(sphere: &PureComplex, ball: &PureComplex, apex: Vertex) -> Result<PureComplex> {
    if let Some(f) = ball.facets().iter().find(|f| !sphere.contains_facet(f)) {
        return Err(Error::NotSubcomplex(f.clone()));
    }
    if ball.facet_count() == sphere.facet_count() {
        return Err(invalid(
            "the ball must be a proper subcomplex of the sphere",
        ));
    }
    if sphere.vertex_set().contains(&apex) {
        return Err(Error::VertexClash(apex.get()));
    }
    sphere
        .relative_difference(ball)?
        .union(&ball.boundary().cone(apex)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{certify_sphere, is_k_neighborly};
    use crate::polytopes::{cyclic_boundary, simplex_boundary};

    fn pat(starts: &[u32]) -> PairPattern {
        PairPattern::new(starts.to_vec()).unwrap()
    }

    fn cx(facets: &[&[i32]]) -> PureComplex {
        PureComplex::from_labels(facets).unwrap()
    }

    #[test]
    fn pattern_validation() {
        assert!(PairPattern::new(vec![1, 2]).is_err());
        assert!(PairPattern::new(vec![0, 3]).is_err());
        assert_eq!(
            pat(&[1, 3]).face(),
            Face::from_labels(&[1, 2, 3, 4]).unwrap()
        );
    }

    #[test]
    fn enumeration() {
        let p = enumerate_pair_poset(1, 1, 4);
        assert_eq!(p, vec![pat(&[1]), pat(&[2]), pat(&[3])]);
        let p = enumerate_pair_poset(2, 1, 5);
        assert_eq!(p, vec![pat(&[1, 3]), pat(&[1, 4]), pat(&[2, 4])]);
        assert_eq!(enumerate_pair_poset(3, 1, 12).len(), 84);
        assert!(enumerate_pair_poset(3, 1, 5).is_empty());
        assert_eq!(enumerate_pair_poset(0, 3, 7), vec![pat(&[])]);
    }

    /// Brute force: every 2k-subset of [m, n] that splits into consecutive pairs.
    fn brute_pairs(k: usize, m: u32, n: u32) -> BTreeSet<Face> {
        use itertools::Itertools;
        (m..=n)
            .combinations(2 * k)
            .filter(|c| c.chunks(2).all(|p| p[1] == p[0] + 1))
            .map(|c| Face::from_labels(&c.iter().map(|&x| x as i32).collect::<Vec<_>>()).unwrap())
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in 1..=3 {
            for m in 1..=3 {
                for n in m..=11 {
                    let ours: BTreeSet<Face> = pair_faces(k, m, n).into_iter().collect();
                    assert_eq!(ours, brute_pairs(k, m, n), "k={k} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn start_order_matches_tuple_order() {
        for k in 1..=3 {
            let all = enumerate_pair_poset(k, 1, 10);
            for a in &all {
                for b in &all {
                    let fa = a.face().labels();
                    let fb = b.face().labels();
                    let tuple_leq = fa.iter().zip(&fb).all(|(x, y)| x <= y);
                    assert_eq!(a.leq(b).unwrap(), tuple_leq, "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn order() {
        assert!(pat(&[1, 3]).leq(&pat(&[2, 4])).unwrap());
        assert!(pat(&[1, 4]).leq(&pat(&[2, 4])).unwrap());
        assert!(!pat(&[2, 4]).leq(&pat(&[1, 4])).unwrap());
        assert_eq!(
            pat(&[1]).leq(&pat(&[1, 3])),
            Err(Error::ArityMismatch(1, 2))
        );
        let (f1, f2) = (pat(&[1, 9, 11]), pat(&[2, 8, 10]));
        assert!(!f1.leq(&f2).unwrap() && !f2.leq(&f1).unwrap());
    }

    #[test]
    fn antichain_rejects_comparable() {
        assert!(Antichain::new(2, 6, [pat(&[1, 3]), pat(&[2, 4])]).is_err());
        assert!(Antichain::new(2, 5, [pat(&[2, 5])]).is_err());
    }

    #[test]
    fn squeezed_balls() {
        let s = Antichain::new(2, 5, [pat(&[1, 3])]).unwrap();
        assert_eq!(squeezed_ball(&s), cx(&[&[1, 2, 3, 4]]));
        let s = Antichain::new(2, 5, [pat(&[2, 4])]).unwrap();
        assert_eq!(
            squeezed_ball(&s),
            cx(&[&[1, 2, 3, 4], &[1, 2, 4, 5], &[2, 3, 4, 5]])
        );
    }

    #[test]
    fn shifts() {
        let s = Antichain::new(2, 5, [pat(&[1, 3])]).unwrap();
        assert!(shift_antichain(&s).is_empty());
        let s = Antichain::new(2, 5, [pat(&[2, 4])]).unwrap();
        assert_eq!(
            shift_antichain(&s)
                .members()
                .iter()
                .cloned()
                .collect::<Vec<_>>(),
            vec![pat(&[1, 3])]
        );
        let a = antichain_a(3, 12).unwrap();
        assert_eq!(
            shift_antichain(&a)
                .members()
                .iter()
                .cloned()
                .collect::<Vec<_>>(),
            vec![pat(&[1, 7, 9]), pat(&[2, 6, 8]), pat(&[3, 5, 7])]
        );
    }

    #[test]
    fn relative_balls() {
        let s = Antichain::new(2, 5, [pat(&[1, 3])]).unwrap();
        assert_eq!(relative_squeezed_ball(&s), cx(&[&[1, 2, 3, 4]]));
        let s = Antichain::new(2, 5, [pat(&[2, 4])]).unwrap();
        assert_eq!(
            relative_squeezed_ball(&s),
            cx(&[&[1, 2, 4, 5], &[2, 3, 4, 5]])
        );
    }

    #[test]
    fn antichain_formula() {
        let a = antichain_a(3, 12).unwrap();
        let faces: Vec<Vec<i32>> = a.members().iter().map(|p| p.face().labels()).collect();
        assert_eq!(
            faces,
            vec![
                vec![1, 2, 9, 10, 11, 12],
                vec![2, 3, 8, 9, 10, 11],
                vec![3, 4, 7, 8, 9, 10],
                vec![4, 5, 6, 7, 8, 9],
            ]
        );
        let a13 = antichain_a(3, 13).unwrap();
        assert_eq!(
            a13.members().first().unwrap().face().labels(),
            vec![1, 2, 10, 11, 12, 13]
        );
        assert!(antichain_a(2, 9).is_err());
        assert!(antichain_a(3, 6).is_err());
        for n in 7..=16 {
            let a = antichain_a(3, n).unwrap();
            assert_eq!(a.members().len() as u32, n / 2 - 2);
        }
    }

    #[test]
    fn relative_squeezed_sphere_13() {
        let sphere = relative_squeezed_sphere(&antichain_a(3, 13).unwrap());
        assert_eq!(sphere.vertex_count(), 13);
        assert!(is_k_neighborly(&sphere, 2));
        assert_eq!(sphere.f_vector().unwrap().f(1), 78);
        assert_eq!(
            crate::homology::gf2_betti(&sphere).unwrap(),
            vec![1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn sew_one_facet() {
        let tetra = simplex_boundary(3);
        let out = sew(&tetra, &cx(&[&[1, 2, 3]]), Vertex::new(5).unwrap()).unwrap();
        assert_eq!(
            out,
            cx(&[
                &[1, 2, 4],
                &[1, 3, 4],
                &[2, 3, 4],
                &[1, 2, 5],
                &[1, 3, 5],
                &[2, 3, 5]
            ])
        );
    }

    #[test]
    fn sew_errors() {
        let tetra = simplex_boundary(3);
        assert!(matches!(
            sew(&tetra, &cx(&[&[1, 2, 5]]), Vertex::new(6).unwrap()),
            Err(Error::NotSubcomplex(_))
        ));
        assert_eq!(
            sew(&tetra, &cx(&[&[1, 2, 3]]), Vertex::new(4).unwrap()),
            Err(Error::VertexClash(4))
        );
    }

    #[test]
    fn sewn_neighborly_sphere() {
        for n in 8..=10u32 {
            let s = nested_antichain(2, n).unwrap();
            let ball = relative_squeezed_ball(&s);
            let cyclic = cyclic_boundary(4, n as usize).unwrap();
            assert!(ball.is_subcomplex_of(&cyclic));
            let sewn = sew(&cyclic, &ball, Vertex::new(n as i32 + 1).unwrap()).unwrap();
            assert_eq!(sewn.vertex_count(), n as usize + 1);
            assert!(is_k_neighborly(&sewn, 2), "n = {n}");
            assert!(certify_sphere(&sewn).unwrap().passed(), "n = {n}");
        }
    }
}
