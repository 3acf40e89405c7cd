use std::collections::BTreeSet;
use std::time::Duration;

use proptest::prelude::*;
use spherekit::{exact_transversal, Face, Hypergraph, PureComplex, Vertex};

fn complex(dim: usize, labels: Vec<i32>) -> impl Strategy<Value = PureComplex> {
    prop::collection::btree_set(prop::sample::subsequence(labels, dim + 1), 1..12).prop_map(|fs| {
        PureComplex::new(fs.into_iter().map(|f| Face::from_labels(&f).unwrap())).unwrap()
    })
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    let labels: Vec<i32> = (1..=12).collect();
    prop::collection::vec(prop::sample::subsequence(labels, 1..5), 1..25).prop_map(|edges| {
        let faces: Vec<Face> = edges
            .iter()
            .map(|e| Face::from_labels(e).unwrap())
            .collect();
        let vs: BTreeSet<Vertex> = faces.iter().flat_map(|f| f.vertices().to_vec()).collect();
        Hypergraph::new(vs, faces).unwrap()
    })
}

fn brute(h: &Hypergraph) -> usize {
    let vs = h.vertices();
    let masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| {
            e.vertices()
                .iter()
                .fold(0, |m, v| m | 1 << vs.binary_search(v).unwrap())
        })
        .collect();
    (0u32..1 << vs.len())
        .filter(|s| masks.iter().all(|m| m & s != 0))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

proptest! {
    #[test]
    fn boundary_of_boundary_is_empty(c in complex(2, vec![1, 2, 3, 4, 5, 6])) {
        prop_assume!(c.ridge_counts().values().all(|&n| n <= 2));
        prop_assert!(c.boundary().boundary().is_empty());
    }

    #[test]
    fn negation_is_an_involution(c in complex(2, vec![-3, -2, -1, 1, 2, 3, 4])) {
        prop_assert_eq!(c.negate().negate(), c);
    }

    #[test]
    fn join_multiplies_facets(
        a in complex(1, vec![1, 2, 3, 4]),
        b in complex(1, vec![5, 6, 7, 8]),
    ) {
        let j = a.join(&b).unwrap();
        prop_assert_eq!(j.facet_count(), a.facet_count() * b.facet_count());
        prop_assert_eq!(j.dim(), a.dim() + b.dim() + 1);
        let fa = a.f_vector().unwrap();
        let fb = b.f_vector().unwrap();
        let fj = j.f_vector().unwrap();
        prop_assert_eq!(fj.f(0), fa.f(0) + fb.f(0));
    }

    #[test]
    fn difference_and_subcomplex(c in complex(2, vec![1, 2, 3, 4, 5, 6]), keep in 0usize..12) {
        let sub = PureComplex::new(c.facets().iter().take(keep.max(1)).cloned()).unwrap();
        prop_assert!(sub.is_subcomplex_of(&c));
        let rest = c.relative_difference(&sub).unwrap();
        prop_assert_eq!(rest.facet_count() + sub.facet_count(), c.facet_count());
    }

    #[test]
    fn exact_solver_matches_brute_force(h in hypergraph()) {
        let cert = exact_transversal(&h, Duration::from_secs(30));
        prop_assert!(cert.optimal);
        prop_assert!(h.is_transversal(&cert.hitting_set).unwrap());
        prop_assert_eq!(cert.hitting_set.len(), cert.upper_bound);
        prop_assert_eq!(cert.upper_bound, brute(&h));
    }
}
