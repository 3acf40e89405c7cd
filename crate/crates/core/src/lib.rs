//! Constructions of neighborly and centrally symmetric simplicial spheres
//! and balls, structural verifiers, and an exact transversal solver for
//! their facet hypergraphs.

pub mod checks;
pub mod complex;
pub mod cs_family;
pub mod error;
pub mod facet_file;
pub mod homology;
pub mod lemmas;
pub mod polytopes;
pub mod squeezed;
pub mod transversal;

pub use checks::{
    certify_ball, certify_sphere, is_closed_pseudomanifold, is_cs, is_cs_k_neighborly,
    is_k_neighborly, pseudomanifold_report, SphereCertificate,
};
pub use complex::{FVector, Face, PureComplex, Vertex};
pub use cs_family::{cs_ball, delta_sphere, lambda_sphere, CsFamily};
pub use error::{Error, Result};
pub use homology::gf2_betti;
pub use lemmas::{generate_candidates, verify_lemma, LemmaId, LemmaReport};
pub use polytopes::{cross_boundary, cyclic_boundary, stacked_sphere};
pub use squeezed::{
    antichain_a, enumerate_pair_poset, relative_squeezed_ball, relative_squeezed_sphere, sew,
    shift_antichain, squeezed_ball, Antichain, PairPattern,
};
pub use transversal::{
    exact_transversal, explicit_cs_transversal, facet_hypergraph, greedy_transversal,
    matching_lower_bound, transversal_ratio, Hypergraph, TransversalCertificate,
};

