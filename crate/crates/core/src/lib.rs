//! Exact combinatorics of resolutions of plane cuspidal curves: weighted dual graphs,
//! characteristic pairs, discriminants, inductances and barks, and the bounded Diophantine
//! searches that rule out numerical cases.

pub mod arith;
pub mod dualgraph;
pub mod format;
pub mod hnpairs;
pub mod invariants;
pub mod search;

pub use arith::{ArithError, IntMatrix, Rational};
pub use dualgraph::{
    discriminant, BlowupCenter, Chain, Component, ComponentId, DualGraph, GraphError, Twig,
};
pub use format::{emit_dot, parse_chain, FormatError, GraphDocument};
pub use hnpairs::{
    build_resolution_graph, char_pairs_of, enumerate_chains, fibonacci_bound_holds, graph_type,
    lemma22_deltas, mult_sequence, multiplicity_profile, simulate_germ, BlowupKind, CharPairSeq,
    ChainType, MarkedResolution, PairError,
};
pub use invariants::{
    bark, cusp_invariants, degree_equation_residuals, inductance, CandidateCusp, CurveCandidate,
    CuspInvariants, InvariantError, Residuals,
};
pub use search::{
    final_search, paper_case_suite, solve_linear_quadratic, DiophantineSystem, FinalSearchParams,
    FinalSearchResult, SearchError, Solution,
};

pub use num_bigint;
pub use num_rational;
