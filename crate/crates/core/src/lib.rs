//! Vertex-deleted decks of small simple graphs, and a class of graphs
//! that can be rebuilt from them.
//!
//! The crate provides five layers:
//!
//! * [`Graph`] and [`VertexSet`]: packed adjacency for graphs of up to
//!   62 vertices, with the graph6 codec ([`parse_graph6`],
//!   [`emit_graph6`]) and canonical forms ([`canonical_form`],
//!   [`is_isomorphic`]) on top;
//! * [`Deck`]: the multiset of one-vertex-deleted subgraphs of a graph,
//!   with the counting identities that recover edge count and degree
//!   sequence from a deck alone;
//! * membership: [`check_conditions`] evaluates five conditions against
//!   an explicit witness and [`find_witness`] searches for one; graphs
//!   with a witness form a class whose members are determined by their
//!   decks;
//! * reconstruction: [`reconstruct_auto`] rebuilds a member from its
//!   deck using only deck-derivable data, and [`brute_force_preimages`]
//!   independently finds every preimage of a deck by exhaustion;
//! * [`survey`]: enumerates all small graphs, cross-checks the two
//!   routes, and exercises fixed star-union members.

pub mod canon;
pub mod deck;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod membership;
pub mod reconstruct;
pub mod enumeration;

pub use canon::{
    canonical_form, canonical_form_with_cap, canonical_labeling_with_cap, is_isomorphic,
    is_isomorphic_with, CanonicalForm, IsoMap, DEFAULT_CANONICAL_CAP, DEFAULT_ISO_NODE_BUDGET,
};
pub use deck::{Card, Deck};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6};
pub use membership::{
    check_conditions, class_degree_profiles, find_witness, ClassWitness, ConditionReport,
    DegreeProfile, Violation,
};
pub use reconstruct::{
    brute_force_preimages, preimages_from_card, reconstruct_auto, reconstruct_with_profile,
    verify_unique, ReconstructionResult, DEFAULT_PREIMAGE_CAP, ORACLE_MAX_VERTICES,
};
pub use enumeration::{
    enumerate_graphs, generate_multi_star, graph_from_edge_mask, survey, BatteryRow,
    GraphClasses, SurveyReport, SurveyRow, ENUMERATION_MAX_VERTICES,
};
