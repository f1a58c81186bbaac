//! Reconstruction of class members from their decks, plus a brute-force
//! preimage oracle that checks uniqueness claims exhaustively.
//!
//! The reconstruction procedure runs entirely on deck-derivable data.
//! Given a degree profile (d1, D2): the deck determines every deleted
//! degree, so condition 4 makes the card missing v1 identifiable as the
//! unique card with deleted degree d1. On that card the vertices of S
//! keep their degrees (condition 2 says v1 touches none of them), so
//! conditions 3 and 5 make S recoverable as exactly the card vertices
//! with degrees in D2. Conditions 1 and 2 then pin down the deleted
//! neighborhood: N(v1) is precisely the set of card vertices covered by
//! no closed neighborhood of S. Reattaching a vertex there rebuilds the
//! graph; the candidate counts only if its deck matches and the witness
//! it implies passes the full condition check.

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::canon::{canonical_labeling_with_cap, is_isomorphic, CanonicalForm};
use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::membership::{check_conditions, class_degree_profiles, ClassWitness, DegreeProfile};

/// Largest deck size the brute-force oracle accepts. The subset scan is
/// binomial in the card order, so this is a real wall, not a tunable.
pub const ORACLE_MAX_VERTICES: usize = 11;

/// Default bound on pairwise non-isomorphic preimages collected before
/// the oracle gives up.
pub const DEFAULT_PREIMAGE_CAP: usize = 64;

/// A successful reconstruction: the rebuilt graph, the degree profile
/// and card that produced it, and the witness under which the rebuilt
/// graph passes all five membership conditions.
#[derive(Clone, Debug)]
pub struct ReconstructionResult {
    graph: Graph,
    profile: DegreeProfile,
    witness: ClassWitness,
    verified: bool,
    card_index: usize,
}

impl ReconstructionResult {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn profile(&self) -> &DegreeProfile {
        &self.profile
    }

    pub fn witness(&self) -> &ClassWitness {
        &self.witness
    }

    /// Whether the candidate passed deck equality and the condition
    /// re-check. Always true for results this module returns.
    pub fn verified(&self) -> bool {
        self.verified
    }

    /// Index of the card the graph was rebuilt from, in deck order.
    pub fn card_index(&self) -> usize {
        self.card_index
    }
}

impl Serialize for ReconstructionResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ReconstructionResult", 5)?;
        st.serialize_field(
            "graph6",
            &emit_graph6(&self.graph).expect("reconstructions stay in graph6 range"),
        )?;
        st.serialize_field("profile", &self.profile)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("verified", &self.verified)?;
        st.serialize_field("card_index", &self.card_index)?;
        st.end()
    }
}

/// Attempts reconstruction under one degree profile.
///
/// Returns `Ok(None)` when the profile does not lead to a verified
/// member. Fails with [`Error::ProfileMismatch`] unless exactly one
/// card has deleted degree `d1`, and with [`Error::IllegitimateDeck`]
/// when the deck's arithmetic rules out any graph at all.
pub fn reconstruct_with_profile(
    deck: &Deck,
    profile: &DegreeProfile,
) -> Result<Option<ReconstructionResult>> {
    if profile.d2.is_empty() {
        return Err(Error::InvalidWitness {
            reason: "a degree profile needs a nonempty d2".to_string(),
        });
    }
    let n = deck.card_count();
    let deleted = deck.deleted_degrees()?;

    let matches: Vec<usize> = (0..n).filter(|&i| deleted[i] == profile.d1).collect();
    let [card_index] = matches[..] else {
        return Err(Error::ProfileMismatch {
            d1: profile.d1,
            count: matches.len(),
        });
    };
    let card = deck.card(card_index).graph();

    // Mark the would-be S: card vertices whose degree lies in D2. The
    // degrees must reproduce D2 exactly as a multiset, otherwise the
    // profile does not fit this card.
    let marked: VertexSet = card
        .vertices()
        .filter(|&v| profile.d2.contains(&card.degree(v)))
        .collect();
    let mut marked_degrees: Vec<usize> = marked.iter().map(|v| card.degree(v)).collect();
    marked_degrees.sort_unstable();
    if marked_degrees != profile.d2 {
        return Ok(None);
    }
    if 1 + marked.len() >= n {
        return Ok(None);
    }

    // The deleted vertex's neighborhood: everything no marked vertex
    // covers.
    let covered = marked
        .iter()
        .map(|w| card.closed_neighborhood(w).expect("card vertex"))
        .fold(VertexSet::EMPTY, |acc, nbhd| acc | nbhd);
    let attach = card.vertex_set() - covered;
    if attach.len() != profile.d1 {
        return Ok(None);
    }

    let candidate = card.with_vertex_adjacent_to(attach);
    if Deck::from_graph(&candidate)? != *deck {
        return Ok(None);
    }

    let witness = ClassWitness::new(candidate.n() - 1, marked)?;
    if !check_conditions(&candidate, &witness)?.all_hold() {
        return Ok(None);
    }

    Ok(Some(ReconstructionResult {
        graph: candidate,
        profile: profile.clone(),
        witness,
        verified: true,
        card_index,
    }))
}

/// Tries every degree profile the deck admits, in profile order, and
/// returns the first verified reconstruction.
pub fn reconstruct_auto(deck: &Deck) -> Result<Option<ReconstructionResult>> {
    let ds = deck.original_degree_multiset()?;
    for profile in class_degree_profiles(&ds) {
        if let Some(result) = reconstruct_with_profile(deck, &profile)? {
            return Ok(Some(result));
        }
    }
    Ok(None)
}

/// All preimages of a deck up to isomorphism, found by exhausting the
/// attachments of a fresh vertex to the first card. Results are
/// canonical representatives in canonical-form order.
///
/// Any single card suffices: a graph with this deck contains a vertex
/// whose deletion gives that card, so it appears among the candidates
/// no matter which card seeds the scan.
pub fn brute_force_preimages(deck: &Deck, cap: usize) -> Result<Vec<Graph>> {
    preimages_from_card(deck, 0, cap)
}

/// [`brute_force_preimages`] seeded by a chosen card, exposed so tests
/// can confirm the result does not depend on the seed. Panics when
/// `card_index` is out of range.
pub fn preimages_from_card(
    deck: &Deck,
    card_index: usize,
    cap: usize,
) -> Result<Vec<Graph>> {
    let n = deck.card_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::OracleScale { n, max: ORACLE_MAX_VERTICES });
    }
    let deleted = deck.deleted_degrees()?;
    let delta = deleted[card_index];
    let card = deck.card(card_index).graph();

    let mut found: std::collections::BTreeMap<CanonicalForm, Graph> =
        std::collections::BTreeMap::new();
    for combo in card.vertices().combinations(delta) {
        let attach: VertexSet = combo.into_iter().collect();
        let candidate = card.with_vertex_adjacent_to(attach);
        if Deck::from_graph(&candidate)? == *deck {
            let (form, perm) = canonical_labeling_with_cap(&candidate, candidate.n())
                .expect("cap equals the order");
            if !found.contains_key(&form) {
                if found.len() == cap {
                    return Err(Error::PreimageCapExceeded { cap });
                }
                found.insert(form, candidate.permuted(&perm));
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Checks that `g` is the unique preimage of its own deck up to
/// isomorphism: the oracle must find exactly one class and it must be
/// `g`'s.
pub fn verify_unique(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n < 3 {
        return Err(Error::DeckTooSmall { cards: n });
    }
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::OracleScale { n, max: ORACLE_MAX_VERTICES });
    }
    let deck = Deck::from_graph(g)?;
    let preimages = brute_force_preimages(&deck, DEFAULT_PREIMAGE_CAP)?;
    if preimages.len() != 1 {
        return Ok(false);
    }
    Ok(is_isomorphic(g, &preimages[0])?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    fn two_stars() -> Graph {
        let mut edges: Vec<_> = (1..=3).map(|v| (0, v)).collect();
        edges.extend((5..=9).map(|v| (4, v)));
        Graph::from_edges(10, &edges)
    }

    fn bowtie_k1() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    }

    #[test]
    fn reconstructs_two_stars_automatically() {
        let g = two_stars();
        let deck = Deck::from_graph(&g).unwrap();
        let result = reconstruct_auto(&deck).unwrap().expect("reconstructible");
        assert!(result.verified());
        assert!(is_isomorphic(&g, result.graph()).unwrap().is_some());
        // The first profile that fits: d1 = 5 with D2 = {3}. The
        // larger-d1 profile (5, {1 x 8}) is tried first but its marked
        // set cannot reproduce eight degree-1 vertices on that card.
        assert_eq!(result.profile(), &DegreeProfile { d1: 5, d2: vec![3] });
        assert!(check_conditions(result.graph(), result.witness())
            .unwrap()
            .all_hold());
    }

    #[test]
    fn both_hub_profiles_rebuild_the_same_graph() {
        let g = two_stars();
        let deck = Deck::from_graph(&g).unwrap();
        let from5 = reconstruct_with_profile(&deck, &DegreeProfile { d1: 5, d2: vec![3] })
            .unwrap()
            .expect("fits");
        let from3 = reconstruct_with_profile(&deck, &DegreeProfile { d1: 3, d2: vec![5] })
            .unwrap()
            .expect("fits");
        assert!(is_isomorphic(from5.graph(), from3.graph()).unwrap().is_some());
        assert!(is_isomorphic(&g, from3.graph()).unwrap().is_some());
        assert_ne!(from5.card_index(), from3.card_index());
    }

    #[test]
    fn reconstructs_the_bowtie_union() {
        let g = bowtie_k1();
        let deck = Deck::from_graph(&g).unwrap();
        let result = reconstruct_auto(&deck).unwrap().expect("reconstructible");
        assert!(is_isomorphic(&g, result.graph()).unwrap().is_some());
    }

    #[test]
    fn reconstructs_star_unions_with_larger_vertex_sets() {
        // S holds two hubs of the same degree for (5;3,3) and hubs of two
        // different degrees for (3;5,7), so the marked set spans more than
        // one vertex either way.
        for (first, rest) in [(5, vec![3, 3]), (3, vec![5, 7])] {
            let (g, _) = crate::enumeration::generate_multi_star(first, &rest).unwrap();
            let deck = Deck::from_graph(&g).unwrap();
            let result = reconstruct_auto(&deck).unwrap().expect("reconstructible");
            assert!(result.verified());
            assert_eq!(result.profile().d2.len(), rest.len());
            assert!(is_isomorphic(&g, result.graph()).unwrap().is_some());
        }
    }

    #[test]
    fn non_members_reconstruct_to_none() {
        for g in [Graph::cycle(4), Graph::path_graph(4), Graph::complete(5)] {
            let deck = Deck::from_graph(&g).unwrap();
            assert!(reconstruct_auto(&deck).unwrap().is_none());
        }
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let deck = Deck::from_graph(&two_stars()).unwrap();
        assert!(matches!(
            reconstruct_with_profile(&deck, &DegreeProfile { d1: 7, d2: vec![3] }),
            Err(Error::ProfileMismatch { d1: 7, count: 0 })
        ));
        assert!(matches!(
            reconstruct_with_profile(&deck, &DegreeProfile { d1: 1, d2: vec![3] }),
            Err(Error::ProfileMismatch { d1: 1, count: 8 })
        ));
        assert!(reconstruct_with_profile(
            &deck,
            &DegreeProfile { d1: 5, d2: Vec::new() }
        )
        .is_err());
    }

    #[test]
    fn wrong_profile_fails_softly() {
        let deck = Deck::from_graph(&two_stars()).unwrap();
        // One card has deleted degree 5, but marking degree-1 vertices
        // on it finds three, not eight.
        let result =
            reconstruct_with_profile(&deck, &DegreeProfile { d1: 5, d2: vec![1; 8] }).unwrap();
        assert!(result.is_none());
    }

    #[test]
    fn oracle_finds_exactly_the_original() {
        for g in [
            Graph::complete(3),
            Graph::path_graph(3),
            Graph::cycle(4),
            Graph::cycle(5),
            bowtie_k1(),
        ] {
            let deck = Deck::from_graph(&g).unwrap();
            let preimages = brute_force_preimages(&deck, 64).unwrap();
            assert_eq!(preimages.len(), 1, "deck of {g:?}");
            assert!(is_isomorphic(&g, &preimages[0]).unwrap().is_some());
            // Outputs are canonical representatives.
            assert_eq!(
                canonical_form(&preimages[0]).unwrap().to_graph(),
                preimages[0]
            );
        }
    }

    #[test]
    fn oracle_is_card_independent() {
        for g in [Graph::path_graph(4), bowtie_k1()] {
            let deck = Deck::from_graph(&g).unwrap();
            let forms = |graphs: Vec<Graph>| -> Vec<CanonicalForm> {
                graphs.iter().map(|h| canonical_form(h).unwrap()).collect()
            };
            let baseline = forms(brute_force_preimages(&deck, 64).unwrap());
            for i in 1..deck.card_count() {
                assert_eq!(forms(preimages_from_card(&deck, i, 64).unwrap()), baseline);
            }
        }
    }

    #[test]
    fn impossible_degree_deck_has_no_preimages() {
        // Deleted degrees come out as 3, 2, 1, 0, an impossible degree
        // sequence on four vertices.
        let deck = Deck::from_cards(vec![
            Graph::complete(3),
            Graph::from_edges(3, &[(0, 1), (0, 2)]),
            Graph::from_edges(3, &[(0, 2)]),
            Graph::empty(3),
        ])
        .unwrap();
        assert_eq!(deck.original_degree_multiset().unwrap(), vec![3, 2, 1, 0]);
        assert!(brute_force_preimages(&deck, 64).unwrap().is_empty());
        assert!(reconstruct_auto(&deck).unwrap().is_none());
    }

    #[test]
    fn verify_unique_accepts_members_and_scales_out() {
        assert!(verify_unique(&two_stars()).unwrap());
        assert!(verify_unique(&bowtie_k1()).unwrap());
        assert!(matches!(
            verify_unique(&Graph::empty(12)),
            Err(Error::OracleScale { n: 12, max: ORACLE_MAX_VERTICES })
        ));
        assert!(matches!(
            verify_unique(&Graph::complete(2)),
            Err(Error::DeckTooSmall { cards: 2 })
        ));
    }

    #[test]
    fn preimage_cap_is_enforced() {
        let deck = Deck::from_graph(&Graph::cycle(4)).unwrap();
        assert!(matches!(
            brute_force_preimages(&deck, 0),
            Err(Error::PreimageCapExceeded { cap: 0 })
        ));
    }

    #[test]
    fn result_serialization_shape() {
        let deck = Deck::from_graph(&two_stars()).unwrap();
        let result = reconstruct_auto(&deck).unwrap().unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&result).unwrap()).unwrap();
        assert_eq!(json["verified"], serde_json::json!(true));
        assert_eq!(json["profile"]["d1"], serde_json::json!(5));
        assert_eq!(json["profile"]["d2"], serde_json::json!([3]));
        assert_eq!(json["witness"]["v1"], serde_json::json!(9));
        assert!(json["graph6"].is_string());
        assert!(json["card_index"].is_u64());
    }
}
