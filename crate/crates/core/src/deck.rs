//! Vertex-deleted decks. The deck of a graph G on n vertices is the
//! multiset of the n cards G - v, each taken up to isomorphism. Decks
//! are the raw material of reconstruction: a deck alone determines the
//! edge count of G (the cards' edge counts sum to (n-2)|E(G)|, since
//! each edge survives on all cards but its two endpoints'), hence each
//! card's deleted degree m - |E(G - v)|, hence the degree sequence.

use crate::canon::{canonical_labeling_with_cap, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};

/// One card: a vertex-deleted subgraph stored as its canonical
/// representative, so labeled comparisons between cards are already
/// comparisons up to isomorphism.
#[derive(Clone, Debug)]
pub struct Card {
    graph: Graph,
    canonical: CanonicalForm,
    edge_count: usize,
}

impl Card {
    fn canonicalized(g: &Graph) -> Card {
        let (canonical, perm) =
            canonical_labeling_with_cap(g, g.n()).expect("cap equals the order");
        let graph = g.permuted(&perm);
        Card {
            edge_count: graph.edge_count(),
            graph,
            canonical,
        }
    }

    /// The canonical representative of the card's isomorphism class.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.canonical
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }
}

/// A deck of at least three cards, sorted by canonical form so that two
/// decks are equal as multisets exactly when they are equal as
/// sequences.
#[derive(Clone, Debug)]
pub struct Deck {
    cards: Vec<Card>,
}

impl Deck {
    /// The deck of `g`, which needs at least 3 vertices. Below that the
    /// deck determines nothing and the reconstruction question is moot.
    pub fn from_graph(g: &Graph) -> Result<Deck> {
        if g.n() < 3 {
            return Err(Error::DeckTooSmall { cards: g.n() });
        }
        let cards = g
            .vertices()
            .map(|v| Ok(Card::canonicalized(&g.delete_vertex(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Deck::sorted(cards))
    }

    /// Builds a deck from explicit cards; positions are reported 1-based
    /// in errors. The cards of a deck of size n must each have n - 1
    /// vertices.
    pub fn from_cards(graphs: Vec<Graph>) -> Result<Deck> {
        let numbered = graphs.into_iter().enumerate().map(|(i, g)| (i + 1, g)).collect();
        Deck::assemble(numbered)
    }

    /// Parses a deck file: one graph6 card per line, blank lines and
    /// lines starting with `#` ignored. Errors name the offending line.
    pub fn parse(text: &str) -> Result<Deck> {
        let mut numbered = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g = parse_graph6(line).map_err(|e| Error::DeckLine {
                line: i + 1,
                source: Box::new(e),
            })?;
            numbered.push((i + 1, g));
        }
        Deck::assemble(numbered)
    }

    fn assemble(numbered: Vec<(usize, Graph)>) -> Result<Deck> {
        let count = numbered.len();
        if count < 3 {
            return Err(Error::DeckTooSmall { cards: count });
        }
        let expected = count - 1;
        for (line, g) in &numbered {
            if g.n() != expected {
                return Err(Error::CardOrderMismatch {
                    line: *line,
                    expected,
                    got: g.n(),
                });
            }
        }
        let cards = numbered
            .into_iter()
            .map(|(_, g)| Card::canonicalized(&g))
            .collect();
        Ok(Deck::sorted(cards))
    }

    fn sorted(mut cards: Vec<Card>) -> Deck {
        cards.sort_by(|a, b| a.canonical.cmp(&b.canonical));
        Deck { cards }
    }

    /// One graph6 card per line, in deck order.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for card in &self.cards {
            out.push_str(&emit_graph6(&card.graph).expect("cards stay in graph6 range"));
            out.push('\n');
        }
        out
    }

    /// The number of cards, which equals the vertex count of any graph
    /// the deck could belong to.
    pub fn card_count(&self) -> usize {
        self.cards.len()
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn card(&self, i: usize) -> &Card {
        &self.cards[i]
    }

    /// The edge count of any graph with this deck. Fails when the card
    /// edge counts do not sum to a multiple of n - 2, which proves no
    /// such graph exists.
    pub fn original_edge_count(&self) -> Result<usize> {
        let n = self.card_count();
        let total: usize = self.cards.iter().map(|c| c.edge_count).sum();
        if !total.is_multiple_of(n - 2) {
            return Err(Error::IllegitimateDeck {
                reason: format!(
                    "card edge counts sum to {total}, not a multiple of n - 2 = {}",
                    n - 2
                ),
            });
        }
        Ok(total / (n - 2))
    }

    /// The degree each card's deleted vertex had, in deck order. Fails
    /// when some card has more edges than the whole graph would.
    pub fn deleted_degrees(&self) -> Result<Vec<usize>> {
        let m = self.original_edge_count()?;
        self.cards
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.edge_count > m {
                    return Err(Error::IllegitimateDeck {
                        reason: format!(
                            "card {} has {} edges but the graph would have only {m}",
                            i + 1,
                            c.edge_count
                        ),
                    });
                }
                Ok(m - c.edge_count)
            })
            .collect()
    }

    /// The degree sequence of any graph with this deck, descending.
    pub fn original_degree_multiset(&self) -> Result<Vec<usize>> {
        let mut ds = self.deleted_degrees()?;
        ds.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ds)
    }
}

impl PartialEq for Deck {
    fn eq(&self, other: &Deck) -> bool {
        self.cards.len() == other.cards.len()
            && self
                .cards
                .iter()
                .zip(&other.cards)
                .all(|(a, b)| a.canonical == b.canonical)
    }
}

impl Eq for Deck {}
