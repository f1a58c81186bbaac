use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate.
///
/// Variants fall into two groups: malformed or out-of-contract input
/// (parse failures, bad witness shapes, decks that cannot belong to any
/// graph) and resource limits (caps on canonical labeling, the preimage
/// oracle, and exhaustive enumeration).
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6Parse { offset: usize, reason: String },

    #[error("graph has {n} vertices; the graph6 short form supports at most {max}")]
    UnsupportedOrder { n: usize, max: usize },

    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("canonical labeling requested for {n} vertices, above the cap of {cap}")]
    CanonicalCapExceeded { n: usize, cap: usize },

    #[error("isomorphism search exceeded its budget of {budget} nodes")]
    IsoBudgetExceeded { budget: u64 },

    #[error("a deck needs at least 3 cards, got {cards}")]
    DeckTooSmall { cards: usize },

    #[error("deck line {line}: {source}")]
    DeckLine { line: usize, source: Box<Error> },

    /// `line` is the 1-based source line for parsed decks and the 1-based
    /// card position for decks built in memory.
    #[error("deck line {line}: card has {got} vertices, expected {expected}")]
    CardOrderMismatch {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("not the deck of any graph: {reason}")]
    IllegitimateDeck { reason: String },

    #[error("{count} cards have deleted degree {d1}, expected exactly one")]
    ProfileMismatch { d1: usize, count: usize },

    #[error("the brute-force oracle handles at most {max} vertices, got {n}")]
    OracleScale { n: usize, max: usize },

    #[error("more than {cap} pairwise non-isomorphic preimages")]
    PreimageCapExceeded { cap: usize },

    #[error("exhaustive enumeration handles at most {max} vertices, got {n}")]
    EnumerationScale { n: usize, max: usize },

    #[error("invalid witness: {reason}")]
    InvalidWitness { reason: String },

    #[error("invalid star sizes: {reason}")]
    InvalidStarSizes { reason: String },
}

impl Error {
    /// True for errors that report a blown resource limit rather than bad
    /// input. Callers that distinguish "no" from "too big" branch on this.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CanonicalCapExceeded { .. }
                | Error::IsoBudgetExceeded { .. }
                | Error::OracleScale { .. }
                | Error::PreimageCapExceeded { .. }
                | Error::EnumerationScale { .. }
        )
    }
}
