use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Largest supported vertex count, matching the range of the graph6
/// short form. One `u64` row per vertex then covers the whole graph.
pub const MAX_VERTICES: usize = 62;

/// A set of vertex labels backed by a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < 64);
        VertexSet(1 << v)
    }

    /// The set {0, 1, ..., n-1}.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet((1u64 << n) - 1)
    }

    pub(crate) fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, v: usize) -> VertexSet {
        debug_assert!(v < 64);
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> VertexSet {
        debug_assert!(v < 64);
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut bits = 0u64;
        for v in iter {
            debug_assert!(v < 64);
            bits |= 1 << v;
        }
        VertexSet(bits)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Box<dyn Iterator<Item = usize>>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(BitIter(self.0))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An immutable simple undirected graph on vertex labels `0..n`.
///
/// Adjacency is stored as one 64-bit row per vertex, so neighborhood
/// operations are single mask instructions. Equality and hashing are over
/// the labeled graph; use [`crate::canonical_form`] to compare up to
/// isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    ///
    /// Panics if `n` exceeds [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        Graph { n, rows: vec![0; n] }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    ///
    /// Panics on loops or endpoints outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.n && v < self.n && u != v,
            "edge ({u}, {v}) is invalid on {} vertices",
            self.n
        );
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.rows[v] = VertexSet::full(n).without(v).bits();
        }
        g
    }

    /// The path v0 - v1 - ... - v(n-1).
    pub fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// The star with hub 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Panics if either endpoint is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n);
        self.rows[u] >> v & 1 == 1
    }

    /// Panics if `v` is out of range.
    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n);
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.rows.iter().map(|r| r.count_ones()).sum();
        total as usize / 2
    }

    /// The open neighborhood N(v). Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        assert!(v < self.n);
        VertexSet(self.rows[v])
    }

    pub(crate) fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// The closed neighborhood N[v] = N(v) + v.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(VertexSet(self.rows[v] | 1 << v))
    }

    /// Degrees indexed by vertex label.
    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// The degree sequence in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds = self.degrees();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds
    }

    /// Edges as pairs (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.rows[u]).iter().filter_map(move |v| (u < v).then_some((u, v)))
        })
    }

    /// Deletes `v` and relabels the survivors, preserving their order:
    /// labels below `v` are unchanged, labels above shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        let low = (1u64 << v) - 1;
        let rows = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let r = self.rows[u];
                (r & low) | (r >> (v + 1)) << v
            })
            .collect();
        Ok(Graph { n: self.n - 1, rows })
    }

    /// Relabels vertex `v` to `perm[v]`.
    ///
    /// Panics unless `perm` is a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the vertex count");
        debug_assert_eq!(
            perm.iter().copied().collect::<VertexSet>(),
            VertexSet::full(self.n),
            "not a permutation of 0..n"
        );
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            let mut bits = 0u64;
            for w in VertexSet(self.rows[u]).iter() {
                bits |= 1 << perm[w];
            }
            rows[perm[u]] = bits;
        }
        Graph { n: self.n, rows }
    }

    /// Adds a vertex labeled `n` adjacent to exactly `nbrs`.
    ///
    /// Panics if `nbrs` contains labels outside `0..n` or the graph is
    /// already at [`MAX_VERTICES`].
    pub fn with_vertex_adjacent_to(&self, nbrs: VertexSet) -> Graph {
        assert!(nbrs.is_subset(self.vertex_set()), "neighbors must be existing vertices");
        assert!(self.n < MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        let mut rows = self.rows.clone();
        for u in nbrs.iter() {
            rows[u] |= 1 << self.n;
        }
        rows.push(nbrs.bits());
        Graph { n: self.n + 1, rows }
    }

    /// The disjoint union, with `other`'s labels shifted up by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices are supported");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Graph { n, rows }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; ", self.n)?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_ops() {
        let a: VertexSet = [0, 2, 5].into_iter().collect();
        let b: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(5) && !a.contains(1));
        assert_eq!((a | b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!((a & b).to_vec(), vec![2]);
        assert_eq!((a - b).to_vec(), vec![0, 5]);
        assert!(VertexSet::EMPTY.is_empty());
        assert!(b.is_subset(a | b));
        assert!(!a.is_disjoint(b));
        assert!(a.without(2).is_disjoint(b));
        assert_eq!(VertexSet::full(4).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(VertexSet::singleton(7).to_vec(), vec![7]);
    }

    #[test]
    fn construction_and_degrees() {
        let p3 = Graph::path_graph(3);
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        assert_eq!(p3.degree_sequence(), vec![2, 1, 1]);
        assert!(p3.has_edge(0, 1) && p3.has_edge(1, 2) && !p3.has_edge(0, 2));

        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.degree_sequence(), vec![3, 3, 3, 3]);

        let c5 = Graph::cycle(5);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.degree_sequence(), vec![2; 5]);

        let star = Graph::star(5);
        assert_eq!(star.degree_sequence(), vec![5, 1, 1, 1, 1, 1]);
        assert_eq!(star.neighbors(0).to_vec(), vec![1, 2, 3, 4, 5]);

        assert_eq!(Graph::empty(0).edge_count(), 0);
    }

    #[test]
    fn neighborhoods() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1).to_vec(), vec![0, 2]);
        assert_eq!(g.closed_neighborhood(1).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(g.closed_neighborhood(3).unwrap().to_vec(), vec![3]);
        assert!(matches!(
            g.closed_neighborhood(4),
            Err(Error::VertexOutOfRange { v: 4, n: 4 })
        ));
    }

    #[test]
    fn delete_vertex_relabels_in_order() {
        // C4 minus one vertex is P3 on the survivors, in order.
        let c4 = Graph::cycle(4);
        let got = c4.delete_vertex(1).unwrap();
        assert_eq!(got, Graph::from_edges(3, &[(1, 2), (0, 2)]));
        assert!(c4.delete_vertex(4).is_err());

        // Deleting an isolated vertex keeps the rest intact.
        let g = Graph::from_edges(3, &[(0, 2)]);
        assert_eq!(g.delete_vertex(1).unwrap(), Graph::from_edges(2, &[(0, 1)]));
    }

    #[test]
    fn permuted_roundtrip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let perm = [2, 0, 3, 1];
        let h = g.permuted(&perm);
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(h.has_edge(2, 0) && h.has_edge(0, 3) && h.has_edge(3, 1));
        let mut inv = vec![0; 4];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        assert_eq!(h.permuted(&inv), g);
    }

    #[test]
    fn vertex_addition_and_union() {
        let p3 = Graph::path_graph(3);
        let g = p3.with_vertex_adjacent_to([0, 2].into_iter().collect());
        assert_eq!(g.n(), 4);
        assert_eq!(g, Graph::cycle(4));
        assert_eq!(g.neighbors(3).to_vec(), vec![0, 2]);

        let u = Graph::complete(3).disjoint_union(&Graph::path_graph(2));
        assert_eq!(u.n(), 5);
        assert_eq!(u.edge_count(), 4);
        assert!(u.has_edge(3, 4) && !u.has_edge(2, 3));
    }

    #[test]
    fn edges_iterator_is_sorted() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 3), (0, 1)]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (2, 3)]);
    }
}
