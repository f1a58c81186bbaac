//! Canonical labeling by partition refinement and backtracking.
//!
//! The search keeps an ordered partition of the vertices, refines it to
//! an equitable one, and individualizes vertices from the first
//! non-singleton cell until the partition is discrete. Every discrete
//! partition yields a candidate relabeling; the canonical form is the
//! lexicographically least graph6 encoding over all of them. Candidate
//! relabelings seen twice come from automorphisms, so the search prunes
//! back to the first branching point the two paths share. That keeps
//! highly symmetric graphs (complete, empty, unions of stars) from
//! exploding into factorially many leaves.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};

/// Default vertex cap for canonical labeling. Desk-scale inputs stay
/// well below it; raise the cap explicitly for larger graphs.
pub const DEFAULT_CANONICAL_CAP: usize = 12;

/// Default node budget for the backtracking isomorphism fallback.
pub const DEFAULT_ISO_NODE_BUDGET: u64 = 10_000_000;

/// A canonical form: the graph6 bytes of the canonically relabeled
/// graph. Two graphs are isomorphic exactly when their forms are equal,
/// and the byte string doubles as a hash or sort key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The graph6 string itself; canonical forms are always ASCII.
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 bytes are ASCII")
    }

    /// Decodes the canonical representative.
    pub fn to_graph(&self) -> Graph {
        parse_graph6(self.as_str()).expect("canonical forms hold valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Canonical form under the default cap.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANONICAL_CAP)
}

/// Canonical form for graphs up to `cap` vertices.
pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    Ok(canonical_labeling_with_cap(g, cap)?.0)
}

/// Canonical form together with a relabeling that realizes it: vertex
/// `v` of `g` becomes `perm[v]` of the canonical representative.
pub fn canonical_labeling_with_cap(g: &Graph, cap: usize) -> Result<(CanonicalForm, Vec<usize>)> {
    if g.n() > cap {
        return Err(Error::CanonicalCapExceeded { n: g.n(), cap });
    }
    Ok(search_canonical(g))
}

type Cells = Vec<Vec<usize>>;

/// Splits cells until the partition is equitable: every vertex of a cell
/// has the same number of neighbors in every cell. Splitting is by that
/// neighbor count in ascending order, so the result depends only on the
/// input partition and the graph up to relabeling.
fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        let mut split = None;
        'scan: for splitter_cell in cells.iter() {
            let splitter = splitter_cell.iter().fold(0u64, |m, &v| m | 1 << v);
            for (c, cell) in cells.iter().enumerate() {
                if cell.len() < 2 {
                    continue;
                }
                let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups.entry((g.row(v) & splitter).count_ones()).or_default().push(v);
                }
                if groups.len() > 1 {
                    split = Some((c, groups));
                    break 'scan;
                }
            }
        }
        match split {
            Some((c, groups)) => {
                cells.splice(c..=c, groups.into_values());
            }
            None => return,
        }
    }
}

/// If the partition is discrete, the relabeling sending the i-th cell's
/// vertex to label i.
fn bijection(cells: &Cells, n: usize) -> Option<Vec<usize>> {
    if cells.len() != n {
        return None;
    }
    let mut perm = vec![0; n];
    for (i, cell) in cells.iter().enumerate() {
        perm[cell[0]] = i;
    }
    Some(perm)
}

fn certificate(g: &Graph, perm: &[usize]) -> Vec<u8> {
    emit_graph6(&g.permuted(perm))
        .expect("graphs never exceed the graph6 range")
        .into_bytes()
}

struct Node {
    cells: Cells,
    /// Vertices of the first non-singleton cell still to individualize,
    /// in reverse so `pop` explores them in ascending order.
    children: Vec<usize>,
}

impl Node {
    fn new(g: &Graph, mut cells: Cells) -> Node {
        refine(g, &mut cells);
        let children = cells
            .iter()
            .find(|cell| cell.len() > 1)
            .map(|cell| cell.iter().rev().copied().collect())
            .unwrap_or_default();
        Node { cells, children }
    }

    /// Child node obtained by splitting `v` off the front of its cell.
    fn explore(&self, g: &Graph, v: usize) -> Node {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for cell in &self.cells {
            if cell.len() > 1 && cell.contains(&v) {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        Node::new(g, cells)
    }
}

/// Index of the first position where two leaf paths diverge.
fn first_divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).position(|(x, y)| x != y).unwrap_or_else(|| a.len().min(b.len()))
}

fn search_canonical(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (CanonicalForm(certificate(g, &[])), Vec::new());
    }

    let mut node = Node::new(g, vec![(0..n).collect()]);
    let mut stack: Vec<Node> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut seen: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;

    loop {
        if let Some(perm) = bijection(&node.cells, n) {
            match seen.entry(certificate(g, &perm)) {
                Entry::Occupied(entry) => {
                    // Two paths to one certificate differ by an
                    // automorphism, so siblings past their divergence
                    // point lead to already-covered leaves.
                    let keep = first_divergence(entry.get(), &path) + 1;
                    if keep <= path.len() {
                        stack.truncate(keep);
                        path.truncate(keep);
                    }
                }
                Entry::Vacant(entry) => {
                    if best.as_ref().is_none_or(|(b, _)| entry.key() < b) {
                        best = Some((entry.key().clone(), perm));
                    }
                    entry.insert(path.clone());
                }
            }
        }
        if let Some(v) = node.children.pop() {
            let child = node.explore(g, v);
            stack.push(node);
            path.push(v);
            node = child;
        } else {
            match stack.pop() {
                Some(parent) => {
                    node = parent;
                    path.pop();
                }
                None => break,
            }
        }
    }

    let (bytes, perm) = best.expect("every search visits at least one leaf");
    (CanonicalForm(bytes), perm)
}

/// An isomorphism from one graph onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoMap {
    forward: Vec<usize>,
}

impl IsoMap {
    /// The image of each vertex, indexed by source label.
    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn map(&self, v: usize) -> usize {
        self.forward[v]
    }

    /// Checks the map really is an edge-preserving bijection from `g`
    /// onto `h`.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        let n = g.n();
        if h.n() != n || self.forward.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &w in &self.forward {
            if w >= n || hit[w] {
                return false;
            }
            hit[w] = true;
        }
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) != h.has_edge(self.forward[u], self.forward[v]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Tests isomorphism under the default cap and budget, returning a
/// concrete mapping on success.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<IsoMap>> {
    is_isomorphic_with(g, h, DEFAULT_CANONICAL_CAP, DEFAULT_ISO_NODE_BUDGET)
}

/// Tests isomorphism. Up to `canonical_cap` vertices the test compares
/// canonical forms and composes the two relabelings; beyond that it
/// falls back to degree-pruned backtracking bounded by `node_budget`.
pub fn is_isomorphic_with(
    g: &Graph,
    h: &Graph,
    canonical_cap: usize,
    node_budget: u64,
) -> Result<Option<IsoMap>> {
    let n = g.n();
    if h.n() != n || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence()
    {
        return Ok(None);
    }
    if n <= canonical_cap {
        let (form_g, perm_g) = canonical_labeling_with_cap(g, canonical_cap)?;
        let (form_h, perm_h) = canonical_labeling_with_cap(h, canonical_cap)?;
        if form_g != form_h {
            return Ok(None);
        }
        let mut inv_h = vec![0; n];
        for v in 0..n {
            inv_h[perm_h[v]] = v;
        }
        let map = IsoMap {
            forward: perm_g.iter().map(|&c| inv_h[c]).collect(),
        };
        debug_assert!(map.verify(g, h));
        Ok(Some(map))
    } else {
        backtracking_isomorphism(g, h, node_budget)
    }
}

fn backtracking_isomorphism(g: &Graph, h: &Graph, node_budget: u64) -> Result<Option<IsoMap>> {
    let n = g.n();
    // Assign rare, high-degree vertices first; both heuristics cut the
    // branching factor near the root.
    let degrees_g = g.degrees();
    let degrees_h = h.degrees();
    let mut class_size = vec![0usize; n];
    for &d in &degrees_g {
        class_size[d] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (class_size[degrees_g[v]], n - degrees_g[v], v));

    let mut search = MappingSearch {
        g,
        h,
        order: &order,
        degrees_g: &degrees_g,
        degrees_h: &degrees_h,
        nodes: 0,
        budget: node_budget,
    };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !search.dfs(0, &mut image, &mut used)? {
        return Ok(None);
    }
    let map = IsoMap { forward: image };
    debug_assert!(map.verify(g, h));
    Ok(Some(map))
}

struct MappingSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    degrees_g: &'a [usize],
    degrees_h: &'a [usize],
    nodes: u64,
    budget: u64,
}

impl MappingSearch<'_> {
    fn dfs(&mut self, depth: usize, image: &mut [usize], used: &mut [bool]) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for w in 0..self.h.n() {
            if used[w] || self.degrees_h[w] != self.degrees_g[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::IsoBudgetExceeded { budget: self.budget });
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.g.has_edge(v, u) == self.h.has_edge(w, image[u]));
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if self.dfs(depth + 1, image, used)? {
                return Ok(true);
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        Ok(false)
    }
}
