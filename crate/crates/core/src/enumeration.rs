//! Exhaustive enumeration of small graphs up to isomorphism, a
//! generator for the disjoint-union-of-stars family of class members,
//! and a survey driver that checks the uniqueness claim on every member
//! it can reach.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, is_isomorphic, CanonicalForm};
use crate::deck::Deck;
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6::{triangle_bits, triangle_pairs};
use crate::membership::{check_conditions, find_witness, ClassWitness};
use crate::reconstruct::{reconstruct_auto, verify_unique};

/// Largest order the exhaustive enumeration accepts: 2^21 labeled
/// graphs at n = 7 is fine, 2^28 at n = 8 is not worth the wait.
pub const ENUMERATION_MAX_VERTICES: usize = 7;

/// The graph whose upper-triangle bits, in graph6 pair order, are the
/// low bits of `mask`. Panics when the triangle needs more than 64 bits
/// or `mask` has bits beyond it.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Graph {
    let bits = triangle_bits(n);
    assert!(bits <= 64, "edge masks cover at most 11 vertices");
    assert!(bits == 64 || mask >> bits == 0, "mask has bits beyond the triangle");
    let edges: Vec<_> = triangle_pairs(n)
        .enumerate()
        .filter_map(|(t, pair)| (mask >> t & 1 == 1).then_some(pair))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Streams one labeled representative per isomorphism class of graphs
/// on `n` vertices, in ascending edge-mask order of first appearance.
pub fn enumerate_graphs(n: usize) -> Result<GraphClasses> {
    if n > ENUMERATION_MAX_VERTICES {
        return Err(Error::EnumerationScale { n, max: ENUMERATION_MAX_VERTICES });
    }
    Ok(GraphClasses {
        n,
        next_mask: 0,
        end: 1 << triangle_bits(n),
        seen: HashSet::new(),
    })
}

pub struct GraphClasses {
    n: usize,
    next_mask: u64,
    end: u64,
    seen: HashSet<CanonicalForm>,
}

impl Iterator for GraphClasses {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end {
            let g = graph_from_edge_mask(self.n, self.next_mask);
            self.next_mask += 1;
            let form = canonical_form(&g).expect("enumeration stays under the cap");
            if self.seen.insert(form) {
                return Some(g);
            }
        }
        None
    }
}

/// Builds the disjoint union of stars with the given leaf counts and
/// the witness that certifies it: v1 is the hub of the `first` star,
/// S the remaining hubs. Vertices are laid out star by star, hub first.
///
/// The sizes must make the witness work: at least two stars, every
/// size at least 3, `first` not repeated, no two sizes differing by
/// exactly 1, and the total vertex count within graph6 range.
pub fn generate_multi_star(first: usize, rest: &[usize]) -> Result<(Graph, ClassWitness)> {
    let invalid = |reason: String| Error::InvalidStarSizes { reason };
    if rest.is_empty() {
        return Err(invalid("at least two star sizes are required".to_string()));
    }
    let sizes: Vec<usize> = std::iter::once(first).chain(rest.iter().copied()).collect();
    if let Some(&bad) = sizes.iter().find(|&&a| a < 3) {
        return Err(invalid(format!("star size {bad} is below the minimum of 3")));
    }
    if rest.contains(&first) {
        return Err(invalid(format!("the first star size {first} must not repeat")));
    }
    for (i, &a) in sizes.iter().enumerate() {
        for &b in &sizes[i + 1..] {
            if a.abs_diff(b) == 1 {
                return Err(invalid(format!("star sizes {a} and {b} differ by exactly 1")));
            }
        }
    }
    let total: usize = sizes.iter().map(|a| a + 1).sum();
    if total > MAX_VERTICES {
        return Err(invalid(format!(
            "{total} vertices in total, above the limit of {MAX_VERTICES}"
        )));
    }

    let mut edges = Vec::new();
    let mut hubs = Vec::new();
    let mut base = 0;
    for &a in &sizes {
        hubs.push(base);
        edges.extend((1..=a).map(|leaf| (base, base + leaf)));
        base += a + 1;
    }
    let g = Graph::from_edges(total, &edges);
    let witness = ClassWitness::new(hubs[0], hubs[1..].iter().copied().collect())?;
    debug_assert!(check_conditions(&g, &witness)
        .expect("witness shape fits the graph")
        .all_hold());
    Ok((g, witness))
}

/// One order's worth of survey results.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    /// Isomorphism classes at this order.
    pub graphs: usize,
    /// Classes passing the membership test.
    pub members: usize,
    /// Members whose deck the oracle confirmed has a unique preimage.
    pub verified: usize,
    /// Members the oracle refuted; always zero unless the uniqueness
    /// claim itself is wrong.
    pub counterexamples: usize,
    pub seconds: f64,
}

/// Outcome for one fixed multi-star from the battery.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryRow {
    pub battery: String,
    pub n: usize,
    pub member: bool,
    pub reconstructed: bool,
    pub unique: bool,
    pub seconds: f64,
}

/// Full survey output: per-order rows, the multi-star battery, and the
/// canonical graph6 strings of every member found, ascending.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    pub battery: Vec<BatteryRow>,
    pub members: Vec<String>,
}

/// Star sizes exercised by every survey, chosen to stay inside the
/// oracle's range: the two smallest valid unordered pairs, each in both
/// roles.
const BATTERY: [(usize, usize); 4] = [(3, 5), (5, 3), (3, 6), (6, 3)];

/// Enumerates all graphs on 3..=max_n vertices, tests membership,
/// verifies every member against the brute-force oracle, and then runs
/// the fixed multi-star battery. `on_row` fires as each order
/// completes, so long surveys can stream progress.
///
/// Work is spread over `jobs` threads (at least one).
pub fn survey(
    max_n: usize,
    jobs: usize,
    mut on_row: impl FnMut(&SurveyRow),
) -> Result<SurveyReport> {
    if max_n > ENUMERATION_MAX_VERTICES {
        return Err(Error::EnumerationScale { n: max_n, max: ENUMERATION_MAX_VERTICES });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool construction");

    let mut rows = Vec::new();
    let mut members = Vec::new();
    for n in 3..=max_n {
        let start = Instant::now();
        let end: u64 = 1 << triangle_bits(n);
        let forms: std::collections::BTreeSet<CanonicalForm> = pool
            .install(|| {
                (0..end)
                    .into_par_iter()
                    .fold(HashSet::new, |mut acc: HashSet<CanonicalForm>, mask| {
                        let g = graph_from_edge_mask(n, mask);
                        acc.insert(canonical_form(&g).expect("under the cap"));
                        acc
                    })
                    .reduce(HashSet::new, |mut a, b| {
                        a.extend(b);
                        a
                    })
            })
            .into_iter()
            .collect();
        let outcomes: Vec<(CanonicalForm, bool, bool)> = pool.install(|| {
            forms
                .into_par_iter()
                .map(|form| {
                    let g = form.to_graph();
                    let member = find_witness(&g).is_some();
                    let unique = if member { verify_unique(&g)? } else { false };
                    Ok((form, member, unique))
                })
                .collect::<Result<_>>()
        })?;

        let graphs = outcomes.len();
        let member_count = outcomes.iter().filter(|(_, m, _)| *m).count();
        let verified = outcomes.iter().filter(|(_, m, u)| *m && *u).count();
        members.extend(
            outcomes
                .iter()
                .filter(|(_, m, _)| *m)
                .map(|(form, _, _)| form.as_str().to_string()),
        );
        let row = SurveyRow {
            n,
            graphs,
            members: member_count,
            verified,
            counterexamples: member_count - verified,
            seconds: start.elapsed().as_secs_f64(),
        };
        on_row(&row);
        rows.push(row);
    }

    let mut battery = Vec::new();
    for (a, b) in BATTERY {
        let start = Instant::now();
        let (g, w) = generate_multi_star(a, &[b])?;
        let member = check_conditions(&g, &w)?.all_hold();
        let deck = Deck::from_graph(&g)?;
        let reconstructed = match reconstruct_auto(&deck)? {
            Some(result) => is_isomorphic(&g, result.graph())?.is_some(),
            None => false,
        };
        let unique = verify_unique(&g)?;
        battery.push(BatteryRow {
            battery: format!("{a};{b}"),
            n: g.n(),
            member,
            reconstructed,
            unique,
            seconds: start.elapsed().as_secs_f64(),
        });
    }

    Ok(SurveyReport { rows, battery, members })
}
