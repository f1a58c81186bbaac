//! Membership test for a class of graphs that are reconstructible from
//! their decks. A witness is a distinguished vertex v1 together with a
//! nonempty set S of further vertices; the graph is a class member when
//! the five conditions below all hold:
//!
//! 1. the closed neighborhoods of v1 and S together cover every vertex;
//! 2. N[v1] is disjoint from the union of the N[s] for s in S;
//! 3. no vertex of {v1} + S has a degree differing by exactly 1 from
//!    the degree of any other vertex;
//! 4. v1 is alone in its degree class;
//! 5. the degree class of every s in S lies inside S.
//!
//! Conditions 3 to 5 are pure degree-sequence facts, which is what lets
//! a reconstruction procedure recognize v1 and S on the cards of a deck
//! before the graph itself is known.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A candidate witness (v1, S). Construction enforces the shape
/// constraints that do not depend on a graph: S is nonempty and does
/// not contain v1. The size constraint k = 1 + |S| < n is checked
/// against a concrete graph by [`check_conditions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    v1: usize,
    others: VertexSet,
}

impl ClassWitness {
    pub fn new(v1: usize, others: VertexSet) -> Result<ClassWitness> {
        if others.is_empty() {
            return Err(Error::InvalidWitness {
                reason: "the set of other witness vertices must be nonempty".to_string(),
            });
        }
        if others.contains(v1) {
            return Err(Error::InvalidWitness {
                reason: format!("v1 = {v1} must not belong to the other witness vertices"),
            });
        }
        Ok(ClassWitness { v1, others })
    }

    pub fn v1(&self) -> usize {
        self.v1
    }

    pub fn others(&self) -> VertexSet {
        self.others
    }

    /// The total number of witness vertices, 1 + |S|.
    pub fn k(&self) -> usize {
        1 + self.others.len()
    }
}

impl Serialize for ClassWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ClassWitness", 2)?;
        st.serialize_field("v1", &self.v1)?;
        st.serialize_field("others", &self.others.to_vec())?;
        st.end()
    }
}

/// The first failed condition, with the vertices that break it: the
/// uncovered vertex for condition 1, a vertex in the overlap for 2, the
/// offending degree pair for 3, the degree-sharing vertex for 4, and
/// the escaping class member for 5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: u8,
    pub vertices: Vec<usize>,
}

/// Outcome of evaluating all five conditions. `violation` reports the
/// lowest-numbered failure, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
    pub c5: bool,
    pub violation: Option<Violation>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4 && self.c5
    }
}

/// Evaluates the five membership conditions for an explicit witness.
///
/// Fails only on malformed input: witness vertices outside the graph,
/// or k not strictly between 1 and n. A well-formed witness that merely
/// fails the conditions yields an `Ok` report with `all_hold() ==
/// false`.
pub fn check_conditions(g: &Graph, w: &ClassWitness) -> Result<ConditionReport> {
    let n = g.n();
    if w.v1 >= n {
        return Err(Error::VertexOutOfRange { v: w.v1, n });
    }
    if let Some(v) = w.others.iter().find(|&v| v >= n) {
        return Err(Error::VertexOutOfRange { v, n });
    }
    if w.k() >= n {
        return Err(Error::InvalidWitness {
            reason: format!("k = {} must be smaller than the vertex count {n}", w.k()),
        });
    }

    let degrees = g.degrees();
    let nv1 = g.closed_neighborhood(w.v1)?;
    let rest = w
        .others
        .iter()
        .map(|s| g.closed_neighborhood(s).expect("already range checked"))
        .fold(VertexSet::EMPTY, |acc, nbhd| acc | nbhd);

    let uncovered = g.vertex_set() - (nv1 | rest);
    let overlap = nv1 & rest;

    let witness_vertices: Vec<usize> =
        std::iter::once(w.v1).chain(w.others.iter()).collect();
    let mut degree_gap_pair = None;
    'gap: for &i in &witness_vertices {
        for j in 0..n {
            if j != i && degrees[i].abs_diff(degrees[j]) == 1 {
                degree_gap_pair = Some((i, j));
                break 'gap;
            }
        }
    }

    let v1_clash = (0..n).find(|&v| v != w.v1 && degrees[v] == degrees[w.v1]);

    let mut class_escape = None;
    'escape: for s in w.others.iter() {
        for v in 0..n {
            if !w.others.contains(v) && degrees[v] == degrees[s] {
                class_escape = Some(v);
                break 'escape;
            }
        }
    }

    let c1 = uncovered.is_empty();
    let c2 = overlap.is_empty();
    let c3 = degree_gap_pair.is_none();
    let c4 = v1_clash.is_none();
    let c5 = class_escape.is_none();

    let violation = if !c1 {
        Some(Violation {
            condition: 1,
            vertices: vec![uncovered.iter().next().expect("nonempty")],
        })
    } else if !c2 {
        Some(Violation {
            condition: 2,
            vertices: vec![overlap.iter().next().expect("nonempty")],
        })
    } else if !c3 {
        let (i, j) = degree_gap_pair.expect("just failed");
        Some(Violation { condition: 3, vertices: vec![i, j] })
    } else if !c4 {
        Some(Violation {
            condition: 4,
            vertices: vec![v1_clash.expect("just failed")],
        })
    } else if !c5 {
        Some(Violation {
            condition: 5,
            vertices: vec![class_escape.expect("just failed")],
        })
    } else {
        None
    };

    Ok(ConditionReport { c1, c2, c3, c4, c5, violation })
}

/// Searches for a witness, returning the least (v1, sorted S) in
/// lexicographic order, or `None` when the graph is not in the class.
///
/// Condition 5 forces S to be a union of whole degree classes, and
/// conditions 3 and 4 restrict which classes may appear at all, so the
/// search ranges over class unions only; each candidate is confirmed by
/// the literal [`check_conditions`]. The class count is at most the
/// number of distinct degrees, which keeps the subset scan tiny at the
/// scales this crate targets.
pub fn find_witness(g: &Graph) -> Option<ClassWitness> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let degrees = g.degrees();
    let mut count = vec![0usize; n + 1];
    for &d in &degrees {
        count[d] += 1;
    }
    // A degree is admissible when no other vertex sits at distance 1
    // from it, which is what condition 3 demands of witness vertices.
    let admissible = |d: usize| (d == 0 || count[d - 1] == 0) && count[d + 1] == 0;

    for v1 in 0..n {
        let d1 = degrees[v1];
        if count[d1] != 1 || !admissible(d1) {
            continue;
        }
        let classes: Vec<VertexSet> = (0..n)
            .filter(|&d| d != d1 && count[d] > 0 && admissible(d))
            .map(|d| (0..n).filter(|&v| degrees[v] == d).collect())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u64..1 << classes.len() {
            let s = classes
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask >> idx & 1 == 1)
                .fold(VertexSet::EMPTY, |acc, (_, class)| acc | *class);
            if 1 + s.len() >= n {
                continue;
            }
            let w = ClassWitness::new(v1, s).expect("nonempty, v1 excluded by degree");
            let report = check_conditions(g, &w).expect("shape is valid");
            if report.all_hold() {
                let sv = s.to_vec();
                if best.as_ref().is_none_or(|b| sv < *b) {
                    best = Some(sv);
                }
            }
        }
        if let Some(sv) = best {
            return ClassWitness::new(v1, sv.into_iter().collect()).ok();
        }
    }
    None
}

/// A degree-level shadow of a witness: the degree of v1 and the degree
/// multiset of S, ascending. Profiles are computable from a deck alone,
/// which is how reconstruction picks its candidate witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub d1: usize,
    pub d2: Vec<usize>,
}

/// All degree profiles a witness could have in a graph with degree
/// sequence `ds`, ordered by descending d1 and then ascending d2. The
/// profile of any actual witness of any graph realizing `ds` appears in
/// the list.
pub fn class_degree_profiles(ds: &[usize]) -> Vec<DegreeProfile> {
    let n = ds.len();
    if n == 0 {
        return Vec::new();
    }
    let max_d = *ds.iter().max().expect("nonempty");
    let mut count = vec![0usize; max_d + 2];
    for &d in ds {
        count[d] += 1;
    }
    let admissible = |d: usize| (d == 0 || count[d - 1] == 0) && count[d + 1] == 0;

    let mut profiles = Vec::new();
    for d1 in (0..=max_d).filter(|&d| count[d] == 1 && admissible(d)) {
        let classes: Vec<usize> = (0..=max_d)
            .filter(|&d| d != d1 && count[d] > 0 && admissible(d))
            .collect();
        for mask in 1u64..1 << classes.len() {
            let mut d2 = Vec::new();
            for (idx, &d) in classes.iter().enumerate() {
                if mask >> idx & 1 == 1 {
                    d2.extend(std::iter::repeat_n(d, count[d]));
                }
            }
            if 1 + d2.len() < n {
                profiles.push(DegreeProfile { d1, d2 });
            }
        }
    }
    profiles.sort_by(|a, b| b.d1.cmp(&a.d1).then_with(|| a.d2.cmp(&b.d2)));
    profiles
}
