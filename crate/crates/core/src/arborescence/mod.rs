//! Branchings presented leaf-to-root, the online root-to-leaf colourer,
//! trimmed trees, the adversary engine and geometric realisations.

mod adversary;
mod realise;
mod trim;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};

pub use adversary::{
    adversary_run, strategy_by_name, AdversaryConfig, FirstFit, Never, Outcome, ParityGuess, RandomColour,
    RoundRobin, Strategy, Transcript, TranscriptEvent, STRATEGY_NAMES,
};
pub use realise::{chain_witness, check_realisation, realise_branching, Realisation, RealiseMode};
pub use trim::{associated_sequence, canonical_form, trim, type_vector, AssociatedSequence, TrimmedTree};

pub type VertexId = u32;

pub const BRANCHING_SCHEMA: &str = "bottomless/branching/v1";

/// A forest whose edges point from parents to their unique child, with the
/// order in which vertices were presented.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branching {
    pub parents: BTreeMap<VertexId, Vec<VertexId>>,
    pub order: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchingRule {
    /// The order must list every vertex exactly once and parents must exist.
    WellFormed,
    SingleChild,
    LeafToRoot,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingViolation {
    pub rule: BranchingRule,
    pub vertex: VertexId,
}

impl fmt::Display for BranchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} violated at vertex {}", self.rule, self.vertex)
    }
}

impl Branching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a vertex with the given parents.
    pub fn present(&mut self, v: VertexId, parents: Vec<VertexId>) {
        self.parents.insert(v, parents);
        self.order.push(v);
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn parents_of(&self, v: VertexId) -> &[VertexId] {
        self.parents.get(&v).map_or(&[], Vec::as_slice)
    }

    /// The unique child of every vertex that has one.
    pub fn children(&self) -> BTreeMap<VertexId, VertexId> {
        let mut out = BTreeMap::new();
        for (&v, ps) in &self.parents {
            for &p in ps {
                out.insert(p, v);
            }
        }
        out
    }

    /// Vertices without a child.
    pub fn roots(&self) -> Vec<VertexId> {
        let children = self.children();
        self.order.iter().copied().filter(|v| !children.contains_key(v)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .order
            .iter()
            .map(|v| serde_json::json!({ "id": v, "parents": self.parents_of(*v) }))
            .collect();
        serde_json::json!({ "schema": BRANCHING_SCHEMA, "vertices": vertices, "order": self.order })
    }

    pub fn from_json(document: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Vertex {
            id: VertexId,
            #[serde(default)]
            parents: Vec<VertexId>,
        }
        #[derive(Deserialize)]
        struct Doc {
            vertices: Vec<Vertex>,
            order: Vec<VertexId>,
        }
        let doc: Doc = serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
        let mut parents = BTreeMap::new();
        for v in doc.vertices {
            if parents.insert(v.id, v.parents).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {}", v.id)));
            }
        }
        Ok(Branching { parents, order: doc.order })
    }

    /// The same branching with the order reversed (root-to-leaf if this one is leaf-to-root).
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.order.reverse();
        out
    }
}

/// Current roots, in left-to-right order, while replaying a leaf-to-root
/// presentation: a merged vertex takes the place of its parents, an
/// isolated vertex goes to the right end.
#[derive(Debug, Clone, Default)]
pub struct RootList {
    pub roots: Vec<VertexId>,
}

impl RootList {
    /// Position range of `parents` among the roots, if they form an interval.
    pub fn interval(&self, parents: &[VertexId]) -> Option<(usize, usize)> {
        let mut pos: Vec<usize> = parents.iter().map(|p| self.roots.iter().position(|r| r == p)).collect::<Option<_>>()?;
        pos.sort_unstable();
        pos.dedup();
        if pos.len() != parents.len() {
            return None;
        }
        let (a, b) = (pos[0], *pos.last().unwrap());
        (b - a + 1 == pos.len()).then_some((a, b))
    }

    pub fn apply(&mut self, v: VertexId, parents: &[VertexId]) -> Option<(usize, usize)> {
        if parents.is_empty() {
            self.roots.push(v);
            return Some((self.roots.len() - 1, self.roots.len() - 1));
        }
        let (a, b) = self.interval(parents)?;
        self.roots.splice(a..=b, [v]);
        Some((a, b))
    }
}

/// First broken rule, with a vertex witnessing it.
pub fn validate_branching(b: &Branching) -> std::result::Result<(), BranchingViolation> {
    let fail = |rule, vertex| Err(BranchingViolation { rule, vertex });
    let mut seen = BTreeSet::new();
    for &v in &b.order {
        if !b.parents.contains_key(&v) || !seen.insert(v) {
            return fail(BranchingRule::WellFormed, v);
        }
    }
    if let Some(&v) = b.parents.keys().find(|v| !seen.contains(v)) {
        return fail(BranchingRule::WellFormed, v);
    }
    let mut child_of: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &v in &b.order {
        for &p in b.parents_of(v) {
            if !b.parents.contains_key(&p) {
                return fail(BranchingRule::WellFormed, v);
            }
            if child_of.insert(p, v).is_some() {
                return fail(BranchingRule::SingleChild, p);
            }
        }
    }
    let mut presented = BTreeSet::new();
    for &v in &b.order {
        if b.parents_of(v).iter().any(|p| !presented.contains(p)) {
            return fail(BranchingRule::LeafToRoot, v);
        }
        presented.insert(v);
    }
    let mut roots = RootList::default();
    for &v in &b.order {
        if roots.apply(v, b.parents_of(v)).is_none() {
            return fail(BranchingRule::Geometric, v);
        }
    }
    Ok(())
}

/// Colour every vertex, online in a root-to-leaf order, by its distance from
/// its component's root modulo `k`.
pub fn colour_root_to_leaf(b: &Branching, k: Colour) -> Result<Colouring> {
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    let children = b.children();
    let mut dist: BTreeMap<VertexId, u64> = BTreeMap::new();
    let mut out = Colouring::new(k);
    for &v in &b.order {
        let d = match children.get(&v) {
            None => 0,
            Some(c) => dist
                .get(c)
                .map(|d| d + 1)
                .ok_or_else(|| Error::Order(format!("vertex {v} presented before its child {c}")))?,
        };
        dist.insert(v, d);
        out.assign(v, (d % k as u64) as Colour + 1)?;
    }
    Ok(out)
}

/// The directed path on `m` vertices starting at `v` and following children.
fn path_from(children: &BTreeMap<VertexId, VertexId>, v: VertexId, m: usize) -> Option<Vec<VertexId>> {
    let mut path = vec![v];
    while path.len() < m {
        path.push(*children.get(path.last().unwrap())?);
    }
    Some(path)
}

/// Every directed path on `m` vertices carrying at most one colour
/// (uncoloured vertices carry none).
pub fn check_m_proper(b: &Branching, colouring: &Colouring, m: usize) -> Vec<Vec<VertexId>> {
    let children = b.children();
    b.order
        .iter()
        .filter_map(|&v| path_from(&children, v, m))
        .filter(|p| colouring.distinct_colours(p) <= 1)
        .collect()
}

/// Paths on exactly `k` vertices that miss one of the `k` colours.
pub fn paths_missing_colours(b: &Branching, colouring: &Colouring, k: usize) -> Vec<Vec<VertexId>> {
    let children = b.children();
    b.order
        .iter()
        .filter_map(|&v| path_from(&children, v, k))
        .filter(|p| colouring.distinct_colours(p) < k)
        .collect()
}

/// Random geometric leaf-to-root branching on `n` vertices. With
/// `suffix_only` every merge takes a suffix of the current roots.
pub fn random_geometric<R: Rng + ?Sized>(rng: &mut R, n: usize, suffix_only: bool) -> Branching {
    let mut b = Branching::new();
    let mut roots = RootList::default();
    for v in 0..n as VertexId {
        let parents: Vec<VertexId> = if roots.roots.is_empty() || rng.random_bool(0.35) {
            Vec::new()
        } else {
            let len = roots.roots.len();
            let count = rng.random_range(1..=len.min(3));
            let start = if suffix_only { len - count } else { rng.random_range(0..=len - count) };
            roots.roots[start..start + count].to_vec()
        };
        roots.apply(v, &parents);
        b.present(v, parents);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_leaf_to_root(n: u32) -> Branching {
        let mut b = Branching::new();
        for v in 0..n {
            b.present(v, if v == 0 { vec![] } else { vec![v - 1] });
        }
        b
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut b = Branching::new();
        b.present(0, vec![]);
        assert_eq!(validate_branching(&b), Ok(()));
    }

    #[test]
    fn non_geometric_merge() {
        let mut b = Branching::new();
        for v in 1..=3 {
            b.present(v, vec![]);
        }
        b.present(4, vec![1, 3]);
        assert_eq!(validate_branching(&b).unwrap_err().rule, BranchingRule::Geometric);
    }

    #[test]
    fn root_first_path_is_not_leaf_to_root() {
        let b = path_leaf_to_root(3).reversed();
        assert_eq!(validate_branching(&b).unwrap_err().rule, BranchingRule::LeafToRoot);
    }

    #[test]
    fn two_children_rejected() {
        let mut b = Branching::new();
        b.present(0, vec![]);
        b.present(1, vec![0]);
        b.present(2, vec![0]);
        assert_eq!(validate_branching(&b).unwrap_err().rule, BranchingRule::SingleChild);
    }

    #[test]
    fn root_to_leaf_path_colours() {
        // Edges 0 -> 1 -> 2; vertex 2 is the root of the arborescence.
        let b = path_leaf_to_root(3).reversed();
        let c = colour_root_to_leaf(&b, 2).unwrap();
        assert_eq!((c.get(2), c.get(1), c.get(0)), (Some(1), Some(2), Some(1)));
        let ones = colour_root_to_leaf(&b, 1).unwrap();
        assert!(ones.colors.values().all(|&x| x == 1));
        assert!(colour_root_to_leaf(&path_leaf_to_root(3), 2).is_err());
    }

    #[test]
    fn m_proper_on_an_edge() {
        let b = path_leaf_to_root(2);
        let mut c = Colouring::new(2);
        assert_eq!(check_m_proper(&b, &c, 2).len(), 1);
        c.assign(0, 1).unwrap();
        c.assign(1, 1).unwrap();
        assert_eq!(check_m_proper(&b, &c, 2).len(), 1);
        let mut d = Colouring::new(2);
        d.assign(0, 1).unwrap();
        d.assign(1, 2).unwrap();
        assert!(check_m_proper(&b, &d, 2).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let b = random_geometric(&mut rng, 20, false);
        assert_eq!(validate_branching(&b), Ok(()));
        assert_eq!(Branching::from_json(&b.to_json().to_string()).unwrap(), b);
    }

    use rand::SeedableRng;
}
