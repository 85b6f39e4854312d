//! Trimmed trees above a freshly presented vertex, their canonical keys,
//! type vectors and associated sequences of root lists.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{Branching, VertexId};
use crate::colouring::{Colour, Colouring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrimNode {
    pub colour: Option<Colour>,
    pub parents: Vec<VertexId>,
    pub dist: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrimmedTree {
    pub root: VertexId,
    pub nodes: BTreeMap<VertexId, TrimNode>,
    pub key: String,
}

impl TrimmedTree {
    pub fn depth(&self) -> usize {
        self.nodes.values().map(|n| n.dist).max().unwrap_or(0)
    }

    /// Longest chain of parents all coloured `c`, for every colour.
    pub fn type_of(&self, v: VertexId, k: Colour) -> Vec<usize> {
        (1..=k).map(|c| mono_height(&|u| self.nodes[&u].parents.clone(), &|u| self.nodes[&u].colour, v, c)).collect()
    }
}

fn mono_height(
    parents: &dyn Fn(VertexId) -> Vec<VertexId>,
    colour: &dyn Fn(VertexId) -> Option<Colour>,
    v: VertexId,
    c: Colour,
) -> usize {
    parents(v)
        .into_iter()
        .filter(|&u| colour(u) == Some(c))
        .map(|u| 1 + mono_height(parents, colour, u, c))
        .max()
        .unwrap_or(0)
}

/// Type of `p` under the given colouring: for each colour the length of the
/// longest chain of parents coloured with it.
pub fn type_vector(b: &Branching, colours: &Colouring, p: VertexId, k: Colour) -> Vec<usize> {
    (1..=k)
        .map(|c| mono_height(&|u| b.parents_of(u).to_vec(), &|u| colours.get(u), p, c))
        .collect()
}

/// Rooted-tree encoding with colours fixed and children unordered.
pub fn canonical_form(
    root: VertexId,
    parents: &dyn Fn(VertexId) -> Vec<VertexId>,
    colour: &dyn Fn(VertexId) -> Option<Colour>,
) -> String {
    let mut subkeys: Vec<String> = parents(root).into_iter().map(|u| canonical_form(u, parents, colour)).collect();
    subkeys.sort();
    let head = colour(root).map_or_else(|| "u".to_string(), |c| format!("c{c}"));
    format!("{head}[{}]", subkeys.join(","))
}

struct Work {
    nodes: BTreeMap<VertexId, TrimNode>,
}

impl Work {
    fn colour(&self, v: VertexId) -> Option<Colour> {
        self.nodes[&v].colour
    }

    fn remove_above(&mut self, v: VertexId) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if let Some(node) = self.nodes.remove(&u) {
                stack.extend(node.parents);
            }
        }
        for node in self.nodes.values_mut() {
            node.parents.retain(|u| *u != v);
        }
    }

    fn bfs_order(&self, root: VertexId) -> Vec<VertexId> {
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            let mut ps = self.nodes[&out[i]].parents.clone();
            ps.sort_unstable();
            out.extend(ps);
            i += 1;
        }
        out
    }

    /// Chains of parents of `q` coloured `c` that cannot be extended.
    fn maximal_chains(&self, q: VertexId, c: Colour) -> Vec<Vec<VertexId>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<VertexId>> = self.nodes[&q]
            .parents
            .iter()
            .filter(|&&u| self.colour(u) == Some(c))
            .map(|&u| vec![u])
            .collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            let next: Vec<VertexId> =
                self.nodes[&top].parents.iter().copied().filter(|&u| self.colour(u) == Some(c)).collect();
            if next.is_empty() {
                out.push(chain);
            } else {
                for u in next {
                    let mut longer = chain.clone();
                    longer.push(u);
                    stack.push(longer);
                }
            }
        }
        out
    }

    /// One pass of the repetition removal; true if something was deleted.
    fn dedup_maximal_parents(&mut self, root: VertexId, k: Colour) -> bool {
        for q in self.bfs_order(root) {
            if !self.nodes.contains_key(&q) {
                continue;
            }
            for c in 1..=k {
                let mut by_len: BTreeMap<usize, Vec<Vec<VertexId>>> = BTreeMap::new();
                for chain in self.maximal_chains(q, c) {
                    by_len.entry(chain.len()).or_default().push(chain);
                }
                for chains in by_len.values_mut() {
                    if chains.len() < 2 {
                        continue;
                    }
                    chains.sort();
                    let keep = chains[0].last().copied();
                    let doomed: BTreeSet<VertexId> =
                        chains[1..].iter().map(|ch| *ch.last().unwrap()).filter(|&v| Some(v) != keep).collect();
                    if !doomed.is_empty() {
                        for v in doomed {
                            self.remove_above(v);
                        }
                        return true;
                    }
                }
            }
        }
        false
    }

    fn key(&self, v: VertexId) -> String {
        canonical_form(v, &|u| self.nodes[&u].parents.clone(), &|u| self.colour(u))
    }
}

/// Trim the part of `b` above `p`, with colours as they stand when `p` has
/// just been presented and answered.
///
/// Uncoloured vertices further than `m` from `p` go, and so does anything
/// further than `m` that is not on a one-coloured chain reaching back to
/// distance `m`: this keeps every chain that decides the type of a vertex
/// within distance `m`. Among maximal one-coloured `u`-parents of a vertex
/// only the one with the smallest chain survives, and among isomorphic
/// sibling subtrees at distance below `m` the smallest id survives, deepest
/// level first.
pub fn trim(b: &Branching, colours: &Colouring, p: VertexId, m: usize, k: Colour) -> TrimmedTree {
    let mut nodes = BTreeMap::new();
    let mut queue = VecDeque::from([(p, 0usize, None::<Option<Colour>>)]);
    while let Some((v, dist, chain_colour)) = queue.pop_front() {
        let colour = colours.get(v);
        let mut parents = Vec::new();
        for &u in b.parents_of(v) {
            let cu = colours.get(u);
            let d = dist + 1;
            let next_chain = if d <= m {
                None
            } else {
                match (cu, chain_colour) {
                    (None, _) => continue,
                    (Some(c), None) => Some(Some(c)),
                    (Some(c), Some(Some(prev))) if prev == c => Some(Some(c)),
                    _ => continue,
                }
            };
            parents.push(u);
            queue.push_back((u, d, next_chain));
        }
        nodes.insert(v, TrimNode { colour, parents, dist });
    }
    let mut work = Work { nodes };
    while work.dedup_maximal_parents(p, k) {}

    for d in (0..m).rev() {
        let level: Vec<VertexId> = work.nodes.iter().filter(|(_, n)| n.dist == d).map(|(&v, _)| v).collect();
        for q in level {
            let mut ps = work.nodes[&q].parents.clone();
            ps.sort_unstable();
            let mut seen = BTreeSet::new();
            for u in ps {
                if !seen.insert(work.key(u)) {
                    work.remove_above(u);
                }
            }
        }
    }
    let key = work.key(p);
    TrimmedTree { root: p, nodes: work.nodes, key }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedSequence {
    pub s: Vec<usize>,
    /// One past the last position of each block.
    pub ends: Vec<usize>,
    pub catalogue: BTreeSet<String>,
}

/// Block decomposition of a list of keys in presentation order. Each block
/// is the shortest stretch, starting right after the previous one, that
/// already contains every key occurring from there on.
pub fn associated_sequence(keys: &[String], n_cap: usize) -> AssociatedSequence {
    let mut s = Vec::new();
    let mut ends = Vec::new();
    let mut start = 0;
    while start < keys.len() && s.len() < n_cap {
        let mut last_first: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, key) in keys.iter().enumerate().skip(start) {
            last_first.entry(key.as_str()).or_insert(i);
        }
        let end = last_first.values().max().unwrap() + 1;
        s.push(last_first.len());
        ends.push(end);
        start = end;
    }
    AssociatedSequence { s, ends, catalogue: keys.iter().cloned().collect() }
}
