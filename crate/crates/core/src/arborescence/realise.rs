//! Branchings in geometric leaf-to-root order as families of bottomless
//! rectangles, so that a semi-online colourer for the family is one for
//! the branching.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{validate_branching, Branching, RootList, VertexId};
use crate::colouring::Direction;
use crate::configurations::{classify_pair, PairConfig};
use crate::error::{Error, Result};
use crate::geometry::{covering_set, Family, Rect, RectId};
use crate::rational::{frac, mid, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealiseMode {
    TowersFromAbove,
    NestedFromBelow,
    IncStepsFromLeft,
    IncStepsFromBelow,
    DecStepsFromRight,
    DecStepsFromBelow,
}

impl RealiseMode {
    pub const ALL: [RealiseMode; 6] = [
        RealiseMode::TowersFromAbove,
        RealiseMode::NestedFromBelow,
        RealiseMode::IncStepsFromLeft,
        RealiseMode::IncStepsFromBelow,
        RealiseMode::DecStepsFromRight,
        RealiseMode::DecStepsFromBelow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RealiseMode::TowersFromAbove => "towers-from-above",
            RealiseMode::NestedFromBelow => "nested-from-below",
            RealiseMode::IncStepsFromLeft => "inc-steps-from-left",
            RealiseMode::IncStepsFromBelow => "inc-steps-from-below",
            RealiseMode::DecStepsFromRight => "dec-steps-from-right",
            RealiseMode::DecStepsFromBelow => "dec-steps-from-below",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown realisation mode {text:?}")))
    }

    pub fn direction(self) -> Direction {
        match self {
            RealiseMode::TowersFromAbove => Direction::FromAbove,
            RealiseMode::IncStepsFromLeft => Direction::FromLeft,
            RealiseMode::DecStepsFromRight => Direction::FromRight,
            _ => Direction::FromBelow,
        }
    }

    /// Configuration of an ancestor with a descendant.
    pub fn chain_config(self) -> PairConfig {
        match self {
            RealiseMode::TowersFromAbove => PairConfig::Tower,
            RealiseMode::NestedFromBelow => PairConfig::Nested,
            RealiseMode::IncStepsFromLeft | RealiseMode::IncStepsFromBelow => PairConfig::IncreasingSteps,
            RealiseMode::DecStepsFromRight | RealiseMode::DecStepsFromBelow => PairConfig::DecreasingSteps,
        }
    }

    /// Configuration of two unrelated vertices.
    pub fn other_config(self) -> PairConfig {
        match self {
            RealiseMode::TowersFromAbove | RealiseMode::NestedFromBelow => PairConfig::Disjoint,
            RealiseMode::IncStepsFromLeft | RealiseMode::IncStepsFromBelow => PairConfig::DecreasingSteps,
            RealiseMode::DecStepsFromRight | RealiseMode::DecStepsFromBelow => PairConfig::IncreasingSteps,
        }
    }

    fn mirrored(self) -> bool {
        matches!(self, RealiseMode::DecStepsFromRight | RealiseMode::DecStepsFromBelow)
    }
}

impl fmt::Display for RealiseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct Realisation {
    pub mode: RealiseMode,
    pub family: Family,
    pub order: Vec<RectId>,
    pub rect_of: BTreeMap<VertexId, RectId>,
}

/// Disjoint intervals for the roots, each containing the intervals of
/// everything above it.
fn nested_intervals(b: &Branching) -> Result<BTreeMap<VertexId, (Q, Q)>> {
    let mut roots = RootList::default();
    let mut span: BTreeMap<VertexId, (Q, Q)> = BTreeMap::new();
    for &v in &b.order {
        let parents = b.parents_of(v);
        let (l, r) = if parents.is_empty() {
            let start = span.values().map(|(_, r)| r + q(1)).max().unwrap_or_else(|| q(0));
            (start.clone(), start + q(1))
        } else {
            let (a, z) = roots.interval(parents).ok_or_else(|| Error::Order(format!("parents of {v} are not an interval")))?;
            let gap = roots
                .roots
                .windows(2)
                .map(|w| &span[&w[1]].0 - &span[&w[0]].1)
                .min()
                .unwrap_or_else(|| q(1));
            let eps = gap * frac(1, 4);
            (&span[&roots.roots[a]].0 - &eps, &span[&roots.roots[z]].1 + &eps)
        };
        roots.apply(v, parents);
        span.insert(v, (l, r));
    }
    Ok(span)
}

/// Heights in which each root's tree forms a band, later trees lower, and
/// a merged vertex sits just above the trees it merges.
fn band_keys(b: &Branching) -> Result<BTreeMap<VertexId, Q>> {
    let mut roots = RootList::default();
    let mut key: BTreeMap<VertexId, Q> = BTreeMap::new();
    let mut band: BTreeMap<VertexId, (Q, Q)> = BTreeMap::new();
    for &v in &b.order {
        let parents = b.parents_of(v);
        let (value, lo, hi) = if parents.is_empty() {
            let value = band.values().map(|(lo, _)| lo - q(1)).min().unwrap_or_else(|| q(0));
            (value.clone(), value.clone(), value)
        } else {
            let (a, z) = roots.interval(parents).ok_or_else(|| Error::Order(format!("parents of {v} are not an interval")))?;
            if z + 1 != roots.roots.len() {
                return Err(Error::Order(format!("parents of {v} are not the last roots")));
            }
            let merged = &roots.roots[a..];
            let top = merged.iter().map(|r| band[r].1.clone()).max().unwrap();
            let bottom = merged.iter().map(|r| band[r].0.clone()).min().unwrap();
            let value = match roots.roots[..a].iter().map(|r| band[r].0.clone()).min() {
                Some(ceiling) => mid(&top, &ceiling),
                None => top + q(1),
            };
            (value.clone(), bottom, value)
        };
        roots.apply(v, parents);
        for p in parents {
            band.remove(p);
        }
        band.insert(v, (lo, hi));
        key.insert(v, value);
    }
    Ok(key)
}

fn mirror(rect: Rect) -> Rect {
    Rect { id: rect.id, l: -rect.r, r: -rect.l, t: rect.t }
}

/// Realise `b` in the given mode. Steps modes need every merge to take the
/// last roots.
pub fn realise_branching(b: &Branching, mode: RealiseMode) -> Result<Realisation> {
    validate_branching(b).map_err(|v| Error::Order(v.to_string()))?;
    let n = b.len() as i64;
    let index: BTreeMap<VertexId, i64> = b.order.iter().enumerate().map(|(i, &v)| (v, i as i64)).collect();
    let mut rects = Vec::with_capacity(b.len());
    match mode {
        RealiseMode::TowersFromAbove | RealiseMode::NestedFromBelow => {
            let span = nested_intervals(b)?;
            for &v in &b.order {
                let t = if mode == RealiseMode::TowersFromAbove { q(-index[&v]) } else { q(index[&v]) };
                let (l, r) = span[&v].clone();
                rects.push(Rect::new(v, l, r, t)?);
            }
        }
        RealiseMode::IncStepsFromLeft | RealiseMode::DecStepsFromRight => {
            let key = band_keys(b)?;
            for &v in &b.order {
                let l = frac(index[&v], n + 1);
                rects.push(Rect::new(v, l.clone(), l + q(1), key[&v].clone())?);
            }
        }
        RealiseMode::IncStepsFromBelow | RealiseMode::DecStepsFromBelow => {
            let key = band_keys(b)?;
            let lo = key.values().min().cloned().unwrap_or_else(|| q(0));
            let hi = key.values().max().cloned().unwrap_or_else(|| q(0));
            let width = &hi - &lo + q(1);
            for &v in &b.order {
                let r = &key[&v] - &lo + q(2);
                rects.push(Rect::new(v, &r - &width, r, q(index[&v]))?);
            }
        }
    }
    if mode.mirrored() {
        rects = rects.into_iter().map(mirror).collect();
    }
    Ok(Realisation {
        mode,
        family: Family::new(rects)?,
        order: b.order.clone(),
        rect_of: b.order.iter().map(|&v| (v, v)).collect(),
    })
}

/// A point covered by exactly the rectangles of `path` once its last
/// vertex has been presented. `path` follows child pointers from its top
/// down to that vertex.
pub fn chain_witness(real: &Realisation, b: &Branching, path: &[VertexId]) -> (Q, Q) {
    let rect = |v: &VertexId| real.family.get(real.rect_of[v]).expect("realised vertex");
    let top = rect(&path[0]);
    let bottom = rect(path.last().unwrap());
    match real.mode {
        RealiseMode::TowersFromAbove | RealiseMode::NestedFromBelow => {
            let inner = b.parents_of(path[0]).iter().map(|u| rect(u).l.clone()).min();
            let x = inner.map_or_else(|| mid(&top.l, &top.r), |l| mid(&top.l, &l));
            let y = if real.mode == RealiseMode::TowersFromAbove { bottom.t.clone() } else { top.t.clone() };
            (x, y)
        }
        RealiseMode::IncStepsFromLeft | RealiseMode::IncStepsFromBelow => (top.r.clone(), top.t.clone()),
        RealiseMode::DecStepsFromRight | RealiseMode::DecStepsFromBelow => (top.l.clone(), top.t.clone()),
    }
}

/// Every upward path on at most `m` vertices ending at `v`, top first.
fn paths_ending_at(b: &Branching, v: VertexId, m: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![v]];
    while let Some(path) = stack.pop() {
        if path.len() < m {
            for &u in b.parents_of(*path.last().unwrap()) {
                let mut longer = path.clone();
                longer.push(u);
                stack.push(longer);
            }
        }
        out.push(path.into_iter().rev().collect());
    }
    out
}

/// First way in which `real` fails to stand for `b`: a pair in the wrong
/// configuration, a presentation order different from the mode's
/// direction, or a path on at most `m` vertices whose witness is covered
/// by something else at the time its lowest vertex arrives.
pub fn check_realisation(b: &Branching, real: &Realisation, m: usize) -> std::result::Result<(), String> {
    let descendants = {
        let children = b.children();
        move |v: VertexId| {
            let mut out = BTreeSet::new();
            let mut cur = v;
            while let Some(&c) = children.get(&cur) {
                out.insert(c);
                cur = c;
            }
            out
        }
    };
    let rect = |v: &VertexId| real.family.get(real.rect_of[v]).ok_or_else(|| format!("vertex {v} has no rectangle"));
    for (i, u) in b.order.iter().enumerate() {
        let below = descendants(*u);
        for w in &b.order[i + 1..] {
            let class = classify_pair(rect(u)?, rect(w)?).map_err(|e| e.to_string())?;
            let want = if below.contains(w) { real.mode.chain_config() } else { real.mode.other_config() };
            if class != want {
                return Err(format!("vertices {u} and {w} form {class}, expected {want}"));
            }
        }
    }
    let presented: Vec<RectId> = real.mode.direction().order(&real.family).iter().map(|r| r.id).collect();
    let expected: Vec<RectId> = b.order.iter().map(|v| real.rect_of[v]).collect();
    if presented != expected {
        return Err(format!("{} order differs from the presentation order", real.mode.direction()));
    }
    let mut prefix = BTreeSet::new();
    for &v in &b.order {
        prefix.insert(real.rect_of[&v]);
        let family = real.family.restrict(&prefix);
        for path in paths_ending_at(b, v, m) {
            let (x, y) = chain_witness(real, b, &path);
            let cover = covering_set(&family, &x, &y);
            let want: BTreeSet<RectId> = path.iter().map(|u| real.rect_of[u]).collect();
            if cover != want {
                return Err(format!("witness of path {path:?} is covered by {cover:?}"));
            }
        }
    }
    Ok(())
}
