//! Pairwise intersection patterns, family traits, monotone configurations
//! inside a cell, and unit-width realisation of steps families.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Family, Rect, RectId, WitnessPoint};
use crate::rational::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairConfig {
    Tower,
    Nested,
    IncreasingSteps,
    DecreasingSteps,
    Disjoint,
}

impl PairConfig {
    pub const CHAINS: [PairConfig; 4] =
        [PairConfig::Tower, PairConfig::Nested, PairConfig::IncreasingSteps, PairConfig::DecreasingSteps];

    pub fn name(self) -> &'static str {
        match self {
            PairConfig::Tower => "tower",
            PairConfig::Nested => "nested",
            PairConfig::IncreasingSteps => "inc-steps",
            PairConfig::DecreasingSteps => "dec-steps",
            PairConfig::Disjoint => "disjoint",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "tower" | "towers" => Ok(PairConfig::Tower),
            "nested" => Ok(PairConfig::Nested),
            "inc-steps" | "increasing-steps" => Ok(PairConfig::IncreasingSteps),
            "dec-steps" | "decreasing-steps" => Ok(PairConfig::DecreasingSteps),
            "disjoint" => Ok(PairConfig::Disjoint),
            other => Err(Error::Parse(format!("unknown configuration {other:?}"))),
        }
    }
}

impl fmt::Display for PairConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label of the pair, independent of argument order. Equal comparisons that
/// decide the label are rejected.
pub fn classify_pair(a: &Rect, b: &Rect) -> Result<PairConfig> {
    let (a, b) = match a.l.cmp(&b.l) {
        std::cmp::Ordering::Less => (a, b),
        std::cmp::Ordering::Greater => (b, a),
        std::cmp::Ordering::Equal => return Err(Error::Tie(a.id, b.id)),
    };
    if b.l == a.r {
        return Err(Error::Tie(a.id, b.id));
    }
    if b.l > a.r {
        return Ok(PairConfig::Disjoint);
    }
    if b.r == a.r || b.t == a.t {
        return Err(Error::Tie(a.id, b.id));
    }
    Ok(match (b.r < a.r, b.t > a.t) {
        (true, true) => PairConfig::Tower,
        (true, false) => PairConfig::Nested,
        (false, true) => PairConfig::IncreasingSteps,
        (false, false) => PairConfig::DecreasingSteps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyTraits {
    pub tower_free: bool,
    pub nested_free: bool,
    pub intersecting: bool,
    pub hanging: bool,
    pub unit_width: bool,
}

/// A family is hanging when every top-left corner `(l, t)` lies on `y = x`.
pub fn is_hanging(family: &Family) -> bool {
    family.rects().iter().all(|r| r.t == r.l)
}

/// The common x-range `[max l, min r]` when the family is intersecting.
pub fn common_x_range(family: &Family) -> Option<(Q, Q)> {
    let lo = family.rects().iter().map(|r| &r.l).max()?;
    let hi = family.rects().iter().map(|r| &r.r).min()?;
    (lo <= hi).then(|| (lo.clone(), hi.clone()))
}

pub fn is_intersecting(family: &Family) -> bool {
    family.is_empty() || common_x_range(family).is_some()
}

pub fn pair_matrix(family: &Family) -> Result<Vec<Vec<Option<PairConfig>>>> {
    let rects = family.rects();
    let mut out = vec![vec![None; rects.len()]; rects.len()];
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            let c = classify_pair(&rects[i], &rects[j])?;
            out[i][j] = Some(c);
            out[j][i] = Some(c);
        }
    }
    Ok(out)
}

pub fn family_traits(family: &Family) -> Result<FamilyTraits> {
    let mut tower_free = true;
    let mut nested_free = true;
    let rects = family.rects();
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            match classify_pair(&rects[i], &rects[j])? {
                PairConfig::Tower => tower_free = false,
                PairConfig::Nested => nested_free = false,
                _ => {}
            }
        }
    }
    let unit_width = rects.windows(2).all(|w| w[0].width() == w[1].width());
    Ok(FamilyTraits {
        tower_free,
        nested_free,
        intersecting: is_intersecting(family),
        hanging: is_hanging(family),
        unit_width,
    })
}

/// Longest subsequence of `rects` (already sorted by `l`) whose pairs all carry
/// `label`. The relation is transitive, so an O(n^2) chain DP is exact.
pub fn longest_chain(rects: &[&Rect], label: PairConfig) -> Vec<usize> {
    let n = rects.len();
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            if matches!(classify_pair(rects[j], rects[i]), Ok(c) if c == label) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                prev[i] = j;
            }
        }
    }
    let Some(end) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut chain = vec![end];
    while prev[*chain.last().unwrap()] != usize::MAX {
        chain.push(prev[*chain.last().unwrap()]);
    }
    chain.reverse();
    chain
}

/// Longest strictly monotone subsequence (increasing if `up`) of `keys`.
fn longest_monotone<T: Ord>(keys: &[T], up: bool) -> Vec<usize> {
    let n = keys.len();
    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            let ok = if up { keys[j] < keys[i] } else { keys[j] > keys[i] };
            if ok && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                prev[i] = j;
            }
        }
    }
    let Some(end) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut out = vec![end];
    while prev[*out.last().unwrap()] != usize::MAX {
        out.push(prev[*out.last().unwrap()]);
    }
    out.reverse();
    out
}

fn label_of(r_up: bool, t_up: bool) -> PairConfig {
    match (r_up, t_up) {
        (false, true) => PairConfig::Tower,
        (false, false) => PairConfig::Nested,
        (true, true) => PairConfig::IncreasingSteps,
        (true, false) => PairConfig::DecreasingSteps,
    }
}

/// Find `m` rectangles of the witness cover that are monotone in `l`, `r` and
/// `t`. Tries the double monotone-subsequence extraction first (always
/// succeeds once the cover has `(m-1)^4 + 1` members), then falls back to an
/// exact chain search per label.
pub fn es_extract(family: &Family, witness: &WitnessPoint, m: usize) -> Result<(Vec<RectId>, PairConfig)> {
    let mut rects: Vec<&Rect> = witness
        .cover
        .iter()
        .map(|id| family.get(*id).ok_or_else(|| Error::Invariant(format!("unknown id {id}"))))
        .collect::<Result<_>>()?;
    rects.sort_by(|a, b| a.l.cmp(&b.l));
    if m == 0 {
        return Ok((Vec::new(), PairConfig::Tower));
    }
    if m == 1 {
        return match rects.first() {
            Some(r) => Ok((vec![r.id], PairConfig::Tower)),
            None => Err(Error::NotFound(m)),
        };
    }
    let rs: Vec<&Q> = rects.iter().map(|r| &r.r).collect();
    for r_up in [false, true] {
        let by_r = longest_monotone(&rs, r_up);
        if by_r.len() < m {
            continue;
        }
        let ts: Vec<&Q> = by_r.iter().map(|&i| &rects[i].t).collect();
        for t_up in [true, false] {
            let by_t = longest_monotone(&ts, t_up);
            if by_t.len() >= m {
                let ids = by_t[..m].iter().map(|&j| rects[by_r[j]].id).collect();
                return Ok((ids, label_of(r_up, t_up)));
            }
        }
    }
    for label in PairConfig::CHAINS {
        let chain = longest_chain(&rects, label);
        if chain.len() >= m {
            return Ok((chain[..m].iter().map(|&i| rects[i].id).collect(), label));
        }
    }
    Err(Error::NotFound(m))
}

/// Unit-width realisation of a tower-free, nested-free family with the same
/// heights, the same left-endpoint order and the same cell covers. Built
/// right to left: each rectangle is placed with its right side just past the
/// left side of the last rectangle it meets.
pub fn realise_steps_as_unit(family: &Family) -> Result<(Family, BTreeMap<RectId, RectId>)> {
    family.require_general_position()?;
    let traits = family_traits(family)?;
    if !traits.tower_free || !traits.nested_free {
        return Err(Error::Trait("steps family (no towers, no nested pairs)".into()));
    }
    let mut order: Vec<&Rect> = family.rects().iter().collect();
    order.sort_by(|a, b| b.l.cmp(&a.l));
    // Realised rectangles, kept sorted by l (which is also original l order).
    let mut placed: Vec<(Rect, Rect)> = Vec::new();
    for orig in order {
        let new_r = if placed.is_empty() {
            q(1)
        } else {
            let meets = placed.iter().take_while(|(o, _)| o.l <= orig.r).count();
            if meets == 0 {
                &placed[0].1.l - crate::rational::frac(1, 2)
            } else {
                let first_l = &placed[0].1.l;
                let last_l = &placed[meets - 1].1.l;
                let mut slack = q(1) - (last_l - first_l);
                if let Some((_, next)) = placed.get(meets) {
                    let gap = &next.l - last_l;
                    if gap < slack {
                        slack = gap;
                    }
                }
                last_l + slack / q(2)
            }
        };
        let real = Rect::new(orig.id, &new_r - q(1), new_r, orig.t.clone())?;
        placed.insert(0, (orig.clone(), real));
    }
    let ids = placed.iter().map(|(o, _)| (o.id, o.id)).collect();
    let unit = Family::new(placed.into_iter().map(|(_, u)| u).collect())?;
    Ok((unit, ids))
}
