//! Shallow hitting sets of intersecting families and the peeling that turns
//! shallow hitting sets into polychromatic colourings.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::colouring::{Colour, Colouring};
use crate::configurations::common_x_range;
use crate::error::{Error, Result};
use crate::geometry::{column_cells, depth_cells, Family, Rect, RectId, WitnessPoint};
use crate::rational::{mid, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingSet {
    pub ids: BTreeSet<RectId>,
    pub depth: usize,
    pub shallow: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// The spine: the midpoint of the common x-range of an intersecting family.
pub fn spine(family: &Family) -> Result<Q> {
    let (lo, hi) = common_x_range(family).ok_or_else(|| Error::Trait("intersecting".into()))?;
    Ok(mid(&lo, &hi))
}

/// Depth-`d` witnesses tagged with their side of the spine, sorted bottom-up.
fn sided_cells(family: &Family, d: usize, spine: &Q) -> Vec<(Side, WitnessPoint)> {
    let mut xs = family.candidate_xs();
    xs.push(spine.clone());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in xs {
        let side = if x <= *spine { Side::Left } else { Side::Right };
        for w in column_cells(family, &x) {
            if w.cover.len() == d && seen.insert((side, w.cover.clone())) {
                out.push((side, w));
            }
        }
    }
    out.sort_by(|a, b| a.1.y.cmp(&b.1.y).then_with(|| a.1.x.cmp(&b.1.x)));
    out
}

fn hits_all(cells: &[Vec<RectId>], set: &BTreeSet<RectId>) -> bool {
    cells.iter().all(|c| c.iter().any(|id| set.contains(id)))
}

/// A minimal hitting set of the depth-`d` cells of an intersecting family,
/// hitting every such cell at most three times.
pub fn shallow_hitting_intersecting(family: &Family, d: usize) -> Result<HittingSet> {
    family.require_general_position()?;
    let spine = spine(family)?;
    let mut chosen: Vec<RectId> = Vec::new();
    let mut per_side: [BTreeSet<RectId>; 2] = [BTreeSet::new(), BTreeSet::new()];
    for (side, w) in sided_cells(family, d, &spine) {
        let own = &mut per_side[side as usize];
        if w.cover.iter().any(|id| own.contains(id)) {
            continue;
        }
        let members = w.cover.iter().map(|id| family.get(*id).expect("cover id"));
        let pick: &Rect = match side {
            Side::Left => members.min_by(|a, b| a.r.cmp(&b.r)),
            Side::Right => members.max_by(|a, b| a.l.cmp(&b.l)),
        }
        .expect("nonempty cover");
        own.insert(pick.id);
        if !chosen.contains(&pick.id) {
            chosen.push(pick.id);
        }
    }
    let cells: Vec<Vec<RectId>> = depth_cells(family, d).into_iter().map(|w| w.cover).collect();
    let mut ids: BTreeSet<RectId> = chosen.iter().copied().collect();
    for id in chosen.iter().rev() {
        ids.remove(id);
        if !hits_all(&cells, &ids) {
            ids.insert(*id);
        }
    }
    Ok(HittingSet { ids, depth: d, shallow: 3 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShallowViolation {
    pub witness: WitnessPoint,
    pub hits: usize,
}

/// Depth-`d` witnesses hit zero times or more than `c` times.
pub fn check_shallow(family: &Family, set: &BTreeSet<RectId>, d: usize, c: usize) -> Vec<ShallowViolation> {
    depth_cells(family, d)
        .into_iter()
        .filter_map(|w| {
            let hits = w.cover.iter().filter(|id| set.contains(id)).count();
            (hits == 0 || hits > c).then_some(ShallowViolation { witness: w, hits })
        })
        .collect()
}

/// Peel `c`-shallow hitting sets for depths `ck, c(k-1), ..., c` and give the
/// `i`-th one colour `i`; whatever remains gets colour `k`.
pub fn lift_hitting_to_colouring<F>(family: &Family, k: Colour, c: usize, constructor: F) -> Result<Colouring>
where
    F: Fn(&Family, usize) -> Result<BTreeSet<RectId>>,
{
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    let mut out = Colouring::new(k);
    let mut residual = family.clone();
    for i in 1..=k {
        let depth = c * (k - i + 1) as usize;
        let set = constructor(&residual, depth).map_err(|e| Error::ConstructorFailure(e.to_string()))?;
        for id in &set {
            if residual.get(*id).is_none() {
                return Err(Error::ConstructorFailure(format!("id {id} is not in the residual family")));
            }
            out.assign(*id, i)?;
        }
        residual = residual.without(&set);
    }
    for r in residual.rects() {
        out.assign(r.id, k)?;
    }
    Ok(out)
}

/// `lift_hitting_to_colouring` with the intersecting-family constructor (`c = 3`).
pub fn colour_intersecting(family: &Family, k: Colour) -> Result<Colouring> {
    lift_hitting_to_colouring(family, k, 3, |f, d| Ok(shallow_hitting_intersecting(f, d)?.ids))
}

/// Shrink `start` to a minimal hitting set of `cells`, trying removals in `order`.
pub fn minimise_hitting_set(cells: &[Vec<RectId>], start: &BTreeSet<RectId>, order: &[RectId]) -> BTreeSet<RectId> {
    let mut ids = start.clone();
    let mut cells_of: BTreeMap<RectId, Vec<usize>> = BTreeMap::new();
    let mut count = vec![0usize; cells.len()];
    for (ci, cell) in cells.iter().enumerate() {
        for id in cell {
            cells_of.entry(*id).or_default().push(ci);
            count[ci] += ids.contains(id) as usize;
        }
    }
    for id in order {
        if !ids.contains(id) {
            continue;
        }
        let mine = cells_of.get(id).map_or(&[][..], Vec::as_slice);
        if mine.iter().all(|&ci| count[ci] >= 2) {
            ids.remove(id);
            for &ci in mine {
                count[ci] -= 1;
            }
        }
    }
    ids
}

/// A minimal hitting set of the depth-`d` cells reached by removing
/// rectangles in a random order.
pub fn random_minimal_hitting_set<R: rand::Rng + ?Sized>(family: &Family, d: usize, rng: &mut R) -> BTreeSet<RectId> {
    let cells: Vec<Vec<RectId>> = depth_cells(family, d).into_iter().map(|w| w.cover).collect();
    random_minimal_of(&cells, &family.ids(), rng)
}

/// A minimal hitting set of `cells` among `ids`, removing in a random order.
pub fn random_minimal_of<R: rand::Rng + ?Sized>(cells: &[Vec<RectId>], ids: &[RectId], rng: &mut R) -> BTreeSet<RectId> {
    use rand::seq::SliceRandom;
    let mut order = ids.to_vec();
    order.shuffle(rng);
    minimise_hitting_set(cells, &order.iter().copied().collect(), &order)
}

fn is_minimal(cells: &[Vec<RectId>], set: &BTreeSet<RectId>) -> bool {
    set.iter().all(|id| cells.iter().any(|c| c.iter().filter(|x| set.contains(x)).eq([id])))
}

/// Every minimal hitting set of the depth-`d` cells. Branches on the members
/// of the first unhit cell; a minimal set is reached along a branch that
/// only picks its own members.
pub fn minimal_hitting_sets(family: &Family, d: usize, budget: u64) -> Result<Vec<BTreeSet<RectId>>> {
    let cells: Vec<Vec<RectId>> = depth_cells(family, d).into_iter().map(|w| w.cover).collect();
    let mut found = BTreeSet::new();
    let mut nodes = 0u64;
    fn go(
        cells: &[Vec<RectId>],
        chosen: &mut BTreeSet<RectId>,
        found: &mut BTreeSet<Vec<RectId>>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        if !is_minimal_so_far(cells, chosen) {
            return Ok(());
        }
        match cells.iter().find(|c| !c.iter().any(|id| chosen.contains(id))) {
            None => {
                found.insert(chosen.iter().copied().collect());
            }
            Some(cell) => {
                for id in cell {
                    chosen.insert(*id);
                    go(cells, chosen, found, nodes, budget)?;
                    chosen.remove(id);
                }
            }
        }
        Ok(())
    }
    /// Every chosen member must still be the only chosen member of some cell
    /// that no other chosen member hits; otherwise no extension is minimal.
    fn is_minimal_so_far(cells: &[Vec<RectId>], chosen: &BTreeSet<RectId>) -> bool {
        chosen.iter().all(|id| {
            cells.iter().any(|c| c.contains(id) && c.iter().filter(|x| chosen.contains(x)).count() == 1)
        })
    }
    go(&cells, &mut BTreeSet::new(), &mut found, &mut nodes, budget)?;
    Ok(found
        .into_iter()
        .map(|v| v.into_iter().collect::<BTreeSet<_>>())
        .filter(|s| is_minimal(&cells, s))
        .collect())
}
