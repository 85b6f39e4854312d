//! ABA-freeness of the witness hypergraph and an exhaustive `(2k-1)` colourer
//! for tower-free families.

use serde::Serialize;

use super::{Colour, Colouring};
use crate::configurations::family_traits;
use crate::error::{Error, Result};
use crate::geometry::{witness_points, Family, RectId, WitnessPoint};

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbaViolation {
    pub a: WitnessPoint,
    pub b: WitnessPoint,
    /// Rectangles `x < y < z` in left-endpoint order with `x, z` only in `a`
    /// and `y` only in `b`.
    pub xyz: [RectId; 3],
}

/// `None` when the witness hypergraph, ordered by left endpoints, is ABA-free.
pub fn check_aba_free(family: &Family) -> Option<AbaViolation> {
    let mut by_l: Vec<usize> = (0..family.len()).collect();
    by_l.sort_by(|&a, &b| family.rects()[a].l.cmp(&family.rects()[b].l));
    let mut rank = vec![0usize; family.len()];
    for (pos, &i) in by_l.iter().enumerate() {
        rank[i] = pos;
    }
    let ws = witness_points(family);
    let ranked: Vec<Vec<usize>> = ws
        .iter()
        .map(|w| {
            let mut v: Vec<usize> = w.cover.iter().map(|id| rank[family.index_of(*id).unwrap()]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    for (ai, a) in ranked.iter().enumerate() {
        for (bi, b) in ranked.iter().enumerate() {
            if ai == bi {
                continue;
            }
            let a_only: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect();
            if a_only.len() < 2 {
                continue;
            }
            let (lo, hi) = (a_only[0], *a_only.last().unwrap());
            if let Some(&y) = b.iter().find(|&&y| y > lo && y < hi && a.binary_search(&y).is_err()) {
                let x = *a_only.iter().rfind(|&&x| x < y).unwrap();
                let z = *a_only.iter().find(|&&z| z > y).unwrap();
                let id = |pos: usize| family.rects()[by_l[pos]].id;
                return Some(AbaViolation { a: ws[ai].clone(), b: ws[bi].clone(), xyz: [id(x), id(y), id(z)] });
            }
        }
    }
    None
}

struct Search<'a> {
    k: usize,
    budget: u64,
    nodes: u64,
    /// Constraint cells (positions in assignment order) touching each position.
    touching: Vec<Vec<usize>>,
    cells: &'a [Vec<usize>],
    colour: Vec<usize>,
}

impl Search<'_> {
    fn feasible(&self, pos: usize) -> bool {
        self.touching[pos].iter().all(|&ci| {
            let cell = &self.cells[ci];
            let mut seen = vec![false; self.k];
            let mut open = 0;
            for &p in cell {
                if p <= pos {
                    seen[self.colour[p]] = true;
                } else {
                    open += 1;
                }
            }
            seen.iter().filter(|s| !**s).count() <= open
        })
    }

    fn run(&mut self, pos: usize) -> Result<bool> {
        if pos == self.colour.len() {
            return Ok(true);
        }
        let top = if pos == 0 { 1 } else { self.k };
        for c in 0..top {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            self.colour[pos] = c;
            if self.feasible(pos) && self.run(pos + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exhaustive search, in left-endpoint order, for a `k`-colouring in which
/// every point of depth at least `2k-1` sees all colours.
pub fn colour_tower_free(family: &Family, k: Colour, budget: u64) -> Result<Colouring> {
    family.require_general_position()?;
    if !family_traits(family)?.tower_free {
        return Err(Error::Trait("tower-free".into()));
    }
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| family.rects()[a].l.cmp(&family.rects()[b].l));
    let mut pos_of = vec![0usize; family.len()];
    for (p, &i) in order.iter().enumerate() {
        pos_of[i] = p;
    }
    let need = 2 * k as usize - 1;
    let cells: Vec<Vec<usize>> = witness_points(family)
        .into_iter()
        .filter(|w| w.cover.len() >= need)
        .map(|w| w.cover.iter().map(|id| pos_of[family.index_of(*id).unwrap()]).collect())
        .collect();
    let mut touching = vec![Vec::new(); family.len()];
    for (ci, cell) in cells.iter().enumerate() {
        for &p in cell {
            touching[p].push(ci);
        }
    }
    let mut search = Search { k: k as usize, budget, nodes: 0, touching, cells: &cells, colour: vec![0; family.len()] };
    if !search.run(0)? {
        return Err(Error::Invariant("no (2k-1)-polychromatic colouring exists".into()));
    }
    let mut out = Colouring::new(k);
    for (p, &i) in order.iter().enumerate() {
        out.assign(family.rects()[i].id, search.colour[p] as Colour + 1)?;
    }
    Ok(out)
}
