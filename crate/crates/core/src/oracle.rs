//! Exhaustive ground truth: polychromatic verification, complete colouring
//! search and the exact `m_k` of a family.

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::geometry::{witness_points, Family, IndexedCells, WitnessPoint};
use crate::par::{self, Exec};

/// Witnesses of depth at least `m` that miss one of the `k` colours.
pub fn verify_polychromatic(family: &Family, colouring: &Colouring, k: usize, m: usize) -> Vec<WitnessPoint> {
    witness_points(family)
        .into_iter()
        .filter(|w| w.cover.len() >= m && colouring.distinct_colours(&w.cover) < k)
        .collect()
}

/// `verify_polychromatic` over many instances; the violation count of each.
pub fn verify_batch(items: &[(Family, Colouring)], k: usize, m: usize, exec: Exec) -> Vec<usize> {
    let run = |i: usize| verify_polychromatic(&items[i].0, &items[i].1, k, m).len();
    par::map_range_with(exec, items.len(), run)
}

/// Constraint cells (indices into `family.rects()`) of depth at least `m`.
fn deep_cells(family: &Family, m: usize) -> Vec<Vec<usize>> {
    IndexedCells::new(family).covers.into_iter().filter(|c| c.len() >= m).collect()
}

struct Problem {
    k: usize,
    n: usize,
    cells: Vec<Vec<usize>>,
    /// For each position, the cells whose last member it is.
    closing: Vec<Vec<usize>>,
}

impl Problem {
    fn new(family: &Family, k: usize, m: usize) -> Self {
        let cells = deep_cells(family, m);
        let n = family.len();
        let mut closing = vec![Vec::new(); n];
        for (ci, c) in cells.iter().enumerate() {
            if let Some(&last) = c.iter().max() {
                closing[last].push(ci);
            }
        }
        Problem { k, n, cells, closing }
    }

    fn unsat_at(&self, pos: usize, colour: &[usize]) -> bool {
        self.closing[pos].iter().any(|&ci| {
            let mut seen = vec![false; self.k];
            for &p in &self.cells[ci] {
                seen[colour[p]] = true;
            }
            seen.iter().any(|s| !s)
        })
    }

    /// Visit complete assignments extending `colour[..pos]` in lexicographic
    /// order; stops when `visit` returns false.
    fn walk(&self, pos: usize, colour: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.n {
            return visit(colour);
        }
        for c in 0..self.k {
            colour[pos] = c;
            if !self.unsat_at(pos, colour) && !self.walk(pos + 1, colour, visit) {
                return false;
            }
        }
        true
    }

    fn first_from(&self, prefix: &[usize]) -> Option<Vec<usize>> {
        for (p, _) in prefix.iter().enumerate() {
            if self.unsat_at(p, prefix) {
                return None;
            }
        }
        let mut colour = prefix.to_vec();
        colour.resize(self.n, 0);
        let mut found = None;
        self.walk(prefix.len(), &mut colour, &mut |c| {
            found = Some(c.to_vec());
            false
        });
        found
    }
}

fn check_budget(k: usize, n: usize, budget: u64) -> Result<()> {
    let space = (k as f64).powi(n.saturating_sub(1) as i32);
    if space > budget as f64 {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(())
}

fn to_colouring(family: &Family, k: usize, colour: &[usize]) -> Colouring {
    let mut out = Colouring::new(k as Colour);
    for (r, &c) in family.rects().iter().zip(colour) {
        out.colors.insert(r.id, c as Colour + 1);
    }
    out
}

/// Lexicographically first total colouring (rectangles in id order, the
/// first fixed to colour 1) in which every point of depth at least `m` sees
/// all `k` colours; `None` when there is none.
pub fn brute_force_polychromatic(family: &Family, k: usize, m: usize, budget: u64) -> Result<Option<Colouring>> {
    brute_force_with(family, k, m, budget, Exec::default_mode())
}

pub fn brute_force_with(family: &Family, k: usize, m: usize, budget: u64, exec: Exec) -> Result<Option<Colouring>> {
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    check_budget(k, family.len(), budget)?;
    let problem = Problem::new(family, k, m);
    let found = match family.len() {
        0 => Some(Vec::new()),
        1 => problem.first_from(&[0]),
        _ => {
            // Branch on the second rectangle; the smallest successful branch wins.
            let branches = par::map_range_with(exec, k, |c| problem.first_from(&[0, c]));
            branches.into_iter().flatten().next()
        }
    };
    Ok(found.map(|c| to_colouring(family, k, &c)))
}

/// Every total colouring (no symmetry reduction) passing the polychromatic
/// test at depth `m`.
pub fn all_polychromatic(family: &Family, k: usize, m: usize, budget: u64) -> Result<Vec<Colouring>> {
    check_budget(k, family.len() + 1, budget)?;
    let problem = Problem::new(family, k, m);
    let mut out = Vec::new();
    let mut colour = vec![0; family.len()];
    problem.walk(0, &mut colour, &mut |c| {
        out.push(to_colouring(family, k, c));
        true
    });
    Ok(out)
}

/// Least `m` for which a polychromatic `k`-colouring at depth `m` exists.
pub fn exact_mk(family: &Family, k: usize, budget: u64) -> Result<usize> {
    for m in 1..=family.len() + 1 {
        if brute_force_polychromatic(family, k, m, budget)?.is_some() {
            return Ok(m);
        }
    }
    unreachable!("depth n+1 is vacuous")
}
