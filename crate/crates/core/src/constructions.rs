//! Instance generators: pure configurations, the families with no shallow
//! hitting sets, and the lower-bound families with their gadget composition.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::configurations::PairConfig;
use crate::error::{Error, Result};
use crate::geometry::{column_cells, depth_cells, vertical_line_profile, Family, Rect, RectId};
use crate::rational::{self, frac, mid, q, Q};

/// `m` rectangles whose pairs all carry `config`, ids `0..m`.
pub fn gen_config(config: PairConfig, m: usize) -> Result<Family> {
    if m == 0 {
        return Err(Error::Param("m must be at least 1".into()));
    }
    let m = m as i64;
    let rects = (1..=m)
        .map(|i| {
            let (l, r, t) = match config {
                PairConfig::Tower => (i, 2 * m + 1 - i, i),
                PairConfig::Nested => (i, 2 * m + 1 - i, m + 1 - i),
                PairConfig::IncreasingSteps => (i, m + i, i),
                PairConfig::DecreasingSteps => (i, m + i, m + 1 - i),
                PairConfig::Disjoint => (2 * i, 2 * i + 1, i),
            };
            Rect::new((i - 1) as RectId, q(l), q(r), q(t))
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(rects)
}

/// Sizes of three near-equal parts of `n`.
fn three_parts(n: usize) -> [usize; 3] {
    let (base, rem) = (n / 3, n % 3);
    [0, 1, 2].map(|i| base + usize::from(i < rem))
}

/// `2k-1` rectangles of width 4 in three groups; the witness `p_i` of
/// [`unit_lb_witnesses`] is covered by exactly the two groups other than `i`.
pub fn gen_unit_lb(k: usize) -> Result<Family> {
    if k < 2 {
        return Err(Error::Param("k must be at least 2".into()));
    }
    let sizes = three_parts(2 * k - 1);
    let starts = [(q(0), q(3)), (q(1), frac(3, 2)), (frac(5, 2), q(6))];
    let mut rects = Vec::new();
    for (g, &size) in sizes.iter().enumerate() {
        let delta = frac(1, 2 * (size as i64 + 1));
        for j in 0..size {
            let shift = &delta * q(j as i64);
            let l = &starts[g].0 + &shift;
            let t = &starts[g].1 + &shift;
            rects.push(Rect::new(rects.len() as RectId, l.clone(), l + q(4), t)?);
        }
    }
    Family::new(rects)
}

/// Witness points `p_1, p_2, p_3` of [`gen_unit_lb`].
pub fn unit_lb_witnesses() -> [(Q, Q); 3] {
    [(frac(19, 4), frac(1, 2)), (frac(7, 2), frac(9, 4)), (q(2), frac(1, 2))]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundFamily {
    pub family: Family,
    /// The rectangle meeting every tower member in a 2-covered point.
    pub wide: RectId,
    pub deep_x: Q,
    pub deep_y: Q,
}

/// An `m`-tower (ids `0..m`) and a wide rectangle (id `m`) that meets each
/// tower member alone in some point. The deep point is covered by the whole
/// tower. `m` defaults to `2k`.
pub fn gen_lb_family(k: usize, m: Option<usize>) -> Result<LowerBoundFamily> {
    if k < 2 {
        return Err(Error::Param("k must be at least 2".into()));
    }
    let m = m.unwrap_or(2 * k);
    if m == 0 {
        return Err(Error::Param("tower length must be positive".into()));
    }
    let mi = m as i64;
    let mut rects = (1..=mi)
        .map(|i| Rect::new((i - 1) as RectId, q(i), q(3 * mi + 1 - i), q(i)))
        .collect::<Result<Vec<_>>>()?;
    rects.push(Rect::new(m as RectId, q(mi) + frac(1, 2), q(3 * mi + 1), q(mi + 1))?);
    Ok(LowerBoundFamily {
        family: Family::new(rects)?,
        wide: m as RectId,
        deep_x: q(mi) + frac(1, 4),
        deep_y: q(1),
    })
}

/// Bounding box `(x0, x1, t0, t1)` of a nonempty family.
fn bbox(f: &Family) -> (Q, Q, Q, Q) {
    let rs = f.rects();
    let x0 = rs.iter().map(|r| &r.l).min().unwrap().clone();
    let x1 = rs.iter().map(|r| &r.r).max().unwrap().clone();
    let t0 = rs.iter().map(|r| &r.t).min().unwrap().clone();
    let t1 = rs.iter().map(|r| &r.t).max().unwrap().clone();
    (x0, x1, t0, t1)
}

/// Affine image of `g`: x-range onto `[xa, xb]`, tops onto `[ta, tb]`
/// (a single height goes to the middle), ids from `first_id`.
fn place_copy(g: &Family, xa: &Q, xb: &Q, ta: &Q, tb: &Q, first_id: RectId) -> Result<Vec<Rect>> {
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let (x0, x1, t0, t1) = bbox(g);
    let sx = (xb - xa) / (&x1 - &x0);
    let mut out = Vec::with_capacity(g.len());
    for (j, r) in g.rects().iter().enumerate() {
        let t = if t1 == t0 { mid(ta, tb) } else { ta + (&r.t - &t0) * (tb - ta) / (&t1 - &t0) };
        out.push(Rect::new(
            first_id + j as RectId,
            xa + (&r.l - &x0) * &sx,
            xa + (&r.r - &x0) * &sx,
            t,
        )?);
    }
    Ok(out)
}

/// Insert a thin copy of `g` at every 2-covered cell of `f`, so that each
/// copy lies in exactly the two rectangles of its cell.
pub fn compose_lb_gadget(f: &Family, g: &Family) -> Result<Family> {
    f.require_general_position()?;
    if g.is_empty() {
        return Ok(f.clone());
    }
    let ends = f.endpoints();
    // Open slabs with the 2-covers realised in them (one slot per cover).
    let mut seen: BTreeSet<Vec<RectId>> = BTreeSet::new();
    let mut slots: Vec<(usize, Vec<RectId>, Q, Q)> = Vec::new();
    for s in 0..ends.len().saturating_sub(1) {
        let x = mid(&ends[s], &ends[s + 1]);
        let column = column_cells(f, &x);
        for (i, w) in column.iter().enumerate() {
            if w.cover.len() == 2 && seen.insert(w.cover.clone()) {
                let below = column.get(i + 1).map(|v| v.y.clone()).unwrap_or_else(|| &w.y - q(1));
                slots.push((s, w.cover.clone(), below, w.y.clone()));
            }
        }
    }
    let total = slots.len() as i64;
    let mut per_slab: BTreeMap<usize, i64> = BTreeMap::new();
    for slot in &slots {
        *per_slab.entry(slot.0).or_default() += 1;
    }
    let mut used: BTreeMap<usize, i64> = BTreeMap::new();
    let mut rects: Vec<Rect> = f.rects().to_vec();
    let mut next_id = f.max_id().map_or(0, |m| m + 1);
    for (s, _, y_lo, y_hi) in &slots {
        let count = per_slab[s];
        let j = used.entry(*s).or_default();
        let (a, b) = (&ends[*s], &ends[*s + 1]);
        let cell_w = (b - a) / q(count);
        let centre = a + &cell_w * (q(2 * *j) + q(1)) / q(2);
        *j += 1;
        let mut width = frac(1, 4 * total);
        let half_cell = &cell_w / q(2);
        if half_cell < width {
            width = half_cell;
        }
        let half = &width / q(2);
        let gap = y_hi - y_lo;
        let copy = place_copy(
            g,
            &(&centre - &half),
            &(&centre + &half),
            &(y_lo + &gap / q(4)),
            &(y_lo + &gap * q(3) / q(4)),
            next_id,
        )?;
        next_id += copy.len() as RectId;
        rects.extend(copy);
    }
    Family::new(rects)
}

/// How the line bound `r` of each level is chosen. `Printed` takes
/// `r = max(r' + s, 1 - s(1 - r') - 1/D)`; `ProofConsistent` takes `+ 1/D` in
/// the second term, which is what the bound for lines through the right-hand
/// copies needs (`d + 1 - sd(1 - r') <= rd`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadiusRule {
    Printed,
    ProofConsistent,
}

impl RadiusRule {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "printed" => Ok(RadiusRule::Printed),
            "proof" | "proof-consistent" => Ok(RadiusRule::ProofConsistent),
            other => Err(Error::Parse(format!("unknown radius rule {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoShallowParams {
    pub rule: RadiusRule,
    pub h: usize,
    pub d: usize,
    #[serde(with = "rational::serde_q")]
    pub s: Q,
    #[serde(rename = "D")]
    pub big_d: usize,
    #[serde(with = "rational::serde_q")]
    pub r: Q,
    pub i0: usize,
}

/// `(s, D, r)` for levels `1..=h`; level 0 is `(-, 1, 0)`.
pub fn no_shallow_levels(h: usize, rule: RadiusRule) -> Vec<(Q, usize, Q)> {
    let mut out = Vec::with_capacity(h);
    let (mut prev_d, mut prev_r) = (1usize, q(0));
    for _ in 0..h {
        let slack = q(1) - &prev_r;
        let s = &slack / q(2);
        let a = q(prev_d as i64) / &s;
        let b = q(1) / (&s * &slack);
        let bound = if a > b { a } else { b };
        let big_d = rational::floor_to_i64(&bound) as usize + 1;
        let r1 = &prev_r + &s;
        let r2 = match rule {
            RadiusRule::Printed => q(1) - &s * &slack - frac(1, big_d as i64),
            RadiusRule::ProofConsistent => q(1) - &s * &slack + frac(1, big_d as i64),
        };
        let r = if r1 > r2 { r1 } else { r2 };
        out.push((s, big_d, r.clone()));
        prev_d = big_d;
        prev_r = r;
    }
    out
}

/// Least admissible `d` for level `h`.
pub fn no_shallow_min_d(h: usize, rule: RadiusRule) -> usize {
    no_shallow_levels(h, rule).last().map_or(1, |l| l.1)
}

pub fn no_shallow_params(h: usize, d: usize, rule: RadiusRule) -> Result<NoShallowParams> {
    let levels = no_shallow_levels(h, rule);
    let Some((s, big_d, r)) = levels.last().cloned() else {
        return Ok(NoShallowParams { rule, h, d, s: q(0), big_d: 1, r: q(0), i0: 0 });
    };
    if d < big_d {
        return Err(Error::Param(format!("d = {d} is below the least admissible value {big_d} for h = {h}")));
    }
    let i0 = rational::floor_to_i64(&(&s * q(d as i64))) as usize;
    Ok(NoShallowParams { rule, h, d, s, big_d, r, i0 })
}

fn build_no_shallow(h: usize, d: usize, rule: RadiusRule, next_id: &mut RectId) -> Result<Vec<Rect>> {
    if h == 0 {
        return Ok(Vec::new());
    }
    let p = no_shallow_params(h, d, rule)?;
    let di = d as i64;
    let mut rects = Vec::new();
    for j in 1..=di {
        rects.push(Rect::new(*next_id, q(j), q(di + j), q(j))?);
        *next_id += 1;
    }
    let mut add_copy = |sub_d: usize, x_at: i64, t_at: i64, rects: &mut Vec<Rect>| -> Result<()> {
        let mut local = 0;
        let sub = build_no_shallow(h - 1, sub_d, rule, &mut local)?;
        if sub.is_empty() {
            return Ok(());
        }
        let sub = Family::new(sub)?;
        let copy = place_copy(
            &sub,
            &(q(x_at) + frac(1, 4)),
            &(q(x_at) + frac(3, 4)),
            &(q(t_at) + frac(1, 4)),
            &(q(t_at) + frac(3, 4)),
            *next_id,
        )?;
        *next_id += copy.len() as RectId;
        rects.extend(copy);
        Ok(())
    };
    let i0 = p.i0 as i64;
    add_copy(d, i0, i0, &mut rects)?;
    for i in i0 + 1..=di {
        add_copy(i as usize, di + i - 1, i, &mut rects)?;
    }
    Ok(rects)
}

/// The family `F(h, d)`: `d` increasing steps, a copy of `F(h-1, d)` under
/// the first `i0` steps only, and copies of `F(h-1, i)` under steps `i..=d`.
pub fn gen_no_shallow(h: usize, d: usize, rule: RadiusRule) -> Result<(Family, NoShallowParams)> {
    let params = no_shallow_params(h, d, rule)?;
    let mut next = 0;
    let family = Family::new(build_no_shallow(h, d, rule, &mut next)?)?;
    Ok((family, params))
}

/// Number of rectangles of `F(h, d)` by the recursion, without building it.
pub fn no_shallow_size(h: usize, d: usize, rule: RadiusRule) -> usize {
    if h == 0 {
        return 0;
    }
    let i0 = no_shallow_params(h, d, rule).map_or(0, |p| p.i0);
    d + no_shallow_size(h - 1, d, rule) + (i0 + 1..=d).map(|i| no_shallow_size(h - 1, i, rule)).sum::<usize>()
}

/// Candidate vertical lines: one left of everything, then every endpoint and
/// slab midpoint.
pub fn candidate_lines(family: &Family) -> Vec<Q> {
    let mut xs = family.candidate_xs();
    let left = xs.first().map_or(q(0), |x| x - q(1));
    xs.insert(0, left);
    xs
}

/// The `d`-cells of a no-shallow family and its candidate lines meeting at
/// most `ceil(r d)` rectangles, computed once for repeated checks.
#[derive(Debug, Clone)]
pub struct NoShallowInstance {
    pub cells: Vec<Vec<RectId>>,
    pub lines: Vec<(Q, Vec<RectId>)>,
}

impl NoShallowInstance {
    pub fn new(family: &Family, params: &NoShallowParams) -> Self {
        let cap = rational::ceil_to_i64(&(&params.r * q(params.d as i64))) as usize;
        let lines = candidate_lines(family)
            .into_iter()
            .map(|x| {
                let profile: Vec<RectId> = vertical_line_profile(family, &x).into_iter().collect();
                (x, profile)
            })
            .filter(|(_, p)| p.len() <= cap)
            .collect();
        let cells = depth_cells(family, params.d).into_iter().map(|w| w.cover).collect();
        NoShallowInstance { cells, lines }
    }

    /// A short line meeting `hits` at least `h` times. `hits` must hit
    /// every cell.
    pub fn witness(&self, hits: &BTreeSet<RectId>, h: usize) -> Result<Option<Q>> {
        let unhit = self.cells.iter().filter(|c| !c.iter().any(|id| hits.contains(id))).count();
        if unhit > 0 {
            return Err(Error::NotAHittingSet(unhit));
        }
        Ok(self
            .lines
            .iter()
            .find(|(_, p)| p.iter().filter(|id| hits.contains(id)).count() >= h)
            .map(|(x, _)| x.clone()))
    }
}

/// A vertical line meeting at most `ceil(r d)` rectangles, at least `h` of
/// them in `hits`. `hits` must hit every `d`-cell.
pub fn check_no_shallow_witness(
    family: &Family,
    params: &NoShallowParams,
    hits: &BTreeSet<RectId>,
    h: usize,
) -> Result<Option<Q>> {
    NoShallowInstance::new(family, params).witness(hits, h)
}

/// Search for a hitting set of the `d`-cells that defeats
/// [`check_no_shallow_witness`]: every candidate line meeting at most
/// `ceil(r d)` rectangles meets it fewer than `h` times. Some minimal hitting
/// set fails the check exactly when this returns a set, since dropping
/// members keeps both line bounds. Branches on members of an unhit cell.
pub fn find_unwitnessed_hitting_set(
    family: &Family,
    params: &NoShallowParams,
    h: usize,
    budget: u64,
) -> Result<Option<BTreeSet<RectId>>> {
    search_unwitnessed(family, &NoShallowInstance::new(family, params), h, budget)
}

pub fn search_unwitnessed(
    family: &Family,
    instance: &NoShallowInstance,
    h: usize,
    budget: u64,
) -> Result<Option<BTreeSet<RectId>>> {
    let index = |id: &RectId| family.index_of(*id).ok_or_else(|| Error::Invariant(format!("unknown rectangle {id}")));
    let n = family.len();
    let mut lines_of = vec![Vec::new(); n];
    for (li, (_, line)) in instance.lines.iter().enumerate() {
        for id in line {
            lines_of[index(id)?].push(li);
        }
    }
    let cells: Vec<Vec<usize>> =
        instance.cells.iter().map(|c| c.iter().map(index).collect::<Result<_>>()).collect::<Result<_>>()?;
    // Rectangles on no short line are free to take.
    let mut chosen: Vec<bool> = (0..n).map(|i| lines_of[i].is_empty()).collect();
    let mut load = vec![0usize; instance.lines.len()];
    struct Ctx<'a> {
        cells: &'a [Vec<usize>],
        lines_of: &'a [Vec<usize>],
        limit: usize,
        budget: u64,
        nodes: u64,
    }
    fn go(ctx: &mut Ctx, chosen: &mut Vec<bool>, load: &mut Vec<usize>) -> Result<bool> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            return Err(Error::BudgetExceeded(ctx.budget));
        }
        let open = |i: usize, load: &Vec<usize>| ctx.lines_of[i].iter().all(|&l| load[l] < ctx.limit);
        let mut best: Option<Vec<usize>> = None;
        for cell in ctx.cells {
            if cell.iter().any(|&i| chosen[i]) {
                continue;
            }
            let options: Vec<usize> = cell.iter().copied().filter(|&i| open(i, load)).collect();
            if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                let dead = options.is_empty();
                best = Some(options);
                if dead {
                    break;
                }
            }
        }
        let Some(options) = best else {
            return Ok(true);
        };
        for i in options {
            chosen[i] = true;
            for &l in &ctx.lines_of[i] {
                load[l] += 1;
            }
            if go(ctx, chosen, load)? {
                return Ok(true);
            }
            chosen[i] = false;
            for &l in &ctx.lines_of[i] {
                load[l] -= 1;
            }
        }
        Ok(false)
    }
    if h == 0 {
        // The line left of every rectangle always qualifies.
        return Ok(None);
    }
    let mut ctx = Ctx { cells: &cells, lines_of: &lines_of, limit: h - 1, budget, nodes: 0 };
    if !go(&mut ctx, &mut chosen, &mut load)? {
        return Ok(None);
    }
    Ok(Some(
        (0..n).filter(|&i| chosen[i]).map(|i| family.rects()[i].id).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::{classify_pair, family_traits};
    use crate::geometry::covering_set;

    #[test]
    fn configs_classify() {
        assert_eq!(gen_config(PairConfig::Tower, 1).unwrap().len(), 1);
        for c in PairConfig::CHAINS.into_iter().chain([PairConfig::Disjoint]) {
            let f = gen_config(c, 4).unwrap();
            assert!(f.general_position());
            for a in f.rects() {
                for b in f.rects() {
                    if a.id < b.id {
                        assert_eq!(classify_pair(a, b).unwrap(), c);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_lb_k2_coordinates_and_witnesses() {
        let f = gen_unit_lb(2).unwrap();
        let r = f.rects();
        assert_eq!((r[0].l.clone(), r[0].r.clone(), r[0].t.clone()), (q(0), q(4), q(3)));
        assert_eq!((r[1].l.clone(), r[1].t.clone()), (q(1), frac(3, 2)));
        assert_eq!((r[2].l.clone(), r[2].r.clone(), r[2].t.clone()), (frac(5, 2), frac(13, 2), q(6)));
        let expect = [[1, 2], [0, 2], [0, 1]];
        for ((x, y), e) in unit_lb_witnesses().iter().zip(expect) {
            assert_eq!(covering_set(&f, x, y), e.into_iter().collect());
        }
        let t = family_traits(&f).unwrap();
        assert!(t.unit_width && t.tower_free && t.nested_free);
    }

    #[test]
    fn unit_lb_groups_hit_witnesses() {
        for k in 2..7 {
            let f = gen_unit_lb(k).unwrap();
            assert_eq!(f.len(), 2 * k - 1);
            assert!(f.general_position());
            let sizes = three_parts(2 * k - 1);
            for (i, (x, y)) in unit_lb_witnesses().iter().enumerate() {
                assert_eq!(covering_set(&f, x, y).len(), 2 * k - 1 - sizes[i]);
            }
        }
    }

    #[test]
    fn lb_family_shape() {
        let lb = gen_lb_family(2, Some(3)).unwrap();
        assert_eq!(lb.family.len(), 4);
        assert_eq!(covering_set(&lb.family, &lb.deep_x, &lb.deep_y).len(), 3);
        let pairs: BTreeSet<Vec<RectId>> = depth_cells(&lb.family, 2).into_iter().map(|w| w.cover).collect();
        for i in 0..3 {
            assert!(pairs.contains(&vec![i, lb.wide]));
        }
    }

    #[test]
    fn compose_with_single_rectangle() {
        let f = Family::new(vec![
            Rect::new(0, q(0), q(10), q(5)).unwrap(),
            Rect::new(1, q(2), q(12), q(7)).unwrap(),
        ])
        .unwrap();
        let g = Family::new(vec![Rect::new(0, q(0), q(1), q(1)).unwrap()]).unwrap();
        let out = compose_lb_gadget(&f, &g).unwrap();
        assert_eq!(out.len(), 3);
        let new = out.get(2).unwrap();
        let x = mid(&new.l, &new.r);
        assert_eq!(covering_set(&out, &x, &new.t), [0, 1, 2].into_iter().collect());
        assert_eq!(compose_lb_gadget(&f, &Family::empty()).unwrap(), f);
    }

    #[test]
    fn no_shallow_parameters() {
        let (f, p) = gen_no_shallow(0, 5, RadiusRule::Printed).unwrap();
        assert!(f.is_empty());
        assert_eq!((p.big_d, p.r.clone()), (1, q(0)));
        let (f, p) = gen_no_shallow(1, 3, RadiusRule::Printed).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!((p.s.clone(), p.big_d, p.r.clone(), p.i0), (frac(1, 2), 3, frac(1, 2), 1));
        let p2 = no_shallow_params(2, 13, RadiusRule::Printed).unwrap();
        assert_eq!((p2.s.clone(), p2.big_d, p2.r.clone(), p2.i0), (frac(1, 4), 13, frac(83, 104), 3));
        assert!(matches!(gen_no_shallow(2, 12, RadiusRule::Printed), Err(Error::Param(_))));
    }

    #[test]
    fn no_shallow_size_matches_recursion() {
        let (f, _) = gen_no_shallow(2, 13, RadiusRule::Printed).unwrap();
        assert_eq!(f.len(), no_shallow_size(2, 13, RadiusRule::Printed));
        assert_eq!(f.len(), 111);
        assert!(f.general_position());
    }

    #[test]
    fn printed_radius_has_a_counterexample_at_level_two() {
        let (f, p) = gen_no_shallow(1, 3, RadiusRule::Printed).unwrap();
        assert_eq!(find_unwitnessed_hitting_set(&f, &p, 1, 1_000_000).unwrap(), None);
        let (f, p) = gen_no_shallow(2, 13, RadiusRule::Printed).unwrap();
        let bad = find_unwitnessed_hitting_set(&f, &p, 2, 1_000_000).unwrap().expect("counterexample");
        assert_eq!(check_no_shallow_witness(&f, &p, &bad, 2).unwrap(), None);
    }

    #[test]
    fn proof_consistent_radius() {
        let p = no_shallow_params(1, 3, RadiusRule::ProofConsistent).unwrap();
        assert_eq!((p.big_d, p.r.clone(), p.i0), (3, frac(5, 6), 1));
        assert_eq!(no_shallow_min_d(2, RadiusRule::ProofConsistent), 73);
    }

    #[test]
    fn no_shallow_witness_for_first_step() {
        let (f, p) = gen_no_shallow(1, 3, RadiusRule::Printed).unwrap();
        let x = check_no_shallow_witness(&f, &p, &[0].into_iter().collect(), 1).unwrap().unwrap();
        assert!(x < q(2));
        assert!(check_no_shallow_witness(&f, &p, &BTreeSet::new(), 0).is_err());
        let all: BTreeSet<RectId> = f.ids().into_iter().collect();
        assert!(check_no_shallow_witness(&f, &p, &all, 0).unwrap().is_some());
    }
}
