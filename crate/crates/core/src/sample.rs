//! Seeded random families for tests, benches and the CLI.

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::configurations::PairConfig;
use crate::geometry::{Family, Rect};
use crate::rational::q;

/// `n` distinct integers from `lo..hi`, sorted.
fn distinct<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, n: usize) -> Vec<i64> {
    let mut v: Vec<i64> = index::sample(rng, (hi - lo) as usize, n).into_iter().map(|i| lo + i as i64).collect();
    v.sort_unstable();
    v
}

fn build(ls: &[i64], rs: &[i64], ts: &[i64]) -> Family {
    let rects = (0..ls.len())
        .map(|i| Rect::new(i as u32, q(ls[i]), q(rs[i]), q(ts[i])).expect("l < r"))
        .collect();
    Family::new(rects).expect("distinct ids")
}

/// Random intervals from `2n` distinct endpoints, distinct heights.
pub fn random_family<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    let mut ends = distinct(rng, 0, 6 * n as i64 + 2, 2 * n);
    ends.shuffle(rng);
    let (mut ls, mut rs) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for pair in ends.chunks(2) {
        ls.push(pair[0].min(pair[1]));
        rs.push(pair[0].max(pair[1]));
    }
    let mut ts = distinct(rng, 0, 6 * n as i64 + 2, n);
    ts.shuffle(rng);
    build(&ls, &rs, &ts)
}

/// `n` rectangles through a common point whose every pair is `config`.
pub fn random_pure_config<R: Rng + ?Sized>(rng: &mut R, config: PairConfig, n: usize) -> Family {
    let span = 4 * n as i64 + 4;
    let ls = distinct(rng, 0, span, n);
    let mut rs = distinct(rng, span, 2 * span, n);
    let mut ts = distinct(rng, 0, span, n);
    match config {
        PairConfig::Tower => rs.reverse(),
        PairConfig::Nested => {
            rs.reverse();
            ts.reverse();
        }
        PairConfig::IncreasingSteps => {}
        PairConfig::DecreasingSteps => ts.reverse(),
        PairConfig::Disjoint => return build(&(0..n as i64).map(|i| 3 * i).collect::<Vec<_>>(), &(0..n as i64).map(|i| 3 * i + 1).collect::<Vec<_>>(), &ts),
    }
    build(&ls, &rs, &ts)
}

/// Random family in which x-containment forces a lower top, so no pair is a tower.
pub fn random_tower_free<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    let base = random_family(rng, n);
    let nn = 2 * n as i64 + 2;
    let mut rects = Vec::with_capacity(n);
    for (i, r) in base.rects().iter().enumerate() {
        let width = crate::rational::floor_to_i64(&r.width());
        let t = (nn * width + rng.random_range(0..nn)) * (n as i64 + 1) + i as i64;
        rects.push(Rect::new(r.id, r.l.clone(), r.r.clone(), q(t)).expect("l < r"));
    }
    Family::new(rects).expect("distinct ids")
}

/// Left and right endpoints in the same order: only steps and disjoint pairs.
pub fn random_steps<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    loop {
        let ls = distinct(rng, 0, 6 * n as i64 + 2, n);
        let rs: Vec<i64> = ls.iter().map(|l| l + rng.random_range(1..=3 * n as i64)).collect();
        let mut all: Vec<i64> = ls.iter().chain(rs.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 2 * n || rs.windows(2).any(|w| w[0] >= w[1]) {
            continue;
        }
        let mut ts = distinct(rng, 0, 6 * n as i64 + 2, n);
        ts.shuffle(rng);
        return build(&ls, &rs, &ts);
    }
}

/// Every top-left corner on the diagonal `y = x`.
pub fn random_hanging<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    let base = random_family(rng, n);
    let rects = base
        .rects()
        .iter()
        .map(|r| Rect::new(r.id, r.l.clone(), r.r.clone(), r.l.clone()).expect("l < r"))
        .collect();
    Family::new(rects).expect("distinct ids")
}

/// Every rectangle contains the line `x = 0`.
pub fn random_intersecting<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Family {
    let span = 3 * n as i64 + 2;
    let mut ls = distinct(rng, -span, 0, n);
    ls.shuffle(rng);
    let mut rs = distinct(rng, 1, span + 1, n);
    rs.shuffle(rng);
    let mut ts = distinct(rng, 0, span, n);
    ts.shuffle(rng);
    build(&ls, &rs, &ts)
}
