//! Hanging families as a dynamic point process, and the dynamic colourer that
//! keeps every long enough prefix of the live points polychromatic.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Colour, Colouring};
use crate::configurations::is_hanging;
use crate::error::{Error, Result};
use crate::geometry::{Family, RectId};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DynamicEvent {
    Appear {
        #[serde(with = "crate::rational::serde_q")]
        x: Q,
        id: RectId,
    },
    DisappearLeftmost,
}

/// Event stream of a hanging family. Sweeping a vertical line from right to
/// left, a rectangle becomes a live point when the line reaches its right
/// side, at position `-l`, and leaves when the line passes its left side.
/// Every cell cover is then a prefix of the live points at some moment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HangingDual {
    pub events: Vec<DynamicEvent>,
    /// Sweep coordinate at which each event happens.
    #[serde(skip)]
    pub at: Vec<Q>,
}

pub fn hanging_to_dynamic(family: &Family) -> Result<HangingDual> {
    if !is_hanging(family) {
        return Err(Error::Trait("hanging".into()));
    }
    family.require_general_position()?;
    // (sweep x, is_appear, id); decreasing x.
    let mut marks: Vec<(Q, bool, RectId)> = Vec::with_capacity(2 * family.len());
    for r in family.rects() {
        marks.push((r.r.clone(), true, r.id));
        marks.push((r.l.clone(), false, r.id));
    }
    marks.sort_by(|a, b| b.0.cmp(&a.0));
    let mut events = Vec::new();
    let mut at = Vec::new();
    for (x, appear, id) in marks {
        if appear {
            let l = family.get(id).expect("id from family").l.clone();
            events.push(DynamicEvent::Appear { x: -l, id });
        } else {
            events.push(DynamicEvent::DisappearLeftmost);
        }
        at.push(x);
    }
    Ok(HangingDual { events, at })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynamicTrace {
    pub k: Colour,
    /// Colours fixed while processing each event.
    pub steps: Vec<Vec<(RectId, Colour)>>,
}

impl DynamicTrace {
    /// Partial colouring after the first `n` events.
    pub fn colouring_after(&self, n: usize) -> Colouring {
        let mut c = Colouring::new(self.k);
        for step in &self.steps[..n] {
            for &(id, colour) in step {
                c.colors.insert(id, colour);
            }
        }
        c
    }

    pub fn colouring(&self) -> Colouring {
        self.colouring_after(self.steps.len())
    }
}

struct Live {
    /// (position, id, colour) sorted by position.
    points: Vec<(Q, RectId, Option<Colour>)>,
}

impl Live {
    fn prefix_len(&self, colour: Colour) -> usize {
        self.points.iter().position(|p| p.2 == Some(colour)).unwrap_or(self.points.len())
    }

    /// Checks invariants (a) and (b); returns a description of the first failure.
    fn check(&self, k: usize) -> Option<String> {
        let mut last: Vec<Option<usize>> = vec![None; k + 1];
        for (pos, p) in self.points.iter().enumerate() {
            if let Some(c) = p.2 {
                if let Some(prev) = last[c as usize] {
                    if pos - prev - 1 < k - 1 {
                        return Some(format!("{c}-gap of size {} at position {pos}", pos - prev - 1));
                    }
                }
                last[c as usize] = Some(pos);
            }
        }
        (1..=k as Colour)
            .find(|&c| self.prefix_len(c) > 2 * k - 2)
            .map(|c| format!("{c}-prefix of size {}", self.prefix_len(c)))
    }
}

/// Keep, after every event and for every colour `i`, all `i`-gaps of size at
/// least `k-1` and the `i`-prefix of size at most `2k-2`.
pub fn dynamic_colour(events: &[DynamicEvent], k: Colour) -> Result<DynamicTrace> {
    if k == 0 {
        return Err(Error::Param("k must be positive".into()));
    }
    let ku = k as usize;
    let mut live = Live { points: Vec::new() };
    let mut steps = Vec::with_capacity(events.len());
    for event in events {
        match event {
            DynamicEvent::Appear { x, id } => {
                let at = live.points.partition_point(|p| p.0 < *x);
                if live.points.get(at).is_some_and(|p| p.0 == *x) {
                    return Err(Error::Order(format!("two live points at the same position (id {id})")));
                }
                live.points.insert(at, (x.clone(), *id, None));
            }
            DynamicEvent::DisappearLeftmost => {
                if live.points.is_empty() {
                    return Err(Error::EmptyDisappear);
                }
                live.points.remove(0);
            }
        }
        let mut fixed = Vec::new();
        for c in 1..=k {
            if live.prefix_len(c) <= 2 * ku - 2 {
                continue;
            }
            let Some(slot) = live.points.iter_mut().take(ku).find(|p| p.2.is_none()) else {
                return Err(Error::InvariantBroken(format!("no uncoloured point among the leftmost {k}")));
            };
            slot.2 = Some(c);
            fixed.push((slot.1, c));
        }
        if let Some(why) = live.check(ku) {
            return Err(Error::InvariantBroken(why));
        }
        steps.push(fixed);
    }
    Ok(DynamicTrace { k, steps })
}

/// Colour a hanging family so that every point of depth at least `2k-1` sees
/// all `k` colours. Rectangles never forced by the dynamic process get colour 1.
pub fn colour_hanging(family: &Family, k: Colour) -> Result<Colouring> {
    let dual = hanging_to_dynamic(family)?;
    let mut out = dynamic_colour(&dual.events, k)?.colouring();
    let ids: BTreeMap<RectId, ()> = family.rects().iter().map(|r| (r.id, ())).collect();
    for id in ids.keys() {
        out.colors.entry(*id).or_insert(1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::rational::q;

    fn hang(id: u32, l: i64, r: i64) -> Rect {
        Rect::new(id, q(l), q(r), q(l)).unwrap()
    }

    fn appear(x: i64, id: u32) -> DynamicEvent {
        DynamicEvent::Appear { x: q(x), id }
    }

    #[test]
    fn single_rectangle_appears() {
        let f = Family::new(vec![hang(0, 0, 1)]).unwrap();
        let d = hanging_to_dynamic(&f).unwrap();
        assert_eq!(d.events, vec![appear(0, 0), DynamicEvent::DisappearLeftmost]);
    }

    #[test]
    fn middle_point_leaves_before_the_next_appears() {
        let f = Family::new(vec![hang(0, 0, 10), hang(1, 2, 3), hang(2, 4, 5)]).unwrap();
        let d = hanging_to_dynamic(&f).unwrap();
        let first_appear_of_1 = d.events.iter().position(|e| *e == appear(-2, 1)).unwrap();
        let gone = d.events[..first_appear_of_1].iter().filter(|e| **e == DynamicEvent::DisappearLeftmost).count();
        assert_eq!(gone, 1);
    }

    #[test]
    fn three_points_two_colours() {
        let t = dynamic_colour(&[appear(0, 0), appear(1, 1), appear(2, 2)], 2).unwrap();
        let c = t.colouring();
        assert_eq!(c.distinct_colours(&[0, 1, 2]), 2);
    }

    #[test]
    fn one_point_forces_nothing() {
        let t = dynamic_colour(&[appear(0, 0)], 3).unwrap();
        assert!(t.colouring().colors.is_empty());
    }

    #[test]
    fn repair_after_leftmost_leaves() {
        let evs = [appear(0, 0), appear(1, 1), appear(2, 2), appear(3, 3), DynamicEvent::DisappearLeftmost];
        let t = dynamic_colour(&evs, 2).unwrap();
        assert_eq!(t.colouring_after(4).get(0), Some(1));
        assert_eq!(t.steps[4], vec![(2, 1)]);
    }

    #[test]
    fn empty_disappear_is_rejected() {
        assert_eq!(dynamic_colour(&[DynamicEvent::DisappearLeftmost], 2), Err(Error::EmptyDisappear));
    }
}
