//! Bottomless rectangles in exact rational coordinates, and the cells of
//! their arrangement.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, mid, Q};

pub type RectId = u32;

pub const FAMILY_SCHEMA: &str = "bottomless/family/v1";

/// The closed region `{(x, y) : l <= x <= r, y <= t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub id: RectId,
    #[serde(with = "rational::serde_q")]
    pub l: Q,
    #[serde(with = "rational::serde_q")]
    pub r: Q,
    #[serde(with = "rational::serde_q")]
    pub t: Q,
}

impl Rect {
    pub fn new(id: RectId, l: Q, r: Q, t: Q) -> Result<Self> {
        if l >= r {
            return Err(Error::Invariant(format!(
                "rectangle {id} has l = {} >= r = {}",
                rational::format(&l),
                rational::format(&r)
            )));
        }
        Ok(Rect { id, l, r, t })
    }

    pub fn contains(&self, x: &Q, y: &Q) -> bool {
        &self.l <= x && x <= &self.r && y <= &self.t
    }

    pub fn spans(&self, x: &Q) -> bool {
        &self.l <= x && x <= &self.r
    }

    pub fn width(&self) -> Q {
        &self.r - &self.l
    }
}

/// Rectangles with unique ids, kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    rects: Vec<Rect>,
    general_position: bool,
}

impl Family {
    pub fn new(mut rects: Vec<Rect>) -> Result<Self> {
        rects.sort_by_key(|r| r.id);
        for pair in rects.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::Invariant(format!("duplicate rectangle id {}", pair[0].id)));
            }
        }
        for rect in &rects {
            if rect.l >= rect.r {
                return Err(Error::Invariant(format!("rectangle {} has l >= r", rect.id)));
            }
        }
        let general_position = compute_general_position(&rects);
        Ok(Family { rects, general_position })
    }

    pub fn empty() -> Self {
        Family { rects: Vec::new(), general_position: true }
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn general_position(&self) -> bool {
        self.general_position
    }

    pub fn ids(&self) -> Vec<RectId> {
        self.rects.iter().map(|r| r.id).collect()
    }

    pub fn get(&self, id: RectId) -> Option<&Rect> {
        self.rects.binary_search_by_key(&id, |r| r.id).ok().map(|i| &self.rects[i])
    }

    pub fn index_of(&self, id: RectId) -> Option<usize> {
        self.rects.binary_search_by_key(&id, |r| r.id).ok()
    }

    pub fn max_id(&self) -> Option<RectId> {
        self.rects.last().map(|r| r.id)
    }

    /// Subfamily keeping only the given ids.
    pub fn restrict(&self, keep: &BTreeSet<RectId>) -> Family {
        let rects: Vec<Rect> = self.rects.iter().filter(|r| keep.contains(&r.id)).cloned().collect();
        let general_position = compute_general_position(&rects);
        Family { rects, general_position }
    }

    pub fn without(&self, drop: &BTreeSet<RectId>) -> Family {
        let rects: Vec<Rect> = self.rects.iter().filter(|r| !drop.contains(&r.id)).cloned().collect();
        let general_position = compute_general_position(&rects);
        Family { rects, general_position }
    }

    pub fn require_general_position(&self) -> Result<()> {
        if self.general_position {
            Ok(())
        } else {
            Err(Error::GeneralPosition)
        }
    }

    /// All distinct endpoint x-values in increasing order.
    pub fn endpoints(&self) -> Vec<Q> {
        let set: BTreeSet<Q> = self.rects.iter().flat_map(|r| [r.l.clone(), r.r.clone()]).collect();
        set.into_iter().collect()
    }

    /// Endpoints plus one midpoint per open slab between consecutive endpoints.
    pub fn candidate_xs(&self) -> Vec<Q> {
        let ends = self.endpoints();
        let mut xs = Vec::with_capacity(ends.len() * 2);
        for (i, x) in ends.iter().enumerate() {
            if i > 0 {
                xs.push(mid(&ends[i - 1], x));
            }
            xs.push(x.clone());
        }
        xs
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.to_json_with(serde_json::Map::new())
    }

    /// Family JSON with extra top-level fields (e.g. a provenance header).
    pub fn to_json_with(&self, extra: serde_json::Map<String, serde_json::Value>) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("schema".into(), FAMILY_SCHEMA.into());
        for (k, v) in extra {
            obj.insert(k, v);
        }
        obj.insert("rectangles".into(), serde_json::to_value(&self.rects).expect("rects serialise"));
        serde_json::Value::Object(obj)
    }
}

fn compute_general_position(rects: &[Rect]) -> bool {
    let mut xs = HashSet::with_capacity(rects.len() * 2);
    let mut ts = HashSet::with_capacity(rects.len());
    rects
        .iter()
        .all(|r| xs.insert(r.l.clone()) && xs.insert(r.r.clone()) && ts.insert(r.t.clone()))
}

#[derive(Deserialize)]
struct FamilyDoc {
    rectangles: Vec<RawRect>,
}

#[derive(Deserialize)]
struct RawRect {
    id: RectId,
    l: String,
    r: String,
    t: String,
}

/// Parse and validate a family document.
pub fn load_family(document: &str) -> Result<Family> {
    let doc: FamilyDoc = serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    let rects = doc
        .rectangles
        .into_iter()
        .map(|raw| Rect::new(raw.id, rational::parse(&raw.l)?, rational::parse(&raw.r)?, rational::parse(&raw.t)?))
        .collect::<Result<Vec<_>>>()?;
    Family::new(rects)
}

/// A representative point of an arrangement cell together with its exact cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPoint {
    #[serde(with = "rational::serde_q")]
    pub x: Q,
    #[serde(with = "rational::serde_q")]
    pub y: Q,
    pub cover: Vec<RectId>,
}

impl WitnessPoint {
    pub fn depth(&self) -> usize {
        self.cover.len()
    }
}

pub fn covering_set(family: &Family, x: &Q, y: &Q) -> BTreeSet<RectId> {
    family.rects().iter().filter(|r| r.contains(x, y)).map(|r| r.id).collect()
}

pub fn vertical_line_profile(family: &Family, x: &Q) -> BTreeSet<RectId> {
    family.rects().iter().filter(|r| r.spans(x)).map(|r| r.id).collect()
}

/// Every point on the vertical line at `x` sees one of these covers: for each
/// distinct height among the spanning rectangles, the rectangles at least that tall.
pub fn column_cells(family: &Family, x: &Q) -> Vec<WitnessPoint> {
    let mut spanning: Vec<&Rect> = family.rects().iter().filter(|r| r.spans(x)).collect();
    spanning.sort_by(|a, b| b.t.cmp(&a.t).then(a.id.cmp(&b.id)));
    let mut out = Vec::new();
    let mut i = 0;
    while i < spanning.len() {
        let t = spanning[i].t.clone();
        while i < spanning.len() && spanning[i].t == t {
            i += 1;
        }
        let mut cover: Vec<RectId> = spanning[..i].iter().map(|r| r.id).collect();
        cover.sort_unstable();
        out.push(WitnessPoint { x: x.clone(), y: t, cover });
    }
    out
}

/// One witness per distinct nonempty cover, scanning endpoints and slab midpoints.
pub fn witness_points(family: &Family) -> Vec<WitnessPoint> {
    let mut seen: HashSet<Vec<RectId>> = HashSet::new();
    let mut out = Vec::new();
    for x in family.candidate_xs() {
        for w in column_cells(family, &x) {
            if seen.insert(w.cover.clone()) {
                out.push(w);
            }
        }
    }
    out
}

pub fn depth_cells(family: &Family, d: usize) -> Vec<WitnessPoint> {
    witness_points(family).into_iter().filter(|w| w.cover.len() == d).collect()
}

/// Witness covers translated to indices into `family.rects()`; the common
/// input of the exhaustive searches.
#[derive(Debug, Clone)]
pub struct IndexedCells {
    pub covers: Vec<Vec<usize>>,
}

impl IndexedCells {
    pub fn new(family: &Family) -> Self {
        let index: BTreeMap<RectId, usize> = family.rects().iter().enumerate().map(|(i, r)| (r.id, i)).collect();
        let covers = witness_points(family)
            .into_iter()
            .map(|w| w.cover.iter().map(|id| index[id]).collect())
            .collect();
        IndexedCells { covers }
    }

    pub fn max_depth(&self) -> usize {
        self.covers.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    pub(crate) fn rect(id: RectId, l: i64, r: i64, t: i64) -> Rect {
        Rect::new(id, q(l), q(r), q(t)).unwrap()
    }

    fn covers(ws: &[WitnessPoint]) -> BTreeSet<Vec<RectId>> {
        ws.iter().map(|w| w.cover.clone()).collect()
    }

    #[test]
    fn load_single_rectangle() {
        let f = load_family(r#"{"rectangles":[{"id":0,"l":"0","r":"1","t":"1"}]}"#).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.general_position());
    }

    #[test]
    fn shared_left_side_is_not_general_position() {
        let f = load_family(
            r#"{"rectangles":[{"id":0,"l":"0","r":"1","t":"1"},{"id":1,"l":"0","r":"3/2","t":"2"}]}"#,
        )
        .unwrap();
        assert!(!f.general_position());
    }

    #[test]
    fn inverted_rectangle_rejected() {
        let err = load_family(r#"{"rectangles":[{"id":0,"l":"2","r":"1","t":"1"}]}"#).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)));
        let dup = load_family(
            r#"{"rectangles":[{"id":3,"l":"0","r":"1","t":"1"},{"id":3,"l":"2","r":"3","t":"2"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(dup, Error::Invariant(_)));
        assert!(matches!(load_family(r#"{"rectangles":[{"id":0,"l":"x","r":"1","t":"1"}]}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip_keeps_ids() {
        let f = Family::new(vec![rect(7, 0, 4, 2), Rect::new(2, frac(1, 3), q(6), frac(-5, 2)).unwrap()]).unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let g = load_family(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.ids(), vec![2, 7]);
    }

    #[test]
    fn covering_set_examples() {
        let f = Family::new(vec![rect(0, 0, 4, 2), rect(1, 2, 6, 3)]).unwrap();
        assert_eq!(covering_set(&f, &q(1), &q(1)), BTreeSet::from([0]));
        assert_eq!(covering_set(&f, &q(4), &q(2)), BTreeSet::from([0, 1]));
        assert_eq!(covering_set(&f, &q(3), &q(1)), BTreeSet::from([0, 1]));
        assert_eq!(covering_set(&f, &q(4), &frac(5, 2)), BTreeSet::from([1]));
    }

    #[test]
    fn witness_examples() {
        assert!(witness_points(&Family::empty()).is_empty());
        let one = Family::new(vec![rect(0, 0, 4, 2)]).unwrap();
        assert_eq!(covers(&witness_points(&one)), BTreeSet::from([vec![0]]));
        let two = Family::new(vec![rect(0, 0, 4, 2), rect(1, 2, 6, 3)]).unwrap();
        assert_eq!(covers(&witness_points(&two)), BTreeSet::from([vec![0], vec![1], vec![0, 1]]));
    }

    #[test]
    fn witness_covers_match_fine_grid() {
        let f = Family::new(vec![rect(0, 0, 4, 2), rect(1, 2, 6, 3), rect(2, 1, 3, 5)]).unwrap();
        let ws = covers(&witness_points(&f));
        let mut grid = BTreeSet::new();
        for xi in -4..=32 {
            for yi in -4..=28 {
                let c: Vec<RectId> = covering_set(&f, &frac(xi, 4), &frac(yi, 4)).into_iter().collect();
                if !c.is_empty() {
                    grid.insert(c);
                }
            }
        }
        assert_eq!(ws, grid);
    }

    #[test]
    fn depth_cell_examples() {
        let one = Family::new(vec![rect(0, 0, 4, 2)]).unwrap();
        assert_eq!(depth_cells(&one, 1).len(), 1);
        let two = Family::new(vec![rect(0, 0, 4, 2), rect(1, 2, 6, 3)]).unwrap();
        let d2 = depth_cells(&two, 2);
        assert_eq!(d2.len(), 1);
        assert_eq!(d2[0].cover, vec![0, 1]);
        let apart = Family::new(vec![rect(0, 0, 1, 2), rect(1, 2, 3, 3)]).unwrap();
        assert!(depth_cells(&apart, 2).is_empty());
    }

    #[test]
    fn vertical_profile_examples() {
        let f = Family::new(vec![rect(0, 0, 4, 2)]).unwrap();
        assert!(vertical_line_profile(&f, &q(5)).is_empty());
        assert_eq!(vertical_line_profile(&f, &q(0)), BTreeSet::from([0]));
        let g = Family::new(vec![rect(0, 0, 4, 2), rect(1, 2, 6, 3)]).unwrap();
        assert_eq!(vertical_line_profile(&g, &q(3)), BTreeSet::from([0, 1]));
    }
}
