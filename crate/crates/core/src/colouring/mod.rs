//! Colourings and the constructive colouring algorithms.

mod config;
mod dynamic;
mod tower_free;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Family, Rect, RectId};

pub use config::{colour_config_plus_nested, colour_configuration, verify_configuration_property, ConfigViolation};
pub use dynamic::{
    colour_hanging, dynamic_colour, hanging_to_dynamic, DynamicEvent, DynamicTrace, HangingDual,
};
pub use tower_free::{check_aba_free, colour_tower_free, AbaViolation, DEFAULT_SEARCH_BUDGET};

pub const COLOURING_SCHEMA: &str = "bottomless/colouring/v1";

pub type Colour = u32;

/// Partial assignment of colours `1..=k`. Assignments are irrevocable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub k: Colour,
    pub colors: BTreeMap<RectId, Colour>,
}

impl Colouring {
    pub fn new(k: Colour) -> Self {
        Colouring { k, colors: BTreeMap::new() }
    }

    pub fn assign(&mut self, id: RectId, colour: Colour) -> Result<()> {
        if colour == 0 || colour > self.k {
            return Err(Error::Invariant(format!("colour {colour} outside 1..={}", self.k)));
        }
        match self.colors.get(&id) {
            Some(&c) if c != colour => Err(Error::Invariant(format!("rectangle {id} already has colour {c}"))),
            _ => {
                self.colors.insert(id, colour);
                Ok(())
            }
        }
    }

    pub fn get(&self, id: RectId) -> Option<Colour> {
        self.colors.get(&id).copied()
    }

    pub fn is_total_on(&self, family: &Family) -> bool {
        family.rects().iter().all(|r| self.colors.contains_key(&r.id))
    }

    pub fn distinct_colours(&self, ids: &[RectId]) -> usize {
        ids.iter().filter_map(|id| self.get(*id)).collect::<BTreeSet<_>>().len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let colors: serde_json::Map<String, serde_json::Value> =
            self.colors.iter().map(|(id, c)| (id.to_string(), (*c).into())).collect();
        serde_json::json!({ "schema": COLOURING_SCHEMA, "k": self.k, "colors": colors })
    }

    pub fn from_json(document: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            k: Colour,
            colors: BTreeMap<String, Colour>,
        }
        let doc: Doc = serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Colouring::new(doc.k);
        for (id, c) in doc.colors {
            let id: RectId = id.parse().map_err(|_| Error::Parse(format!("bad rectangle id {id:?}")))?;
            out.assign(id, c)?;
        }
        Ok(out)
    }
}

/// Presentation order of a semi-online algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    FromBelow,
    FromAbove,
    FromLeft,
    FromRight,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::FromBelow, Direction::FromAbove, Direction::FromLeft, Direction::FromRight];

    pub fn name(self) -> &'static str {
        match self {
            Direction::FromBelow => "below",
            Direction::FromAbove => "above",
            Direction::FromLeft => "left",
            Direction::FromRight => "right",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "below" | "from-below" => Ok(Direction::FromBelow),
            "above" | "from-above" => Ok(Direction::FromAbove),
            "left" | "from-left" => Ok(Direction::FromLeft),
            "right" | "from-right" => Ok(Direction::FromRight),
            other => Err(Error::Parse(format!("unknown direction {other:?}"))),
        }
    }

    /// Rectangles of `family` in presentation order.
    pub fn order(self, family: &Family) -> Vec<&Rect> {
        let mut rs: Vec<&Rect> = family.rects().iter().collect();
        match self {
            Direction::FromBelow => rs.sort_by(|a, b| a.t.cmp(&b.t)),
            Direction::FromAbove => rs.sort_by(|a, b| b.t.cmp(&a.t)),
            Direction::FromLeft => rs.sort_by(|a, b| a.l.cmp(&b.l)),
            Direction::FromRight => rs.sort_by(|a, b| b.r.cmp(&a.r)),
        }
        rs
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
