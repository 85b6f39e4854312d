//! Semi-online colourers for a single configuration and for a configuration
//! combined with nested chains.

use serde::Serialize;

use super::{Colour, Colouring, Direction};
use crate::configurations::{classify_pair, longest_chain, PairConfig};
use crate::error::{Error, Result};
use crate::geometry::{witness_points, Family, Rect, WitnessPoint};
use crate::rational::Q;

type KeyFn = fn(&Rect) -> Q;

fn top(r: &Rect) -> Q {
    r.t.clone()
}

fn neg_left(r: &Rect) -> Q {
    -r.l.clone()
}

fn right(r: &Rect) -> Q {
    r.r.clone()
}

/// Present rectangles in `order`. For each colour, the threshold is the
/// largest key among earlier related rectangles of that colour. A colour with
/// no threshold is used first; otherwise the colour with the smallest
/// threshold is reused.
fn threshold_colouring(
    order: &[&Rect],
    k: Colour,
    related: impl Fn(&Rect, &Rect) -> Result<bool>,
    key: KeyFn,
) -> Result<Colouring> {
    let mut out = Colouring::new(k);
    let mut done: Vec<(&Rect, Colour)> = Vec::with_capacity(order.len());
    for &r in order {
        let mut thresholds: Vec<Option<(Q, &Rect)>> = vec![None; k as usize];
        for &(s, c) in &done {
            if !related(s, r)? {
                continue;
            }
            let v = key(s);
            let slot = &mut thresholds[c as usize - 1];
            if slot.as_ref().is_none_or(|(cur, _)| v > *cur) {
                *slot = Some((v, s));
            }
        }
        let colour = match thresholds.iter().position(Option::is_none) {
            Some(i) => i as Colour + 1,
            None => {
                let mut best = 0usize;
                for i in 1..thresholds.len() {
                    let (bi, bs) = thresholds[best].as_ref().unwrap();
                    let (vi, si) = thresholds[i].as_ref().unwrap();
                    if vi == bi {
                        return Err(Error::Tie(bs.id, si.id));
                    }
                    if vi < bi {
                        best = i;
                    }
                }
                best as Colour + 1
            }
        };
        out.assign(r.id, colour)?;
        done.push((r, colour));
    }
    Ok(out)
}

fn key_for(config: PairConfig, direction: Direction) -> Option<KeyFn> {
    use Direction::*;
    use PairConfig::*;
    match (config, direction) {
        (Tower, FromLeft | FromRight | FromBelow) => Some(top),
        (Nested, FromLeft | FromRight | FromAbove) => Some(top),
        (IncreasingSteps, FromRight | FromAbove) => Some(neg_left),
        (DecreasingSteps, FromLeft | FromAbove) => Some(right),
        _ => None,
    }
}

/// Colour so that every point covered by a `j`-chain of `config` (`j <= k`)
/// sees at least `j` colours.
pub fn colour_configuration(family: &Family, k: Colour, config: PairConfig, direction: Direction) -> Result<Colouring> {
    let key = key_for(config, direction).ok_or_else(|| Error::NoAlgorithm {
        config: config.to_string(),
        direction: direction.to_string(),
    })?;
    family.require_general_position()?;
    let order = direction.order(family);
    threshold_colouring(&order, k, |s, r| Ok(classify_pair(s, r)? == config), key)
}

/// Colour against chains of `config` and nested chains at once.
pub fn colour_config_plus_nested(family: &Family, k: Colour, config: PairConfig) -> Result<Colouring> {
    let (direction, key): (Direction, KeyFn) = match config {
        PairConfig::Tower => (Direction::FromRight, top),
        PairConfig::IncreasingSteps => (Direction::FromRight, neg_left),
        PairConfig::DecreasingSteps => (Direction::FromLeft, right),
        other => {
            return Err(Error::NoAlgorithm { config: format!("{other}+nested"), direction: "any".into() });
        }
    };
    family.require_general_position()?;
    let order = direction.order(family);
    threshold_colouring(
        &order,
        k,
        |s, r| {
            let c = classify_pair(s, r)?;
            Ok(c == config || c == PairConfig::Nested)
        },
        key,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigViolation {
    pub witness: WitnessPoint,
    pub chain: usize,
    pub colours: usize,
}

/// Every witness whose cover holds a `j`-chain of `config` (`j <= k`) but sees
/// fewer than `j` colours, reported once per missing `j`.
pub fn verify_configuration_property(
    family: &Family,
    colouring: &Colouring,
    config: PairConfig,
    k: usize,
) -> Vec<ConfigViolation> {
    let mut out = Vec::new();
    for w in witness_points(family) {
        let mut rects: Vec<&Rect> = w.cover.iter().filter_map(|id| family.get(*id)).collect();
        rects.sort_by(|a, b| a.l.cmp(&b.l));
        let chain = longest_chain(&rects, config).len().min(k);
        let colours = colouring.distinct_colours(&w.cover);
        for j in colours + 1..=chain {
            out.push(ConfigViolation { witness: w.clone(), chain: j, colours });
        }
    }
    out
}
