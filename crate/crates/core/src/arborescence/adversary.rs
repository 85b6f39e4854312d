//! The presenting side of the semi-online game on branchings.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::trim::{associated_sequence, trim};
use super::{Branching, RootList, VertexId};
use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};

/// What a strategy may look at when a vertex arrives.
pub struct StrategyView<'a> {
    pub branching: &'a Branching,
    pub colouring: &'a Colouring,
    pub k: Colour,
    pub m: usize,
}

pub trait Strategy {
    fn name(&self) -> &str;

    /// Colours for previously presented uncoloured vertices (possibly `v`).
    fn on_present(&mut self, view: &StrategyView<'_>, v: VertexId) -> Vec<(VertexId, Colour)>;
}

pub struct Never;

impl Strategy for Never {
    fn name(&self) -> &str {
        "never"
    }

    fn on_present(&mut self, _: &StrategyView<'_>, _: VertexId) -> Vec<(VertexId, Colour)> {
        Vec::new()
    }
}

/// Colours each vertex at once with the smallest colour missing among its parents.
pub struct FirstFit;

impl Strategy for FirstFit {
    fn name(&self) -> &str {
        "first-fit"
    }

    fn on_present(&mut self, view: &StrategyView<'_>, v: VertexId) -> Vec<(VertexId, Colour)> {
        let used: Vec<Colour> = view.branching.parents_of(v).iter().filter_map(|&u| view.colouring.get(u)).collect();
        let c = (1..=view.k).find(|c| !used.contains(c)).unwrap_or(1);
        vec![(v, c)]
    }
}

#[derive(Default)]
pub struct RoundRobin {
    next: Colour,
}

impl Strategy for RoundRobin {
    fn name(&self) -> &str {
        "round-robin"
    }

    fn on_present(&mut self, view: &StrategyView<'_>, v: VertexId) -> Vec<(VertexId, Colour)> {
        let c = self.next % view.k + 1;
        self.next = self.next.wrapping_add(1);
        vec![(v, c)]
    }
}

/// Guesses the final depth of a vertex by the height of the tree above it.
pub struct ParityGuess;

impl Strategy for ParityGuess {
    fn name(&self) -> &str {
        "parity-guess"
    }

    fn on_present(&mut self, view: &StrategyView<'_>, v: VertexId) -> Vec<(VertexId, Colour)> {
        fn height(b: &Branching, v: VertexId) -> usize {
            b.parents_of(v).iter().map(|&u| 1 + height(b, u)).max().unwrap_or(0)
        }
        let h = height(view.branching, v);
        vec![(v, (h % view.k as usize) as Colour + 1)]
    }
}

/// Colours each arrival at random, and sometimes waits a step first.
pub struct RandomColour {
    rng: ChaCha8Rng,
    pending: Vec<VertexId>,
}

impl RandomColour {
    pub fn new(seed: u64) -> Self {
        RandomColour { rng: ChaCha8Rng::seed_from_u64(seed), pending: Vec::new() }
    }
}

impl Strategy for RandomColour {
    fn name(&self) -> &str {
        "random"
    }

    fn on_present(&mut self, view: &StrategyView<'_>, v: VertexId) -> Vec<(VertexId, Colour)> {
        let mut out: Vec<(VertexId, Colour)> =
            self.pending.drain(..).map(|u| (u, self.rng.random_range(1..=view.k))).collect();
        if self.rng.random_bool(0.25) {
            self.pending.push(v);
        } else {
            out.push((v, self.rng.random_range(1..=view.k)));
        }
        out
    }
}

pub const STRATEGY_NAMES: [&str; 5] = ["never", "first-fit", "round-robin", "parity-guess", "random"];

pub fn strategy_by_name(name: &str, seed: u64) -> Result<Box<dyn Strategy>> {
    Ok(match name {
        "never" => Box::new(Never),
        "first-fit" => Box::new(FirstFit),
        "round-robin" => Box::new(RoundRobin::default()),
        "parity-guess" => Box::new(ParityGuess),
        "random" => Box::new(RandomColour::new(seed)),
        other => return Err(Error::Param(format!("unknown strategy {other:?}"))),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdversaryConfig {
    pub k: Colour,
    pub m: usize,
    pub budget: u64,
    /// Blocks of the associated sequence looked at when choosing a move.
    pub n_cap: usize,
}

impl AdversaryConfig {
    pub fn new(k: Colour, m: usize, budget: u64) -> Self {
        AdversaryConfig { k, m, budget, n_cap: 1 << 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TranscriptEvent {
    Present { step: u64, vertex: VertexId, parents: Vec<VertexId> },
    Assign { step: u64, vertex: VertexId, colour: Colour },
    Violation { step: u64, path: Vec<VertexId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Defeated { step: u64, path: Vec<VertexId> },
    BudgetExhausted { sequence: Vec<usize> },
    StrategyError { step: u64, message: String },
}

impl Outcome {
    pub fn is_defeat(&self) -> bool {
        !matches!(self, Outcome::BudgetExhausted { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub strategy: String,
    pub config: AdversaryConfig,
    pub events: Vec<TranscriptEvent>,
    pub outcome: Outcome,
    pub branching: Branching,
    pub colouring: Colouring,
    /// Trimmed-tree key of each vertex, taken right after its presentation.
    pub keys: BTreeMap<VertexId, String>,
    pub catalogue_sizes: Vec<usize>,
}

/// Upward paths on `m` vertices ending at `v` that carry at most one colour.
fn first_bad_path(b: &Branching, colours: &Colouring, v: VertexId, m: usize) -> Option<Vec<VertexId>> {
    fn walk(b: &Branching, colours: &Colouring, path: &mut Vec<VertexId>, seen: Option<Colour>, m: usize) -> bool {
        if path.len() == m {
            return true;
        }
        let top = *path.last().unwrap();
        for &u in b.parents_of(top) {
            let seen_next = match (seen, colours.get(u)) {
                (Some(a), Some(c)) if a != c => continue,
                (s, c) => s.or(c),
            };
            path.push(u);
            if walk(b, colours, path, seen_next, m) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![v];
    if walk(b, colours, &mut path, colours.get(v), m) {
        path.reverse();
        Some(path)
    } else {
        None
    }
}

/// Parents of the next vertex: the roots after the first block that repeats
/// the count of the block following it, or none.
fn choose_parents(roots: &[VertexId], keys: &BTreeMap<VertexId, String>, n_cap: usize) -> (Vec<VertexId>, Vec<usize>) {
    let list: Vec<String> = roots.iter().map(|r| keys[r].clone()).collect();
    let seq = associated_sequence(&list, n_cap);
    let parents = seq
        .s
        .windows(2)
        .position(|w| w[0] == w[1])
        .map(|j| roots[seq.ends[j]..].to_vec())
        .unwrap_or_default();
    (parents, seq.s)
}

/// Play against `strategy` until some path on `m` vertices carries at most
/// one colour, the strategy breaks the rules, or `budget` vertices have
/// been presented.
pub fn adversary_run(strategy: &mut dyn Strategy, config: AdversaryConfig) -> Result<Transcript> {
    let AdversaryConfig { k, m, budget, n_cap } = config;
    if k == 0 || m == 0 || budget == 0 {
        return Err(Error::Param("k, m and budget must be positive".into()));
    }
    let mut b = Branching::new();
    let mut colouring = Colouring::new(k);
    let mut roots = RootList::default();
    let mut keys = BTreeMap::new();
    let mut events = Vec::new();
    let mut catalogue = std::collections::BTreeSet::new();
    let mut catalogue_sizes = Vec::new();
    let mut sequence = Vec::new();
    let mut outcome = None;
    for step in 0..budget {
        let v = step as VertexId;
        let (parents, seq) = choose_parents(&roots.roots, &keys, n_cap);
        sequence = seq;
        roots.apply(v, &parents);
        b.present(v, parents.clone());
        events.push(TranscriptEvent::Present { step, vertex: v, parents });

        let answer = strategy.on_present(&StrategyView { branching: &b, colouring: &colouring, k, m }, v);
        for (u, c) in answer {
            let legal = b.parents.contains_key(&u) && colouring.get(u).is_none() && (1..=k).contains(&c);
            if !legal {
                outcome = Some(Outcome::StrategyError {
                    step,
                    message: format!("illegal assignment of colour {c} to vertex {u}"),
                });
                break;
            }
            colouring.assign(u, c)?;
            events.push(TranscriptEvent::Assign { step, vertex: u, colour: c });
        }
        if outcome.is_some() {
            break;
        }
        if let Some(path) = first_bad_path(&b, &colouring, v, m) {
            events.push(TranscriptEvent::Violation { step, path: path.clone() });
            outcome = Some(Outcome::Defeated { step, path });
            break;
        }
        let tree = trim(&b, &colouring, v, m, k);
        catalogue.insert(tree.key.clone());
        catalogue_sizes.push(catalogue.len());
        keys.insert(v, tree.key);
    }
    Ok(Transcript {
        strategy: strategy.name().to_string(),
        config,
        events,
        outcome: outcome.unwrap_or(Outcome::BudgetExhausted { sequence }),
        branching: b,
        colouring,
        keys,
        catalogue_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn never_loses_at_the_first_edge() {
        let t = adversary_run(&mut Never, AdversaryConfig::new(2, 2, 100)).unwrap();
        match t.outcome {
            Outcome::Defeated { step, ref path } => {
                assert_eq!(path.len(), 2);
                assert!(step <= 2);
            }
            ref other => panic!("{other:?}"),
        }
    }

    #[test]
    fn first_fit_loses_quickly() {
        let t = adversary_run(&mut FirstFit, AdversaryConfig::new(2, 2, 10)).unwrap();
        assert!(matches!(t.outcome, Outcome::Defeated { .. }), "{:?}", t.outcome);
    }

    #[test]
    fn recolouring_is_an_error() {
        struct Greedy;
        impl Strategy for Greedy {
            fn name(&self) -> &str {
                "greedy"
            }
            fn on_present(&mut self, _: &StrategyView<'_>, _: VertexId) -> Vec<(VertexId, Colour)> {
                vec![(0, 1)]
            }
        }
        let t = adversary_run(&mut Greedy, AdversaryConfig::new(2, 3, 10)).unwrap();
        assert!(matches!(t.outcome, Outcome::StrategyError { step: 1, .. }));
    }
}
