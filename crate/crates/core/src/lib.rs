//! Polychromatic colourings of bottomless rectangles and of branchings:
//! exact geometry, constructive colourers, lower-bound constructions,
//! a semi-online adversary and exhaustive oracles.

pub mod arborescence;
pub mod colouring;
pub mod configurations;
pub mod error;
pub mod constructions;
pub mod geometry;
pub mod hitting;
pub mod oracle;
pub mod par;
pub mod rational;
pub mod sample;

pub use error::{Error, Result};
pub use geometry::{Family, Rect, RectId, WitnessPoint};
pub use rational::Q;
