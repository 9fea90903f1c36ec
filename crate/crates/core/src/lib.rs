//! Infinite-bin model toolkit.
//!
//! The crate is organised around five areas:
//!
//! * [`config`], [`distribution`], [`word`] and [`rng`]: configurations of
//!   balls in bins, the moves acting on them, move laws and the indexed
//!   random letter streams driving every simulation.
//! * [`words`]: good/bad word classification, coupling numbers and the
//!   determined-scenery tracker.
//! * [`series`]: enumeration of minimal good and bad words and the certified
//!   brackets on the front speed built from them.
//! * [`sim`]: forward Monte Carlo, coupling-from-the-past sampling of the
//!   stationary front scenery and the estimators built on it.
//! * [`graph`]: Barak-Erdős graphs and their longest paths.

pub mod config;
pub mod distribution;
pub mod error;
pub mod graph;
pub mod rng;
pub mod series;
pub mod sim;
pub mod word;
pub mod words;

pub use config::Configuration;
pub use distribution::MoveDistribution;
pub use error::{Error, Result};
pub use word::Word;
