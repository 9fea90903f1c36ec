//! Good and bad words, coupling numbers and the determined-scenery tracker.
//!
//! A word is *good* when its last move advances the front from every
//! starting configuration, *bad* when it advances it from none. Whether a
//! word is good from `X` only depends on the placement of the rightmost
//! `horizon(α)` balls of `X`, so every verdict is decided on a finite set of
//! [`layout`]s.

pub mod classify;
pub mod coupling;
pub mod layout;
pub mod profile;
pub mod tracker;

pub use classify::{classify, epsilon, horizon, is_x_good, Classification, Classifier, Verdict};
pub use coupling::coupling_number;
pub use layout::test_set;
pub use profile::{GoodnessProfile, TransitionTables};
pub use tracker::{tracker_run, TrackerState};

/// Letters above this bound are rejected by the exhaustive paths.
pub const MAX_EXACT_LETTER: u32 = 30;
