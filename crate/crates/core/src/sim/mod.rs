//! Forward simulation, perfect sampling of the stationary chain and the
//! estimators built on them.

pub mod convergence;
pub mod forward;
pub mod perfect;
pub mod tape;

pub use convergence::{coupling_convergence_check, ConvergenceReport};
pub use forward::{
    run_forward, run_forward_replica, run_forward_replicas, ForwardSummary, RunStats,
};
pub use perfect::{
    perfect_sample, perfect_sample_on, perfect_samples, stationary_speed, tau_tail, PerfectOptions,
    PerfectSample, StationaryEstimate, TauTail, DEFAULT_MAX_HORIZON,
};
pub use tape::LetterTape;
