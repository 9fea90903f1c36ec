//! Certified brackets on the front speed from minimal good and bad words.

pub mod census;
pub mod curve;
pub mod old_series;
pub mod speed;
pub mod sum;
pub mod tree;

pub use census::{Census, CensusSums};
pub use curve::{bivariate_d, curve, parse_grid, BivariatePartial, CurveRow};
pub use old_series::old_series_partial;
pub use speed::{
    enumerate_minimal, uniform_speed_terms, weight, BracketParams, Leaf, SpeedBracket,
};
pub use sum::CompensatedSum;
pub use tree::{Truncation, DEFAULT_MIN_WEIGHT};
