//! Exact rational geometry: scalars, points, predicates and certified
//! cosine thresholds.

pub mod angle;
pub mod interval;
pub mod predicates;
pub mod rational;

use thiserror::Error;

pub use angle::AngleSpec;
pub use interval::Interval;
pub use predicates::{
    canonical_direction, cmp_polar, cos2_between, crossing_angle_at_least, crossing_point,
    direction_of, orient2d, primitive, properly_cross, rational_cos_bound, CosThreshold, Dot,
    Orientation, Point2, Point3, Segment2, ThresholdSide, Vector2, Vector3,
};
pub use rational::{format_rational, int, parse_rational, rat, rational_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("segments overlap collinearly in a positive-length piece")]
    CollinearOverlap,
    #[error("segments do not properly cross")]
    NoProperCrossing,
    #[error("zero direction vector")]
    ZeroVector,
    #[error("unsupported precision request: {0} bits")]
    Precision(u32),
    #[error("angle {0} is outside (0, pi/2]")]
    AngleOutOfRange(String),
}
