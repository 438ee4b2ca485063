//! Shortest curvature-constrained CSC paths from a planar pose to a target
//! circle, arriving tangentially in a prescribed rotation direction.
//!
//! The vehicle's minimum turn radius equals the circle radius. For each of
//! the four CSC types the path length is a piecewise-smooth function of the
//! arrival angle `α` on the circle; [`extrema`] locates its wraps and extrema
//! and [`shortest_to_circle`] picks the best type.
//!
//! ```
//! use dubins_circle::{shortest_for_type, shortest_to_circle, Configuration, PathType, Point,
//!     Rotation, TargetCircle};
//!
//! let start = Configuration::new(0.0, 0.0, 0.0);
//! let circle = TargetCircle::new(Point::new(10.0, 1.0), 1.0, Rotation::CounterClockwise).unwrap();
//! // straight along the x axis onto the circle's lowest point
//! let lsl = shortest_for_type(&start, &circle, PathType::Lsl).best.unwrap();
//! assert!((lsl.length - 10.0).abs() < 1e-9);
//! // but meeting the circle elsewhere is shorter
//! let solution = shortest_to_circle(&start, &circle).unwrap();
//! assert_eq!(solution.path_type, PathType::Lsr);
//! assert!(solution.length < lsl.length);
//! ```

pub mod error;
pub mod export;
pub mod extrema;
pub mod geometry;
pub mod paths;
pub mod sweep;
pub mod target;

pub use error::{Error, Result};
pub use extrema::{
    discontinuities, shortest_for_type, shortest_to_circle, CircleSolution, Discontinuity,
    Extremum, ExtremumKind, ExtremumReport, WrapCause,
};
pub use geometry::{
    atan2_ratio, mirror_problem, normalize_angle, to_canonical, Configuration, FrameTransform,
    Point,
};
pub use paths::{
    csc_between, lsl_between, lsr_between, rsl_between, rsr_between, trace_path, CscPath,
    InnerTangent, PathType, Turn,
};
pub use sweep::{refine_min, sweep, RefinedMin, SweepResult, SweepSample};
pub use target::{
    analytic_derivative, assumption_check, final_config_at_alpha, length_at_alpha,
    perpendicular_distance_to_center, ClosedForm, Rotation, RotationalRelation, TargetCircle,
};
