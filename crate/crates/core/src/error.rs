use std::path::PathBuf;

use crate::paths::PathType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Both components of a direction vector are zero, so no angle exists.
    #[error("degenerate direction: {0}")]
    DegenerateDirection(&'static str),

    /// The turn circles of an inner-tangent path overlap.
    #[error("{path_type} has no inner tangent: center distance {center_distance} < {required}")]
    NoInnerTangent {
        path_type: PathType,
        center_distance: f64,
        required: f64,
    },

    #[error("alpha = {alpha} lies on a discontinuity of the length function")]
    AtDiscontinuity { alpha: f64 },

    /// The straight segment has zero length so its direction is undefined.
    #[error("straight segment has zero length; its direction is undefined")]
    UndefinedDirection,

    #[error("turn radius {turn_radius} differs from target circle radius {circle_radius}")]
    UnequalRadii {
        turn_radius: f64,
        circle_radius: f64,
    },

    #[error("every sample of the sweep is infeasible")]
    AllInfeasible,

    #[error("internal failure: {0}")]
    Internal(String),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
