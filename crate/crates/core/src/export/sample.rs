use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Configuration;
use crate::paths::{arc_end, CscPath};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylineSample {
    pub poses: Vec<Configuration>,
    pub arc_length_step: f64,
}

impl PolylineSample {
    /// Sum of the chord lengths.
    pub fn polyline_length(&self) -> f64 {
        self.poses
            .windows(2)
            .map(|w| w[0].position().distance(w[1].position()))
            .sum()
    }
}

/// Samples `path` from `start` with at most `step` of arc length between
/// consecutive poses. Segment joints are always included.
pub fn sample_path(path: &CscPath, start: &Configuration, step: f64) -> Result<PolylineSample> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sampling step {step} must be positive"
        )));
    }
    let r = path.radius;
    let first = path.path_type.first_turn();
    let second = path.path_type.second_turn();
    let advance = |pose: &Configuration, segment: usize, s: f64| match segment {
        0 => arc_end(pose, first, s / r, r),
        1 => Configuration::at(pose.position() + pose.direction() * s, pose.theta),
        _ => arc_end(pose, second, s / r, r),
    };

    let mut poses = vec![*start];
    let mut joint = *start;
    for (segment, len) in path.segment_lengths().into_iter().enumerate() {
        if len <= 0.0 {
            continue;
        }
        let pieces = (len / step).ceil().max(1.0) as usize;
        for i in 1..=pieces {
            poses.push(advance(&joint, segment, len * i as f64 / pieces as f64));
        }
        joint = *poses.last().expect("non-empty");
    }
    Ok(PolylineSample {
        poses,
        arc_length_step: step,
    })
}
