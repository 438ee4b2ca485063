//! JSON instance files and the seeded random instance generator.

use std::f64::consts::TAU;
use std::path::Path;

use dubins_circle::{Configuration, Point, Rotation, TargetCircle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartDocument {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_degrees: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_radians: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDocument {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    pub direction: Rotation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub start: StartDocument,
    pub circle: CircleDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A validated problem: start pose and target circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Instance {
    pub start: Configuration,
    pub circle: TargetCircle,
    pub seed: Option<u64>,
}

fn field_error(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Instance(format!("{field}: {msg}"))
}

fn finite(field: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(field_error(field, "must be a finite number"))
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Instance(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Instance(msg) => CliError::Instance(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<Instance, CliError> {
        let theta = match (self.start.theta_degrees, self.start.theta_radians) {
            (Some(d), None) => finite("start.theta_degrees", d)?.to_radians(),
            (None, Some(r)) => finite("start.theta_radians", r)?,
            (Some(_), Some(_)) => {
                return Err(field_error(
                    "start",
                    "give exactly one of theta_degrees and theta_radians, not both",
                ))
            }
            (None, None) => {
                return Err(field_error(
                    "start",
                    "missing heading: give theta_degrees or theta_radians",
                ))
            }
        };
        let x = finite("start.x", self.start.x)?;
        let y = finite("start.y", self.start.y)?;
        let cx = finite("circle.cx", self.circle.cx)?;
        let cy = finite("circle.cy", self.circle.cy)?;
        let r = finite("circle.r", self.circle.r)?;
        if r <= 0.0 {
            return Err(field_error(
                "circle.r",
                format!("must be positive, got {r}"),
            ));
        }
        let circle = TargetCircle::new(Point::new(cx, cy), r, self.circle.direction)?;
        Ok(Instance {
            start: Configuration::new(x, y, theta),
            circle,
            seed: self.seed,
        })
    }

    pub fn load(path: &Path) -> Result<Instance, CliError> {
        Self::read(path)?.validate()
    }
}

/// `count` instances with the start at the origin heading `0`, unit radius,
/// the center uniform on the annulus `6 ≤ |c| ≤ 30` and a fair-coin
/// direction.
pub fn random_instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rho = rng.random_range(36.0..=900.0_f64).sqrt();
            let angle = rng.random_range(0.0..TAU);
            let direction = if rng.random_bool(0.5) {
                Rotation::Clockwise
            } else {
                Rotation::CounterClockwise
            };
            let circle = TargetCircle::new(Point::from_angle(angle) * rho, 1.0, direction)
                .expect("generated radius is valid");
            Instance {
                start: Configuration::new(0.0, 0.0, 0.0),
                circle,
                seed: Some(seed),
            }
        })
        .collect()
}
