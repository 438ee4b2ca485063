//! Target circle parametrization: each CSC path length as a function of the
//! arrival angle `α` on the circle, its derivative, and the problem checks.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mirror_transform, mod_two_pi, to_canonical, Configuration, Point};
use crate::paths::{csc_between, CscPath, PathType, Turn, ARC_SNAP};

/// Arc angles within this distance of `0 ≡ 2π` count as sitting on a wrap.
pub const WRAP_TOLERANCE: f64 = 1e-9;

/// Prescribed rotation direction of the arrival tangent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rotation {
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "ccw")]
    CounterClockwise,
}

impl Rotation {
    pub fn sign(self) -> f64 {
        match self {
            Rotation::Clockwise => -1.0,
            Rotation::CounterClockwise => 1.0,
        }
    }

    pub fn flipped(self) -> Rotation {
        match self {
            Rotation::Clockwise => Rotation::CounterClockwise,
            Rotation::CounterClockwise => Rotation::Clockwise,
        }
    }

    /// The turn direction of a vehicle circulating this way.
    pub fn turn(self) -> Turn {
        match self {
            Rotation::Clockwise => Turn::Right,
            Rotation::CounterClockwise => Turn::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rotation::Clockwise => "cw",
            Rotation::CounterClockwise => "ccw",
        }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rotation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cw" => Ok(Rotation::Clockwise),
            "ccw" => Ok(Rotation::CounterClockwise),
            _ => Err(Error::InvalidArgument(format!(
                "direction must be \"cw\" or \"ccw\", got {s:?}"
            ))),
        }
    }
}

/// Whether a path's second arc turns the same way as the arrival tangent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationalRelation {
    CoRotational,
    CounterRotational,
}

impl RotationalRelation {
    pub fn of(path_type: PathType, direction: Rotation) -> Self {
        if path_type.second_turn() == direction.turn() {
            RotationalRelation::CoRotational
        } else {
            RotationalRelation::CounterRotational
        }
    }
}

/// The circle the path must end on. Its radius doubles as the vehicle's
/// minimum turn radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetCircle {
    pub center: Point,
    pub radius: f64,
    pub direction: Rotation,
}

impl TargetCircle {
    pub fn new(center: Point, radius: f64, direction: Rotation) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "circle radius {radius} must be positive and finite"
            )));
        }
        if !(center.x.is_finite() && center.y.is_finite()) {
            return Err(Error::InvalidArgument(
                "circle center must be finite".into(),
            ));
        }
        Ok(Self {
            center,
            radius,
            direction,
        })
    }

    /// Like [`TargetCircle::new`] but rejects a vehicle whose turn radius
    /// differs from the circle radius.
    pub fn for_vehicle(
        center: Point,
        radius: f64,
        direction: Rotation,
        turn_radius: f64,
    ) -> Result<Self> {
        let circle = Self::new(center, radius, direction)?;
        if (turn_radius - radius).abs() > 1e-12 * radius {
            return Err(Error::UnequalRadii {
                turn_radius,
                circle_radius: radius,
            });
        }
        Ok(circle)
    }

    pub fn point_at(&self, alpha: f64) -> Point {
        self.center + Point::from_angle(alpha) * self.radius
    }
}

/// Arrival pose at angular position `alpha` with the prescribed tangent.
pub fn final_config_at_alpha(circle: &TargetCircle, alpha: f64) -> Configuration {
    let alpha = mod_two_pi(alpha);
    Configuration::at(
        circle.point_at(alpha),
        alpha + circle.direction.sign() * FRAC_PI_2,
    )
}

/// The `path_type` path from `start` to the arrival pose at `alpha`.
pub fn length_at_alpha(
    start: &Configuration,
    circle: &TargetCircle,
    path_type: PathType,
    alpha: f64,
) -> Result<CscPath> {
    let goal = final_config_at_alpha(circle, alpha);
    csc_between(path_type, start, &goal, circle.radius)
}

/// Segment values produced by the specialized closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSample {
    pub phi1: f64,
    pub straight: f64,
    pub phi2: f64,
    pub length: f64,
}

/// The length function `L(α)` written directly in terms of the circle center
/// `(c, d)` in the canonical frame, with the frame change done once.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    path_type: PathType,
    /// LSL or RSL after mirroring.
    base: PathType,
    direction: Rotation,
    c: f64,
    d: f64,
    r: f64,
    alpha_offset: f64,
    alpha_reflected: bool,
}

impl ClosedForm {
    pub fn new(start: &Configuration, circle: &TargetCircle, path_type: PathType) -> Self {
        let (circle, reflect) = if path_type.second_turn() == Turn::Right {
            let m = mirror_transform(start);
            (m.apply_circle(circle), Some(m))
        } else {
            (*circle, None)
        };
        let base = if reflect.is_some() {
            path_type.mirrored()
        } else {
            path_type
        };
        let heading = if base == PathType::Lsl {
            0.0
        } else {
            FRAC_PI_2
        };
        let t = to_canonical(start, heading);
        let center = t.apply_point(circle.center);
        // world α ↦ mirrored α ↦ canonical α
        let (alpha_offset, alpha_reflected) = match reflect {
            Some(m) => (-(m.rotation) + t.rotation, true),
            None => (t.rotation, false),
        };
        Self {
            path_type,
            base,
            direction: circle.direction,
            c: center.x,
            d: center.y,
            r: circle.radius,
            alpha_offset,
            alpha_reflected,
        }
    }

    pub fn path_type(&self) -> PathType {
        self.path_type
    }

    /// Angular position in the canonical frame.
    #[inline]
    fn canonical_alpha(&self, alpha: f64) -> f64 {
        if self.alpha_reflected {
            -alpha + self.alpha_offset
        } else {
            alpha + self.alpha_offset
        }
    }

    pub fn at(&self, alpha: f64) -> Result<ClosedFormSample> {
        let a = self.canonical_alpha(alpha);
        let (c, d, r) = (self.c, self.d, self.r);
        let (phi1, straight, phi2) = match (self.base, self.direction) {
            (PathType::Lsl, Rotation::Clockwise) => {
                let (sa, ca) = a.sin_cos();
                let x = c + 2.0 * r * ca;
                let y = d + 2.0 * r * sa - r;
                lsl_parts(x, y, a - FRAC_PI_2, r)
            }
            (PathType::Lsl, Rotation::CounterClockwise) => lsl_parts(c, d - r, a + FRAC_PI_2, r),
            (PathType::Rsl, Rotation::Clockwise) => {
                let (sa, ca) = a.sin_cos();
                let x = c + 2.0 * r * ca - r;
                let y = d + 2.0 * r * sa;
                self.rsl_parts(x, y, a - FRAC_PI_2)?
            }
            (PathType::Rsl, Rotation::CounterClockwise) => {
                self.rsl_parts(c - r, d, a + FRAC_PI_2)?
            }
            _ => unreachable!("closed forms exist for LSL and RSL only"),
        };
        Ok(ClosedFormSample {
            phi1,
            straight,
            phi2,
            length: straight + r * (phi1 + phi2),
        })
    }

    fn rsl_parts(&self, x: f64, y: f64, theta: f64) -> Result<(f64, f64, f64)> {
        let r = self.r;
        let lcc = x.hypot(y);
        let gap = lcc - 2.0 * r;
        if gap < -1e-12 * r {
            return Err(Error::NoInnerTangent {
                path_type: self.path_type,
                center_distance: lcc,
                required: 2.0 * r,
            });
        }
        let straight = (gap.max(0.0) * (lcc + 2.0 * r)).sqrt();
        let psi1 = y.atan2(x);
        let psi2 = (2.0 * r).atan2(straight);
        let phi1 = snap(-psi1 + psi2 + FRAC_PI_2);
        let phi2 = snap(theta + phi1 - FRAC_PI_2);
        Ok((phi1, straight, phi2))
    }
}

#[inline]
fn snap(a: f64) -> f64 {
    let m = mod_two_pi(a);
    if TAU - m < ARC_SNAP {
        0.0
    } else {
        m
    }
}

/// `(x, y)` is the vector from C1 to C2.
#[inline]
fn lsl_parts(x: f64, y: f64, theta: f64, r: f64) -> (f64, f64, f64) {
    let straight = x.hypot(y);
    if straight < 1e-9 * r {
        return (snap(theta), 0.0, 0.0);
    }
    let phi1 = snap(y.atan2(x));
    (phi1, straight, snap(theta - phi1))
}

/// `dL/dα` from the second arc angle alone.
///
/// Counter-rotational types: `±(r − 2r·cos φ₂)`; co-rotational: `±r`. The
/// sign is `+` when the second arc turns left and `−` when it turns right
/// (α runs counter-clockwise, so mirrored types see it reversed).
#[inline]
pub fn derivative_from_phi2(path_type: PathType, direction: Rotation, r: f64, phi2: f64) -> f64 {
    let s = path_type.second_turn().sign();
    match RotationalRelation::of(path_type, direction) {
        RotationalRelation::CounterRotational => s * (r - 2.0 * r * phi2.cos()),
        RotationalRelation::CoRotational => s * r,
    }
}

#[inline]
fn near_wrap(phi: f64) -> bool {
    phi.min(TAU - phi) < WRAP_TOLERANCE
}

pub fn analytic_derivative(
    start: &Configuration,
    circle: &TargetCircle,
    path_type: PathType,
    alpha: f64,
) -> Result<f64> {
    let path = length_at_alpha(start, circle, path_type, alpha)?;
    let relation = RotationalRelation::of(path_type, circle.direction);
    let on_wrap = near_wrap(path.phi2)
        || (relation == RotationalRelation::CounterRotational && near_wrap(path.phi1));
    if on_wrap {
        return Err(Error::AtDiscontinuity { alpha });
    }
    Ok(derivative_from_phi2(
        path_type,
        circle.direction,
        circle.radius,
        path.phi2,
    ))
}

/// Distance from the circle center to the line carrying the straight segment.
pub fn perpendicular_distance_to_center(path: &CscPath, circle: &TargetCircle) -> Result<f64> {
    if path.straight <= 1e-12 * path.radius {
        return Err(Error::UndefinedDirection);
    }
    let p = path.straight_start();
    Ok(p.direction().cross(circle.center - p.position()).abs())
}

/// True iff the nearest point of the circle is more than `4r` from the start.
pub fn assumption_check(start: &Configuration, circle: &TargetCircle) -> bool {
    start.position().distance(circle.center) - circle.radius > 4.0 * circle.radius
}
