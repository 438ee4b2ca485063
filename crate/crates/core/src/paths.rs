//! The four CSC Dubins paths between two fully specified poses.
//!
//! LSL and RSL are built from their closed forms in canonical frames (start
//! at the origin heading `0` for LSL and `π/2` for RSL). RSR and LSR are
//! obtained by reflecting the problem across the start heading line.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mirror_transform, mod_two_pi, to_canonical, Configuration, Point};

/// Arc angles this close below `2π` are snapped to zero. Only rounding noise
/// should be caught: a wider band turns a tangential touch of `0` into a
/// finite interval of spuriously short paths.
pub const ARC_SNAP: f64 = 1e-14;

/// Turn circles closer than this (relative to r) are treated as coincident.
const COINCIDENT_CENTERS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    /// `+1` for a counter-clockwise (left) turn, `-1` for clockwise.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Turn::Left => 1.0,
            Turn::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PathType {
    Lsl,
    Rsl,
    Rsr,
    Lsr,
}

impl PathType {
    /// Fixed order, also used to break ties between types.
    pub const ALL: [PathType; 4] = [PathType::Lsl, PathType::Rsl, PathType::Rsr, PathType::Lsr];

    pub fn first_turn(self) -> Turn {
        match self {
            PathType::Lsl | PathType::Lsr => Turn::Left,
            PathType::Rsl | PathType::Rsr => Turn::Right,
        }
    }

    pub fn second_turn(self) -> Turn {
        match self {
            PathType::Lsl | PathType::Rsl => Turn::Left,
            PathType::Rsr | PathType::Lsr => Turn::Right,
        }
    }

    /// The type obtained by swapping L and R.
    pub fn mirrored(self) -> PathType {
        match self {
            PathType::Lsl => PathType::Rsr,
            PathType::Rsr => PathType::Lsl,
            PathType::Rsl => PathType::Lsr,
            PathType::Lsr => PathType::Rsl,
        }
    }

    /// RSL and LSR use the inner tangent between their turn circles.
    pub fn is_inner_tangent(self) -> bool {
        self.first_turn() != self.second_turn()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PathType::Lsl => "LSL",
            PathType::Rsl => "RSL",
            PathType::Rsr => "RSR",
            PathType::Lsr => "LSR",
        }
    }
}

impl fmt::Display for PathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PathType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LSL" => Ok(PathType::Lsl),
            "RSL" => Ok(PathType::Rsl),
            "RSR" => Ok(PathType::Rsr),
            "LSR" => Ok(PathType::Lsr),
            _ => Err(Error::InvalidArgument(format!("unknown path type {s:?}"))),
        }
    }
}

/// Auxiliary quantities of the inner-tangent construction, measured in the
/// canonical RSL frame (of the mirrored problem for LSR).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerTangent {
    /// Distance between the two turn-circle centers.
    pub center_distance: f64,
    pub psi1: f64,
    pub psi2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CscPath {
    pub path_type: PathType,
    pub start: Configuration,
    /// First arc angle in `[0, 2π)`.
    pub phi1: f64,
    /// Straight segment length.
    pub straight: f64,
    /// Second arc angle in `[0, 2π)`.
    pub phi2: f64,
    pub radius: f64,
    pub c1: Point,
    pub c2: Point,
    pub length: f64,
    pub inner: Option<InnerTangent>,
}

impl CscPath {
    /// Pose at the end of the path.
    pub fn end(&self) -> Configuration {
        trace_path(self, &self.start)
    }

    /// Pose where the straight segment begins.
    pub fn straight_start(&self) -> Configuration {
        arc_end(
            &self.start,
            self.path_type.first_turn(),
            self.phi1,
            self.radius,
        )
    }

    /// Lengths of the three segments.
    pub fn segment_lengths(&self) -> [f64; 3] {
        [
            self.radius * self.phi1,
            self.straight,
            self.radius * self.phi2,
        ]
    }
}

#[inline]
fn arc_angle(a: f64) -> f64 {
    let m = mod_two_pi(a);
    if TAU - m < ARC_SNAP {
        0.0
    } else {
        m
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "turn radius {r} must be positive and finite"
        )))
    }
}

/// Center of the turn circle tangent to `pose` on the `turn` side.
#[inline]
pub fn turn_center(pose: &Configuration, turn: Turn, r: f64) -> Point {
    pose.position() + pose.direction().perp() * (turn.sign() * r)
}

/// Pose after turning through `angle` on a circle of radius `r`.
#[inline]
pub fn arc_end(pose: &Configuration, turn: Turn, angle: f64, r: f64) -> Configuration {
    let s = turn.sign();
    let center = turn_center(pose, turn, r);
    let heading = pose.theta + s * angle;
    let pos = center - Point::from_angle(heading).perp() * (s * r);
    Configuration::at(pos, heading)
}

#[inline]
fn straight_end(pose: &Configuration, length: f64) -> Configuration {
    Configuration::at(pose.position() + pose.direction() * length, pose.theta)
}

/// Integrates arc, straight, arc in closed form from `start`.
pub fn trace_path(path: &CscPath, start: &Configuration) -> Configuration {
    let a = arc_end(start, path.path_type.first_turn(), path.phi1, path.radius);
    let b = straight_end(&a, path.straight);
    arc_end(&b, path.path_type.second_turn(), path.phi2, path.radius)
}

fn assemble(
    path_type: PathType,
    start: &Configuration,
    goal: &Configuration,
    r: f64,
    (phi1, straight, phi2): (f64, f64, f64),
    inner: Option<InnerTangent>,
) -> CscPath {
    CscPath {
        path_type,
        start: *start,
        phi1,
        straight,
        phi2,
        radius: r,
        c1: turn_center(start, path_type.first_turn(), r),
        c2: turn_center(goal, path_type.second_turn(), r),
        length: straight + r * (phi1 + phi2),
        inner,
    }
}

/// Arc angles and straight length of LSL from the origin heading `0`.
fn lsl_canonical(goal: &Configuration, r: f64) -> (f64, f64, f64) {
    let (s, c) = goal.theta.sin_cos();
    let dx = goal.x - r * s;
    let dy = goal.y + r * c - r;
    let straight = dx.hypot(dy);
    if straight < COINCIDENT_CENTERS * r {
        // C1 and C2 coincide: all turning goes on the first arc
        return (arc_angle(goal.theta), 0.0, 0.0);
    }
    let phi1 = arc_angle(dy.atan2(dx));
    let phi2 = arc_angle(goal.theta - phi1);
    (phi1, straight, phi2)
}

/// RSL from the origin heading `π/2`.
fn rsl_canonical(goal: &Configuration, r: f64) -> Result<((f64, f64, f64), InnerTangent)> {
    let (s, c) = goal.theta.sin_cos();
    let dx = goal.x - r * s - r;
    let dy = goal.y + r * c;
    let center_distance = dx.hypot(dy);
    let gap = center_distance - 2.0 * r;
    if gap < -1e-12 * r {
        return Err(Error::NoInnerTangent {
            path_type: PathType::Rsl,
            center_distance,
            required: 2.0 * r,
        });
    }
    let straight = (gap.max(0.0) * (center_distance + 2.0 * r)).sqrt();
    let psi1 = dy.atan2(dx);
    let psi2 = (2.0 * r).atan2(straight);
    let phi1 = arc_angle(-psi1 + psi2 + FRAC_PI_2);
    let phi2 = arc_angle(goal.theta + phi1 - FRAC_PI_2);
    Ok((
        (phi1, straight, phi2),
        InnerTangent {
            center_distance,
            psi1,
            psi2,
        },
    ))
}

pub fn lsl_between(start: &Configuration, goal: &Configuration, r: f64) -> Result<CscPath> {
    check_radius(r)?;
    let local = to_canonical(start, 0.0).apply(goal);
    Ok(assemble(
        PathType::Lsl,
        start,
        goal,
        r,
        lsl_canonical(&local, r),
        None,
    ))
}

pub fn rsl_between(start: &Configuration, goal: &Configuration, r: f64) -> Result<CscPath> {
    check_radius(r)?;
    let local = to_canonical(start, FRAC_PI_2).apply(goal);
    let (parts, inner) = rsl_canonical(&local, r)?;
    Ok(assemble(PathType::Rsl, start, goal, r, parts, Some(inner)))
}

/// Builds `path_type` by solving its mirror image and reflecting back.
fn mirrored_between(
    path_type: PathType,
    start: &Configuration,
    goal: &Configuration,
    r: f64,
) -> Result<CscPath> {
    let m = mirror_transform(start);
    let mirrored_goal = m.apply(goal);
    let base = match path_type.mirrored() {
        PathType::Lsl => lsl_between(start, &mirrored_goal, r),
        PathType::Rsl => rsl_between(start, &mirrored_goal, r),
        _ => unreachable!("only LSL and RSL are built directly"),
    }
    .map_err(|e| match e {
        Error::NoInnerTangent {
            center_distance,
            required,
            ..
        } => Error::NoInnerTangent {
            path_type,
            center_distance,
            required,
        },
        other => other,
    })?;
    Ok(CscPath {
        path_type,
        c1: m.apply_point(base.c1),
        c2: m.apply_point(base.c2),
        ..base
    })
}

pub fn rsr_between(start: &Configuration, goal: &Configuration, r: f64) -> Result<CscPath> {
    mirrored_between(PathType::Rsr, start, goal, r)
}

pub fn lsr_between(start: &Configuration, goal: &Configuration, r: f64) -> Result<CscPath> {
    mirrored_between(PathType::Lsr, start, goal, r)
}

pub fn csc_between(
    path_type: PathType,
    start: &Configuration,
    goal: &Configuration,
    r: f64,
) -> Result<CscPath> {
    match path_type {
        PathType::Lsl => lsl_between(start, goal, r),
        PathType::Rsl => rsl_between(start, goal, r),
        PathType::Rsr => rsr_between(start, goal, r),
        PathType::Lsr => lsr_between(start, goal, r),
    }
}
