//! Angle arithmetic, planar poses and the rigid/reflective frame transforms
//! used to move any problem into the canonical frames of the closed-form
//! path formulas.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::target::TargetCircle;

/// Reduces `a` into `[0, 2π)`. Non-finite input propagates as NaN.
#[inline]
pub fn mod_two_pi(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r + 0.0
    }
}

/// Reduces a finite angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::InvalidArgument(format!("angle {a} is not finite")));
    }
    Ok(mod_two_pi(a))
}

/// Angle of the vector `(den, num)` in `(-π, π]`.
///
/// This is the quadrant-aware reading of the `atan2(num / den)` notation.
pub fn atan2_ratio(num: f64, den: f64) -> Result<f64> {
    if num == 0.0 && den == 0.0 {
        return Err(Error::DegenerateDirection("atan2 of (0, 0)"));
    }
    let a = num.atan2(den);
    Ok(if a <= -PI { PI } else { a })
}

/// Signed distance from `a` to `b` folded into `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = mod_two_pi(b - a);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `a`.
    #[inline]
    pub fn from_angle(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        self.rotate_sc(s, c)
    }

    #[inline]
    fn rotate_sc(self, s: f64, c: f64) -> Self {
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    /// Reflection across the x-axis.
    #[inline]
    pub fn flip_y(self) -> Self {
        Self {
            x: self.x,
            y: -self.y,
        }
    }

    /// Rotation by +π/2.
    #[inline]
    pub fn perp(self) -> Self {
        Self {
            x: -self.y,
            y: self.x,
        }
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Planar pose. `theta` is kept in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Configuration {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: mod_two_pi(theta),
        }
    }

    pub fn at(position: Point, theta: f64) -> Self {
        Self::new(position.x, position.y, theta)
    }

    #[inline]
    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }

    /// Unit vector along the heading.
    #[inline]
    pub fn direction(&self) -> Point {
        Point::from_angle(self.theta)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

/// Planar isometry `p ↦ F(R(rotation)·p + translation)` where `F` is the
/// reflection across the x-axis when `reflection` is set and the identity
/// otherwise. Every planar isometry has this form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameTransform {
    pub translation: Point,
    pub rotation: f64,
    pub reflection: bool,
}

impl FrameTransform {
    pub const IDENTITY: FrameTransform = FrameTransform {
        translation: Point::ORIGIN,
        rotation: 0.0,
        reflection: false,
    };

    #[inline]
    pub fn apply_point(&self, p: Point) -> Point {
        let q = p.rotate(self.rotation) + self.translation;
        if self.reflection {
            q.flip_y()
        } else {
            q
        }
    }

    /// Maps a free vector (translation ignored).
    #[inline]
    pub fn apply_vector(&self, v: Point) -> Point {
        let q = v.rotate(self.rotation);
        if self.reflection {
            q.flip_y()
        } else {
            q
        }
    }

    /// Maps a direction angle (heading, or angular position on a circle).
    #[inline]
    pub fn apply_angle(&self, a: f64) -> f64 {
        let b = a + self.rotation;
        mod_two_pi(if self.reflection { -b } else { b })
    }

    pub fn apply(&self, c: &Configuration) -> Configuration {
        Configuration::at(self.apply_point(c.position()), self.apply_angle(c.theta))
    }

    #[inline]
    pub fn invert_point(&self, p: Point) -> Point {
        let q = if self.reflection { p.flip_y() } else { p };
        (q - self.translation).rotate(-self.rotation)
    }

    #[inline]
    pub fn invert_angle(&self, a: f64) -> f64 {
        let b = if self.reflection { -a } else { a };
        mod_two_pi(b - self.rotation)
    }

    pub fn invert(&self, c: &Configuration) -> Configuration {
        Configuration::at(self.invert_point(c.position()), self.invert_angle(c.theta))
    }

    /// The inverse map expressed in the same normal form.
    pub fn inverse(&self) -> FrameTransform {
        let back = self.translation.rotate(-self.rotation);
        if self.reflection {
            // R(-a)·F = F·R(a)
            FrameTransform {
                translation: -back.flip_y(),
                rotation: self.rotation,
                reflection: true,
            }
        } else {
            FrameTransform {
                translation: -back,
                rotation: -self.rotation,
                reflection: false,
            }
        }
    }

    /// Maps a target circle, flipping its rotation direction under reflection.
    pub fn apply_circle(&self, circle: &TargetCircle) -> TargetCircle {
        TargetCircle {
            center: self.apply_point(circle.center),
            radius: circle.radius,
            direction: if self.reflection {
                circle.direction.flipped()
            } else {
                circle.direction
            },
        }
    }
}

/// Rigid transform taking `start` to the origin with heading `target_heading`.
pub fn to_canonical(start: &Configuration, target_heading: f64) -> FrameTransform {
    let rotation = target_heading - start.theta;
    FrameTransform {
        translation: -start.position().rotate(rotation),
        rotation,
        reflection: false,
    }
}

/// Reflection across the line through `start` along its heading.
pub fn mirror_transform(start: &Configuration) -> FrameTransform {
    let rotation = -2.0 * start.theta;
    let p0 = start.position();
    FrameTransform {
        translation: p0.flip_y() - p0.rotate(rotation),
        rotation,
        reflection: true,
    }
}

/// Reflects the whole scene across the start heading line. The start pose is
/// a fixed point; the circle's rotation direction flips.
pub fn mirror_problem(
    start: &Configuration,
    circle: &TargetCircle,
) -> (Configuration, TargetCircle, FrameTransform) {
    let m = mirror_transform(start);
    (m.apply(start), m.apply_circle(circle), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::Rotation;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn angle_close(a: f64, b: f64, tol: f64) -> bool {
        angle_diff(a, b).abs() <= tol
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_angle(0.0).unwrap(), 0.0);
        assert!(close(
            normalize_angle(-FRAC_PI_2).unwrap(),
            3.0 * FRAC_PI_2,
            1e-15
        ));
        assert!(close(normalize_angle(5.0 * PI).unwrap(), PI, 1e-14));
        assert!(normalize_angle(f64::NAN).is_err());
        assert!(normalize_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn normalize_tiny_negative_stays_in_range() {
        let a = mod_two_pi(-1e-18);
        assert!((0.0..TAU).contains(&a));
        assert!(mod_two_pi(-0.0).is_sign_positive());
        assert_eq!(mod_two_pi(TAU), 0.0);
    }

    #[test]
    fn atan2_examples() {
        assert!(close(atan2_ratio(1.0, 0.0).unwrap(), FRAC_PI_2, 0.0));
        assert_eq!(atan2_ratio(0.0, 1.0).unwrap(), 0.0);
        assert!(close(atan2_ratio(1.0, -1.0).unwrap(), 0.75 * PI, 1e-15));
        assert_eq!(atan2_ratio(-0.0, -1.0).unwrap(), PI);
        assert!(matches!(
            atan2_ratio(0.0, 0.0),
            Err(Error::DegenerateDirection(_))
        ));
    }

    #[test]
    fn canonical_identity() {
        let t = to_canonical(&Configuration::new(0.0, 0.0, 0.0), 0.0);
        assert_eq!(t.rotation, 0.0);
        assert_eq!(t.translation, Point::ORIGIN);
        assert!(!t.reflection);
    }

    #[test]
    fn canonical_examples() {
        let s = Configuration::new(3.0, 4.0, FRAC_PI_2);
        let t = to_canonical(&s, 0.0);
        assert!(close(t.rotation, -FRAC_PI_2, 1e-15));
        let c = t.apply(&s);
        assert!(close(c.x, 0.0, 1e-12) && close(c.y, 0.0, 1e-12));
        assert!(angle_close(c.theta, 0.0, 1e-12));
        let back = t.invert(&c);
        assert!(close(back.x, 3.0, 1e-12) && close(back.y, 4.0, 1e-12));

        let s = Configuration::new(1.0, 1.0, PI);
        let t = to_canonical(&s, FRAC_PI_2);
        let c = t.apply(&s);
        assert!(c.position().norm() < 1e-12);
        assert!(angle_close(c.theta, FRAC_PI_2, 1e-12));
        let back = t.inverse().apply(&c);
        assert!(back.position().distance(s.position()) < 1e-12);
        assert!(angle_close(back.theta, PI, 1e-12));
    }

    #[test]
    fn mirror_examples() {
        let s = Configuration::new(0.0, 0.0, 0.0);
        let ccw = TargetCircle::new(Point::new(5.0, 3.0), 1.0, Rotation::CounterClockwise).unwrap();
        let (s2, c2, _) = mirror_problem(&s, &ccw);
        assert_eq!(s2, s);
        assert!(c2.center.distance(Point::new(5.0, -3.0)) < 1e-12);
        assert_eq!(c2.direction, Rotation::Clockwise);

        let cw = TargetCircle::new(Point::new(5.0, 0.0), 1.0, Rotation::Clockwise).unwrap();
        let (_, c2, _) = mirror_problem(&s, &cw);
        assert!(c2.center.distance(Point::new(5.0, 0.0)) < 1e-12);
        assert_eq!(c2.direction, Rotation::CounterClockwise);

        let s = Configuration::new(2.0, 1.0, FRAC_PI_2);
        let ccw = TargetCircle::new(Point::new(4.0, 5.0), 1.0, Rotation::CounterClockwise).unwrap();
        let (s2, c2, _) = mirror_problem(&s, &ccw);
        assert!(s2.position().distance(s.position()) < 1e-12);
        assert!(angle_close(s2.theta, s.theta, 1e-12));
        assert!(c2.center.distance(Point::new(0.0, 5.0)) < 1e-12);
        assert_eq!(c2.direction, Rotation::Clockwise);
    }

    fn pose() -> impl Strategy<Value = Configuration> {
        (-100.0..100.0f64, -100.0..100.0f64, -10.0..10.0f64)
            .prop_map(|(x, y, t)| Configuration::new(x, y, t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn normalize_is_idempotent(a in -1e6..1e6f64) {
            let n = mod_two_pi(a);
            prop_assert!((0.0..TAU).contains(&n));
            prop_assert_eq!(mod_two_pi(n), n);
            prop_assert!((n.sin() - a.sin()).abs() < 1e-9);
            prop_assert!((n.cos() - a.cos()).abs() < 1e-9);
        }

        #[test]
        fn normalize_preserves_trig_small(a in -100.0..100.0f64) {
            let n = mod_two_pi(a);
            prop_assert!((n.sin() - a.sin()).abs() < 1e-12);
            prop_assert!((n.cos() - a.cos()).abs() < 1e-12);
        }

        #[test]
        fn canonical_round_trip(s in pose(), q in pose(), h in 0.0..TAU) {
            let t = to_canonical(&s, h);
            let c = t.apply(&s);
            prop_assert!(c.position().norm() < 1e-10);
            prop_assert!(angle_close(c.theta, h, 1e-10));
            let back = t.invert(&t.apply(&q));
            prop_assert!(back.position().distance(q.position()) < 1e-10);
            prop_assert!(angle_close(back.theta, q.theta, 1e-10));
            let via_inverse = t.inverse().apply(&t.apply(&q));
            prop_assert!(via_inverse.position().distance(q.position()) < 1e-10);
            prop_assert!(angle_close(via_inverse.theta, q.theta, 1e-10));
        }

        #[test]
        fn mirror_is_involution(s in pose(), cx in -100.0..100.0f64, cy in -100.0..100.0f64, cw: bool) {
            let dir = if cw { Rotation::Clockwise } else { Rotation::CounterClockwise };
            let circle = TargetCircle::new(Point::new(cx, cy), 1.0, dir).unwrap();
            let (s1, c1, m) = mirror_problem(&s, &circle);
            prop_assert!(m.reflection);
            let (s2, c2, _) = mirror_problem(&s1, &c1);
            prop_assert!(s2.position().distance(s.position()) < 1e-10);
            prop_assert!(angle_close(s2.theta, s.theta, 1e-10));
            prop_assert!(c2.center.distance(circle.center) < 1e-10);
            prop_assert_eq!(c2.direction, circle.direction);
            // the inverse form of a reflection is the reflection itself
            let inv = m.inverse();
            let p = Point::new(cx, cy);
            prop_assert!(inv.apply_point(p).distance(m.apply_point(p)) < 1e-10);
        }
    }
}
