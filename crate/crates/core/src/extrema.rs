//! Discontinuities and extrema of `L(α)` for each CSC type, and the shortest
//! tangential-arrival path over all four types.
//!
//! The length of a fixed type is piecewise smooth in `α`: it jumps by `±2πr`
//! wherever an arc angle wraps through `0 ≡ 2π`. Co-rotational types are
//! linear with slope `±r` between wraps and bottom out where the second arc
//! vanishes. Counter-rotational types have derivative `±(r − 2r·cos φ₂)`,
//! which is continuous across every wrap, so stationary points are found by
//! bracketing sign changes of that expression on a coarse grid and bisecting.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mod_two_pi, Configuration};
use crate::paths::{CscPath, PathType};
use crate::target::{
    assumption_check, derivative_from_phi2, length_at_alpha, Rotation, RotationalRelation,
    TargetCircle,
};

/// Coarse grid used to bracket wraps and stationary points.
pub const SCAN_SAMPLES: usize = 4096;
/// A minimum with `φ₂` below this is a degenerate CS path.
pub const DEGENERATE_PHI2: f64 = 1e-7;
/// Relative length tolerance (in units of r) for ties between path types.
pub const TIE_TOLERANCE: f64 = 1e-9;

const ROOT_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;
/// Offset used to evaluate the one-sided limits at a breakpoint.
const SIDE_OFFSET: f64 = 1e-10;
/// Probe spacing for the extrapolated jump height.
const JUMP_PROBE: f64 = 1e-8;
/// Same-cause wraps closer than this whose jumps cancel are one arc angle
/// touching zero, not two discontinuities.
const TOUCH_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrapCause {
    Phi1Wrap,
    Phi2Wrap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discontinuity {
    pub alpha: f64,
    /// `L(α⁺) − L(α⁻)`; `±2πr` up to extrapolation error.
    pub jump: f64,
    pub cause: WrapCause,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremumKind {
    /// `dL/dα = 0`: `φ₂ = π/3` (minimum) or `5π/3` (maximum).
    Stationary,
    /// Co-rotational minimum where the second arc vanishes.
    DegenerateCs,
    /// One-sided minimum at a φ₁ wrap where the first arc vanishes.
    FirstArcVanishes,
    /// One-sided minimum at a φ₂ wrap of a counter-rotational type.
    SecondArcVanishes,
    /// Edge of the α range where an inner tangent exists.
    FeasibilityBoundary,
    /// One side of a wrap that is not a local minimum.
    WrapSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub alpha: f64,
    pub length: f64,
    pub phi1: f64,
    pub straight: f64,
    pub phi2: f64,
    pub kind: ExtremumKind,
}

impl Extremum {
    fn from_path(alpha: f64, path: &CscPath, kind: ExtremumKind) -> Self {
        Self {
            alpha: mod_two_pi(alpha),
            length: path.length,
            phi1: path.phi1,
            straight: path.straight,
            phi2: path.phi2,
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub path_type: PathType,
    pub direction: Rotation,
    pub relation: RotationalRelation,
    /// Stationary minima (counter-rotational) or the degenerate CS minimum
    /// (co-rotational).
    pub minima: Vec<Extremum>,
    /// Stationary maxima; always empty for co-rotational types.
    pub maxima: Vec<Extremum>,
    /// Local minima sitting on one side of a wrap or feasibility edge.
    pub boundary_minima: Vec<Extremum>,
    pub discontinuities: Vec<Discontinuity>,
    /// Shortest path of this type, `None` when it is infeasible for every α.
    pub best: Option<Extremum>,
    pub best_path: Option<CscPath>,
    /// Assumption 1 fails: the result is still computed but CCC paths, which
    /// are not considered, might be shorter.
    pub assumption_warning: bool,
    /// Set by [`shortest_to_circle`] when another type is equally short.
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleSolution {
    pub path_type: PathType,
    pub alpha: f64,
    pub length: f64,
    pub path: CscPath,
    /// Reports in the order LSL, RSL, RSR, LSR.
    pub per_type: Vec<ExtremumReport>,
    pub assumption_warning: bool,
    pub tie: bool,
}

struct Problem<'a> {
    start: &'a Configuration,
    circle: &'a TargetCircle,
    path_type: PathType,
    relation: RotationalRelation,
}

#[derive(Clone, Copy)]
struct Sample {
    alpha: f64,
    path: Option<CscPath>,
}

impl<'a> Problem<'a> {
    fn new(start: &'a Configuration, circle: &'a TargetCircle, path_type: PathType) -> Self {
        Self {
            start,
            circle,
            path_type,
            relation: RotationalRelation::of(path_type, circle.direction),
        }
    }

    fn eval(&self, alpha: f64) -> Option<CscPath> {
        length_at_alpha(self.start, self.circle, self.path_type, alpha).ok()
    }

    fn derivative(&self, path: &CscPath) -> f64 {
        derivative_from_phi2(
            self.path_type,
            self.circle.direction,
            self.circle.radius,
            path.phi2,
        )
    }

    fn scan(&self) -> Vec<Sample> {
        (0..=SCAN_SAMPLES)
            .map(|k| {
                let alpha = TAU * k as f64 / SCAN_SAMPLES as f64;
                Sample {
                    alpha,
                    path: self.eval(alpha),
                }
            })
            .collect()
    }

    fn length(&self, alpha: f64) -> Option<f64> {
        self.eval(alpha).map(|p| p.length)
    }
}

/// Arc angle folded into `(-π, π]` so that a wrap is a sign change.
#[inline]
fn signed(phi: f64) -> f64 {
    if phi > PI {
        phi - TAU
    } else {
        phi
    }
}

/// Bisects a sign change of `f` on `[lo, hi]`. `lo_negative` is the sign of
/// `f(lo)`; points where `f` is undefined are treated as lying past the root.
fn bisect(f: impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64, lo_negative: bool) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match f(mid) {
            Some(v) if (v < 0.0) == lo_negative => lo = mid,
            _ => hi = mid,
        }
    }
    0.5 * (lo + hi)
}

fn wrap_causes(relation: RotationalRelation) -> &'static [WrapCause] {
    match relation {
        // φ₁ is constant for co-rotational types
        RotationalRelation::CoRotational => &[WrapCause::Phi2Wrap],
        RotationalRelation::CounterRotational => &[WrapCause::Phi1Wrap, WrapCause::Phi2Wrap],
    }
}

fn arc(path: &CscPath, cause: WrapCause) -> f64 {
    match cause {
        WrapCause::Phi1Wrap => path.phi1,
        WrapCause::Phi2Wrap => path.phi2,
    }
}

/// One-sided limit of `L` at `alpha` extrapolated linearly from two probes.
fn one_sided_limit(problem: &Problem, alpha: f64, side: f64) -> Option<f64> {
    let l1 = problem.length(alpha + side * JUMP_PROBE)?;
    let l2 = problem.length(alpha + side * 2.0 * JUMP_PROBE)?;
    Some(2.0 * l1 - l2)
}

fn detect_wraps(problem: &Problem, scan: &[Sample]) -> Vec<Discontinuity> {
    let mut found = Vec::new();
    for pair in scan.windows(2) {
        let (Some(a), Some(b)) = (pair[0].path, pair[1].path) else {
            continue;
        };
        for &cause in wrap_causes(problem.relation) {
            let ga = signed(arc(&a, cause));
            let gb = signed(arc(&b, cause));
            if (ga < 0.0) == (gb < 0.0) || ga.abs() > FRAC_PI_2 || gb.abs() > FRAC_PI_2 {
                continue;
            }
            let alpha = bisect(
                |x| problem.eval(x).map(|p| signed(arc(&p, cause))),
                pair[0].alpha,
                pair[1].alpha,
                ga < 0.0,
            );
            let jump = match (
                one_sided_limit(problem, alpha, 1.0),
                one_sided_limit(problem, alpha, -1.0),
            ) {
                (Some(right), Some(left)) => right - left,
                _ => f64::NAN,
            };
            found.push(Discontinuity {
                alpha: mod_two_pi(alpha),
                jump,
                cause,
            });
        }
    }
    found.sort_by(|x, y| x.alpha.total_cmp(&y.alpha));
    drop_touches(found, problem.circle.radius)
}

fn drop_touches(found: Vec<Discontinuity>, r: f64) -> Vec<Discontinuity> {
    let mut keep = vec![true; found.len()];
    for i in 0..found.len() {
        if !keep[i] {
            continue;
        }
        let Some(j) = (i + 1..found.len()).find(|&j| keep[j] && found[j].cause == found[i].cause)
        else {
            continue;
        };
        let close = found[j].alpha - found[i].alpha < TOUCH_WIDTH;
        if close && (found[i].jump + found[j].jump).abs() < 1e-3 * r {
            keep[i] = false;
            keep[j] = false;
        }
    }
    found
        .into_iter()
        .zip(keep)
        .filter_map(|(d, k)| k.then_some(d))
        .collect()
}

/// All α in `[0, 2π)` where an arc angle of `path_type` wraps through zero.
pub fn discontinuities(
    start: &Configuration,
    circle: &TargetCircle,
    path_type: PathType,
) -> Vec<Discontinuity> {
    let problem = Problem::new(start, circle, path_type);
    detect_wraps(&problem, &problem.scan())
}

/// Edges of the feasible α set, evaluated on their feasible side.
fn feasibility_edges(problem: &Problem, scan: &[Sample]) -> Vec<(f64, CscPath)> {
    let mut edges = Vec::new();
    for pair in scan.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if lo.path.is_some() == hi.path.is_some() {
            continue;
        }
        let feasible = |x: f64| problem.eval(x).map(|_| -1.0);
        let (mut a, mut b) = (lo.alpha, hi.alpha);
        for _ in 0..MAX_BISECTIONS {
            if b - a <= ROOT_TOL {
                break;
            }
            let mid = 0.5 * (a + b);
            if feasible(mid).is_some() == lo.path.is_some() {
                a = mid;
            } else {
                b = mid;
            }
        }
        let edge = if lo.path.is_some() { a } else { b };
        if let Some(p) = problem.eval(edge) {
            edges.push((edge, p));
        }
    }
    edges
}

/// Stationary points of a counter-rotational length function.
fn stationary_points(problem: &Problem, scan: &[Sample]) -> (Vec<Extremum>, Vec<Extremum>) {
    let mut minima = Vec::new();
    let mut maxima = Vec::new();
    for pair in scan.windows(2) {
        let (Some(a), Some(b)) = (pair[0].path, pair[1].path) else {
            continue;
        };
        let da = problem.derivative(&a);
        let db = problem.derivative(&b);
        if (da < 0.0) == (db < 0.0) {
            continue;
        }
        let alpha = bisect(
            |x| problem.eval(x).map(|p| problem.derivative(&p)),
            pair[0].alpha,
            pair[1].alpha,
            da < 0.0,
        );
        let Some(path) = problem.eval(alpha) else {
            continue;
        };
        let e = Extremum::from_path(alpha, &path, ExtremumKind::Stationary);
        if da < 0.0 {
            minima.push(e);
        } else {
            maxima.push(e);
        }
    }
    (minima, maxima)
}

/// Classifies both sides of every wrap. Returns the one-sided local minima
/// and every side as a candidate for the global minimum.
fn wrap_sides(problem: &Problem, wraps: &[Discontinuity]) -> (Vec<Extremum>, Vec<Extremum>) {
    let mut local = Vec::new();
    let mut sides = Vec::new();
    for w in wraps {
        let minus = problem.eval(w.alpha - SIDE_OFFSET);
        let plus = problem.eval(w.alpha + SIDE_OFFSET);
        for (side, path) in [(-1.0, minus), (1.0, plus)] {
            if let Some(p) = path {
                sides.push(Extremum::from_path(
                    w.alpha + side * SIDE_OFFSET,
                    &p,
                    ExtremumKind::WrapSide,
                ));
            }
        }
        if problem.relation == RotationalRelation::CoRotational {
            continue;
        }
        let (Some(m), Some(p)) = (minus, plus) else {
            continue;
        };
        let (side, low) = if p.length < m.length {
            (1.0, p)
        } else {
            (-1.0, m)
        };
        // the derivative on the low side must point away from the wrap
        let d = problem.derivative(&low);
        if side * d > 0.0 {
            let kind = match w.cause {
                WrapCause::Phi1Wrap => ExtremumKind::FirstArcVanishes,
                WrapCause::Phi2Wrap => ExtremumKind::SecondArcVanishes,
            };
            local.push(Extremum::from_path(
                w.alpha + side * SIDE_OFFSET,
                &low,
                kind,
            ));
        }
    }
    (local, sides)
}

/// Co-rotational minimum in closed form: the arrival heading equals the
/// heading after the first arc, `θᵢ ± φ₁`, so `α = θᵢ ± φ₁ ∓ π/2`.
fn degenerate_minimum(problem: &Problem, phi1: f64) -> Option<Extremum> {
    let heading = problem.start.theta + problem.path_type.first_turn().sign() * phi1;
    let alpha = mod_two_pi(heading - problem.circle.direction.sign() * FRAC_PI_2);
    [alpha, alpha - 1e-12, alpha + 1e-12]
        .into_iter()
        .filter_map(|a| problem.eval(a).map(|p| (a, p)))
        .min_by(|x, y| x.1.length.total_cmp(&y.1.length))
        .map(|(a, p)| Extremum::from_path(a, &p, ExtremumKind::DegenerateCs))
}

/// Extrema, discontinuities and the shortest path of one CSC type.
pub fn shortest_for_type(
    start: &Configuration,
    circle: &TargetCircle,
    path_type: PathType,
) -> ExtremumReport {
    let problem = Problem::new(start, circle, path_type);
    let scan = problem.scan();
    let discontinuities = detect_wraps(&problem, &scan);

    let (minima, maxima) = match problem.relation {
        RotationalRelation::CounterRotational => stationary_points(&problem, &scan),
        RotationalRelation::CoRotational => {
            let phi1 = scan.iter().find_map(|s| s.path.map(|p| p.phi1));
            let min = phi1.and_then(|phi1| degenerate_minimum(&problem, phi1));
            (min.into_iter().collect(), Vec::new())
        }
    };
    let (mut boundary_minima, sides) = wrap_sides(&problem, &discontinuities);
    for (alpha, path) in feasibility_edges(&problem, &scan) {
        boundary_minima.push(Extremum::from_path(
            alpha,
            &path,
            ExtremumKind::FeasibilityBoundary,
        ));
    }

    // earlier entries win ties down to rounding, so a wrap side sitting on
    // the same point as a degenerate minimum does not displace it
    let eps = 1e-12 * circle.radius;
    let best = minima
        .iter()
        .chain(&boundary_minima)
        .chain(&sides)
        .copied()
        .reduce(|acc, e| {
            if e.length < acc.length - eps * (1.0 + acc.length) {
                e
            } else {
                acc
            }
        });
    let best_path = best.and_then(|b| problem.eval(b.alpha));

    ExtremumReport {
        path_type,
        direction: circle.direction,
        relation: problem.relation,
        minima,
        maxima,
        boundary_minima,
        discontinuities,
        best,
        best_path,
        assumption_warning: !assumption_check(start, circle),
        tie: false,
    }
}

/// Shortest CSC path over all four types. Ties within
/// `TIE_TOLERANCE · r` go to the earliest type in LSL, RSL, RSR, LSR order.
pub fn shortest_to_circle(start: &Configuration, circle: &TargetCircle) -> Result<CircleSolution> {
    let mut per_type: Vec<ExtremumReport> = PathType::ALL
        .iter()
        .map(|&t| shortest_for_type(start, circle, t))
        .collect();
    let shortest = per_type
        .iter()
        .filter_map(|r| r.best.map(|b| b.length))
        .fold(f64::INFINITY, f64::min);
    if !shortest.is_finite() {
        return Err(Error::AllInfeasible);
    }
    let tol = TIE_TOLERANCE * circle.radius;
    let tied: Vec<usize> = per_type
        .iter()
        .enumerate()
        .filter(|(_, r)| r.best.is_some_and(|b| b.length <= shortest + tol))
        .map(|(i, _)| i)
        .collect();
    let tie = tied.len() > 1;
    if tie {
        for &i in &tied {
            per_type[i].tie = true;
        }
    }
    let chosen = &per_type[tied[0]];
    let best = chosen.best.expect("tied types have a best extremum");
    let path = chosen
        .best_path
        .ok_or_else(|| Error::Internal("best extremum without a path".into()))?;
    Ok(CircleSolution {
        path_type: chosen.path_type,
        alpha: best.alpha,
        length: best.length,
        path,
        assumption_warning: chosen.assumption_warning,
        tie,
        per_type,
    })
}
