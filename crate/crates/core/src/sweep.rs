//! Brute-force evaluation of `L(α)` on a uniform grid, with a derivative-free
//! local refinement. This is the reference the extremum solver is checked
//! against, so it only ever looks at lengths.

use std::cell::Cell;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mod_two_pi, Configuration};
use crate::paths::PathType;
use crate::target::{ClosedForm, Rotation, TargetCircle};

/// Default grid size for interactive use.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Grid size used by the acceptance runs.
pub const ACCEPTANCE_SAMPLES: usize = 200_000;
pub const MIN_SAMPLES: usize = 16;

const REFINE_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepValues {
    pub length: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub straight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub alpha: f64,
    /// `None` when the path type does not exist at this α.
    pub values: Option<SweepValues>,
}

impl SweepSample {
    pub fn length(&self) -> Option<f64> {
        self.values.map(|v| v.length)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub path_type: PathType,
    pub direction: Rotation,
    pub radius: f64,
    pub n: usize,
    pub samples: Vec<SweepSample>,
}

impl SweepResult {
    pub fn spacing(&self) -> f64 {
        TAU / self.n as f64
    }

    /// Indices `k` such that `|L(α_{k+1}) − L(α_k)| > threshold`, with the
    /// last sample compared against the first.
    pub fn jumps(&self, threshold: f64) -> Vec<usize> {
        let n = self.samples.len();
        (0..n)
            .filter(
                |&k| match (self.samples[k].length(), self.samples[(k + 1) % n].length()) {
                    (Some(a), Some(b)) => (b - a).abs() > threshold,
                    _ => false,
                },
            )
            .collect()
    }

    /// Index of the shortest feasible sample.
    pub fn argmin(&self) -> Option<usize> {
        self.samples
            .iter()
            .enumerate()
            .filter_map(|(k, s)| s.length().map(|l| (k, l)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(k, _)| k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinedMin {
    pub alpha: f64,
    pub length: f64,
}

/// Evaluates `L(α)` at `α_k = 2πk/n`, `k = 0..n`.
pub fn sweep(
    start: &Configuration,
    circle: &TargetCircle,
    path_type: PathType,
    n: usize,
) -> Result<SweepResult> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    let form = ClosedForm::new(start, circle, path_type);
    let samples = (0..n)
        .map(|k| {
            let alpha = TAU * k as f64 / n as f64;
            let values = form.at(alpha).ok().map(|s| SweepValues {
                length: s.length,
                phi1: s.phi1,
                phi2: s.phi2,
                straight: s.straight,
            });
            SweepSample { alpha, values }
        })
        .collect();
    Ok(SweepResult {
        path_type,
        direction: circle.direction,
        radius: circle.radius,
        n,
        samples,
    })
}

/// Golden-section search on `[lo, hi]`. Every evaluation is reported to
/// `visit`, so kinks and monotone pieces still yield their best point.
fn golden(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    f(lo);
    f(hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_ITER {
        if hi - lo <= REFINE_TOL {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
}

/// Splits `[a, b]` into pieces free of jumps and infeasible stretches.
fn smooth_pieces(f: &impl Fn(f64) -> f64, a: f64, b: f64, jump: f64) -> Vec<(f64, f64)> {
    let (fa, fb) = (f(a), f(b));
    match (fa.is_finite(), fb.is_finite()) {
        (false, false) => Vec::new(),
        (true, true) if (fb - fa).abs() <= jump => vec![(a, b)],
        (true, true) => {
            let (mut lo, mut hi, mut flo, mut fhi) = (a, b, fa, fb);
            for _ in 0..MAX_ITER {
                if hi - lo <= REFINE_TOL {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if !fm.is_finite() {
                    break;
                }
                if (fm - flo).abs() > (fhi - fm).abs() {
                    hi = mid;
                    fhi = fm;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            vec![(a, lo), (hi, b)]
        }
        (feasible_a, _) => {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..MAX_ITER {
                if hi - lo <= REFINE_TOL {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if f(mid).is_finite() == feasible_a {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if feasible_a {
                vec![(a, lo)]
            } else {
                vec![(hi, b)]
            }
        }
    }
}

/// Refines the best grid sample by golden-section search over the two
/// adjacent grid cells, after cutting them at any length jump.
pub fn refine_min(
    result: &SweepResult,
    start: &Configuration,
    circle: &TargetCircle,
) -> Result<RefinedMin> {
    let k = result.argmin().ok_or(Error::AllInfeasible)?;
    let form = ClosedForm::new(start, circle, result.path_type);
    let best = Cell::new((result.samples[k].alpha, result.samples[k].length().unwrap()));
    let f = |a: f64| match form.at(a) {
        Ok(s) => {
            if s.length < best.get().1 {
                best.set((a, s.length));
            }
            s.length
        }
        Err(_) => f64::INFINITY,
    };
    let alpha = result.samples[k].alpha;
    let h = result.spacing();
    // wraps are 2πr tall; smooth variation over a cell is far smaller
    let jump = PI * circle.radius;
    for (a, b) in [(alpha - h, alpha), (alpha, alpha + h)] {
        for (lo, hi) in smooth_pieces(&f, a, b, jump) {
            golden(&f, lo, hi);
        }
    }
    let (alpha, length) = best.get();
    Ok(RefinedMin {
        alpha: mod_two_pi(alpha),
        length,
    })
}
