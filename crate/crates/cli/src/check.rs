//! Self-check suite run by `check`: the extremum solver against the sweep
//! oracle, plus the geometric conditions its answers must satisfy.

use std::f64::consts::{PI, TAU};
use std::io::{self, Write};

use dubins_circle::extrema::DEGENERATE_PHI2;
use dubins_circle::target::derivative_from_phi2;
use dubins_circle::{
    length_at_alpha, perpendicular_distance_to_center, refine_min, shortest_for_type, sweep,
    ClosedForm, Configuration, ExtremumKind, ExtremumReport, PathType, RotationalRelation,
    TargetCircle,
};

use crate::instance::Instance;

/// Anything that produces per-type extremum reports. The real solver is
/// [`shortest_for_type`]; tests substitute broken ones.
pub type Solver<'a> = &'a dyn Fn(&Configuration, &TargetCircle, PathType) -> ExtremumReport;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-6;
pub const FD_TOLERANCE: f64 = 1e-4;
const FD_POINTS: usize = 16;
const FORM_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckSettings {
    /// Length tolerance in units of r, and angle tolerance in radians.
    pub tolerance: f64,
    /// Grid size of the oracle sweep.
    pub sweep_samples: usize,
}

impl Default for CheckSettings {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            sweep_samples: dubins_circle::sweep::DEFAULT_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub limit: f64,
}

impl CheckRow {
    fn new(name: &'static str, limit: f64) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            max_error: 0.0,
            limit,
        }
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn record(&mut self, error: f64) {
        self.cases += 1;
        // NaN counts as a failure
        if !(error <= self.limit) {
            self.failures += 1;
        }
        if error.is_nan() || error > self.max_error {
            self.max_error = error;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub instances: usize,
    pub rows: Vec<CheckRow>,
    /// Most discontinuities seen for one type on one instance. Informational:
    /// a counter-rotational type can have three.
    pub max_jumps: usize,
    /// Per-type best of the first instance, for single-instance runs.
    pub summary: Vec<ExtremumReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }

    pub fn write_table(&self, out: &mut dyn Write) -> io::Result<()> {
        for rep in &self.summary {
            match rep.best {
                Some(b) => writeln!(
                    out,
                    "{} {:<3} min alpha {:.12} ({:.9} deg) length {:.12} [{}]",
                    rep.path_type,
                    rep.direction.as_str(),
                    b.alpha,
                    b.alpha.to_degrees(),
                    b.length,
                    kind_name(b.kind)
                )?,
                None => writeln!(
                    out,
                    "{} {:<3} infeasible",
                    rep.path_type,
                    rep.direction.as_str()
                )?,
            }
        }
        writeln!(out, "instances: {}", self.instances)?;
        writeln!(
            out,
            "{:<30} {:>7} {:>8} {:>11} {:>9}  result",
            "check", "cases", "failures", "max error", "limit"
        )?;
        for row in &self.rows {
            writeln!(
                out,
                "{:<30} {:>7} {:>8} {:>11.3e} {:>9.1e}  {}",
                row.name,
                row.cases,
                row.failures,
                row.max_error,
                row.limit,
                if row.passed() { "pass" } else { "FAIL" }
            )?;
        }
        writeln!(out, "most jumps for one type: {}", self.max_jumps)?;
        writeln!(
            out,
            "overall: {}",
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

pub fn kind_name(kind: ExtremumKind) -> &'static str {
    match kind {
        ExtremumKind::Stationary => "stationary",
        ExtremumKind::DegenerateCs => "degenerate-cs",
        ExtremumKind::FirstArcVanishes => "first-arc-vanishes",
        ExtremumKind::SecondArcVanishes => "second-arc-vanishes",
        ExtremumKind::FeasibilityBoundary => "feasibility-boundary",
        ExtremumKind::WrapSide => "wrap-side",
    }
}

struct Rows {
    form: CheckRow,
    oracle: CheckRow,
    derivative: CheckRow,
    min_phi2: CheckRow,
    max_phi2: CheckRow,
    degenerate: CheckRow,
    perpendicular: CheckRow,
    jump: CheckRow,
    max_jumps: usize,
}

impl Rows {
    fn new(tol: f64) -> Self {
        Self {
            form: CheckRow::new("closed form vs constructor", tol),
            oracle: CheckRow::new("solver vs sweep oracle", tol),
            derivative: CheckRow::new("derivative vs finite diff", FD_TOLERANCE),
            min_phi2: CheckRow::new("phi2 = pi/3 at minima", tol),
            max_phi2: CheckRow::new("phi2 = 5pi/3 at maxima", tol),
            degenerate: CheckRow::new("phi2 = 0 at co-rot minima", DEGENERATE_PHI2),
            perpendicular: CheckRow::new("line through center", tol),
            jump: CheckRow::new("jump = 2 pi r", tol),
            max_jumps: 0,
        }
    }

    fn into_vec(self) -> Vec<CheckRow> {
        vec![
            self.form,
            self.oracle,
            self.derivative,
            self.min_phi2,
            self.max_phi2,
            self.degenerate,
            self.perpendicular,
            self.jump,
        ]
    }
}

fn check_type(
    inst: &Instance,
    t: PathType,
    rep: &ExtremumReport,
    settings: &CheckSettings,
    rows: &mut Rows,
) {
    let (s, c) = (&inst.start, &inst.circle);
    let r = c.radius;

    let form = ClosedForm::new(s, c, t);
    for k in 0..FORM_POINTS {
        let a = TAU * (k as f64 + 0.25) / FORM_POINTS as f64;
        if let (Ok(x), Ok(y)) = (form.at(a), length_at_alpha(s, c, t, a)) {
            rows.form.record((x.length - y.length).abs() / r);
        }
    }

    if let Ok(res) = sweep(s, c, t, settings.sweep_samples) {
        let oracle = refine_min(&res, s, c).ok();
        match (oracle, rep.best) {
            (Some(o), Some(b)) => rows.oracle.record((o.length - b.length).abs() / r),
            (None, None) => {}
            _ => rows.oracle.record(f64::INFINITY),
        }
    }

    for k in 0..FD_POINTS {
        let a = TAU * (k as f64 + 0.5) / FD_POINTS as f64;
        let (Ok(p), Ok(lp), Ok(lm)) = (
            length_at_alpha(s, c, t, a),
            length_at_alpha(s, c, t, a + FD_STEP),
            length_at_alpha(s, c, t, a - FD_STEP),
        ) else {
            continue;
        };
        let fd = (lp.length - lm.length) / (2.0 * FD_STEP);
        // skip stencils straddling a wrap
        if (lp.length - lm.length).abs() > PI * r {
            continue;
        }
        let d = derivative_from_phi2(t, c.direction, r, p.phi2);
        rows.derivative.record((fd - d).abs() / r);
    }

    let relation = RotationalRelation::of(t, c.direction);
    for m in &rep.minima {
        match relation {
            RotationalRelation::CounterRotational => {
                rows.min_phi2.record((m.phi2 - PI / 3.0).abs());
            }
            RotationalRelation::CoRotational => {
                rows.degenerate.record(m.phi2.min(TAU - m.phi2));
            }
        }
    }
    for m in &rep.maxima {
        rows.max_phi2.record((m.phi2 - 5.0 * PI / 3.0).abs());
    }
    if relation == RotationalRelation::CounterRotational {
        for m in rep.minima.iter().chain(&rep.maxima) {
            let err = length_at_alpha(s, c, t, m.alpha)
                .ok()
                .and_then(|p| perpendicular_distance_to_center(&p, c).ok())
                .map_or(f64::INFINITY, |d| d / r);
            rows.perpendicular.record(err);
        }
    }

    for d in &rep.discontinuities {
        rows.jump.record((d.jump.abs() - TAU * r).abs() / r);
    }
    rows.max_jumps = rows.max_jumps.max(rep.discontinuities.len());
}

/// Runs every check over every instance and all four path types.
pub fn run_checks(instances: &[Instance], settings: &CheckSettings, solver: Solver) -> CheckReport {
    let mut rows = Rows::new(settings.tolerance);
    let mut summary = Vec::new();
    for inst in instances {
        for t in PathType::ALL {
            let rep = solver(&inst.start, &inst.circle, t);
            check_type(inst, t, &rep, settings, &mut rows);
            if instances.len() == 1 {
                summary.push(rep);
            }
        }
    }
    let max_jumps = rows.max_jumps;
    CheckReport {
        instances: instances.len(),
        max_jumps,
        rows: rows.into_vec(),
        summary,
    }
}

/// [`run_checks`] with the real solver.
pub fn run_default_checks(instances: &[Instance], settings: &CheckSettings) -> CheckReport {
    run_checks(instances, settings, &shortest_for_type)
}
