use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dubins_circle::{
    length_at_alpha, shortest_for_type, Configuration, Extremum, ExtremumKind, ExtremumReport,
    PathType, RotationalRelation, TargetCircle,
};
use dubins_circle_cli::check::CheckSettings;
use dubins_circle_cli::{cmd_check_with, CheckArgs, Exit};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_dubins-circle");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_instance(dir: &TempDir, name: &str, start: &str, circle: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, format!(r#"{{"start": {start}, "circle": {circle}}}"#)).unwrap();
    p
}

fn degenerate(dir: &TempDir) -> PathBuf {
    write_instance(
        dir,
        "degenerate.json",
        r#"{"x": 0, "y": 0, "theta_degrees": 0}"#,
        r#"{"cx": 10, "cy": 1, "r": 1, "direction": "ccw"}"#,
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn length_line(out: &str) -> f64 {
    let first = out.lines().next().unwrap();
    first.rsplit(' ').next().unwrap().parse().unwrap()
}

#[test]
fn solve_fixed_type_on_degenerate_instance() {
    let dir = TempDir::new().unwrap();
    let inst = degenerate(&dir);
    let o = run(&["solve", s(&inst), "--type", "LSL"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("LSL, length 10.000000000000\n"),
        "{}",
        stdout(&o)
    );

    let mirrored = write_instance(
        &dir,
        "mirrored.json",
        r#"{"x": 0, "y": 0, "theta_radians": 0}"#,
        r#"{"cx": 10, "cy": -1, "r": 1, "direction": "cw"}"#,
    );
    let o = run(&["solve", s(&mirrored), "--type", "RSR"]);
    assert!(
        stdout(&o).starts_with("RSR, length 10.000000000000\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn solve_over_all_types_is_mirror_symmetric() {
    let dir = TempDir::new().unwrap();
    let o = run(&["solve", s(&degenerate(&dir))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("LSR, length 9.365188535855\n"), "{out}");

    let mirrored = write_instance(
        &dir,
        "mirrored.json",
        r#"{"x": 0, "y": 0, "theta_degrees": 0}"#,
        r#"{"cx": 10, "cy": -1, "r": 1, "direction": "cw"}"#,
    );
    let m = stdout(&run(&["solve", s(&mirrored)]));
    assert!(m.starts_with("RSL, length 9.365188535855\n"), "{m}");
}

#[test]
fn solve_matches_sweep_oracle() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(
        &dir,
        "cw.json",
        r#"{"x": 0, "y": 0, "theta_degrees": 0}"#,
        r#"{"cx": 10, "cy": 5, "r": 1, "direction": "cw"}"#,
    );
    let solved = length_line(&stdout(&run(&["solve", s(&inst)])));
    let sweep = stdout(&run(&["sweep", s(&inst), "--n", "20000"]));
    let oracle = sweep
        .lines()
        .filter(|l| l.contains("refined min"))
        .map(|l| l.rsplit(' ').next().unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!((solved - oracle).abs() < 1e-6, "{solved} vs {oracle}");
}

#[test]
fn solve_writes_deterministic_files() {
    let dir = TempDir::new().unwrap();
    let inst = degenerate(&dir);
    let mut outputs = Vec::new();
    for k in 0..2 {
        let json = dir.path().join(format!("r{k}.json"));
        let svg = dir.path().join(format!("r{k}.svg"));
        let o = run(&[
            "solve",
            s(&inst),
            "--json-out",
            s(&json),
            "--svg-out",
            s(&svg),
        ]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push((
            stdout(&o),
            std::fs::read(&json).unwrap(),
            std::fs::read(&svg).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
    let doc: serde_json::Value = serde_json::from_slice(&outputs[0].1).unwrap();
    assert_eq!(doc["path_type"], "LSR");
    assert_eq!(doc["reports"].as_array().unwrap().len(), 4);
    assert!(String::from_utf8_lossy(&outputs[0].2).starts_with("<?xml"));
}

#[test]
fn heading_units_are_interchangeable() {
    let dir = TempDir::new().unwrap();
    let circle = r#"{"cx": -4, "cy": 11, "r": 1, "direction": "cw"}"#;
    let d = write_instance(
        &dir,
        "d.json",
        r#"{"x": 1, "y": -2, "theta_degrees": 30}"#,
        circle,
    );
    let r = write_instance(
        &dir,
        "r.json",
        &format!(r#"{{"x": 1, "y": -2, "theta_radians": {}}}"#, PI / 6.0),
        circle,
    );
    assert_eq!(
        stdout(&run(&["solve", s(&d)])),
        stdout(&run(&["solve", s(&r)]))
    );
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"start": {"x": 0, "y": 0, "theta_degrees": 0}, "circle": {"cx": 1}}"#,
    )
    .unwrap();
    let o = run(&["solve", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("missing field"), "{err}");

    let o = run(&["solve", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["sweep", s(&degenerate(&dir)), "--n", "8"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["solve", s(&degenerate(&dir)), "--type", "LRL"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn close_start_warns_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let inst = write_instance(
        &dir,
        "close.json",
        r#"{"x": 0, "y": 0, "theta_degrees": 0}"#,
        r#"{"cx": 3, "cy": 0.5, "r": 1, "direction": "cw"}"#,
    );
    let o = run(&["solve", s(&inst)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("warning"));
    assert!(stdout(&o).contains(", length "));
}

#[test]
fn sweep_all_writes_four_csv_files() {
    let dir = TempDir::new().unwrap();
    let inst = degenerate(&dir);
    let csv = dir.path().join("sweep.csv");
    let svg = dir.path().join("sweep.svg");
    let o = run(&[
        "sweep",
        s(&inst),
        "--n",
        "4096",
        "--csv-out",
        s(&csv),
        "--svg-out",
        s(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lsl_refined = out.lines().find(|l| l.starts_with("LSL refined")).unwrap();
    let l: f64 = lsl_refined.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((l - 10.0).abs() < 1e-9);

    for t in ["LSL", "RSL", "RSR", "LSR"] {
        let text = std::fs::read_to_string(dir.path().join(format!("sweep_{t}.csv"))).unwrap();
        assert_eq!(text.lines().count(), 4097);
    }
    assert!(!dir.path().join("sweep.csv").exists());
    let plot = std::fs::read_to_string(&svg).unwrap();
    for t in ["LSL", "RSL", "RSR", "LSR"] {
        assert!(plot.contains(&format!("id=\"curve-{t}\"")));
    }
}

#[test]
fn corotational_csv_is_linear_between_wraps() {
    let dir = TempDir::new().unwrap();
    let inst = degenerate(&dir);
    let csv = dir.path().join("lsl.csv");
    let n = 2048;
    let o = run(&[
        "sweep",
        s(&inst),
        "--type",
        "LSL",
        "--n",
        &n.to_string(),
        "--csv-out",
        s(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lengths: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(lengths.len(), n);
    let step = TAU / n as f64;
    let mut wraps = 0;
    for w in lengths.windows(2) {
        let d = w[1] - w[0];
        if d.abs() > 1.0 {
            wraps += 1;
        } else {
            // 12 significant digits in the file
            assert!((d - step).abs() < 1e-9, "{d}");
        }
    }
    assert_eq!(wraps, 1);
}

#[test]
fn check_single_degenerate_instance() {
    let dir = TempDir::new().unwrap();
    let o = run(&["check", s(&degenerate(&dir))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(
        out.contains("LSL ccw min alpha 4.712388980385 (270.000000000 deg)"),
        "{out}"
    );
    assert!(out.contains("overall: pass"));
}

#[test]
fn check_random_is_deterministic_and_passes() {
    let a = run(&["check", "--random", "100", "--seed", "7"]);
    let b = run(&["check", "--random", "100", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["check", "--random", "100", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn plot_modes_write_svg() {
    let dir = TempDir::new().unwrap();
    let inst = degenerate(&dir);
    for mode in ["paths", "alpha"] {
        let out = dir.path().join(format!("{mode}.svg"));
        let o = run(&[
            "plot",
            s(&inst),
            "--out",
            s(&out),
            "--mode",
            mode,
            "--n",
            "512",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}

/// Stationary points placed where `φ₂ = π/4` instead of `π/3`.
fn corrupted_solver(start: &Configuration, circle: &TargetCircle, t: PathType) -> ExtremumReport {
    let mut rep = shortest_for_type(start, circle, t);
    if RotationalRelation::of(t, circle.direction) != RotationalRelation::CounterRotational {
        return rep;
    }
    let g = |a: f64| {
        length_at_alpha(start, circle, t, a)
            .ok()
            .map(|p| p.phi2 - PI / 4.0)
    };
    let n = 2000;
    let mut minima = Vec::new();
    for k in 0..n {
        let (mut lo, mut hi) = (TAU * k as f64 / n as f64, TAU * (k + 1) as f64 / n as f64);
        let (Some(glo), Some(ghi)) = (g(lo), g(hi)) else {
            continue;
        };
        if (glo < 0.0) == (ghi < 0.0) || glo.abs() > 1.0 || ghi.abs() > 1.0 {
            continue;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if g(mid).is_some_and(|v| (v < 0.0) == (glo < 0.0)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p = length_at_alpha(start, circle, t, lo).unwrap();
        minima.push(Extremum {
            alpha: lo,
            length: p.length,
            phi1: p.phi1,
            straight: p.straight,
            phi2: p.phi2,
            kind: ExtremumKind::Stationary,
        });
    }
    rep.best = minima
        .iter()
        .copied()
        .min_by(|a, b| a.length.total_cmp(&b.length));
    rep.minima = minima;
    rep
}

#[test]
fn corrupted_solver_fails_check() {
    let args = CheckArgs {
        instance: None,
        random: Some(20),
        seed: 7,
        tolerance: CheckSettings::default().tolerance,
        n: 4096,
    };
    let mut out = Vec::new();
    let exit = cmd_check_with(&args, &mut out, &corrupted_solver).unwrap();
    assert_eq!(exit, Exit::CheckFailed);
    assert_eq!(exit.code(), 3);
    let text = String::from_utf8(out).unwrap();
    let row = text
        .lines()
        .find(|l| l.starts_with("phi2 = pi/3 at minima"))
        .unwrap();
    assert!(row.ends_with("FAIL"), "{row}");
    assert!(text.contains("overall: FAIL"));

    let mut out = Vec::new();
    let exit = cmd_check_with(&args, &mut out, &shortest_for_type).unwrap();
    assert_eq!(exit, Exit::Ok);
}
