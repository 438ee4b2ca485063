//! Pose sampling and deterministic CSV/SVG output.

mod csv;
mod sample;
mod svg;

pub use csv::{export_sweep_csv, sweep_csv, write_sweep_csv, CSV_HEADER};
pub use sample::{sample_path, PolylineSample};
pub use svg::{render_svg, AlphaPlot, Marker, PathScene, SvgScene};

/// Formats `x` with `digits` significant digits in the style of C's `%g`
/// (trailing zeros trimmed, exponent form outside `1e-5 ..= 10^digits`).
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
