use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::format_significant;
use crate::error::{Error, Result};
use crate::sweep::SweepResult;

pub const CSV_HEADER: &str = "alpha,length,phi1,phi2,ls,feasible";

const DIGITS: usize = 12;

pub fn write_sweep_csv(result: &SweepResult, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in &result.samples {
        let alpha = format_significant(s.alpha, DIGITS);
        match s.values {
            Some(v) => writeln!(
                out,
                "{alpha},{},{},{},{},true",
                format_significant(v.length, DIGITS),
                format_significant(v.phi1, DIGITS),
                format_significant(v.phi2, DIGITS),
                format_significant(v.straight, DIGITS),
            )?,
            None => writeln!(out, "{alpha},,,,,false")?,
        }
    }
    Ok(())
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(result, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn export_sweep_csv(result: &SweepResult, destination: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: destination.to_path_buf(),
        source,
    };
    let file = File::create(destination).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_sweep_csv(result, &mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}
