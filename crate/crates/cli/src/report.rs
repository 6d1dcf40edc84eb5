//! report.json: validation results, plotting curves and the config echo.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, Serializer};
use winding::{LimitLaw, ValidationReport};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Points per law in `pdf_curves`.
pub const CURVE_POINTS: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub runs: Vec<ValidationReport>,
    /// Law name → `[x, pdf(x)]` on the law's default window.
    pub pdf_curves: BTreeMap<String, Vec<[f64; 2]>>,
    pub config: RunConfig,
}

pub fn curve(law: &LimitLaw, n_points: usize) -> Vec<[f64; 2]> {
    let (lo, hi) = law.default_range();
    linspace(lo, hi, n_points)
        .map(|x| [x, law.pdf(x)])
        .collect()
}

/// `n` equally spaced points from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 {
        (hi - lo) / (n - 1) as f64
    } else {
        0.0
    };
    (0..n).map(move |i| {
        if i + 1 == n && n > 1 {
            hi
        } else {
            lo + step * i as f64
        }
    })
}

/// Writes floats with 17 significant digits (`d.dddddddddddddddde±x`),
/// which round-trips every `f64` and does not depend on the shortest-repr
/// algorithm.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn write_report(path: &Path, report: &Report) -> Result<()> {
    let file = File::create(path).map_err(CliError::io(path))?;
    let mut w = BufWriter::new(file);
    w.write_all(to_json(report).as_bytes())
        .and_then(|_| w.write_all(b"\n"))
        .and_then(|_| w.flush())
        .map_err(CliError::io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(to_json(&0.1f64), "1.0000000000000001e-1");
        assert_eq!(to_json(&14.75f64), "1.4750000000000000e1");
        assert_eq!(
            to_json(&vec![1.0f64, -2.5]),
            "[1.0000000000000000e0,-2.5000000000000000e0]"
        );
        // serde_json maps non-finite numbers to null before the formatter.
        assert_eq!(to_json(&f64::NAN), "null");
        let back: f64 = serde_json::from_str(&to_json(&(1.0f64 / 3.0))).unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn linspace_hits_both_ends() {
        let xs: Vec<f64> = linspace(0.01, 10.0, 3).collect();
        assert_eq!(xs, vec![0.01, 5.005, 10.0]);
        assert_eq!(linspace(2.0, 3.0, 1).collect::<Vec<_>>(), vec![2.0]);
    }
}
