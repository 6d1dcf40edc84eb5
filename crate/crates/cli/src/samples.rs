//! Sample files: `# key=value` header lines, then one winding angle per
//! line in shortest round-trip decimal form.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use winding::{Geometry, SimParams};

use crate::error::{CliError, Result};

pub const SCHEMA: u32 = 1;

pub fn file_name(geometry: &Geometry, t: f64) -> String {
    format!("samples_{}_{t}.csv", geometry.name())
}

pub fn path_for(dir: &Path, geometry: &Geometry, t: f64) -> PathBuf {
    dir.join(file_name(geometry, t))
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:?}")).unwrap_or_default()
}

pub fn write_samples(
    path: &Path,
    geometry: &Geometry,
    params: &SimParams,
    thetas: &[f64],
) -> Result<()> {
    let file = File::create(path).map_err(CliError::io(path))?;
    let header = [
        ("geometry", geometry.name().to_string()),
        ("a", opt(geometry.inner())),
        ("b", opt(geometry.outer())),
        ("beta", format!("{:?}", params.beta)),
        ("r0", format!("{:?}", params.r0)),
        ("t", format!("{:?}", params.t_final)),
        ("n", params.n_realizations.to_string()),
        ("seed", params.seed.to_string()),
        ("delta", format!("{:?}", params.delta)),
        ("dt_max", format!("{:?}", params.dt_max)),
        ("dt_min", format!("{:?}", params.dt_min)),
        ("schema", SCHEMA.to_string()),
    ];
    write_body(BufWriter::new(file), &header, thetas).map_err(CliError::io(path))
}

fn write_body(mut w: impl Write, header: &[(&str, String)], thetas: &[f64]) -> std::io::Result<()> {
    for (k, v) in header {
        writeln!(w, "# {k}={v}")?;
    }
    for theta in thetas {
        writeln!(w, "{theta:?}")?;
    }
    w.flush()
}

/// A parsed sample file.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleFile {
    pub header: BTreeMap<String, String>,
    pub thetas: Vec<f64>,
}

impl SampleFile {
    pub fn get(&self, key: &str) -> Result<&str> {
        self.header
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Runtime(format!("sample header lacks `{key}`")))
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        let v = self.get(key)?;
        v.parse()
            .map_err(|_| CliError::Runtime(format!("sample header `{key}={v}` is not a number")))
    }
}

pub fn read_samples(path: &Path) -> Result<SampleFile> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let mut header = BTreeMap::new();
    let mut thetas = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let bad = || {
            CliError::Runtime(format!(
                "{}:{}: malformed line `{line}`",
                path.display(),
                i + 1
            ))
        };
        if let Some(rest) = line.strip_prefix('#') {
            let (k, v) = rest.trim().split_once('=').ok_or_else(bad)?;
            header.insert(k.trim().to_string(), v.trim().to_string());
        } else if !line.trim().is_empty() {
            thetas.push(line.trim().parse().map_err(|_| bad())?);
        }
    }
    let file = SampleFile { header, thetas };
    let schema = file.get("schema")?;
    if schema != SCHEMA.to_string() {
        return Err(CliError::Runtime(format!(
            "{}: unsupported schema {schema}",
            path.display()
        )));
    }
    let n: usize = file
        .get("n")?
        .parse()
        .map_err(|_| CliError::Runtime("bad `n` in header".into()))?;
    if n != file.thetas.len() {
        return Err(CliError::Runtime(format!(
            "{}: header promises {n} samples, found {}",
            path.display(),
            file.thetas.len()
        )));
    }
    Ok(file)
}

/// Times of all sample files for `geometry` in `dir`, ascending.
pub fn discover_times(dir: &Path, geometry: &Geometry) -> Result<Vec<f64>> {
    let prefix = format!("samples_{}_", geometry.name());
    let mut times = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(_) => return Ok(times),
    };
    for entry in entries {
        let name = entry.map_err(CliError::io(dir))?.file_name();
        let Some(name) = name.to_str() else { continue };
        let t = name
            .strip_prefix(&prefix)
            .and_then(|s| s.strip_suffix(".csv"))
            .and_then(|s| s.parse::<f64>().ok());
        if let Some(t) = t {
            times.push(t);
        }
    }
    times.sort_by(f64::total_cmp);
    Ok(times)
}
