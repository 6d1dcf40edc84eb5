//! The four subcommands. Each returns what it printed or wrote so that the
//! binary and the tests drive the same code.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use winding::laws;
use winding::oracles::{
    annulus_lead_eigenvalue, complex_order, disk_density_quadrature, point_density_quadrature,
};
use winding::{run_ensemble, validate, QuadratureSpec};

use crate::args::{LawName, OracleKind, PdfArgs, QuadArgs, RunArgs};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::report::{curve, linspace, write_report, Report, CURVE_POINTS};
use crate::samples::{discover_times, path_for, read_samples, write_samples, SampleFile};

/// Runs `f` on a pool of `threads` workers (0: one per core).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Simulates every configured time and returns the written paths.
pub fn simulate(args: &RunArgs) -> Result<Vec<PathBuf>> {
    let config = RunConfig::from_args(args, true)?;
    fs::create_dir_all(&config.out_dir).map_err(CliError::io(&config.out_dir))?;
    let mut written = Vec::with_capacity(config.t_list.len());
    for &t in &config.t_list {
        let params = config.params(t);
        let samples = with_threads(args.threads, || run_ensemble(&params, &config.geometry))??;
        let thetas: Vec<f64> = samples.iter().map(|s| s.theta_final).collect();
        let path = path_for(&config.out_dir, &config.geometry, t);
        write_samples(&path, &config.geometry, &params, &thetas)?;
        written.push(path);
    }
    Ok(written)
}

/// Validates the sample files of the configured times (all times found on
/// disk when none are given) and writes `report.json`.
pub fn validate_runs(args: &RunArgs) -> Result<(PathBuf, Report)> {
    let mut config = RunConfig::from_args(args, false)?;
    if config.t_list.is_empty() {
        config.t_list = discover_times(&config.out_dir, &config.geometry)?;
        if config.t_list.is_empty() {
            return Err(CliError::Config(format!(
                "no {} sample files in {}: nothing to validate",
                config.geometry.name(),
                config.out_dir.display()
            )));
        }
    }
    let law = config.law();
    let mut files = Vec::with_capacity(config.t_list.len());
    for &t in &config.t_list {
        let path = path_for(&config.out_dir, &config.geometry, t);
        if !path.exists() {
            return Err(CliError::Runtime(format!(
                "missing sample file {}",
                path.display()
            )));
        }
        let file = read_samples(&path)?;
        check_provenance(&file, &config, t)?;
        files.push(file);
    }
    adopt_run_settings(&mut config, &files)?;
    let mut runs = Vec::with_capacity(files.len());
    for (file, &t) in files.iter().zip(&config.t_list) {
        runs.push(validate(&file.thetas, &law, t, config.bins)?);
    }
    let mut pdf_curves = BTreeMap::new();
    pdf_curves.insert(law.name().to_string(), curve(&law, CURVE_POINTS));
    let report = Report {
        runs,
        pdf_curves,
        config,
    };
    let path = report.config.out_dir.join("report.json");
    write_report(&path, &report)?;
    Ok((path, report))
}

/// The file must come from the geometry, drift and start the report will
/// claim; step-control knobs may differ.
fn check_provenance(file: &SampleFile, config: &RunConfig, t: f64) -> Result<()> {
    let same = |key: &str, want: f64| -> Result<bool> { Ok(file.get_f64(key)? == want) };
    let radii_match = match (config.geometry.inner(), config.geometry.outer()) {
        (None, _) => file.get("a")?.is_empty(),
        (Some(a), None) => same("a", a)? && file.get("b")?.is_empty(),
        (Some(a), Some(b)) => same("a", a)? && same("b", b)?,
    };
    let ok = file.get("geometry")? == config.geometry.name()
        && radii_match
        && same("beta", config.beta)?
        && same("r0", config.r0)?
        && same("t", t)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "sample file for t = {t} was produced with a different geometry, beta or r0: {:?}",
            file.header
        )))
    }
}

/// The echoed configuration must reproduce the files, so the settings that
/// do not enter the law (ensemble size, seed, step control) are taken from
/// the file headers, which must agree with each other.
fn adopt_run_settings(config: &mut RunConfig, files: &[SampleFile]) -> Result<()> {
    let first = &files[0];
    let n: u64 = first
        .get("n")?
        .parse()
        .map_err(|_| CliError::Runtime("bad `n` in sample header".into()))?;
    let seed: u64 = first
        .get("seed")?
        .parse()
        .map_err(|_| CliError::Runtime("bad `seed` in sample header".into()))?;
    let (delta, dt_min) = (first.get_f64("delta")?, first.get_f64("dt_min")?);
    let mut dt_max_values = Vec::with_capacity(files.len());
    for (file, &t) in files.iter().zip(&config.t_list) {
        let consistent = file.get("n")? == first.get("n")?
            && file.get("seed")? == first.get("seed")?
            && file.get_f64("delta")? == delta
            && file.get_f64("dt_min")? == dt_min;
        if !consistent {
            return Err(CliError::Config(format!(
                "sample file for t = {t} disagrees with the others on n, seed or step control"
            )));
        }
        dt_max_values.push((t, file.get_f64("dt_max")?));
    }
    config.dt_max = if dt_max_values.iter().all(|&(t, d)| d == t / 1000.0) {
        None
    } else if dt_max_values.iter().all(|&(_, d)| d == dt_max_values[0].1) {
        Some(dt_max_values[0].1)
    } else {
        return Err(CliError::Config(
            "sample files use unrelated dt_max values".into(),
        ));
    };
    config.n_realizations = n;
    config.seed = seed;
    config.delta = delta;
    config.dt_min = dt_min;
    Ok(())
}

/// Writes `x,pdf` rows for the normalized law.
pub fn pdf(args: &PdfArgs, out: &mut impl Write) -> Result<()> {
    if args.points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    if !(args.x_min < args.x_max) {
        return Err(CliError::Config("--x-min must be below --x-max".into()));
    }
    let f: fn(f64) -> f64 = law_pdf(args.law);
    let mut text = String::from("x,pdf\n");
    for x in linspace(args.x_min, args.x_max, args.points) {
        text.push_str(&format!("{x:?},{:?}\n", f(x)));
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Runtime(format!("writing output: {e}")))
}

pub fn law_pdf(law: LawName) -> fn(f64) -> f64 {
    match law {
        LawName::Point => laws::pdf_point,
        LawName::Disk => laws::pdf_disk,
        LawName::Annulus => laws::pdf_annulus_normalized,
        LawName::PointFree => laws::pdf_point_free,
        LawName::DiskFree => laws::pdf_disk_free,
    }
}

/// Evaluates an oracle; one line per value, 15 significant digits.
pub fn oracle(kind: &OracleKind, out: &mut impl Write) -> Result<()> {
    let lines: Vec<String> = match kind {
        OracleKind::PointQuad {
            theta,
            t,
            r0,
            beta,
            quad,
        } => {
            let spec = spec_of(quad);
            theta
                .iter()
                .map(|&th| point_density_quadrature(th, *t, *r0, *beta, &spec).map(sig15))
                .collect::<winding::Result<_>>()?
        }
        OracleKind::DiskQuad {
            theta,
            t,
            a,
            r0,
            beta,
            quad,
        } => {
            let spec = spec_of(quad);
            let r0 = r0.unwrap_or(*a);
            theta
                .iter()
                .map(|&th| disk_density_quadrature(th, *t, r0, *a, *beta, &spec).map(sig15))
                .collect::<winding::Result<_>>()?
        }
        OracleKind::Eigenvalue { a, b, k } => vec![sig15(annulus_lead_eigenvalue(*a, *b, *k)?)],
        OracleKind::Order { mu, beta } => {
            let k = complex_order(*mu, *beta).value();
            vec![format!("{:.14e}{:+.14e}i", k.re, k.im)]
        }
    };
    let mut text = lines.join("\n");
    text.push('\n');
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Runtime(format!("writing output: {e}")))
}

fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

fn spec_of(q: &QuadArgs) -> QuadratureSpec {
    QuadratureSpec {
        mu_cutoff: q.mu_cutoff,
        abs_tol: q.abs_tol,
        rel_tol: q.rel_tol,
        ..QuadratureSpec::default()
    }
}
