use std::path::PathBuf;

use super::table::write_atomic;
use super::{Cell, FamilyMode, Format, PolyKind, Source, SweepConfig, Table, Task};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::exec::{try_map, with_workers};
use crate::linalg::C64;
use crate::qdot::sweep_compare;
use crate::reps::{
    build_deformed_generators, verify_casimir, verify_commutation, verify_hopf_axioms,
    CommutationReport, GeneratorTriple, PtOperator, RepSpec,
};
use crate::spectra::{
    analytic_spectrum_polynomial, build_family_h, build_polynomial_h, classify_phase_and_scan, classify_point,
    h_minus_params, h_plus_params, numeric_spectrum, verify_adjoint_identities, FamilyParams, Phase,
    PolyHamiltonianSpec, ScanPoint,
};
use crate::tolerances::Tolerances;

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub task: Task,
    /// Grid points (or representations, for `verify`) evaluated.
    pub points: usize,
    /// Rows in the output table.
    pub rows: usize,
    /// Where the output was written.
    pub output: Option<PathBuf>,
    /// Rendered output when no path was configured (all tasks but `verify`).
    pub rendered: Option<Vec<u8>>,
    /// False when a verification check failed.
    pub passed: bool,
    /// Human-readable lines: per-check residuals, located exceptional points.
    pub report: Vec<String>,
}

impl RunOutcome {
    pub fn summary(&self) -> String {
        let target = match &self.output {
            Some(p) => p.display().to_string(),
            None if self.rendered.is_some() => "stdout".into(),
            None => "no output file".into(),
        };
        let status = if self.passed { "" } else { ", FAILED" };
        format!(
            "{}: {} grid points, {} rows -> {}{}",
            self.task.name(),
            self.points,
            self.rows,
            target,
            status
        )
    }
}

/// Runs the configured task and writes its output atomically.
pub fn run(config: &SweepConfig) -> Result<RunOutcome> {
    config.validate()?;
    with_workers(config.workers, || dispatch(config))
}

struct Produced {
    bytes: Vec<u8>,
    points: usize,
    rows: usize,
    passed: bool,
    report: Vec<String>,
}

impl Produced {
    fn table(table: &Table, points: usize, format: Format) -> Result<Self> {
        Ok(Self {
            bytes: table.render(format)?,
            points,
            rows: table.rows.len(),
            passed: true,
            report: Vec::new(),
        })
    }
}

fn dispatch(config: &SweepConfig) -> Result<RunOutcome> {
    let produced = match config.task {
        Task::Repgen => repgen(config)?,
        Task::Verify => verify(config)?,
        Task::FamilySweep => family_sweep(config)?,
        Task::EpScan => ep_scan(config)?,
        Task::PolySweep => poly_sweep(config)?,
        Task::QdotSweep => qdot_sweep(config)?,
    };
    let (output, rendered) = match &config.output.path {
        Some(path) => {
            write_atomic(path, &produced.bytes)?;
            (Some(path.clone()), None)
        }
        None if config.task == Task::Verify => (None, None),
        None => (None, Some(produced.bytes)),
    };
    Ok(RunOutcome {
        task: config.task,
        points: produced.points,
        rows: produced.rows,
        output,
        rendered,
        passed: produced.passed,
        report: produced.report,
    })
}

fn describe(names: &[String], values: &[f64]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn at_point<T>(names: &[String], values: &[f64], r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::GridPoint {
        point: describe(names, values),
        source: Box::new(e),
    })
}

/// Zeroes imaginary parts below `tol.real · scale`.
fn snap_real(values: &[C64], scale: f64, tol: &Tolerances) -> Vec<C64> {
    let cut = tol.real * scale.max(1.0);
    values
        .iter()
        .map(|v| if v.im.abs() <= cut { C64::new(v.re, 0.0) } else { *v })
        .collect()
}

fn spectrum_columns(names: &[String], discriminant: bool) -> Vec<String> {
    let mut cols: Vec<String> = names.to_vec();
    cols.extend(["index", "re", "im", "phase"].map(String::from));
    if discriminant {
        cols.push("discriminant".into());
    }
    cols
}

fn push_spectrum(table: &mut Table, values: &[f64], eigen: &[C64], phase: Phase, discriminant: Option<f64>) {
    for (k, e) in eigen.iter().enumerate() {
        let mut row: Vec<Cell> = values.iter().map(|&v| Cell::Float(v)).collect();
        row.extend([
            Cell::Int(k),
            Cell::Float(e.re),
            Cell::Float(e.im),
            Cell::Text(phase.label().into()),
        ]);
        if let Some(d) = discriminant {
            row.push(Cell::Float(d));
        }
        table.push(row);
    }
}

fn axis_names(config: &SweepConfig) -> Vec<String> {
    config.grid.iter().map(|a| a.name.clone()).collect()
}

fn repgen(config: &SweepConfig) -> Result<Produced> {
    let triple = build_deformed_generators(&config.rep.spec()?)?;
    let bytes = match config.output.format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&triple.to_json())?;
            b.push(b'\n');
            b
        }
        Format::Csv => {
            let mut t = Table::new(["matrix", "row", "col", "re", "im"].map(String::from).to_vec());
            for (name, m) in [("J0", &triple.j0), ("Jplus", &triple.jplus), ("Jminus", &triple.jminus)] {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        t.push(vec![
                            Cell::Text(name.into()),
                            Cell::Int(i),
                            Cell::Int(j),
                            Cell::Float(m[(i, j)].re),
                            Cell::Float(m[(i, j)].im),
                        ]);
                    }
                }
            }
            t.render(Format::Csv)?
        }
    };
    Ok(Produced {
        bytes,
        points: 1,
        rows: 3 * triple.dim() * triple.dim(),
        passed: true,
        report: vec![format!(
            "dim={} beta={} z={} irreducible={}",
            triple.dim(),
            triple.spec.beta,
            triple.spec.z,
            triple.is_irreducible()
        )],
    })
}

struct VerifyRows {
    table: Table,
    report: Vec<String>,
    passed: bool,
}

impl VerifyRows {
    fn add(&mut self, spec: &RepSpec, name: &str, residual: f64, scale: f64, passed: bool) {
        self.table.push(vec![
            Cell::Int(spec.dim),
            Cell::Float(spec.beta),
            Cell::Float(spec.z),
            Cell::Text(name.into()),
            Cell::Float(residual),
            Cell::Float(scale),
            Cell::Bool(passed),
        ]);
        self.report.push(format!(
            "{} dim={} beta={} z={} {}: residual {:.3e} (relative {:.3e})",
            if passed { "PASS" } else { "FAIL" },
            spec.dim,
            spec.beta,
            spec.z,
            name,
            residual,
            residual / scale.max(1.0)
        ));
        self.passed &= passed;
    }

    fn add_report(&mut self, spec: &RepSpec, suite: &str, report: &CheckReport) {
        for c in &report.checks {
            self.add(spec, &format!("{suite}: {}", c.name), c.residual, c.scale, c.passed);
        }
    }

    fn add_commutation(&mut self, spec: &RepSpec, report: &CommutationReport) {
        for (k, name) in CommutationReport::NAMES.iter().enumerate() {
            let ok = report.residuals[k] <= report.tolerance * report.scale;
            self.add(spec, &format!("commutation: {name}"), report.residuals[k], report.scale, ok);
            if !ok {
                let entries = report.offending_entries(k, report.tolerance * report.scale);
                let listed: Vec<String> = entries
                    .iter()
                    .take(6)
                    .map(|(i, j, v)| format!("({i},{j}) {v:.3e}"))
                    .collect();
                self.report.push(format!(
                    "     boundary residual entries{}: {}",
                    if report.irreducible { "" } else { " (truncation of a non-irreducible module)" },
                    listed.join(", ")
                ));
            }
        }
    }
}

fn verify_one(triple: &GeneratorTriple, alpha: f64, tol: f64, rows: &mut VerifyRows) -> Result<()> {
    let spec = triple.spec;
    rows.add_commutation(&spec, &verify_commutation(triple, tol)?);
    rows.add_report(&spec, "casimir", &verify_casimir(triple, tol)?);
    rows.add_report(&spec, "hopf", &verify_hopf_axioms(triple, tol)?);
    rows.add_report(&spec, "adjoint", &verify_adjoint_identities(triple, alpha, tol)?);
    let pt = PtOperator::new(triple.dim());
    for (name, m) in [("J0", &triple.j0), ("J+", &triple.jplus), ("J-", &triple.jminus)] {
        let scale = m.frobenius_norm().max(1.0);
        let d = pt.defect(m);
        rows.add(&spec, &format!("pt: PT {name} PT^-1 = {name}"), d, scale, d <= tol * scale);
    }
    Ok(())
}

fn verify(config: &SweepConfig) -> Result<Produced> {
    let dims = config.verify.dims.clone().unwrap_or_else(|| vec![config.rep.dim]);
    let zs = config.verify.z.clone().unwrap_or_else(|| vec![config.rep.z]);
    let mut rows = VerifyRows {
        table: Table::new(
            ["dim", "beta", "z", "check", "residual", "scale", "passed"]
                .map(String::from)
                .to_vec(),
        ),
        report: Vec::new(),
        passed: true,
    };
    let mut points = 0;
    for &d in &dims {
        for &z in &zs {
            let beta = config.rep.beta.unwrap_or(1.0 - d as f64);
            let triple = build_deformed_generators(&RepSpec::new(z, beta, d)?)?;
            verify_one(&triple, config.verify.alpha, config.verify.tolerance, &mut rows)?;
            points += 1;
        }
    }
    let failures = rows.report.iter().filter(|l| l.starts_with("FAIL")).count();
    rows.report.push(format!(
        "{} of {} checks passed",
        rows.table.rows.len() - failures,
        rows.table.rows.len()
    ));
    let mut p = Produced::table(&rows.table, points, config.output.format)?;
    p.passed = rows.passed;
    p.report = rows.report;
    Ok(p)
}

/// Couplings and deformation at one point of a family grid.
fn family_point(config: &SweepConfig, names: &[String], values: &[f64]) -> (FamilyParams, f64) {
    let f = &config.family;
    let (mut mu, mut nu, mut z) = (f.mu, f.nu, config.rep.z);
    let mut explicit: [Option<f64>; 3] = [None; 3];
    for (n, &v) in names.iter().zip(values) {
        match n.as_str() {
            "mu" => mu = v,
            "nu" => nu = v,
            "z" => z = v,
            "mu_plus" => explicit[0] = Some(v),
            "mu_minus" => explicit[1] = Some(v),
            "mu_0" => explicit[2] = Some(v),
            _ => {}
        }
    }
    let mut params = match f.mode {
        FamilyMode::Explicit => FamilyParams::new(f.mu_plus, f.mu_minus, f.mu_0),
        FamilyMode::HMinus => h_minus_params(mu, nu),
        FamilyMode::HPlus => h_plus_params(mu, nu),
    };
    if let Some(v) = explicit[0] {
        params.mu_plus = v;
    }
    if let Some(v) = explicit[1] {
        params.mu_minus = v;
    }
    if let Some(v) = explicit[2] {
        params.mu_0 = v;
    }
    if let Some(g) = &f.g {
        params = params.with_g(g.clone());
    }
    (params, z)
}

fn family_eigenvalues(config: &SweepConfig, params: &FamilyParams, z: f64) -> Result<(Vec<C64>, Phase)> {
    let d = config.rep.dim;
    let tol = &config.tolerances;
    match config.family.source {
        Source::Analytic => {
            let s = crate::spectra::analytic_spectrum_family(params, d, z)?;
            Ok((s.eigenvalues, params.phase(tol)))
        }
        Source::Numeric => {
            let triple = build_deformed_generators(&RepSpec::irrep(z, d))?;
            let h = build_family_h(params, &triple)?;
            let s = numeric_spectrum(&h, tol)?;
            Ok((snap_real(&s.values, s.scale, tol), params.phase(tol)))
        }
    }
}

fn family_sweep(config: &SweepConfig) -> Result<Produced> {
    let names = axis_names(config);
    let points = config.grid_points();
    let results = try_map(&points, config.execution, |_, values| {
        let (params, z) = family_point(config, &names, values);
        let (eigen, phase) = at_point(&names, values, family_eigenvalues(config, &params, z))?;
        Ok((eigen, phase, params.discriminant()))
    })?;
    let mut table = Table::new(spectrum_columns(&names, true));
    for (values, (eigen, phase, disc)) in points.iter().zip(&results) {
        push_spectrum(&mut table, values, eigen, *phase, Some(*disc));
    }
    Produced::table(&table, points.len(), config.output.format)
}

fn describe_ep(names: &[String], value: f64, point: &ScanPoint) -> String {
    let clusters: Vec<String> = point
        .analytic
        .ep_clusters
        .iter()
        .map(|c| {
            format!(
                "order {} at {:.6}{:+.6}i, eigenvector nullity {}{}",
                c.order,
                c.value.re,
                c.value.im,
                c.geometric_multiplicity.map_or("?".into(), |n| n.to_string()),
                if c.coalescent == Some(true) { " (coalescent)" } else { "" }
            )
        })
        .collect();
    format!(
        "exceptional point at {}={}: {}",
        names[0],
        super::format_float(value),
        if clusters.is_empty() { "no degenerate cluster".into() } else { clusters.join("; ") }
    )
}

/// Root of the discriminant between two grid values of opposite sign.
fn bisect_discriminant(config: &SweepConfig, names: &[String], mut lo: f64, mut hi: f64) -> f64 {
    let disc = |v: f64| family_point(config, names, &[v]).0.discriminant();
    let mut d_lo = disc(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let d_mid = disc(mid);
        if d_mid == 0.0 {
            return mid;
        }
        if (d_mid > 0.0) == (d_lo > 0.0) {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    if disc(lo).abs() <= disc(hi).abs() {
        lo
    } else {
        hi
    }
}

fn ep_scan(config: &SweepConfig) -> Result<Produced> {
    let names = axis_names(config);
    let tol = &config.tolerances;
    let d = config.rep.dim;
    let z = config.rep.z;
    let points = config.grid_points();
    let grid: Vec<FamilyParams> = points.iter().map(|v| family_point(config, &names, v).0).collect();
    let map = classify_phase_and_scan(&grid, d, z, tol, config.execution)?;

    let mut report = Vec::new();
    let mut table = Table::new(spectrum_columns(&names, true));
    let emit = |table: &mut Table, value: f64, point: &ScanPoint| -> Result<()> {
        let eigen = match config.family.source {
            Source::Analytic => point.analytic.eigenvalues.clone(),
            Source::Numeric => snap_real(&point.numeric.values, point.numeric.scale, tol),
        };
        push_spectrum(table, &[value], &eigen, point.phase(), point.analytic.discriminant);
        Ok(())
    };
    let mut confirmed = 0;
    let mut found = 0;
    for (i, point) in map.points.iter().enumerate() {
        let value = points[i][0];
        emit(&mut table, value, point)?;
        if point.phase() == Phase::ExceptionalPoint {
            found += 1;
            confirmed += usize::from(point.is_confirmed_ep());
            report.push(describe_ep(&names, value, point));
        }
        if let Some(next) = map.points.get(i + 1) {
            let (a, b) = (point.params.discriminant(), next.params.discriminant());
            let strictly_opposite = (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
            if strictly_opposite && point.phase() != Phase::ExceptionalPoint && next.phase() != Phase::ExceptionalPoint {
                let root = bisect_discriminant(config, &names, value, points[i + 1][0]);
                let params = family_point(config, &names, &[root]).0;
                let located = at_point(&names, &[root], classify_point(&params, d, z, tol))?;
                if located.phase() == Phase::ExceptionalPoint {
                    found += 1;
                    confirmed += usize::from(located.is_confirmed_ep());
                    report.push(describe_ep(&names, root, &located));
                    emit(&mut table, root, &located)?;
                }
            }
        }
    }
    report.push(format!(
        "{found} exceptional point(s) located, coalescence confirmed at {confirmed}"
    ));
    let mut p = Produced::table(&table, points.len(), config.output.format)?;
    p.report = report;
    Ok(p)
}

fn poly_spec(config: &SweepConfig, mu_minus: f64, lambda: f64) -> PolyHamiltonianSpec {
    let max_n = PolyHamiltonianSpec::max_abs_n(config.rep.dim);
    match config.poly.kind {
        PolyKind::Sin => PolyHamiltonianSpec::sine(mu_minus, lambda, max_n),
        PolyKind::Cos => PolyHamiltonianSpec::cosine(mu_minus, lambda, max_n),
        PolyKind::Coefficients => PolyHamiltonianSpec::new(mu_minus, config.poly.coefficients.clone()),
    }
}

fn poly_sweep(config: &SweepConfig) -> Result<Produced> {
    let names = axis_names(config);
    let points = config.grid_points();
    let tol = &config.tolerances;
    let d = config.rep.dim;
    let results = try_map(&points, config.execution, |_, values| {
        let (mut z, mut mu_minus, mut lambda) = (config.rep.z, config.poly.mu_minus, config.poly.lambda);
        for (n, &v) in names.iter().zip(values) {
            match n.as_str() {
                "z" => z = v,
                "mu_minus" => mu_minus = v,
                "lambda" => lambda = v,
                _ => {}
            }
        }
        let spec = poly_spec(config, mu_minus, lambda);
        let eigen = at_point(&names, values, (|| match config.poly.source {
            Source::Analytic => Ok(analytic_spectrum_polynomial(&spec, d, z)?.eigenvalues),
            Source::Numeric => {
                let triple = build_deformed_generators(&RepSpec::irrep(z, d))?;
                let s = numeric_spectrum(&build_polynomial_h(&spec, &triple)?, tol)?;
                Ok(snap_real(&s.values, s.scale, tol))
            }
        })())?;
        let phase = if eigen.iter().all(|e| e.im == 0.0) {
            Phase::ExactPT
        } else {
            Phase::BrokenPT
        };
        Ok((eigen, phase))
    })?;
    let mut table = Table::new(spectrum_columns(&names, false));
    for (values, (eigen, phase)) in points.iter().zip(&results) {
        push_spectrum(&mut table, values, eigen, *phase, None);
    }
    Produced::table(&table, points.len(), config.output.format)
}

fn qdot_sweep(config: &SweepConfig) -> Result<Produced> {
    let grid = config.grid[0].values();
    let rows = sweep_compare(&config.qdot, &grid, config.execution)?;
    let mut table = Table::new(["eps", "level", "exact", "approx", "deviation"].map(String::from).to_vec());
    for r in &rows {
        for l in 0..4 {
            table.push(vec![
                Cell::Float(r.epsilon),
                Cell::Int(l),
                Cell::Float(r.exact[l]),
                Cell::Float(r.approx[l]),
                Cell::Float(r.deviations[l]),
            ]);
        }
    }
    Produced::table(&table, grid.len(), config.output.format)
}
