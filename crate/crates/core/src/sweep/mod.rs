//! Configuration, grids and task dispatch behind the `uzsl2` binary.

mod table;
mod tasks;

pub use table::{format_float, Cell, Table};
pub use tasks::{run, RunOutcome};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::qdot::QdotParams;
use crate::reps::RepSpec;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Repgen,
    Verify,
    FamilySweep,
    EpScan,
    PolySweep,
    QdotSweep,
}

impl Task {
    pub const ALL: [Task; 6] = [
        Task::Repgen,
        Task::Verify,
        Task::FamilySweep,
        Task::EpScan,
        Task::PolySweep,
        Task::QdotSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Repgen => "repgen",
            Task::Verify => "verify",
            Task::FamilySweep => "family-sweep",
            Task::EpScan => "ep-scan",
            Task::PolySweep => "poly-sweep",
            Task::QdotSweep => "qdot-sweep",
        }
    }

    pub fn from_name(name: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == name)
    }
}

/// Representation block; `beta` defaults to the irrep value `1 − dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RepBlock {
    pub z: f64,
    pub dim: usize,
    pub beta: Option<f64>,
}

impl Default for RepBlock {
    fn default() -> Self {
        Self {
            z: 0.0,
            dim: 2,
            beta: None,
        }
    }
}

impl RepBlock {
    pub fn spec(&self) -> Result<RepSpec> {
        RepSpec::new(self.z, self.beta.unwrap_or(1.0 - self.dim as f64), self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyMode {
    /// Couplings taken from `mu_plus`, `mu_minus`, `mu_0`.
    #[default]
    Explicit,
    /// `(μ₊, μ₋, μ₀) = (−μ, μ, μν)`.
    HMinus,
    /// `(μ₊, μ₋, μ₀) = (μ, μ, μν)`.
    HPlus,
}

/// Where reported eigenvalues come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilyBlock {
    pub mode: FamilyMode,
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub mu_0: f64,
    pub mu: f64,
    pub nu: f64,
    pub g: Option<Vec<f64>>,
    pub source: Source,
}

impl Default for FamilyBlock {
    fn default() -> Self {
        Self {
            mode: FamilyMode::Explicit,
            mu_plus: 1.0,
            mu_minus: 1.0,
            mu_0: 0.0,
            mu: 1.0,
            nu: 0.0,
            g: None,
            source: Source::Analytic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    #[default]
    Sin,
    Cos,
    Coefficients,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolyBlock {
    pub kind: PolyKind,
    pub mu_minus: f64,
    pub lambda: f64,
    /// `a₀..a_N` for `kind = "coefficients"`.
    pub coefficients: Vec<f64>,
    pub source: Source,
}

impl Default for PolyBlock {
    fn default() -> Self {
        Self {
            kind: PolyKind::Sin,
            mu_minus: 1.0,
            lambda: 1.0,
            coefficients: Vec::new(),
            source: Source::Numeric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyBlock {
    /// Dimensions to check; defaults to `rep.dim`.
    pub dims: Option<Vec<usize>>,
    /// Deformations to check; defaults to `rep.z`.
    pub z: Option<Vec<f64>>,
    pub alpha: f64,
    pub tolerance: f64,
}

impl Default for VerifyBlock {
    fn default() -> Self {
        Self {
            dims: None,
            z: None,
            alpha: 0.3,
            tolerance: 1e-10,
        }
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(name: &str, start: f64, stop: f64, count: usize) -> Self {
        Self {
            name: name.into(),
            start,
            stop,
            count,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn from_name(name: &str) -> Option<Format> {
        match name {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputBlock {
    /// Written atomically; `None` returns the rendered bytes to the caller.
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// One run of the binary, as a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub task: Task,
    #[serde(default)]
    pub rep: RepBlock,
    #[serde(default)]
    pub family: FamilyBlock,
    #[serde(default)]
    pub poly: PolyBlock,
    #[serde(default)]
    pub qdot: QdotParams,
    #[serde(default)]
    pub verify: VerifyBlock,
    #[serde(default)]
    pub grid: Vec<GridAxis>,
    #[serde(default)]
    pub output: OutputBlock,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub execution: Execution,
    #[serde(default)]
    pub workers: Option<usize>,
}

impl SweepConfig {
    pub fn new(task: Task) -> Self {
        Self {
            task,
            rep: RepBlock::default(),
            family: FamilyBlock::default(),
            poly: PolyBlock::default(),
            qdot: QdotParams::default(),
            verify: VerifyBlock::default(),
            grid: Vec::new(),
            output: OutputBlock::default(),
            tolerances: Tolerances::default(),
            execution: Execution::default(),
            workers: None,
        }
    }

    /// Parses a JSON document, applies `key=value` overrides and validates.
    pub fn from_json_str(text: &str, overrides: &[String]) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config is not valid JSON: {e}")))?;
        Self::from_value(value, overrides)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text, overrides)
    }

    pub fn from_value(mut value: Value, overrides: &[String]) -> Result<Self> {
        for o in overrides {
            apply_override(&mut value, o)?;
        }
        let config: SweepConfig =
            serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: &str| Err(Error::Config(format!("{field}: {msg}")));
        if self.rep.dim == 0 {
            return bad("rep.dim", "must be at least 1");
        }
        if !self.rep.z.is_finite() || !self.rep.beta.unwrap_or(0.0).is_finite() {
            return bad("rep", "z and beta must be finite");
        }
        if self.rep.dim > self.tolerances.max_dim {
            return bad("rep.dim", "exceeds tolerances.max_dim");
        }
        if self.workers == Some(0) {
            return bad("workers", "must be at least 1");
        }
        for (i, axis) in self.grid.iter().enumerate() {
            if axis.count == 0 {
                return bad(&format!("grid.{i}.count"), "must be at least 1");
            }
            if !axis.start.is_finite() || !axis.stop.is_finite() {
                return bad(&format!("grid.{i}"), "start and stop must be finite");
            }
            if self.grid[..i].iter().any(|a| a.name == axis.name) {
                return bad(&format!("grid.{i}.name"), "swept symbol listed twice");
            }
        }
        let allowed: &[&str] = match self.task {
            Task::Repgen | Task::Verify => &[],
            Task::FamilySweep => &["nu", "mu", "mu_plus", "mu_minus", "mu_0", "z"],
            Task::EpScan => &["nu", "mu", "mu_plus", "mu_minus", "mu_0"],
            Task::PolySweep => &["z", "lambda", "mu_minus"],
            Task::QdotSweep => &["eps"],
        };
        let max_axes = match self.task {
            Task::Repgen | Task::Verify => 0,
            Task::FamilySweep | Task::PolySweep => 2,
            Task::EpScan | Task::QdotSweep => 1,
        };
        if self.grid.len() > max_axes {
            return bad("grid", &format!("{} accepts at most {max_axes} swept symbol(s)", self.task.name()));
        }
        if max_axes > 0 && self.grid.is_empty() {
            return bad("grid", "at least one swept symbol is required");
        }
        for (i, axis) in self.grid.iter().enumerate() {
            if !allowed.contains(&axis.name.as_str()) {
                return bad(
                    &format!("grid.{i}.name"),
                    &format!("`{}` cannot be swept by {} (allowed: {})", axis.name, self.task.name(), allowed.join(", ")),
                );
            }
            if matches!(axis.name.as_str(), "nu" | "mu") && self.family.mode == FamilyMode::Explicit {
                return bad(&format!("grid.{i}.name"), "sweeping nu or mu needs family.mode h-minus or h-plus");
            }
        }
        if matches!(self.task, Task::FamilySweep | Task::EpScan) {
            if self.rep.beta.is_some_and(|b| b != 1.0 - self.rep.dim as f64) {
                return bad("rep.beta", "the family tasks need the irrep value 1 - dim");
            }
            if self.family.g.is_some() && self.family.source == Source::Analytic {
                return bad("family.g", "a non-identity g has no closed-form spectrum; use source = numeric");
            }
        }
        if self.task == Task::PolySweep {
            if self.rep.beta.is_some_and(|b| b != 1.0 - self.rep.dim as f64) {
                return bad("rep.beta", "poly-sweep needs the irrep value 1 - dim");
            }
            if self.poly.kind == PolyKind::Coefficients && self.poly.coefficients.is_empty() {
                return bad("poly.coefficients", "required when poly.kind = coefficients");
            }
        }
        if self.task == Task::Verify {
            if self.verify.dims.as_ref().is_some_and(|d| d.is_empty() || d.contains(&0)) {
                return bad("verify.dims", "must be a non-empty list of positive dimensions");
            }
            if self.verify.z.as_ref().is_some_and(|z| z.is_empty()) {
                return bad("verify.z", "must be non-empty");
            }
            if !(self.verify.tolerance > 0.0) {
                return bad("verify.tolerance", "must be positive");
            }
        }
        Ok(())
    }

    /// Cartesian product of the grid axes, first axis outermost.
    pub fn grid_points(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.grid {
            let values = axis.values();
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }
}

/// Sets the leaf at a dotted path (`family.mu_0=2`, `grid.0.count=11`).
/// The value is parsed as JSON and taken as a string if that fails.
pub fn apply_override(root: &mut Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{assignment}` is not key=value")))?;
    let path = path.trim();
    if path.is_empty() {
        return Err(Error::Config(format!("override `{assignment}` has an empty key")));
    }
    let new_value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut cursor = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (depth, part) in parts.iter().enumerate() {
        let last = depth + 1 == parts.len();
        cursor = match cursor {
            Value::Object(map) => {
                if last {
                    map.insert(part.to_string(), new_value);
                    return Ok(());
                }
                map.entry(part.to_string()).or_insert_with(|| Value::Object(Default::default()))
            }
            Value::Array(items) => {
                let index: usize = part
                    .parse()
                    .map_err(|_| Error::Config(format!("`{path}`: `{part}` is not an array index")))?;
                let len = items.len();
                let slot = items
                    .get_mut(index)
                    .ok_or_else(|| Error::Config(format!("`{path}`: index {index} out of range (length {len})")))?;
                if last {
                    *slot = new_value;
                    return Ok(());
                }
                slot
            }
            Value::Null => {
                *cursor = Value::Object(Default::default());
                if last {
                    if let Value::Object(map) = cursor {
                        map.insert(part.to_string(), new_value);
                    }
                    return Ok(());
                }
                match cursor {
                    Value::Object(map) => map
                        .entry(part.to_string())
                        .or_insert_with(|| Value::Object(Default::default())),
                    _ => unreachable!(),
                }
            }
            _ => {
                return Err(Error::Config(format!(
                    "`{path}`: `{}` is not an object",
                    parts[..depth].join(".")
                )))
            }
        };
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn linspace_endpoints() {
        let v = GridAxis::new("nu", -3.0, 3.0, 601).values();
        assert_eq!(v.len(), 601);
        assert_eq!(v[0], -3.0);
        assert_eq!(v[600], 3.0);
        assert!((v[300]).abs() < 1e-15);
        assert_eq!(GridAxis::new("z", 2.0, 5.0, 1).values(), vec![2.0]);
    }

    #[test]
    fn overrides_reach_nested_leaves() {
        let mut v = json!({"task": "family-sweep", "grid": [{"name": "nu", "start": 0, "stop": 1, "count": 3}]});
        apply_override(&mut v, "grid.0.count=7").unwrap();
        apply_override(&mut v, "family.mode=h-minus").unwrap();
        apply_override(&mut v, "rep.dim=5").unwrap();
        let c = SweepConfig::from_value(v, &[]).unwrap();
        assert_eq!(c.grid[0].count, 7);
        assert_eq!(c.family.mode, FamilyMode::HMinus);
        assert_eq!(c.rep.dim, 5);
        let mut bad = json!({"task": "verify", "rep": 3});
        assert!(apply_override(&mut bad, "rep.dim=2").is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let err = SweepConfig::from_value(
            json!({"task": "qdot-sweep", "grid": [{"name": "eps", "start": 1, "stop": 2, "count": 0}]}),
            &[],
        )
        .unwrap_err();
        assert!(err.to_string().contains("grid.0.count"), "{err}");
        let err = SweepConfig::from_value(json!({"task": "family-sweep", "bogus": 1}), &[]).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = SweepConfig::from_value(
            json!({"task": "family-sweep", "grid": [{"name": "nu", "start": 0, "stop": 1, "count": 2}]}),
            &[],
        )
        .unwrap_err();
        assert!(err.to_string().contains("family.mode"), "{err}");
    }

    #[test]
    fn grid_product_order() {
        let mut c = SweepConfig::new(Task::FamilySweep);
        c.grid = vec![GridAxis::new("mu_0", 0.0, 1.0, 2), GridAxis::new("z", 0.0, 2.0, 3)];
        let p = c.grid_points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], vec![0.0, 1.0]);
        assert_eq!(p[3], vec![1.0, 0.0]);
    }
}
