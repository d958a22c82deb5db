//! Scenario configuration: a sectioned TOML document.
//!
//! ```toml
//! [gas]
//! T1 = 600.0
//! T3 = 300.0
//! R = 1.5            # or V1, V2, gamma
//! Cv = 1.0
//! N = 1.0            # optional
//!
//! [levels]
//! eps_a = 11.0
//! eps_b = 1.0
//! eps_c = 0.0
//!
//! [cavity]           # optional
//! A = 1.0
//! B = 10.0
//! C = 0.5
//! temperature = 300.0
//! n_bar_l = 1.0      # optional, defaults to the thermal value at eps_ab
//! n_max = 1024       # optional
//!
//! [solver]           # optional
//! tol = 1e-12
//! max_passes = 10000
//!
//! [sweep]            # optional, at most two axes
//! T3 = { min = 0.01, max = 1.0, steps = 50 }
//!
//! [output]           # optional
//! dir = "out"
//! format = "json"
//! points_per_segment = 32
//! ```

use std::fmt;
use std::path::PathBuf;

use quantum_otto::{Compression, GasSpec, LaserGainParams, LevelSystem, DEFAULT_N_MAX};
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_PASSES: usize = 10_000;
pub const DEFAULT_POINTS_PER_SEGMENT: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasConfig {
    pub t1: f64,
    pub t3: f64,
    pub compression: Compression<f64>,
    pub cv: f64,
    pub n: f64,
}

impl GasConfig {
    pub fn spec(&self) -> quantum_otto::Result<GasSpec<f64>> {
        GasSpec::new(self.t1, self.t3, self.compression, self.cv, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelsConfig {
    pub eps_a: f64,
    pub eps_b: f64,
    pub eps_c: f64,
}

impl LevelsConfig {
    pub fn levels(&self) -> quantum_otto::Result<LevelSystem<f64>> {
        LevelSystem::new(self.eps_a, self.eps_b, self.eps_c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    pub gain: f64,
    pub saturation: f64,
    pub loss: f64,
    /// Temperature of both cavity fields.
    pub temperature: f64,
    pub n_bar_l: Option<f64>,
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_passes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_passes: DEFAULT_MAX_PASSES,
        }
    }
}

/// Parameters a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepParam {
    T1,
    T3,
    R,
    EpsA,
    EpsB,
    EpsC,
    Cv,
    N,
}

impl SweepParam {
    pub const ALL: [SweepParam; 8] = [
        SweepParam::T1,
        SweepParam::T3,
        SweepParam::R,
        SweepParam::EpsA,
        SweepParam::EpsB,
        SweepParam::EpsC,
        SweepParam::Cv,
        SweepParam::N,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::T1 => "T1",
            SweepParam::T3 => "T3",
            SweepParam::R => "R",
            SweepParam::EpsA => "eps_a",
            SweepParam::EpsB => "eps_b",
            SweepParam::EpsC => "eps_c",
            SweepParam::Cv => "Cv",
            SweepParam::N => "N",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepAxis {
    /// Inclusive, evenly spaced grid; the endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.min],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.max
                    } else {
                        self.min + (self.max - self.min) * (i as f64) / ((n - 1) as f64)
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub points_per_segment: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: None,
            format: None,
            points_per_segment: DEFAULT_POINTS_PER_SEGMENT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub gas: GasConfig,
    pub levels: LevelsConfig,
    pub cavity: Option<CavityConfig>,
    pub solver: SolverConfig,
    pub sweep: Vec<SweepAxis>,
    pub output: OutputConfig,
}

impl ScenarioConfig {
    /// Copy of the scenario with one parameter replaced. Setting `R` replaces
    /// a volume-based compression.
    pub fn with_param(&self, param: SweepParam, value: f64) -> Self {
        let mut cfg = self.clone();
        match param {
            SweepParam::T1 => cfg.gas.t1 = value,
            SweepParam::T3 => cfg.gas.t3 = value,
            SweepParam::R => cfg.gas.compression = Compression::Ratio(value),
            SweepParam::EpsA => cfg.levels.eps_a = value,
            SweepParam::EpsB => cfg.levels.eps_b = value,
            SweepParam::EpsC => cfg.levels.eps_c = value,
            SweepParam::Cv => cfg.gas.cv = value,
            SweepParam::N => cfg.gas.n = value,
        }
        cfg
    }

    /// Canonical TOML rendering; `parse_config` reads it back unchanged.
    pub fn to_toml_string(&self) -> String {
        let mut root = Table::new();

        let mut gas = Table::new();
        gas.insert("T1".into(), self.gas.t1.into());
        gas.insert("T3".into(), self.gas.t3.into());
        match self.gas.compression {
            Compression::Ratio(r) => {
                gas.insert("R".into(), r.into());
            }
            Compression::Volumes { v1, v2, gamma } => {
                gas.insert("V1".into(), v1.into());
                gas.insert("V2".into(), v2.into());
                gas.insert("gamma".into(), gamma.into());
            }
        }
        gas.insert("Cv".into(), self.gas.cv.into());
        gas.insert("N".into(), self.gas.n.into());
        root.insert("gas".into(), gas.into());

        let mut levels = Table::new();
        levels.insert("eps_a".into(), self.levels.eps_a.into());
        levels.insert("eps_b".into(), self.levels.eps_b.into());
        levels.insert("eps_c".into(), self.levels.eps_c.into());
        root.insert("levels".into(), levels.into());

        if let Some(c) = &self.cavity {
            let mut cav = Table::new();
            cav.insert("A".into(), c.gain.into());
            cav.insert("B".into(), c.saturation.into());
            cav.insert("C".into(), c.loss.into());
            cav.insert("temperature".into(), c.temperature.into());
            if let Some(nb) = c.n_bar_l {
                cav.insert("n_bar_l".into(), nb.into());
            }
            cav.insert("n_max".into(), int(c.n_max));
            root.insert("cavity".into(), cav.into());
        }

        let mut solver = Table::new();
        solver.insert("tol".into(), self.solver.tol.into());
        solver.insert("max_passes".into(), int(self.solver.max_passes));
        root.insert("solver".into(), solver.into());

        if !self.sweep.is_empty() {
            let mut sweep = Table::new();
            for axis in &self.sweep {
                let mut t = Table::new();
                t.insert("min".into(), axis.min.into());
                t.insert("max".into(), axis.max.into());
                t.insert("steps".into(), int(axis.steps));
                sweep.insert(axis.param.name().into(), t.into());
            }
            root.insert("sweep".into(), sweep.into());
        }

        let mut output = Table::new();
        if let Some(dir) = &self.output.dir {
            output.insert("dir".into(), dir.display().to_string().into());
        }
        if let Some(fmt) = self.output.format {
            output.insert("format".into(), fmt.name().into());
        }
        output.insert(
            "points_per_segment".into(),
            int(self.output.points_per_segment),
        );
        root.insert("output".into(), output.into());

        toml::to_string(&root).expect("config tables serialize")
    }
}

fn int(n: usize) -> Value {
    Value::Integer(i64::try_from(n).unwrap_or(i64::MAX))
}

/// One configuration problem, tied to the key it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub key: String,
    pub reason: String,
}

/// Every problem found in a configuration document.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError {
    pub problems: Vec<Problem>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration ({} problem", self.problems.len())?;
        if self.problems.len() != 1 {
            f.write_str("s")?;
        }
        f.write_str(")")?;
        for p in &self.problems {
            write!(f, "\n  {}: {}", p.key, p.reason)?;
        }
        Ok(())
    }
}

const SECTIONS: [&str; 6] = ["gas", "levels", "cavity", "solver", "sweep", "output"];
const GAS_KEYS: [&str; 8] = ["T1", "T3", "R", "V1", "V2", "gamma", "Cv", "N"];
const LEVEL_KEYS: [&str; 3] = ["eps_a", "eps_b", "eps_c"];
const CAVITY_KEYS: [&str; 6] = ["A", "B", "C", "temperature", "n_bar_l", "n_max"];
const SOLVER_KEYS: [&str; 2] = ["tol", "max_passes"];
const AXIS_KEYS: [&str; 3] = ["min", "max", "steps"];
const OUTPUT_KEYS: [&str; 3] = ["dir", "format", "points_per_segment"];

#[derive(Default)]
struct Problems(Vec<Problem>);

impl Problems {
    fn push(&mut self, key: impl Into<String>, reason: impl Into<String>) {
        self.0.push(Problem {
            key: key.into(),
            reason: reason.into(),
        });
    }

    fn section<'a>(&mut self, root: &'a Table, name: &str) -> Option<&'a Table> {
        match root.get(name) {
            None => None,
            Some(Value::Table(t)) => Some(t),
            Some(_) => {
                self.push(name, "expected a section");
                None
            }
        }
    }

    fn unknown_keys(&mut self, table: &Table, section: &str, allowed: &[&str]) {
        for key in table.keys() {
            if !allowed.contains(&key.as_str()) {
                self.push(format!("{section}.{key}"), "unknown key");
            }
        }
    }

    fn number(&mut self, table: &Table, section: &str, key: &str, required: bool) -> Option<f64> {
        let path = format!("{section}.{key}");
        match table.get(key) {
            None => {
                if required {
                    self.push(path, "missing required key");
                }
                None
            }
            Some(Value::Float(x)) if x.is_finite() => Some(*x),
            Some(Value::Float(_)) => {
                self.push(path, "must be finite");
                None
            }
            Some(Value::Integer(i)) => Some(*i as f64),
            Some(_) => {
                self.push(path, "expected a number");
                None
            }
        }
    }

    fn count(&mut self, table: &Table, section: &str, key: &str, min: usize) -> Option<usize> {
        let path = format!("{section}.{key}");
        match table.get(key)? {
            Value::Integer(i) if *i >= min as i64 => Some(*i as usize),
            Value::Integer(_) => {
                self.push(path, format!("must be an integer >= {min}"));
                None
            }
            _ => {
                self.push(path, "expected an integer");
                None
            }
        }
    }

    fn positive(&mut self, path: &str, value: Option<f64>) {
        if let Some(v) = value {
            if v <= 0.0 {
                self.push(path, format!("must be positive, got {v}"));
            }
        }
    }
}

/// Parses and validates a configuration document, reporting every problem found.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let root: Table = toml::from_str(text).map_err(|e| ConfigError {
        problems: vec![Problem {
            key: "<document>".into(),
            reason: e.message().to_string(),
        }],
    })?;
    let mut pr = Problems::default();
    for key in root.keys() {
        if !SECTIONS.contains(&key.as_str()) {
            pr.push(key.clone(), "unknown section");
        }
    }

    let gas = parse_gas(&mut pr, &root);
    let levels = parse_levels(&mut pr, &root);
    let cavity = parse_cavity(&mut pr, &root);
    let solver = parse_solver(&mut pr, &root);
    let sweep = parse_sweep(&mut pr, &root);
    let output = parse_output(&mut pr, &root);

    if let Some(gas) = &gas {
        if let Err(e) = gas.spec() {
            pr.push("gas", e.to_string());
        }
    }
    if let Some(levels) = &levels {
        if let Err(e) = levels.levels() {
            pr.push("levels", e.to_string());
        }
    }

    match (gas, levels) {
        (Some(gas), Some(levels)) if pr.0.is_empty() => Ok(ScenarioConfig {
            gas,
            levels,
            cavity,
            solver,
            sweep,
            output,
        }),
        _ => Err(ConfigError { problems: pr.0 }),
    }
}

fn parse_gas(pr: &mut Problems, root: &Table) -> Option<GasConfig> {
    let Some(t) = pr.section(root, "gas") else {
        pr.push("gas", "missing required section");
        return None;
    };
    pr.unknown_keys(t, "gas", &GAS_KEYS);
    let t1 = pr.number(t, "gas", "T1", true);
    let t3 = pr.number(t, "gas", "T3", true);
    let cv = pr.number(t, "gas", "Cv", true);
    let n = pr.number(t, "gas", "N", false).or(Some(1.0));

    let has_volumes = ["V1", "V2", "gamma"].iter().any(|k| t.contains_key(*k));
    let compression = match (t.contains_key("R"), has_volumes) {
        (true, true) => {
            pr.push("gas.R", "give either R or V1/V2/gamma, not both");
            None
        }
        (true, false) => pr.number(t, "gas", "R", true).map(Compression::Ratio),
        (false, true) => {
            let v1 = pr.number(t, "gas", "V1", true);
            let v2 = pr.number(t, "gas", "V2", true);
            let gamma = pr.number(t, "gas", "gamma", true);
            match (v1, v2, gamma) {
                (Some(v1), Some(v2), Some(gamma)) => Some(Compression::Volumes { v1, v2, gamma }),
                _ => None,
            }
        }
        (false, false) => {
            pr.push("gas.R", "missing required key (or V1/V2/gamma)");
            None
        }
    };
    Some(GasConfig {
        t1: t1?,
        t3: t3?,
        compression: compression?,
        cv: cv?,
        n: n?,
    })
}

fn parse_levels(pr: &mut Problems, root: &Table) -> Option<LevelsConfig> {
    let Some(t) = pr.section(root, "levels") else {
        pr.push("levels", "missing required section");
        return None;
    };
    pr.unknown_keys(t, "levels", &LEVEL_KEYS);
    let a = pr.number(t, "levels", "eps_a", true);
    let b = pr.number(t, "levels", "eps_b", true);
    let c = pr.number(t, "levels", "eps_c", true);
    Some(LevelsConfig {
        eps_a: a?,
        eps_b: b?,
        eps_c: c?,
    })
}

fn parse_cavity(pr: &mut Problems, root: &Table) -> Option<CavityConfig> {
    let t = pr.section(root, "cavity")?;
    pr.unknown_keys(t, "cavity", &CAVITY_KEYS);
    let gain = pr.number(t, "cavity", "A", true);
    let saturation = pr.number(t, "cavity", "B", true);
    let loss = pr.number(t, "cavity", "C", true);
    let temperature = pr.number(t, "cavity", "temperature", true);
    let n_bar_l = pr.number(t, "cavity", "n_bar_l", false);
    let n_max = pr.count(t, "cavity", "n_max", 1).unwrap_or(DEFAULT_N_MAX);
    pr.positive("cavity.temperature", temperature);
    if let (Some(a), Some(b), Some(c)) = (gain, saturation, loss) {
        if let Err(e) = LaserGainParams::new(a, b, c, n_bar_l.unwrap_or(0.0)) {
            pr.push("cavity", e.to_string());
        }
    }
    Some(CavityConfig {
        gain: gain?,
        saturation: saturation?,
        loss: loss?,
        temperature: temperature?,
        n_bar_l,
        n_max,
    })
}

fn parse_solver(pr: &mut Problems, root: &Table) -> SolverConfig {
    let mut solver = SolverConfig::default();
    let Some(t) = pr.section(root, "solver") else {
        return solver;
    };
    pr.unknown_keys(t, "solver", &SOLVER_KEYS);
    if let Some(tol) = pr.number(t, "solver", "tol", false) {
        pr.positive("solver.tol", Some(tol));
        solver.tol = tol;
    }
    if let Some(m) = pr.count(t, "solver", "max_passes", 1) {
        solver.max_passes = m;
    }
    solver
}

fn parse_sweep(pr: &mut Problems, root: &Table) -> Vec<SweepAxis> {
    let Some(t) = pr.section(root, "sweep") else {
        return Vec::new();
    };
    let mut axes = Vec::new();
    for (name, value) in t {
        let path = format!("sweep.{name}");
        let Some(param) = SweepParam::from_name(name) else {
            let allowed: Vec<_> = SweepParam::ALL.iter().map(|p| p.name()).collect();
            pr.push(
                path,
                format!(
                    "not a sweepable parameter (allowed: {})",
                    allowed.join(", ")
                ),
            );
            continue;
        };
        let Value::Table(axis) = value else {
            pr.push(path, "expected a table { min, max, steps }");
            continue;
        };
        pr.unknown_keys(axis, &path, &AXIS_KEYS);
        let min = pr.number(axis, &path, "min", true);
        let max = pr.number(axis, &path, "max", true);
        let steps = pr.count(axis, &path, "steps", 1);
        if !axis.contains_key("steps") {
            pr.push(format!("{path}.steps"), "missing required key");
        }
        if let (Some(min), Some(max), Some(steps)) = (min, max, steps) {
            axes.push(SweepAxis {
                param,
                min,
                max,
                steps,
            });
        }
    }
    axes
}

fn parse_output(pr: &mut Problems, root: &Table) -> OutputConfig {
    let mut out = OutputConfig::default();
    let Some(t) = pr.section(root, "output") else {
        return out;
    };
    pr.unknown_keys(t, "output", &OUTPUT_KEYS);
    match t.get("dir") {
        None => {}
        Some(Value::String(s)) => out.dir = Some(PathBuf::from(s)),
        Some(_) => pr.push("output.dir", "expected a string"),
    }
    match t.get("format") {
        None => {}
        Some(Value::String(s)) if s == "json" => out.format = Some(Format::Json),
        Some(Value::String(s)) if s == "csv" => out.format = Some(Format::Csv),
        Some(_) => pr.push("output.format", "expected \"json\" or \"csv\""),
    }
    if let Some(n) = pr.count(t, "output", "points_per_segment", 2) {
        out.points_per_segment = n;
    }
    out
}
