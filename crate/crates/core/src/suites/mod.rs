//! Registered verification suites.
//!
//! A suite is a named function run on `case_count` independent cases.  Each
//! case draws from its own ChaCha8 stream (the suite seed, stream = case
//! index), records its inputs and a list of threshold checks, and passes
//! when every check passes.  Cases run in parallel; the report lists them by
//! index, so identical configurations give identical reports apart from
//! `wall_time_ms`.

mod bodies;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Static description of a suite and its default configuration.
#[derive(Debug, Clone, Copy)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub default_n: usize,
    pub default_grid: usize,
    pub default_cases: usize,
    pub min_n: usize,
    body: fn(&mut Case) -> Result<()>,
}

pub fn registry() -> &'static [SuiteInfo] {
    bodies::REGISTRY
}

pub fn suite_info(id: &str) -> Result<&'static SuiteInfo> {
    registry()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite_id: String,
    pub seed: u64,
    /// Section size.
    pub n: usize,
    /// Sample grid for quadrature and curves.
    pub grid: usize,
    pub case_count: usize,
    /// Multiplies every upper-bound threshold.
    #[serde(default = "unit_scale")]
    pub tol_scale: f64,
    /// Per-check base thresholds overriding the suite's built-in values.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
}

fn unit_scale() -> f64 {
    1.0
}

impl SuiteConfig {
    /// The registered defaults for `suite_id`, with seed 0.
    pub fn new(suite_id: &str) -> Result<Self> {
        let info = suite_info(suite_id)?;
        Ok(Self {
            suite_id: info.id.to_string(),
            seed: 0,
            n: info.default_n,
            grid: info.default_grid,
            case_count: info.default_cases,
            tol_scale: 1.0,
            tolerances: BTreeMap::new(),
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_cases(mut self, cases: usize) -> Self {
        self.case_count = cases;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    fn validate(&self, info: &SuiteInfo) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.n < info.min_n || self.n > 1024 {
            return bad(format!("n = {} outside [{}, 1024] for {}", self.n, info.min_n, info.id));
        }
        if !self.grid.is_power_of_two() || !(256..=1 << 16).contains(&self.grid) {
            return bad(format!("grid = {} must be a power of two in [256, 65536]", self.grid));
        }
        if self.case_count == 0 || self.case_count > 100_000 {
            return bad(format!("case_count = {} outside [1, 100000]", self.case_count));
        }
        if !(self.tol_scale.is_finite() && self.tol_scale > 0.0) {
            return bad(format!("tol_scale = {} must be positive", self.tol_scale));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return bad(format!("tolerance `{k}` = {v} must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `value < threshold`.
    Below,
    /// `value > threshold`.
    Above,
    /// `value == threshold`.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub comparison: Comparison,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub index: usize,
    pub label: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite_id: String,
    pub config: SuiteConfig,
    pub cases: Vec<CaseRecord>,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the wall time zeroed, for byte comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        r.to_json()
    }

    /// Worst check per name: largest value for upper bounds, smallest for
    /// lower bounds, and the failure count for equalities.
    pub fn check_summary(&self) -> BTreeMap<String, (Comparison, f64, usize)> {
        let mut out: BTreeMap<String, (Comparison, f64, usize)> = BTreeMap::new();
        for c in self.cases.iter().flat_map(|c| &c.checks) {
            let e = out.entry(c.name.clone()).or_insert_with(|| {
                let init = match c.comparison {
                    Comparison::Below => f64::NEG_INFINITY,
                    Comparison::Above => f64::INFINITY,
                    Comparison::Equal => 0.0,
                };
                (c.comparison, init, 0)
            });
            match c.comparison {
                Comparison::Below => e.1 = e.1.max(c.value),
                Comparison::Above => e.1 = e.1.min(c.value),
                Comparison::Equal => e.1 += f64::from(u8::from(!c.passed)),
            }
            e.2 += 1;
        }
        out
    }
}

/// State handed to a suite body for one case.
pub struct Case<'a> {
    pub index: usize,
    pub rng: ChaCha8Rng,
    pub cfg: &'a SuiteConfig,
    label: String,
    inputs: BTreeMap<String, Value>,
    checks: Vec<Check>,
}

impl<'a> Case<'a> {
    fn new(cfg: &'a SuiteConfig, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        Self {
            index,
            rng,
            cfg,
            label: String::new(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn label(&mut self, s: impl Into<String>) {
        self.label = s.into();
    }

    pub fn input<T: Serialize>(&mut self, key: &str, value: T) {
        let v = serde_json::to_value(value).expect("inputs serialize");
        self.inputs.insert(key.to_string(), v);
    }

    fn base(&self, name: &str, default: f64) -> f64 {
        self.cfg.tolerances.get(name).copied().unwrap_or(default)
    }

    fn push(&mut self, name: &str, value: f64, comparison: Comparison, threshold: f64) {
        let passed = match comparison {
            Comparison::Below => value < threshold,
            Comparison::Above => value > threshold,
            Comparison::Equal => value == threshold,
        };
        self.checks.push(Check {
            name: name.to_string(),
            value,
            comparison,
            threshold,
            passed,
        });
    }

    /// Residual check, `value < threshold * tol_scale`.
    pub fn below(&mut self, name: &str, value: f64, threshold: f64) {
        let t = self.base(name, threshold) * self.cfg.tol_scale;
        self.push(name, value, Comparison::Below, t);
    }

    /// Separation check, `value > threshold`; not scaled.
    pub fn above(&mut self, name: &str, value: f64, threshold: f64) {
        let t = self.base(name, threshold);
        self.push(name, value, Comparison::Above, t);
    }

    pub fn equal(&mut self, name: &str, got: i64, want: i64) {
        self.push(name, got as f64, Comparison::Equal, want as f64);
    }

    pub fn holds(&mut self, name: &str, cond: bool) {
        self.equal(name, i64::from(cond), 1);
    }

    fn finish(self, outcome: Result<()>) -> CaseRecord {
        let error = outcome.err().map(|e| e.to_string());
        let passed = error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        CaseRecord {
            index: self.index,
            label: self.label,
            inputs: self.inputs,
            checks: self.checks,
            error,
            passed,
        }
    }
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let info = suite_info(&config.suite_id)?;
    config.validate(info)?;
    let start = Instant::now();
    let cases: Vec<CaseRecord> = (0..config.case_count)
        .into_par_iter()
        .map(|i| {
            let mut case = Case::new(config, i);
            let outcome = (info.body)(&mut case);
            case.finish(outcome)
        })
        .collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite_id: info.id.to_string(),
        config: config.clone(),
        failed: cases.len() - passed,
        passed,
        cases,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_and_bad_config_are_rejected() {
        assert!(matches!(SuiteConfig::new("nope"), Err(Error::UnknownSuite(_))));
        let mut cfg = SuiteConfig::new("lemma34-trace").unwrap();
        cfg.suite_id = "unknown".into();
        assert!(matches!(run_suite(&cfg), Err(Error::UnknownSuite(_))));
        let base = SuiteConfig::new("lemma34-trace").unwrap();
        for bad in [
            SuiteConfig { grid: 1000, ..base.clone() },
            SuiteConfig { case_count: 0, ..base.clone() },
            SuiteConfig { tol_scale: -1.0, ..base.clone() },
            SuiteConfig { n: 1, ..base.clone() },
        ] {
            assert!(matches!(run_suite(&bad), Err(Error::ConfigInvalid(_))), "{bad:?}");
        }
    }

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<_> = registry().iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
        assert_eq!(ids.len(), 11);
    }

    #[test]
    fn case_streams_differ_and_repeat() {
        use rand::Rng;
        let cfg = SuiteConfig::new("lemma34-trace").unwrap().with_seed(7);
        let draw = |i| Case::new(&cfg, i).rng.random::<u64>();
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }

    #[test]
    fn tolerance_table_and_scale_apply_to_upper_bounds() {
        let mut cfg = SuiteConfig::new("lemma34-trace").unwrap();
        cfg.tol_scale = 10.0;
        cfg.tolerances.insert("r".into(), 1e-3);
        let mut case = Case::new(&cfg, 0);
        case.below("r", 5e-3, 1e-9);
        case.above("s", 0.5, 1.0);
        let rec = case.finish(Ok(()));
        assert_eq!(rec.checks[0].threshold, 1e-2);
        assert!(rec.checks[0].passed);
        assert!(!rec.checks[1].passed);
        assert!(!rec.passed);
    }
}
