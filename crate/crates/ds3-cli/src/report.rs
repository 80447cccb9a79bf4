//! Report schema: every scenario emits a JSON document with named matrices,
//! scalar metrics, and a list of checks carrying measured/expected values.

use std::collections::BTreeMap;

use ds3_core::ComplexMatrix;
use serde::Serialize;

/// One verifiable statement with its measured and expected values.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    /// |measured − expected| ≤ tolerance.
    pub fn close(name: &str, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: (measured - expected).abs() <= tolerance,
            measured,
            expected,
            tolerance,
        }
    }

    /// measured ≥ expected (threshold recorded in `expected`).
    pub fn at_least(name: &str, measured: f64, expected: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: measured >= expected,
            measured,
            expected,
            tolerance: 0.0,
        }
    }

    /// Boolean condition, recorded as 1/0.
    pub fn flag(name: &str, condition: bool) -> Self {
        Self {
            name: name.to_string(),
            passed: condition,
            measured: if condition { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub version: String,
    pub timestamp: u64,
}

/// A scenario's full output.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub schema: &'static str,
    pub scenario: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub matrices: BTreeMap<String, ComplexMatrix>,
    pub metrics: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl ScenarioReport {
    pub fn new(scenario: &str, seed: u64) -> Self {
        // SOURCE_DATE_EPOCH makes reports bit-reproducible when set.
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or_else(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            });
        Self {
            schema: "v1",
            scenario: scenario.to_string(),
            inputs: BTreeMap::new(),
            matrices: BTreeMap::new(),
            metrics: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            provenance: Provenance {
                seed,
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp,
            },
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable input"),
        );
    }

    pub fn matrix(&mut self, key: &str, m: &ComplexMatrix) {
        self.matrices.insert(key.to_string(), m.clone());
    }

    pub fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.to_string(), value);
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, text: &str) {
        self.notes.push(text.to_string());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failing(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect()
    }
}

/// Combined output of the `all` sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub scenarios: Vec<ScenarioReport>,
    pub passed: bool,
    pub failing_checks: Vec<String>,
}

impl SweepReport {
    pub fn new(scenarios: Vec<ScenarioReport>) -> Self {
        let failing_checks: Vec<String> = scenarios
            .iter()
            .flat_map(|s| {
                s.failing()
                    .into_iter()
                    .map(move |c| format!("{}: {}", s.scenario, c))
            })
            .collect();
        Self {
            schema: "v1",
            passed: failing_checks.is_empty(),
            scenarios,
            failing_checks,
        }
    }
}
