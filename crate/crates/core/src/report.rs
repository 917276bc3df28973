//! Machine-readable verification records.

use serde::{Deserialize, Serialize};

use crate::catalog::FanoBaseSpec;
use crate::exact::roots::RootEnclosure;
use crate::exact::to_fraction_string;
use crate::reeb::ReebSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// A measured value: a double, or an exact quantity as a fraction string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measured {
    Float(f64),
    Exact(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: Measured,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub label: String,
    /// `a_0` bracket endpoints as exact fractions.
    pub a0_enclosure: [String; 2],
    /// The rational `a` actually used, as an exact fraction.
    pub a_used: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: Status,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn new(provenance: Provenance) -> Self {
        Self { checks: Vec::new(), overall: Status::Pass, provenance }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, measured: Measured, tolerance: f64) {
        self.checks.push(Check { name: name.into(), status: Status::from_bool(ok), measured, tolerance });
        self.overall = Status::from_bool(self.checks.iter().all(|c| c.status.passed()));
    }

    pub fn passed(&self) -> bool {
        self.overall.passed()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.status.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `a_0` as written by `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReebParameterRecord {
    pub float: f64,
    /// Bisection bracket `[lo, hi]`.
    pub enclosure: [String; 2],
    /// Bracket from root isolation of `P(a)`.
    pub isolation_enclosure: [String; 2],
    pub regularity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

/// Serialised form of a [`ReebSolution`]; exact values are fraction strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub label: String,
    pub a0: ReebParameterRecord,
    /// Futaki obstruction, equal to `F(0)`.
    pub futaki: String,
    /// Coefficients of `P(a)` in increasing degree.
    #[serde(rename = "P_coeffs")]
    pub p_coeffs: Vec<String>,
    #[serde(rename = "F_residual")]
    pub f_residual: f64,
    pub tolerance: String,
    pub version: String,
}

fn pair(e: &RootEnclosure) -> [String; 2] {
    [to_fraction_string(&e.lo), to_fraction_string(&e.hi)]
}

impl SolveRecord {
    pub fn new(spec: &FanoBaseSpec, solution: &ReebSolution) -> Self {
        Self {
            label: spec.label().to_string(),
            a0: ReebParameterRecord {
                float: solution.a0_float,
                enclosure: pair(&solution.a0_enclosure),
                isolation_enclosure: pair(&solution.isolation_enclosure),
                regularity: solution.regularity.as_str().to_string(),
                exact: solution.exact_root().map(to_fraction_string),
            },
            futaki: to_fraction_string(&solution.futaki_at_zero),
            p_coeffs: solution.numerator.coeffs().iter().map(to_fraction_string).collect(),
            f_residual: solution.f_residual,
            tolerance: to_fraction_string(&solution.tolerance),
            version: VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialises")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::InvalidSpec(format!("bad solve record: {e}")))
    }
}
