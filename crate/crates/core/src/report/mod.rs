//! Experiment registry and canonical reports: sorted-key JSON, exact values as
//! strings, a SHA-256 fingerprint over everything but the engine version.

mod config;
mod experiments;
pub mod golden;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use config::ExperimentConfig;
pub use experiments::{run_experiment, EXPERIMENTS};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BTreeMap<String, String>>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::from_bool(ok),
            values: BTreeMap::new(),
            certificate: None,
        }
    }

    pub fn value(mut self, key: &str, v: impl ToString) -> Self {
        self.values.insert(key.into(), v.to_string());
        self
    }

    pub fn with_certificate(mut self, cert: BTreeMap<String, String>) -> Self {
        self.certificate = Some(cert);
        self
    }

    /// Runs `f`; an error becomes an `error` record carrying the message.
    pub fn catch(name: impl Into<String>, f: impl FnOnce(String) -> Result<CheckRecord>) -> Self {
        let name = name.into();
        match f(name.clone()) {
            Ok(rec) => rec,
            Err(e) => CheckRecord {
                name,
                status: Status::Error,
                values: BTreeMap::from([("error".to_string(), e.to_string())]),
                certificate: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    pub engine_version: String,
    pub fingerprint: String,
}

#[derive(Serialize)]
struct Fingerprinted<'a> {
    experiment: &'a str,
    config: &'a serde_json::Value,
    checks: &'a [CheckRecord],
}

fn canonical<T: Serialize>(v: &T) -> String {
    // serde_json::Value keeps object keys sorted
    serde_json::to_value(v)
        .and_then(|v| serde_json::to_string(&v))
        .expect("report values serialize")
}

/// SHA-256 of the canonical serialization of id, config and checks.
pub fn fingerprint(experiment: &str, config: &serde_json::Value, checks: &[CheckRecord]) -> String {
    let body = canonical(&Fingerprinted {
        experiment,
        config,
        checks,
    });
    hex::encode(Sha256::digest(body.as_bytes()))
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: serde_json::Value, checks: Vec<CheckRecord>) -> Self {
        let fingerprint = fingerprint(experiment, &config, &checks);
        ExperimentReport {
            experiment: experiment.into(),
            config,
            checks,
            engine_version: ENGINE_VERSION.into(),
            fingerprint,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Recomputes the fingerprint from the current contents.
    pub fn fingerprint_is_current(&self) -> bool {
        fingerprint(&self.experiment, &self.config, &self.checks) == self.fingerprint
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment {} (engine {})", self.experiment, self.engine_version);
        let _ = writeln!(out, "config {}", canonical(&self.config));
        for c in &self.checks {
            let _ = writeln!(out, "{:<5} {}", c.status.label(), c.name);
            for (k, v) in &c.values {
                let _ = writeln!(out, "      {k} = {v}");
            }
            if let Some(cert) = &c.certificate {
                let _ = writeln!(out, "      certificate:");
                for (k, v) in cert {
                    let _ = writeln!(out, "        {k} = {v}");
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        let _ = writeln!(out, "fingerprint {}", self.fingerprint);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// Check name, or `config` for the configuration echo.
    pub check: String,
    pub field: String,
    pub left: String,
    pub right: String,
}

fn opt(s: Option<&String>) -> String {
    s.cloned().unwrap_or_else(|| "<absent>".into())
}

fn diff_maps(
    out: &mut Vec<Discrepancy>,
    check: &str,
    prefix: &str,
    a: &BTreeMap<String, String>,
    b: &BTreeMap<String, String>,
) {
    let keys: std::collections::BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    for k in keys {
        if a.get(k) != b.get(k) {
            out.push(Discrepancy {
                check: check.into(),
                field: format!("{prefix}{k}"),
                left: opt(a.get(k)),
                right: opt(b.get(k)),
            });
        }
    }
}

/// Structural difference over config and check records. The engine version
/// is ignored; the result is empty iff the fingerprints agree.
pub fn diff_reports(a: &ExperimentReport, b: &ExperimentReport) -> Result<Vec<Discrepancy>> {
    if a.experiment != b.experiment {
        return Err(Error::MismatchedExperiment(a.experiment.clone(), b.experiment.clone()));
    }
    let mut out = Vec::new();
    if a.config != b.config {
        out.push(Discrepancy {
            check: "config".into(),
            field: "config".into(),
            left: canonical(&a.config),
            right: canonical(&b.config),
        });
    }
    let names: Vec<&String> = {
        let mut seen = std::collections::BTreeSet::new();
        a.checks
            .iter()
            .chain(&b.checks)
            .map(|c| &c.name)
            .filter(|n| seen.insert(*n))
            .collect()
    };
    for name in names {
        match (a.check(name), b.check(name)) {
            (Some(x), Some(y)) => {
                if x.status != y.status {
                    out.push(Discrepancy {
                        check: name.clone(),
                        field: "status".into(),
                        left: x.status.label().into(),
                        right: y.status.label().into(),
                    });
                }
                diff_maps(&mut out, name, "values.", &x.values, &y.values);
                let empty = BTreeMap::new();
                if x.certificate.is_some() != y.certificate.is_some() {
                    out.push(Discrepancy {
                        check: name.clone(),
                        field: "certificate".into(),
                        left: if x.certificate.is_some() { "present" } else { "<absent>" }.into(),
                        right: if y.certificate.is_some() { "present" } else { "<absent>" }.into(),
                    });
                } else {
                    diff_maps(
                        &mut out,
                        name,
                        "certificate.",
                        x.certificate.as_ref().unwrap_or(&empty),
                        y.certificate.as_ref().unwrap_or(&empty),
                    );
                }
            }
            (x, y) => out.push(Discrepancy {
                check: name.clone(),
                field: "presence".into(),
                left: if x.is_some() { "present" } else { "<absent>" }.into(),
                right: if y.is_some() { "present" } else { "<absent>" }.into(),
            }),
        }
    }
    let a_order: Vec<&String> = a.checks.iter().map(|c| &c.name).collect();
    let b_order: Vec<&String> = b.checks.iter().map(|c| &c.name).collect();
    if out.is_empty() && a_order != b_order {
        out.push(Discrepancy {
            check: "checks".into(),
            field: "order".into(),
            left: format!("{a_order:?}"),
            right: format!("{b_order:?}"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let checks = vec![
            CheckRecord::new("a", true).value("valuation", "1/3"),
            CheckRecord::new("b", false).value("x", "2"),
        ];
        ExperimentReport::new("demo", serde_json::json!({"k": 1}), checks)
    }

    #[test]
    fn self_diff_is_empty() {
        let r = sample();
        assert!(diff_reports(&r, &r).unwrap().is_empty());
        assert!(r.fingerprint_is_current());
        assert!(!r.passed());
    }

    #[test]
    fn altered_value_is_named() {
        let r = sample();
        let mut s = r.clone();
        s.checks[0].values.insert("valuation".into(), "1/9".into());
        let d = diff_reports(&r, &s).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].check, "a");
        assert_eq!(d[0].field, "values.valuation");
    }

    #[test]
    fn version_is_outside_fingerprint() {
        let r = sample();
        let mut s = r.clone();
        s.engine_version = "9.9.9".into();
        s.fingerprint = fingerprint(&s.experiment, &s.config, &s.checks);
        assert_eq!(r.fingerprint, s.fingerprint);
        assert!(diff_reports(&r, &s).unwrap().is_empty());
    }

    #[test]
    fn mismatched_ids() {
        let r = sample();
        let mut s = r.clone();
        s.experiment = "other".into();
        assert!(matches!(diff_reports(&r, &s), Err(Error::MismatchedExperiment(..))));
    }

    #[test]
    fn json_round_trip_is_stable() {
        let r = sample();
        let back = ExperimentReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), r.to_json());
        assert!(r.to_json().find("\"checks\"") < r.to_json().find("\"config\""));
    }
}
