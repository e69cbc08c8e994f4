use serde::{Deserialize, Serialize};

use crate::coeff::check_prime;
use crate::error::{Error, Result};

/// Parameters shared by all experiments; each experiment reads the fields it
/// needs and echoes the whole document in its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Highest tower level for identity checks and colon witnesses.
    pub max_level: u32,
    /// Highest level at which the full colon ideal is computed.
    pub full_colon_max: u32,
    /// Highest level for the z² ∉ (x, y) decision.
    pub properness_max: u32,
    /// Characteristics for the Frobenius / tight-closure matrix.
    pub primes: Vec<u64>,
    pub e_max: u32,
    pub deg_bound: u64,
    /// Levels n for membership of m(z²) in (2ⁿ, m(x), m(y)).
    pub isogeny_n: u32,
    pub padic_primes: Vec<u64>,
    pub precision: u32,
    /// Randomized instances per property (retraction pairs, p-adic inputs).
    pub trials: u32,
    pub seed: u64,
    /// Optional α for the p-adic experiment, in polynomial text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            max_level: 3,
            full_colon_max: 2,
            properness_max: 2,
            primes: vec![2, 5, 7, 13],
            e_max: 2,
            deg_bound: 3,
            isogeny_n: 2,
            padic_primes: vec![2, 5],
            precision: 4,
            trials: 20,
            seed: 0,
            alpha: None,
        }
    }
}

fn bad(field: &str, msg: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        msg: msg.into(),
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| bad("config", e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let c: Self = toml::from_str(text).map_err(|e| bad("config", e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=5).contains(&self.max_level) {
            return Err(bad("max_level", "must be between 1 and 5"));
        }
        if self.full_colon_max > 2 {
            return Err(bad("full_colon_max", "full colon ideals are computed up to level 2"));
        }
        if self.properness_max > 2 {
            return Err(bad("properness_max", "the z^2 membership decision runs up to level 2"));
        }
        if self.primes.is_empty() {
            return Err(bad("primes", "at least one prime is required"));
        }
        for &p in &self.primes {
            check_prime(p).map_err(|e| bad("primes", e.to_string()))?;
        }
        if !(1..=3).contains(&self.e_max) {
            return Err(bad("e_max", "must be between 1 and 3"));
        }
        if self.deg_bound > 6 {
            return Err(bad("deg_bound", "must be at most 6"));
        }
        if self.isogeny_n > 2 {
            return Err(bad("isogeny_n", "membership is checked for n <= 2"));
        }
        if self.padic_primes.is_empty() {
            return Err(bad("padic_primes", "at least one prime is required"));
        }
        for &p in &self.padic_primes {
            crate::coeff::PadicRing::new(p, self.precision)
                .map_err(|e| bad(if self.precision == 0 { "precision" } else { "padic_primes" }, e.to_string()))?;
        }
        if self.precision > 8 {
            return Err(bad("precision", "must be between 1 and 8"));
        }
        if !(1..=1000).contains(&self.trials) {
            return Err(bad("trials", "must be between 1 and 1000"));
        }
        Ok(())
    }

    /// The configuration as a sorted-key JSON value.
    pub fn echo(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentConfig::default().validate().unwrap();
        let c = ExperimentConfig::from_json(r#"{"max_level": 2}"#).unwrap();
        assert_eq!(c.max_level, 2);
        assert_eq!(c.e_max, 2);
    }

    #[test]
    fn field_level_errors() {
        let e = ExperimentConfig::from_json(r#"{"primes": [3]}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "primes"));
        let e = ExperimentConfig::from_json(r#"{"max_level": 0}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "max_level"));
        let e = ExperimentConfig::from_json(r#"{"bogus": 1}"#).unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "config"));
        let e = ExperimentConfig::from_toml("precision = 0").unwrap_err();
        assert!(matches!(e, Error::Config { ref field, .. } if field == "precision"));
    }
}
