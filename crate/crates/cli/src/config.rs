use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Settings that determine a report. Worker count and output format are
/// execution details and are not echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(with = "exact_u64")]
    pub seed: u64,
    pub lambda: f64,
    pub tol_bracket: f64,
    pub tol_horiz: f64,
    pub margin: f64,
    pub samples: usize,
}

impl RunConfig {
    pub fn check(&self) -> Result<(), String> {
        for (name, v) in [
            ("tol-bracket", self.tol_bracket),
            ("tol-horiz", self.tol_horiz),
            ("margin", self.margin),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("--{name} must be positive, got {v}"));
            }
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(format!("--lambda must lie in (0, 1), got {}", self.lambda));
        }
        if self.samples == 0 {
            return Err("sample count must be at least 1".into());
        }
        Ok(())
    }
}

/// Seeds above 2^53 are written as strings so float-bound readers keep them exact.
mod exact_u64 {
    use super::*;

    const LIMIT: u64 = 1 << 53;

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        if *v <= LIMIT {
            s.serialize_u64(*v)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Num(u64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        match Either::deserialize(d)? {
            Either::Num(n) => Ok(n),
            Either::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
