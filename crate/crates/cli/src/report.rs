//! Experiment reports: counts and exact-fraction ratios with decimal
//! renderings, serialized as JSON or flattened CSV. Serialized reports carry
//! no timing data, so a re-run with the same configuration is byte
//! identical; wall-clock timing goes to stderr.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
    pub approx: f64,
}

impl Fraction {
    pub fn from_ratio(r: &BigRational) -> Self {
        Fraction {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            approx: r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn from_counts(num: u64, den: u64) -> Self {
        Self::from_ratio(&BigRational::new(BigInt::from(num), BigInt::from(den.max(1))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StatReport {
    pub experiment: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub counts: BTreeMap<String, serde_json::Value>,
    pub ratios: BTreeMap<String, Fraction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_prime: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<serde_json::Value>,
}

impl StatReport {
    pub fn new(experiment: &str) -> Self {
        StatReport {
            experiment: experiment.to_string(),
            params: BTreeMap::new(),
            counts: BTreeMap::new(),
            ratios: BTreeMap::new(),
            per_prime: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).unwrap());
        self
    }

    pub fn count(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.counts
            .insert(key.to_string(), serde_json::to_value(value).unwrap());
        self
    }

    pub fn ratio(&mut self, key: &str, value: Fraction) -> &mut Self {
        self.ratios.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat `section,key,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,key,value\n");
        for (k, v) in &self.params {
            out.push_str(&format!("params,{},{}\n", k, csv_scalar(v)));
        }
        for (k, v) in &self.counts {
            out.push_str(&format!("counts,{},{}\n", k, csv_scalar(v)));
        }
        for (k, v) in &self.ratios {
            out.push_str(&format!("ratios,{},{}/{}\n", k, v.num, v.den));
        }
        for (i, row) in self.per_prime.iter().enumerate() {
            out.push_str(&format!("per_prime,{},{}\n", i, csv_scalar(row)));
        }
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("rows,{},{}\n", i, csv_scalar(row)));
        }
        out
    }
}

fn csv_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => format!("\"{}\"", s.replace('"', "\"\"")),
        other => {
            let s = other.to_string();
            if s.contains(',') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        }
    }
}
