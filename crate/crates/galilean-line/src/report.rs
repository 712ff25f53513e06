//! Check reports and their canonical serialization.
//!
//! A report is a list of named checks, each with a residual, a tolerance and
//! a verdict. The canonical JSON form has sorted keys, rational values as
//! `"p/q"` strings and floats printed with 17 significant digits, so two runs
//! with the same configuration produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::scalar::{Field, Scalar};

/// How a residual is judged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// Pass when the residual is exactly zero (exact field) or at most the
    /// tolerance (float field).
    Vanishes(f64),
    /// Pass when the residual is strictly nonzero (exact) or above the
    /// tolerance (float).
    Nonvanishing(f64),
    /// Pass when the value lies in `[lo, hi]`.
    Within(f64, f64),
    /// Recorded for information; always passes.
    Report,
}

impl Criterion {
    fn to_json(self) -> Value {
        match self {
            Criterion::Vanishes(t) => json!({"kind": "vanishes", "tol": t}),
            Criterion::Nonvanishing(t) => json!({"kind": "nonvanishing", "tol": t}),
            Criterion::Within(lo, hi) => json!({"kind": "within", "lo": lo, "hi": hi}),
            Criterion::Report => json!({"kind": "report"}),
        }
    }
}

/// One check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    /// Descriptive tag of the relation being checked.
    pub relation: String,
    pub residual: Value,
    pub criterion: Criterion,
    pub pass: bool,
    /// Additional fields (evaluation point, step, order estimate, ...).
    pub extra: BTreeMap<String, Value>,
}

impl CheckRow {
    /// A row judged from a scalar residual in either field.
    pub fn scalar<S: Scalar>(name: impl Into<String>, relation: impl Into<String>, residual: &S, criterion: Criterion) -> Self {
        let exact = S::FIELD == Field::Exact;
        let r = residual.abs().to_f64();
        let pass = match criterion {
            Criterion::Vanishes(t) => {
                if exact {
                    residual.is_zero()
                } else {
                    r <= t
                }
            }
            Criterion::Nonvanishing(t) => {
                if exact {
                    !residual.is_zero()
                } else {
                    r > t
                }
            }
            Criterion::Within(lo, hi) => residual.to_f64() >= lo && residual.to_f64() <= hi,
            Criterion::Report => true,
        };
        CheckRow {
            name: name.into(),
            relation: relation.into(),
            residual: residual.to_json(),
            criterion,
            pass,
            extra: BTreeMap::new(),
        }
    }

    /// A row with a float residual.
    pub fn float(name: impl Into<String>, relation: impl Into<String>, residual: f64, criterion: Criterion) -> Self {
        CheckRow::scalar(name, relation, &residual, criterion)
    }

    /// A row that failed before producing a residual.
    pub fn error(name: impl Into<String>, relation: impl Into<String>, message: impl Into<String>) -> Self {
        let mut row = CheckRow {
            name: name.into(),
            relation: relation.into(),
            residual: Value::Null,
            criterion: Criterion::Report,
            pass: false,
            extra: BTreeMap::new(),
        };
        row.extra.insert("error".into(), Value::String(message.into()));
        row
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.into(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("relation".into(), json!(self.relation));
        m.insert("residual".into(), self.residual.clone());
        m.insert("criterion".into(), self.criterion.to_json());
        m.insert("pass".into(), json!(self.pass));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

/// A suite's results with run metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<CheckRow>,
    pub metadata: BTreeMap<String, Value>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport { suite: suite.into(), ..Default::default() }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.checks.push(row);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    /// True exactly when every row passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "pass": self.passed(),
            "checks": self.checks.iter().map(CheckRow::to_json).collect::<Vec<_>>(),
            "metadata": Value::Object(self.metadata.clone().into_iter().collect()),
        })
    }

    /// Canonical JSON text.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(&self.to_json())
    }

    /// CSV with one row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,name,relation,residual,criterion,pass\n");
        for c in &self.checks {
            let residual = match &c.residual {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => canonical_json(other),
            };
            let criterion = match c.criterion {
                Criterion::Vanishes(t) => format!("vanishes<={t:e}"),
                Criterion::Nonvanishing(t) => format!("nonvanishing>{t:e}"),
                Criterion::Within(lo, hi) => format!("within[{lo:e};{hi:e}]"),
                Criterion::Report => "report".into(),
            };
            let _ = writeln!(out, "{},{},{},{},{},{}", csv_field(&self.suite), csv_field(&c.name), csv_field(&c.relation), csv_field(&residual), criterion, c.pass);
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serializes with sorted keys, no whitespace and floats as `{:.16e}`.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                out.push_str(&n.to_string());
            } else {
                let x = n.as_f64().unwrap_or(f64::NAN);
                let _ = write!(out, "{x:.16e}");
            }
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn canonical_form_is_sorted_and_fixed_precision() {
        let v = json!({"b": 0.1, "a": [1, "x"], "c": {"z": null, "y": true}});
        assert_eq!(canonical_json(&v), r#"{"a":[1,"x"],"b":1.0000000000000001e-1,"c":{"y":true,"z":null}}"#);
    }

    #[test]
    fn verdicts_and_csv() {
        let mut r = CheckReport::new("demo");
        assert!(r.passed());
        assert!(canonical_json(&r.to_json()).contains(r#""checks":[]"#));
        r.push(CheckRow::scalar("exact", "zero", &q(0, 1), Criterion::Vanishes(0.0)));
        r.push(CheckRow::scalar("witness", "nonzero", &q(1, 3), Criterion::Nonvanishing(0.0)));
        r.push(CheckRow::float("float", "small", 1e-12, Criterion::Vanishes(1e-10)));
        assert!(r.passed());
        r.push(CheckRow::float("bad", "small", 1e-3, Criterion::Vanishes(1e-10)));
        assert!(!r.passed());
        assert_eq!(r.to_csv().lines().count(), r.checks.len() + 1);
        assert!(r.to_canonical_json().contains(r#""residual":"1/3""#));
    }
}
