//! Machine-readable reports. Field order is fixed by the struct
//! declarations and maps are ordered, so serialization is stable.

use std::collections::BTreeMap;

use ccr_hopf::algebra::Expr;
use ccr_hopf::hopf::{AxiomReport, Residual, TensorExpr};
use ccr_hopf::Scalar;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::CommandConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported quantity with no pass/fail verdict.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub name: String,
    pub status: Status,
    /// Absolute tolerance the floating values were judged against; `0` for
    /// exact checks.
    pub tolerance: Option<f64>,
    pub value: Value,
    pub notes: Vec<String>,
}

impl ResultEntry {
    pub fn check(name: impl Into<String>, ok: bool, tolerance: f64, value: Value) -> Self {
        ResultEntry {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            tolerance: Some(tolerance),
            value,
            notes: Vec::new(),
        }
    }

    pub fn info(name: impl Into<String>, tolerance: Option<f64>, value: Value) -> Self {
        ResultEntry {
            name: name.into(),
            status: Status::Info,
            tolerance,
            value,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub config: CommandConfig,
    pub results: Vec<ResultEntry>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, config: CommandConfig, results: Vec<ResultEntry>) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            info: count(Status::Info),
            ok: count(Status::Fail) == 0,
        };
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            config,
            results,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out.push_str(&format!("{tag} {}: {}\n", r.name, r.value));
            for n in &r.notes {
                out.push_str(&format!("     note: {n}\n"));
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} info\n",
            self.summary.passed, self.summary.failed, self.summary.info
        ));
        out
    }
}

/// `{re, im}` as rational strings when the coefficient is a constant,
/// plus its printed form.
pub fn scalar_value(c: &Scalar, numeric: Option<&BTreeMap<String, f64>>) -> Value {
    let mut v = serde_json::Map::new();
    v.insert("text".into(), json!(c.to_string()));
    if let Some(k) = c.as_constant() {
        v.insert("re".into(), json!(k.re.to_string()));
        v.insert("im".into(), json!(k.im.to_string()));
    }
    if let Some(assign) = numeric {
        if let Ok(z) = c.eval(assign) {
            v.insert("value".into(), json!({ "re": z.re, "im": z.im }));
        }
    }
    Value::Object(v)
}

pub fn expr_value(e: &Expr, numeric: Option<&BTreeMap<String, f64>>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            json!({
                "word": w.letters().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "coefficient": scalar_value(c, numeric),
            })
        })
        .collect();
    json!({ "text": e.to_string(), "terms": terms })
}

pub fn tensor_value(t: &TensorExpr) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(slots, c)| {
            json!({
                "slots": slots.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "coefficient": scalar_value(c, None),
            })
        })
        .collect();
    json!({ "text": t.to_string(), "terms": terms })
}

pub fn axiom_entry(r: &AxiomReport) -> ResultEntry {
    let counterexamples: Vec<Value> = r
        .counterexamples
        .iter()
        .map(|c| {
            let residual = match &c.residual {
                Residual::Scalar(s) => json!({ "scalar": scalar_value(s, None) }),
                Residual::Expr(e) => json!({ "expr": expr_value(e, None) }),
                Residual::Tensor(t) => json!({ "tensor": tensor_value(t) }),
            };
            json!({ "witness": c.witness, "map": c.map, "residual": residual })
        })
        .collect();
    let mut entry = ResultEntry::check(
        format!("{}/{:?}/{:?}", r.axiom, r.flavor, r.variant).to_lowercase(),
        r.passed(),
        0.0,
        json!({
            "axiom": r.axiom,
            "flavor": r.flavor,
            "variant": r.variant,
            "modes": r.modes,
            "degree": r.degree,
            "checked": r.checked,
            "counterexamples": counterexamples,
        }),
    );
    entry.notes = r.notes.clone();
    entry
}
