use serde::Serialize;
use serde_json::{json, Map, Value};

use elliptica::dsl::{DslError, Model};
use elliptica::invariants::LedgerEntry;
use elliptica::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    ValidationFailed,
    NotElliptic,
    Mismatch,
    /// An exactness check or a ledger claim failed; never expected from a correct engine.
    InvariantBreach,
    IoError,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ValidationFailed | Status::NotElliptic | Status::Mismatch => 1,
            Status::IoError | Status::UsageError => 2,
            Status::InvariantBreach => 3,
        }
    }
}

/// Output of one command. JSON mode serializes exactly the five public
/// fields; text mode prints `text` to stdout and `diagnostics` to stderr.
#[derive(Debug, Serialize)]
pub struct Report {
    pub model: Value,
    pub bound: Option<u32>,
    pub tables: Map<String, Value>,
    pub ledger: Vec<LedgerEntry>,
    pub status: Status,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self {
            model: Value::Null,
            bound: None,
            tables: Map::new(),
            ledger: Vec::new(),
            status: Status::Ok,
            text: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn lines(&mut self, lines: impl IntoIterator<Item = String>) {
        self.text.extend(lines);
    }

    pub fn table(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report tables serialize");
        self.tables.insert(key.into(), value);
    }

    /// Records a failure; the first failure fixes the status.
    pub fn fail(&mut self, status: Status, detail: Value, message: impl Into<String>) {
        let message = message.into();
        if self.status == Status::Ok {
            self.status = status;
            let mut error = json!({ "message": message });
            if let (Value::Object(e), Value::Object(d)) = (&mut error, detail) {
                e.extend(d);
            }
            self.tables.insert("error".into(), error);
        }
        self.diagnostics.push(message);
    }

    pub fn fail_parse(&mut self, path: &str, err: &DslError) {
        let mut detail = json!({ "kind": err.kind(), "line": err.line() });
        if let DslError::Validation { report, .. } = err {
            detail["failures"] = serde_json::to_value(report).expect("validation report serializes")["failures"].take();
        }
        self.fail(Status::ValidationFailed, detail, format!("{path}:{}: {}: {err}", err.line(), err.kind()));
    }

    pub fn fail_core(&mut self, err: &Error) {
        let (status, detail) = match err {
            Error::Validation(report) => (
                Status::ValidationFailed,
                json!({ "kind": "validation", "failures": report.failures }),
            ),
            Error::NotEllipticWithinBound { bound, degree, what } => (
                Status::NotElliptic,
                json!({ "kind": "not-elliptic", "bound": bound, "degree": degree, "what": what }),
            ),
            Error::UnboundedGamma { bound, degree } => (
                Status::NotElliptic,
                json!({ "kind": "unbounded-gamma", "bound": bound, "degree": degree }),
            ),
            Error::Mismatch { check, degree, left, right } => (
                Status::Mismatch,
                json!({ "kind": "mismatch", "check": check, "degree": degree, "left": left, "right": right }),
            ),
            Error::Exactness(f) => (Status::InvariantBreach, json!({ "kind": "exactness", "failure": f })),
            other => (Status::InvariantBreach, json!({ "kind": "internal", "detail": other.to_string() })),
        };
        self.fail(status, detail, format!("error: {err}"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn model_info(model: &Model) -> Value {
    let generators: Vec<Value> = match model {
        Model::Sullivan(m) => m
            .generators()
            .iter()
            .zip(m.differential())
            .map(|(g, d)| json!({ "name": g.name, "degree": g.degree, "differential": d.display(m.generators()).to_string() }))
            .collect(),
        Model::Quillen(m) => m
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| json!({ "name": g.name, "degree": g.degree, "differential": m.display_differential(i) }))
            .collect(),
    };
    json!({ "name": model.name(), "kind": model.kind().as_str(), "generators": generators })
}

/// Numeric columns are right-aligned, everything else left-aligned.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    let numeric: Vec<bool> = (0..headers.len())
        .map(|k| rows.iter().all(|r| r.get(k).is_some_and(|c| c.parse::<i64>().is_ok())))
        .collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt_row = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .enumerate()
            .map(|(k, (c, &w))| {
                let pad = " ".repeat(w - c.chars().count());
                if numeric[k] && k > 0 {
                    format!("{pad}{c}")
                } else {
                    format!("{c}{pad}")
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = vec![fmt_row(&mut headers.iter().copied())];
    out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  ").trim_end().to_string());
    for row in rows {
        out.push(fmt_row(&mut row.iter().map(String::as_str)));
    }
    out
}
