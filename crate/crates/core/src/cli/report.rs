use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub value: bool,
    /// For self-checking reports: the value the scenario requires.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.expected.is_none_or(|e| e == self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub body: Value,
}

/// Output of one command: rendered as text for people and as JSON for
/// tools.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: BTreeMap<String, String>,
    pub verdicts: Vec<Verdict>,
    pub tables: Vec<Table>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
    /// The mathematical answer is negative (no density, axiom failure, ...).
    pub negative: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn arg(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.args.insert(key.into(), value.into());
        self
    }

    pub fn verdict(&mut self, name: impl Into<String>, value: bool) -> &mut Self {
        self.verdicts.push(Verdict { name: name.into(), value, expected: None });
        self
    }

    pub fn expect(&mut self, name: impl Into<String>, value: bool, expected: bool) -> &mut Self {
        self.verdicts.push(Verdict { name: name.into(), value, expected: Some(expected) });
        self
    }

    pub fn table(&mut self, title: impl Into<String>, columns: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.tables.push(Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    pub fn certificate<T: Serialize>(&mut self, kind: impl Into<String>, body: &T) -> &mut Self {
        let body = serde_json::to_value(body).expect("certificate serializes");
        self.certificates.push(Certificate { kind: kind.into(), body });
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// All self-checks hold.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "== {}", self.command);
        for (k, v) in &self.args {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for row in &t.rows {
                for (i, cell) in row.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(cell.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                format!("  {}", padded.join("  ").trim_end())
            };
            let _ = writeln!(out, "{}", line(&t.columns));
            for row in &t.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
        }
        for v in &self.verdicts {
            let status = match v.expected {
                Some(_) if v.passed() => "ok  ",
                Some(_) => "FAIL",
                None => "    ",
            };
            let _ = writeln!(out, "{status} {}: {}", v.name, v.value);
        }
        for c in &self.certificates {
            let body = serde_json::to_string(&c.body).unwrap_or_default();
            let _ = writeln!(out, "\ncertificate {}: {body}", c.kind);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let mut r = Report::new("density");
        r.arg("nu", "nu").verdict("density exists", false).expect("checked", true, true);
        r.table("density", &["atom", "c"], vec![vec!["a".into(), "1/2".into()]]);
        r.certificate("failure", &serde_json::json!({"atom": "a", "target": "1"}));
        r.note("n");
        r.negative = true;
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(r.passed());
        assert!(r.to_text().contains("1/2"));
    }

    #[test]
    fn failed_expectation() {
        let mut r = Report::new("g");
        r.expect("x", false, true);
        assert!(!r.passed());
        assert!(r.to_text().contains("FAIL x"));
    }
}
