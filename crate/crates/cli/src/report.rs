use std::collections::BTreeMap;
use std::fmt::Write as _;

use fur_porac::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Analytic,
    Simulated,
    Oracle,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Self::Analytic => "analytic",
            Self::Simulated => "simulated",
            Self::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: f64,
    pub provenance: Provenance,
    /// Exact rational as `"p/q"`, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<ResultEntry>,
    pub pass: bool,
    pub tolerance: f64,
    /// Free-text remarks such as obliviousness witnesses.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Rounds to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

impl RunReport {
    pub fn new(command: &str, tolerance: f64) -> Self {
        Self {
            command: command.to_owned(),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            pass: true,
            tolerance,
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn push(&mut self, name: &str, value: f64, provenance: Provenance) -> &mut Self {
        self.results.push(ResultEntry {
            name: name.to_owned(),
            value: round12(value),
            provenance,
            exact: None,
        });
        self
    }

    pub fn push_exact(
        &mut self,
        name: &str,
        value: Ratio<u64>,
        provenance: Provenance,
    ) -> &mut Self {
        self.results.push(ResultEntry {
            name: name.to_owned(),
            value: round12(*value.numer() as f64 / *value.denom() as f64),
            provenance,
            exact: Some(format!("{}/{}", value.numer(), value.denom())),
        });
        self
    }

    /// Folds one asserted comparison into `pass`.
    pub fn require(&mut self, ok: bool) -> &mut Self {
        self.pass &= ok;
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.results
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per result: `name,value,provenance,exact`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,provenance,exact\n");
        for r in &self.results {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.name,
                r.value,
                r.provenance.as_str(),
                r.exact.as_deref().unwrap_or("")
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = self.command.clone();
        for (k, v) in &self.parameters {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        let width = self
            .results
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        for r in &self.results {
            let mut line = format!(
                "  {:<width$}  {:<20}  {:<9}",
                r.name,
                r.value,
                r.provenance.as_str()
            );
            if let Some(e) = &r.exact {
                let _ = write!(line, "  {e}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(
            out,
            "{} (tolerance {:e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.tolerance
        );
        out
    }
}
