//! Serializable run reports and their text rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use qdr_core::form::Form;
use qdr_core::{Blade, Laurent, QForm, Rational, Ring};
use serde::{Deserialize, Serialize};

use crate::expr::Coefficient;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    /// `"1"` or `"e1^e3"`; `"w^j"` for `CP^n` ring elements.
    pub basis: String,
    /// `(power of h, coefficient)` pairs.
    pub coeffs: Vec<(i64, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Value {
    Form { text: String, terms: Vec<TermEntry> },
    Scalar { text: String },
    Hpoly { text: String, coeffs: Vec<(i64, String)> },
    Text { text: String },
    Ints { degrees: Vec<i64>, values: Vec<usize> },
}

impl Value {
    pub fn form<C: Coefficient>(f: &Form<Laurent<C>>) -> Self {
        let terms = f
            .terms()
            .map(|(b, l)| TermEntry { basis: b.to_string(), coeffs: l.terms().map(|(e, c)| (e, c.exact_text())).collect() })
            .collect();
        Value::Form { text: f.to_string(), terms }
    }

    pub fn hpoly<C: Coefficient>(l: &Laurent<C>) -> Self {
        Value::Hpoly { text: l.to_string(), coeffs: l.terms().map(|(e, c)| (e, c.exact_text())).collect() }
    }

    pub fn text(&self) -> String {
        match self {
            Value::Form { text, .. } | Value::Scalar { text } | Value::Hpoly { text, .. } | Value::Text { text } => text.clone(),
            Value::Ints { degrees, values } => {
                degrees.iter().zip(values).map(|(d, v)| format!("{d}:{v}")).collect::<Vec<_>>().join(" ")
            }
        }
    }

    /// Rebuild a form whose coefficients are rational constants.
    pub fn decode_rational_form(&self, dim: usize) -> Result<QForm, String> {
        let Value::Form { terms, .. } = self else {
            return Err("not a form".into());
        };
        let mut out = QForm::zero(dim);
        for t in terms {
            let blade = parse_blade(&t.basis, dim)?;
            let mut l = Laurent::zero();
            for (e, c) in &t.coeffs {
                let q = Rational::from_str(c).map_err(|e| format!("coefficient {c:?}: {e}"))?;
                l.add_term(*e, &q);
            }
            out.add_term(blade, &l);
        }
        Ok(out)
    }
}

fn parse_blade(s: &str, dim: usize) -> Result<Blade, String> {
    if s == "1" {
        return Ok(Blade::ONE);
    }
    let ix = s
        .split('^')
        .map(|p| {
            p.strip_prefix('e')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=dim).contains(&n))
                .map(|n| n - 1)
                .ok_or_else(|| format!("bad basis element {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Blade::from_sorted(&ix).ok_or_else(|| format!("basis indices not increasing in {s:?}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub kind: String,
    pub values: Vec<NamedValue>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl TaskReport {
    pub fn new(index: usize, kind: &str) -> Self {
        TaskReport { index, kind: kind.into(), values: Vec::new(), checks: Vec::new(), passed: true }
    }
    pub fn value(&mut self, name: impl Into<String>, value: Value) {
        self.values.push(NamedValue { name: name.into(), value });
    }
    pub fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check { label: label.into(), passed, detail: detail.into() });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tasks: usize,
    pub checks: usize,
    pub failed: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub dim: usize,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
    /// Normalization constants measured at run time.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ledger: Vec<LedgerEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(model: &str, dim: usize, seed: u64, tasks: Vec<TaskReport>, ledger: Vec<LedgerEntry>) -> Self {
        let checks = tasks.iter().map(|t| t.checks.len()).sum();
        let failed = tasks.iter().flat_map(|t| &t.checks).filter(|c| !c.passed).count();
        let summary = Summary { tasks: tasks.len(), checks, failed, passed: failed == 0 };
        Report { model: model.into(), dim, seed, tasks, ledger, summary }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.dim == 0 {
            let _ = writeln!(s, "{} (seed {})", self.model, self.seed);
        } else {
            let _ = writeln!(s, "model {} (dim {}, seed {})", self.model, self.dim, self.seed);
        }
        for t in &self.tasks {
            let _ = writeln!(s, "\n[{}] {}", t.index + 1, t.kind);
            let nw = t.values.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &t.values {
                let text = v.value.text();
                let mut lines = text.lines();
                let _ = writeln!(s, "  {:<nw$} = {}", v.name, lines.next().unwrap_or(""));
                for l in lines {
                    let _ = writeln!(s, "  {:<nw$}   {l}", "");
                }
            }
            let lw = t.checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
            for c in &t.checks {
                let tag = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(s, "  {tag}  {:<lw$}  {}", c.label, c.detail);
            }
        }
        if !self.ledger.is_empty() {
            let _ = writeln!(s, "\nledger");
            let kw = self.ledger.iter().map(|e| e.key.len()).max().unwrap_or(0);
            for e in &self.ledger {
                let _ = writeln!(s, "  {:<kw$} = {}", e.key, e.value);
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "\nsummary: {} tasks, {} checks, {} failed: {}",
            m.tasks,
            m.checks,
            m.failed,
            if m.passed { "PASS" } else { "FAIL" }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdr_core::poisson::fixtures;
    use qdr_core::quantum::quantum_wedge;

    #[test]
    fn json_round_trip_with_rational_form() {
        let w = fixtures::standard_bivector(2);
        let a = QForm::basis(4, 0).add(&QForm::scalar(4, Laurent::monomial(-1, Rational::new(3, 2).unwrap())));
        let b = QForm::basis(4, 1).wedge(&QForm::basis(4, 3));
        let f = quantum_wedge(&a, &b, &w).unwrap();
        let mut t = TaskReport::new(0, "product");
        t.value("result", Value::form(&f));
        t.check("something", true, "");
        let r = Report::new("flat", 4, 1, vec![t], vec![LedgerEntry { key: "k".into(), value: "v".into() }]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.tasks[0].values[0].value.decode_rational_form(4).unwrap(), f);
        assert!(r.to_text().ends_with("summary: 1 tasks, 1 checks, 0 failed: PASS\n"));
    }

    #[test]
    fn blade_parsing() {
        assert_eq!(parse_blade("1", 2), Ok(Blade::ONE));
        assert_eq!(parse_blade("e1^e2", 2), Ok(Blade::from_sorted(&[0, 1]).unwrap()));
        assert!(parse_blade("e2^e1", 2).is_err());
        assert!(parse_blade("e3", 2).is_err());
        assert!(Value::Text { text: "x".into() }.decode_rational_form(2).is_err());
    }
}
