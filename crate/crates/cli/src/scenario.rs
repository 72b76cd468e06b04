//! TOML scenario files.

use std::collections::BTreeMap;

use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Flat,
    Torus,
    LiePoissonSo3,
    Heisenberg,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub model: ModelKind,
    pub dim: Option<usize>,
    /// Rows of a constant symplectic matrix, entries like `"1"` or `"-3/2"`.
    pub omega: Option<Vec<Vec<String>>>,
    /// Rows of a bivector with polynomial entries, for `custom`.
    pub poisson: Option<Vec<Vec<String>>>,
    pub truncation: Option<i32>,
    pub seed: Option<u64>,
    /// Named subexpressions, referenced as `{name}`.
    #[serde(default)]
    pub expressions: BTreeMap<String, String>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub kind: String,
    pub expr: Option<String>,
    pub exponent: Option<u32>,
    pub operator: Option<String>,
    pub n: Option<usize>,
    pub parity: Option<String>,
    /// Rows of 1-forms.
    pub connection: Option<Vec<Vec<String>>>,
    /// Expected text of the task value.
    pub expect: Option<String>,
    pub samples: Option<usize>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// Substitute `{name}` references, innermost definitions first.
    pub fn expand(&self, s: &str) -> Result<String, String> {
        let mut out = s.to_string();
        for _ in 0..=self.expressions.len() {
            if !out.contains('{') {
                return Ok(out);
            }
            for (k, v) in &self.expressions {
                out = out.replace(&format!("{{{k}}}"), &format!("({v})"));
            }
        }
        if let Some(i) = out.find('{') {
            let rest = &out[i..];
            let end = rest.find('}').map_or(rest.len(), |j| j + 1);
            return Err(format!("unresolved reference {}", &rest[..end]));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_scenario() {
        let s = Scenario::parse(
            r#"
            model = "flat"
            dim = 2
            [expressions]
            a = "e[1]"
            b = "{a} ^h e[2]"
            [[tasks]]
            kind = "product"
            expr = "{b} + h"
            "#,
        )
        .unwrap();
        assert_eq!(s.model, ModelKind::Flat);
        assert_eq!(s.tasks.len(), 1);
        assert_eq!(s.expand("{b} + h").unwrap(), "((e[1]) ^h e[2]) + h");
        assert!(s.expand("{zzz}").is_err());
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(Scenario::parse("model = \"flat\"\ncolour = 1").is_err());
        assert!(Scenario::parse("model = \"flat\"\n[[tasks]]\nkind = \"product\"\nexp = \"e[1]\"").is_err());
        assert!(Scenario::parse("model = \"sphere\"").is_err());
    }
}
