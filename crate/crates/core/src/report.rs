//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::fppoly::Polynomial;

pub const REPORT_SCHEMA: u32 = 1;

/// Longest survivor or residue rendered in full.
pub const RENDER_TERM_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

/// A named sub-check. Checks with `required = false` are reported but do not
/// affect the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub name: String,
    pub verdict: Verdict,
    #[serde(default = "yes")]
    pub required: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survivor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<u32>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub schema: u32,
    pub check: String,
    pub params: Params,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub ms: u64,
}

impl LemmaReport {
    pub fn new(check: &str, params: Params) -> Self {
        LemmaReport {
            schema: REPORT_SCHEMA,
            check: check.to_string(),
            params,
            verdict: Verdict::Pass,
            evidence: Evidence::default(),
            ms: 0,
        }
    }

    /// Records a required sub-check and folds it into the verdict.
    pub fn check(&mut self, name: &str, verdict: Verdict, detail: impl Into<String>) -> &mut Self {
        self.verdict = self.verdict.combine(verdict);
        self.evidence.checks.push(SubCheck { name: name.to_string(), verdict, required: true, detail: detail.into() });
        self
    }

    pub fn check_bool(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> &mut Self {
        self.check(name, Verdict::from_bool(ok), detail)
    }

    /// Records a sub-check that does not influence the verdict.
    pub fn inform(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> &mut Self {
        self.evidence.checks.push(SubCheck {
            name: name.to_string(),
            verdict: Verdict::from_bool(ok),
            required: false,
            detail: detail.into(),
        });
        self
    }

    pub fn count(&mut self, key: &str, value: u64) -> &mut Self {
        self.evidence.counts.insert(key.to_string(), value);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.evidence.notes.push(text.into());
        self
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.ms = elapsed.as_millis() as u64;
        self
    }

    /// One-line summary for text output.
    pub fn summary_line(&self) -> String {
        let mut parts = Vec::new();
        let pr = &self.params;
        if let Some(s) = &pr.shape {
            parts.push(s.clone());
        }
        for (k, v) in [("m", pr.m), ("n", pr.n), ("t", pr.t)] {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        }
        if let Some(p) = pr.p {
            parts.push(format!("p={p}"));
        }
        if let Some(e) = pr.e {
            parts.push(format!("e={e}"));
        }
        if let Some(m) = &pr.method {
            parts.push(format!("method={m}"));
        }
        format!("{:<18} {:<40} {}", self.check, parts.join(" "), self.verdict)
    }
}

/// Renders `f`, eliding the tail past [`RENDER_TERM_LIMIT`] terms.
pub fn render_bounded(f: &Polynomial) -> String {
    if f.len() <= RENDER_TERM_LIMIT {
        return f.render();
    }
    let head = Polynomial::from_sorted(f.ring(), f.terms()[..RENDER_TERM_LIMIT].to_vec()).render();
    format!("{head} + ... ({} terms)", f.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_combination() {
        use Verdict::*;
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!(Pass.combine(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.combine(Fail), Fail);
    }

    #[test]
    fn json_shape() {
        let mut r = LemmaReport::new("lemma34", Params { n: Some(2), p: Some(3), ..Params::default() });
        r.check_bool("identity", true, "").count("terms", 1);
        r.inform("extra", false, "informational");
        let r = r.finish(Duration::from_millis(7));
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["params"]["n"], 2);
        assert!(v["params"].get("m").is_none());
        assert_eq!(v["evidence"]["counts"]["terms"], 1);
        assert_eq!(v["ms"], 7);
        let back: LemmaReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
