//! Machine-diagnosable verification reports.
//!
//! Every check emits findings of the shape (check id, location, degree,
//! message). A report passes exactly when it contains no failure-class
//! findings; informational entries never affect the verdict. Findings are
//! sorted canonically before emission so repeated runs, and parallel
//! runs, produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// How much a finding matters for the verdict.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    /// A checked axiom or property failed.
    Error,
    /// A proved consequence failed: either the implementation or the
    /// input data is corrupt. Fails the verdict, flagged loudly.
    Alarm,
    /// Informational; never fails the verdict.
    Info,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Severity::Error => "FAIL",
            Severity::Alarm => "ALARM",
            Severity::Info => "info",
        };
        write!(f, "{s}")
    }
}

/// One diagnostic: which check, where, optionally in which degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    pub message: String,
    pub severity: Severity,
}

impl Finding {
    #[must_use]
    pub fn error(check: &str, location: &str, degree: Option<usize>, message: String) -> Self {
        Finding {
            check: check.to_string(),
            location: location.to_string(),
            degree,
            message,
            severity: Severity::Error,
        }
    }

    #[must_use]
    pub fn alarm(check: &str, location: &str, degree: Option<usize>, message: String) -> Self {
        Finding {
            severity: Severity::Alarm,
            ..Finding::error(check, location, degree, message)
        }
    }

    #[must_use]
    pub fn info(check: &str, location: &str, message: String) -> Self {
        Finding {
            check: check.to_string(),
            location: location.to_string(),
            degree: None,
            message,
            severity: Severity::Info,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.severity, self.check, self.location)?;
        if let Some(d) = self.degree {
            write!(f, " degree {d}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// An aggregated list of findings with a pass/fail verdict.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    #[must_use]
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    /// Pass iff there is no error or alarm.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.severity == Severity::Info)
    }

    #[must_use]
    pub fn failure_count(&self) -> usize {
        self.findings
            .iter()
            .filter(|f| f.severity != Severity::Info)
            .count()
    }

    /// Canonical ordering: by check id, then location, degree, message.
    /// Makes aggregation order (including parallel aggregation) invisible.
    pub fn sort(&mut self) {
        self.findings.sort_by(|a, b| {
            (&a.check, &a.location, a.degree, &a.message, a.severity).cmp(&(
                &b.check,
                &b.location,
                b.degree,
                &b.message,
                b.severity,
            ))
        });
    }

    #[must_use]
    pub fn sorted(mut self) -> Self {
        self.sort();
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        if self.passed() {
            write!(f, "verdict: pass")
        } else {
            write!(f, "verdict: fail ({} finding(s))", self.failure_count())
        }
    }
}

/// Elementary invariants of one algebra in a functor.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubgroupInvariants {
    pub key: String,
    pub total_dim: usize,
    /// Absent exactly for the zero space (where the norm is undefined);
    /// verified functors never contain one.
    pub norm: Option<usize>,
    pub connected: bool,
    pub biconnected: bool,
    pub dims: BTreeMap<usize, usize>,
}

/// Torsion data of one covering pair: dimensions of coker(t) and ker(t)
/// of the upper algebra under the pair's quotient form, and the Jordan
/// block sizes of that action.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeInvariants {
    pub pair: String,
    pub bar_dims: BTreeMap<usize, usize>,
    pub tau_dims: BTreeMap<usize, usize>,
    pub jordan_sizes: Vec<usize>,
    pub jordan_base_degrees: Vec<usize>,
}

/// The full invariants table of a functor.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantsTable {
    pub subgroups: Vec<SubgroupInvariants>,
    pub edges: Vec<EdgeInvariants>,
    /// Cross-check findings (alarms when a proved consequence fails).
    pub findings: Vec<Finding>,
}

impl InvariantsTable {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.severity == Severity::Info)
    }
}

fn fmt_dims(dims: &BTreeMap<usize, usize>) -> String {
    let inner: Vec<String> = dims.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", inner.join(", "))
}

impl fmt::Display for InvariantsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.subgroups {
            let norm = s
                .norm
                .map_or_else(|| "-".to_string(), |n| n.to_string());
            writeln!(
                f,
                "subgroup {}: total_dim {}, norm {}, connected {}, bi-connected {}, dims {}",
                s.key,
                s.total_dim,
                norm,
                s.connected,
                s.biconnected,
                fmt_dims(&s.dims)
            )?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "pair {}: bar dims {}, tau dims {}, jordan sizes {:?} at base degrees {:?}",
                e.pair,
                fmt_dims(&e.bar_dims),
                fmt_dims(&e.tau_dims),
                e.jordan_sizes,
                e.jordan_base_degrees
            )?;
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_ignores_info_entries() {
        let mut r = Report::new();
        r.push(Finding::info("note", "here", "hello".into()));
        assert!(r.passed());
        r.push(Finding::error("axiom", "there", Some(3), "broken".into()));
        assert!(!r.passed());
        assert_eq!(r.failure_count(), 1);
    }

    #[test]
    fn sorting_is_canonical() {
        let mut a = Report::new();
        a.push(Finding::error("b", "x", None, "m".into()));
        a.push(Finding::error("a", "y", Some(1), "n".into()));
        let mut b = Report::new();
        b.push(Finding::error("a", "y", Some(1), "n".into()));
        b.push(Finding::error("b", "x", None, "m".into()));
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn findings_serialize_without_null_degrees() {
        let f = Finding::error("axiom", "loc", None, "msg".into());
        let json = serde_json::to_string(&f).unwrap();
        assert!(!json.contains("degree"));
        let g = Finding::error("axiom", "loc", Some(2), "msg".into());
        let json2 = serde_json::to_string(&g).unwrap();
        assert!(json2.contains("\"degree\":2"));
        let back: Finding = serde_json::from_str(&json2).unwrap();
        assert_eq!(back, g);
    }
}
