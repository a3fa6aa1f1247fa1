//! Serializable results. Field order is declaration order, so the JSON
//! rendering is stable.

use crate::finite::FinSet;
use crate::semantics::{Assignment, SkipNote};
use crate::syntax::{Decls, LawKind};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A law held on every enumerated assignment.
    Pass,
    /// A law has a counterexample.
    Fail,
    /// Every object assignment exceeded the budget.
    Skipped,
    /// A diagnostic property held.
    Holds,
    /// A diagnostic property has a counterexample.
    Refuted,
    /// A counterexample to a negative claim was found.
    Found,
    NotFound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
            Status::Holds => "holds",
            Status::Refuted => "refuted",
            Status::Found => "found",
            Status::NotFound => "not found",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quantifier {
    /// `object`, `morphism` or `pure`.
    pub role: &'static str,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
}

impl Quantifier {
    pub fn from_decls(decls: &Decls) -> Vec<Quantifier> {
        let objs = decls.objects.iter().map(|o| Quantifier { role: "object", name: o.clone(), signature: None });
        let syms = decls.symbols.iter().map(|s| Quantifier {
            role: if s.pure { "pure" } else { "morphism" },
            name: s.name.clone(),
            signature: Some(format!("{} -> {}", s.dom, s.cod)),
        });
        objs.chain(syms).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectValue {
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolValue {
    pub name: String,
    /// Morphism literal, parseable by the literal reader.
    pub value: String,
}

fn objects(objs: &[(String, FinSet)]) -> Vec<ObjectValue> {
    objs.iter().map(|(n, s)| ObjectValue { name: n.clone(), size: s.size }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub objects: Vec<ObjectValue>,
    pub symbols: Vec<SymbolValue>,
    /// Whether an independent evaluation reproduced the counterexample.
    pub rechecked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl WitnessReport {
    pub fn new<M: fmt::Display>(a: &Assignment<M>, rechecked: bool, error: Option<String>) -> Self {
        WitnessReport {
            objects: objects(&a.objects),
            symbols: a.symbols.iter().map(|(n, m)| SymbolValue { name: n.clone(), value: m.to_string() }).collect(),
            rechecked,
            error,
        }
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self.objects.iter().map(|o| format!("|{}|={}", o.name, o.size)).collect();
        write!(f, "{}", objs.join(" "))?;
        for s in &self.symbols {
            write!(f, "\n      {} = {}", s.name, s.value)?;
        }
        if let Some(e) = &self.error {
            write!(f, "\n      evaluation error: {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipReport {
    pub objects: Vec<ObjectValue>,
    pub reason: String,
}

impl From<&SkipNote> for SkipReport {
    fn from(n: &SkipNote) -> Self {
        SkipReport { objects: objects(&n.objects), reason: n.reason.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub id: String,
    pub kind: LawKind,
    pub suite: String,
    pub says: String,
    pub statement: String,
    pub quantifiers: Vec<Quantifier>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub instance: String,
    /// Object assignments fully enumerated.
    pub object_tuples: u64,
    /// Symbol assignments visited, after pruning by hypotheses.
    pub tuples: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkipReport>,
}

impl LawCheck {
    /// Whether this entry makes a run unsuccessful.
    pub fn is_failure(&self) -> bool {
        self.kind == LawKind::Law && self.status == Status::Fail
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub partially_skipped: usize,
    pub diagnostics_holding: usize,
    pub diagnostics_refuted: usize,
    pub witnesses_found: usize,
    pub witnesses_not_found: usize,
    pub ok: bool,
}

impl Summary {
    pub fn of(checks: &[LawCheck]) -> Summary {
        let mut s = Summary { checks: checks.len(), ..Summary::default() };
        for c in checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Holds => s.diagnostics_holding += 1,
                Status::Refuted => s.diagnostics_refuted += 1,
                Status::Found => s.witnesses_found += 1,
                Status::NotFound => s.witnesses_not_found += 1,
            }
            if c.status != Status::Skipped && !c.skipped.is_empty() {
                s.partially_skipped += 1;
            }
        }
        s.ok = !checks.iter().any(LawCheck::is_failure);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub instance: String,
    pub max_size: usize,
    pub budget: u64,
    pub checks: Vec<LawCheck>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl LawReport {
    /// Sorts checks by id and computes the summary.
    pub fn new(suite: &str, instance: String, max_size: usize, budget: u64, mut checks: Vec<LawCheck>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = Summary::of(&checks);
        LawReport { suite: suite.to_string(), instance, max_size, budget, checks, summary, wall_time_ms: None }
    }

    pub fn ok(&self) -> bool {
        self.summary.ok
    }

    pub fn check(&self, id: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} on {} (sizes 1..={}, budget {})\n",
            self.suite, self.instance, self.max_size, self.budget
        );
        for c in &self.checks {
            out.push_str(&format!("  {:<9} {:<40} {}\n", c.status.to_string(), c.id, c.statement));
            if let Some(r) = &c.reason {
                out.push_str(&format!("      {r}\n"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("      witness: {w}\n"));
            }
            if !c.skipped.is_empty() && c.status != Status::Skipped {
                out.push_str(&format!(
                    "      {} object assignment(s) skipped over budget, first: {}\n",
                    c.skipped.len(),
                    c.skipped[0].reason
                ));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} skipped ({} partially), {} diagnostics hold, {} refuted, {} witnesses found, {} not found\n",
            s.checks,
            s.pass,
            s.fail,
            s.skipped,
            s.partially_skipped,
            s.diagnostics_holding,
            s.diagnostics_refuted,
            s.witnesses_found,
            s.witnesses_not_found
        ));
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall time {ms} ms\n"));
        }
        out
    }
}
