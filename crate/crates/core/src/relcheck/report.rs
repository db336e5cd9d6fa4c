use serde::Serialize;

use crate::ncseries::EngineStats;
use crate::ring::Ring;

use super::target::{Elem, Target};

/// Failures stored per suite with their full payload; the rest are counted.
pub const MAX_RECORDED_FAILURES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub relation: String,
    pub indices: Vec<i64>,
    pub residual_terms: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Counts and failures of one evaluation pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub instances_checked: usize,
    pub failures_total: usize,
    pub failures: Vec<Failure>,
}

impl Tally {
    pub fn check<T: Target>(&mut self, t: &T, relation: &str, indices: &[i64], residual: &Elem<T>) -> bool {
        self.check_noting(t, relation, indices, residual, Vec::new)
    }

    /// As [`Tally::check`], appending `note()` to a failure record.
    pub fn check_noting<T: Target>(
        &mut self,
        t: &T,
        relation: &str,
        indices: &[i64],
        residual: &Elem<T>,
        note: impl FnOnce() -> Vec<String>,
    ) -> bool {
        self.instances_checked += 1;
        if t.alg().is_zero(residual) {
            return true;
        }
        let label = t.label();
        let relation = if label.is_empty() { relation.to_string() } else { format!("{relation} @ {label}") };
        self.record(relation, indices, || {
            let mut d = t.describe(residual);
            d.extend(note());
            d
        });
        false
    }

    /// Records a check that has no algebraic residual.
    pub fn check_bool(
        &mut self,
        ok: bool,
        relation: &str,
        indices: &[i64],
        detail: impl FnOnce() -> Vec<String>,
    ) -> bool {
        self.instances_checked += 1;
        if !ok {
            self.record(relation.to_string(), indices, detail);
        }
        ok
    }

    fn record(&mut self, relation: String, indices: &[i64], detail: impl FnOnce() -> Vec<String>) {
        self.failures_total += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure { relation, indices: indices.to_vec(), residual_terms: detail() });
        }
    }

    pub fn status(&self) -> Status {
        if self.failures_total == 0 {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn absorb(&mut self, other: Tally) {
        self.instances_checked += other.instances_checked;
        self.failures_total += other.failures_total;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// In-representation part of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepPart {
    pub status: Status,
    pub instances_checked: usize,
    pub failures_total: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(rename = "N")]
    pub n_big: usize,
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub status: Status,
    pub instances_checked: usize,
    pub failures_total: usize,
    pub failures: Vec<Failure>,
    pub millis: u64,
    /// Statistics of the suite's own engine.
    pub engine: EngineStats,
    pub rep: Option<RepPart>,
}

impl SuiteReport {
    /// Overall status, the representation part included.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass && self.rep.as_ref().is_none_or(|r| r.status != Status::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepGate {
    pub status: Status,
    pub shifts: Vec<String>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationReport {
    pub mutation: String,
    /// Suites that failed under the mutation (required non-empty).
    pub failing_suites: Vec<String>,
    pub detected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    #[serde(rename = "N")]
    pub n_big: usize,
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    pub status: Status,
    pub rep_gate: RepGate,
    pub suites: Vec<SuiteReport>,
    pub mutation_controls: Vec<MutationReport>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Markdown rendering with the same content as the JSON form.
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s += &format!(
            "# Verification report: N = {}, m = {}, K = {}, seed = {}\n\n",
            self.n_big, self.m, self.k, self.seed
        );
        s += &format!("Overall status: **{}**\n\n", self.status.as_str());
        s += &format!("Representation gate: {}", self.rep_gate.status.as_str());
        if !self.rep_gate.shifts.is_empty() {
            s += &format!(" (shifts {})", self.rep_gate.shifts.join(", "));
        }
        if let Some(msg) = &self.rep_gate.message {
            s += &format!(" — {msg}");
        }
        s += "\n\n";
        s += "| suite | status | instances | failures | rep status | rep instances | rep failures | commutators | max word | millis |\n";
        s += "|---|---|---|---|---|---|---|---|---|---|\n";
        for r in &self.suites {
            let (rs, ri, rf) = match &r.rep {
                Some(p) => (p.status.as_str(), p.instances_checked.to_string(), p.failures_total.to_string()),
                None => ("-", "-".into(), "-".into()),
            };
            s += &format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.suite,
                r.status.as_str(),
                r.instances_checked,
                r.failures_total,
                rs,
                ri,
                rf,
                r.engine.commutators,
                r.engine.max_word_len,
                r.millis
            );
        }
        for r in &self.suites {
            let rep_failures = r.rep.iter().flat_map(|p| p.failures.iter());
            let all: Vec<&Failure> = r.failures.iter().chain(rep_failures).collect();
            if all.is_empty() {
                continue;
            }
            s += &format!("\n## Failures in `{}`\n\n", r.suite);
            for f in all {
                s += &format!("- {} {:?}: {}\n", f.relation, f.indices, f.residual_terms.join(" + "));
            }
        }
        if !self.mutation_controls.is_empty() {
            s += "\n## Mutation controls\n\n| mutation | detected | failing suites |\n|---|---|---|\n";
            for m in &self.mutation_controls {
                s += &format!("| {} | {} | {} |\n", m.mutation, m.detected, m.failing_suites.join(", "));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_beyond_the_cap_are_counted_not_stored() {
        let mut t = Tally::default();
        for k in 0..MAX_RECORDED_FAILURES + 7 {
            t.check_bool(k % 2 == 0, "r", &[k as i64], Vec::new);
        }
        assert_eq!(t.instances_checked, MAX_RECORDED_FAILURES + 7);
        assert_eq!(t.failures_total, (MAX_RECORDED_FAILURES + 7) / 2);
        assert_eq!(t.failures.len(), t.failures_total.min(MAX_RECORDED_FAILURES));
        let mut u = t.clone();
        u.absorb(t);
        assert_eq!(u.failures.len(), MAX_RECORDED_FAILURES);
        assert_eq!(u.status(), Status::Fail);
        assert_eq!(Tally::default().status(), Status::Pass);
    }

    #[test]
    fn json_uses_the_report_field_names() {
        let r = RunReport {
            n_big: 3,
            m: 1,
            k: 2,
            seed: 7,
            status: Status::Pass,
            rep_gate: RepGate { status: Status::Skipped, shifts: Vec::new(), message: None },
            suites: vec![SuiteReport {
                suite: "gauss".into(),
                n_big: 3,
                m: 1,
                k: 2,
                status: Status::Pass,
                instances_checked: 4,
                failures_total: 0,
                failures: Vec::new(),
                millis: 0,
                engine: EngineStats::default(),
                rep: None,
            }],
            mutation_controls: Vec::new(),
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["N"], 3);
        assert_eq!(v["rep_gate"]["status"], "skipped");
        let s = &v["suites"][0];
        for key in ["suite", "N", "m", "K", "status", "instances_checked", "failures", "millis"] {
            assert!(s.get(key).is_some(), "{key}");
        }
        assert!(r.to_markdown().contains("| gauss | pass | 4 | 0 | - |"));
    }
}
