//! Verification reports shared by every checker in the crate.
//!
//! A [`Report`] is a list of [`LawResult`]s, one per law. Each result keeps
//! every violation witness it found, not just the first one.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing could be checked (e.g. every instance fell outside the universe).
    Skipped,
    /// A failure that a negative control was expected to produce.
    ExpectedFail,
    /// A negative control that unexpectedly passed.
    UnexpectedPass,
    /// Classification output that is neither a pass nor a failure.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::ExpectedFail => "XFAIL",
            Status::UnexpectedPass => "XPASS",
            Status::Info => "INFO",
        }
    }

    pub fn is_bad(self) -> bool {
        matches!(self, Status::Fail | Status::UnexpectedPass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    pub model: String,
    pub algebra: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    /// Instances inspected (including vacuous ones).
    pub checked: usize,
    /// Implication instances whose antecedent was false.
    pub vacuous: usize,
    pub note: Option<String>,
}

impl LawResult {
    pub fn new(law: impl Into<String>, model: impl Into<String>, algebra: impl Into<String>) -> Self {
        LawResult {
            law: law.into(),
            model: model.into(),
            algebra: algebra.into(),
            status: Status::Skipped,
            witnesses: Vec::new(),
            checked: 0,
            vacuous: 0,
            note: None,
        }
    }

    pub fn info(
        law: impl Into<String>,
        model: impl Into<String>,
        algebra: impl Into<String>,
        note: impl Into<String>,
    ) -> Self {
        let mut r = LawResult::new(law, model, algebra);
        r.status = Status::Info;
        r.note = Some(note.into());
        r
    }

    /// Records one checked instance that held.
    pub fn ok(&mut self) {
        self.checked += 1;
    }

    pub fn violation(&mut self, witness: impl Into<String>) {
        self.checked += 1;
        self.witnesses.push(witness.into());
    }

    pub fn vacuous_instance(&mut self) {
        self.checked += 1;
        self.vacuous += 1;
    }

    /// Outcome-driven helper used by most checkers.
    pub fn record(&mut self, holds: bool, witness: impl FnOnce() -> String) {
        if holds {
            self.ok()
        } else {
            self.violation(witness())
        }
    }

    /// Sets `status` from the collected instances.
    pub fn finish(mut self) -> Self {
        if self.status == Status::Info {
            return self;
        }
        self.status = if !self.witnesses.is_empty() {
            Status::Fail
        } else if self.checked > self.vacuous {
            Status::Pass
        } else {
            Status::Skipped
        };
        self
    }

    fn witness_field(&self) -> String {
        if let Some(note) = &self.note {
            if self.witnesses.is_empty() {
                return note.clone();
            }
        }
        match self.witnesses.len() {
            0 => "-".to_string(),
            1 => self.witnesses[0].clone(),
            n => format!("{} (+{} more)", self.witnesses[0], n - 1),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<LawResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: LawResult) {
        self.entries.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// A report is clean when nothing failed unexpectedly.
    pub fn is_clean(&self) -> bool {
        !self.entries.iter().any(|e| e.status.is_bad())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.failures().map(|e| e.law.as_str()).collect()
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn status_of(&self, law: &str) -> Option<Status> {
        self.get(law).map(|e| e.status)
    }

    /// Total number of instances checked across all laws.
    pub fn instances(&self) -> usize {
        self.entries.iter().map(|e| e.checked).sum()
    }

    /// Converts the listed laws into negative controls: a failure becomes
    /// `XFAIL`, a pass becomes `XPASS`.
    pub fn expect_failures(&mut self, laws: &[&str]) {
        for e in &mut self.entries {
            if laws.contains(&e.law.as_str()) {
                e.status = match e.status {
                    Status::Fail => Status::ExpectedFail,
                    Status::Pass | Status::Skipped => Status::UnexpectedPass,
                    s => s,
                };
            }
        }
    }

    /// Tab-separated text form, one line per law:
    /// `STATUS<TAB>law<TAB>model<TAB>algebra<TAB>witness-or-dash<TAB>count`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                e.status,
                e.law,
                e.model,
                e.algebra,
                e.witness_field(),
                e.checked
            ));
            if e.vacuous > 0 {
                out.push_str(&format!(
                    "{}\t{}.vacuous\t{}\t{}\t-\t{}\n",
                    Status::Skipped,
                    e.law,
                    e.model,
                    e.algebra,
                    e.vacuous
                ));
            }
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finish_classifies() {
        let mut r = LawResult::new("l", "m", "a");
        r.ok();
        assert_eq!(r.clone().finish().status, Status::Pass);
        r.violation("w");
        assert_eq!(r.finish().status, Status::Fail);
        let mut v = LawResult::new("l", "m", "a");
        v.vacuous_instance();
        assert_eq!(v.finish().status, Status::Skipped);
    }

    #[test]
    fn expected_failures_flip() {
        let mut rep = Report::new();
        let mut f = LawResult::new("bad", "m", "a");
        f.violation("x");
        rep.push(f.finish());
        let mut p = LawResult::new("good", "m", "a");
        p.ok();
        rep.push(p.finish());
        assert!(!rep.is_clean());
        rep.expect_failures(&["bad"]);
        assert!(rep.is_clean());
        assert_eq!(rep.status_of("bad"), Some(Status::ExpectedFail));
        rep.expect_failures(&["good"]);
        assert!(!rep.is_clean());
    }

    #[test]
    fn text_line_format() {
        let mut rep = Report::new();
        let mut f = LawResult::new("law-id", "words", "boolean");
        f.violation("(a,b)");
        f.violation("(b,a)");
        rep.push(f.finish());
        assert_eq!(rep.to_text(), "FAIL\tlaw-id\twords\tboolean\t(a,b) (+1 more)\t2\n");
    }
}
