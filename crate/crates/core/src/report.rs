//! Structured findings shared by every checker.
//!
//! A [`Report`] is a list of findings plus per-section instance counts.
//! Sections are keyed by name and kept in a `BTreeMap`, so serialized
//! reports are stable for a fixed input.

use std::collections::BTreeMap;

use serde::Serialize;

/// Findings recorded per section before further ones are only counted.
pub const MAX_FINDINGS_PER_SECTION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub section: String,
    pub kind: String,
    pub instance: String,
    pub witness: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub checked: u64,
    pub passed: u64,
    pub skipped: u64,
    pub failed: u64,
}

impl Counts {
    fn absorb(&mut self, other: &Counts) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.skipped += other.skipped;
        self.failed += other.failed;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub findings: Vec<Finding>,
    pub counts: BTreeMap<String, Counts>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// True when no section recorded a failure.
    pub fn is_clean(&self) -> bool {
        self.counts.values().all(|c| c.failed == 0) && self.findings.is_empty()
    }

    pub fn failures(&self) -> u64 {
        self.counts.values().map(|c| c.failed).sum()
    }

    pub fn section(&self, name: &str) -> Counts {
        self.counts.get(name).copied().unwrap_or_default()
    }

    fn entry(&mut self, section: &str) -> &mut Counts {
        self.counts.entry(section.to_string()).or_default()
    }

    /// Makes a section visible even if no instance ever reaches it.
    pub fn touch(&mut self, section: &str) {
        self.entry(section);
    }

    pub fn pass(&mut self, section: &str) {
        let c = self.entry(section);
        c.checked += 1;
        c.passed += 1;
    }

    pub fn skip(&mut self, section: &str) {
        self.entry(section).skipped += 1;
    }

    pub fn fail(&mut self, section: &str, kind: &str, instance: String, witness: String) {
        let c = self.entry(section);
        c.checked += 1;
        c.failed += 1;
        let recorded = self.findings.iter().filter(|f| f.section == section).count();
        if recorded < MAX_FINDINGS_PER_SECTION {
            self.findings.push(Finding {
                section: section.to_string(),
                kind: kind.to_string(),
                instance,
                witness,
            });
        }
    }

    /// Records a pass or a failure; the instance and witness strings are
    /// only built on failure.
    pub fn check<F>(&mut self, section: &str, ok: bool, kind: &str, describe: F)
    where
        F: FnOnce() -> (String, String),
    {
        if ok {
            self.pass(section);
        } else {
            let (instance, witness) = describe();
            self.fail(section, kind, instance, witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        for (name, counts) in &other.counts {
            self.entry(name).absorb(counts);
        }
        for f in other.findings {
            let recorded = self.findings.iter().filter(|g| g.section == f.section).count();
            if recorded < MAX_FINDINGS_PER_SECTION {
                self.findings.push(f);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.findings.iter().any(|f| f.kind == kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn findings_are_capped_but_counted() {
        let mut r = Report::new();
        for i in 0..40 {
            r.fail("s", "k", format!("{i}"), String::new());
        }
        assert_eq!(r.findings.len(), MAX_FINDINGS_PER_SECTION);
        assert_eq!(r.section("s").failed, 40);
        assert!(!r.is_clean());
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = Report::new();
        a.pass("x");
        let mut b = Report::new();
        b.pass("x");
        b.skip("x");
        a.merge(b);
        assert_eq!(a.section("x"), Counts { checked: 2, passed: 2, skipped: 1, failed: 0 });
        assert!(a.is_clean());
    }
}
