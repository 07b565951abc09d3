//! Pass/fail reports produced by the validators and radical checks.

use std::fmt;

use serde::Serialize;

/// One failed assertion with the indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    /// Number of individual assertions evaluated.
    pub checked: usize,
    pub failures: Vec<Finding>,
    /// Informational remarks that do not affect the verdict.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one assertion; `witness` is only evaluated on failure.
    pub fn check(&mut self, check: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.failures.push(Finding { check: check.to_string(), witness: witness() });
        }
        ok
    }

    pub fn fail(&mut self, check: &str, witness: impl Into<String>) {
        self.checked += 1;
        self.failures.push(Finding { check: check.to_string(), witness: witness.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends another report's counts, failures and notes.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        let prefix = other.name;
        self.failures.extend(other.failures.into_iter().map(|f| Finding {
            check: format!("{prefix}/{}", f.check),
            witness: f.witness,
        }));
        self.notes.extend(other.notes);
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.failures.first()
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: {} checks passed", self.name, self.checked),
            Some(f) => format!(
                "{}: {} of {} checks failed; first: {} at {}",
                self.name,
                self.failures.len(),
                self.checked,
                f.check,
                f.witness
            ),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{verdict}] {} ({} checks)", self.name, self.checked)?;
        for finding in &self.failures {
            writeln!(f, "  - {}: {}", finding.check, finding.witness)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}
