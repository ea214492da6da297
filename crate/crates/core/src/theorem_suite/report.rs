use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::Serialize;

use super::TheoremId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::NotApplicable => "not-applicable",
        })
    }
}

/// Enough to rebuild the failing input: the weights and event masks, and
/// for fuzz runs the seed and trial index to replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub weights: Vec<String>,
    pub events: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: TheoremId,
    pub statement: &'static str,
    pub status: Status,
    /// Instances checked.
    pub checks: u64,
    /// Candidate instances skipped because a hypothesis did not hold.
    pub not_applicable: u64,
    pub violations: u64,
    pub counterexample: Option<Counterexample>,
}

impl EntryReport {
    pub(crate) fn new(id: TheoremId) -> Self {
        EntryReport {
            id,
            statement: id.statement(),
            status: Status::NotApplicable,
            checks: 0,
            not_applicable: 0,
            violations: 0,
            counterexample: None,
        }
    }

    pub(crate) fn settle(&mut self) {
        self.status = if self.violations > 0 {
            Status::Violated
        } else if self.checks > 0 {
            Status::Holds
        } else {
            Status::NotApplicable
        };
    }

    /// Adds `later` into `self`; the earlier counterexample wins.
    fn absorb(&mut self, later: &EntryReport) {
        self.checks += later.checks;
        self.not_applicable += later.not_applicable;
        self.violations += later.violations;
        if self.counterexample.is_none() {
            self.counterexample.clone_from(&later.counterexample);
        }
        self.settle();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub seed: Option<u64>,
    /// Spaces examined: 1 for a single verification.
    pub trials: u64,
    pub entries: Vec<EntryReport>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "as_secs")]
    pub elapsed: Option<Duration>,
}

fn as_secs<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_f64(d.as_secs_f64()),
        None => s.serialize_none(),
    }
}

impl VerificationReport {
    pub(crate) fn empty(seed: Option<u64>) -> Self {
        VerificationReport {
            seed,
            trials: 0,
            entries: TheoremId::ALL.iter().map(|&id| EntryReport::new(id)).collect(),
            elapsed: None,
        }
    }

    /// Appends the results of later trials. Associative, so merging in trial
    /// order gives the same report however the trials were scheduled.
    pub fn merge(&mut self, later: &VerificationReport) {
        self.trials += later.trials;
        for (mine, theirs) in self.entries.iter_mut().zip(&later.entries) {
            mine.absorb(theirs);
        }
    }

    pub fn entry(&self, id: TheoremId) -> &EntryReport {
        &self.entries[id.index()]
    }

    pub fn status(&self, id: TheoremId) -> Status {
        self.entry(id).status
    }

    pub fn total_violations(&self) -> u64 {
        self.entries.iter().map(|e| e.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// Drops the timing so two runs compare equal.
    pub fn without_elapsed(mut self) -> Self {
        self.elapsed = None;
        self
    }

    /// Human-readable table. Elapsed time appears only when present.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self.seed {
            Some(seed) => writeln!(out, "seed {seed}, {} trials", self.trials),
            None => writeln!(out, "spaces checked: {}", self.trials),
        }
        .unwrap();
        writeln!(
            out,
            "{:<6} {:<15} {:>9} {:>9} {:>10}  statement",
            "id", "status", "checks", "n/a", "violations"
        )
        .unwrap();
        for e in &self.entries {
            writeln!(
                out,
                "{:<6} {:<15} {:>9} {:>9} {:>10}  {}",
                e.id.code(),
                e.status.to_string(),
                e.checks,
                e.not_applicable,
                e.violations,
                e.statement
            )
            .unwrap();
        }
        for e in &self.entries {
            if let Some(c) = &e.counterexample {
                write!(out, "counterexample for {}", e.id).unwrap();
                if let (Some(seed), Some(trial)) = (c.seed, c.trial) {
                    write!(out, " (seed {seed}, trial {trial})").unwrap();
                }
                writeln!(out, ":").unwrap();
                writeln!(out, "  weights: [{}]", c.weights.join(", ")).unwrap();
                writeln!(out, "  events:  [{}]", c.events.join(", ")).unwrap();
                writeln!(out, "  {}", c.detail).unwrap();
            }
        }
        write!(
            out,
            "summary: {} hold, {} violated, {} not applicable",
            self.count(Status::Holds),
            self.count(Status::Violated),
            self.count(Status::NotApplicable)
        )
        .unwrap();
        if let Some(d) = self.elapsed {
            write!(out, " ({:.3} s)", d.as_secs_f64()).unwrap();
        }
        out.push('\n');
        out
    }
}
