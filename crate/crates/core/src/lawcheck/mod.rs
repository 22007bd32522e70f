//! Law suites: every invariant of the library, checked on exhaustive small
//! instances and seeded random ones.
//!
//! A suite is built as a list of [`Case`]s by a single sequential pass over
//! the seeded generator, then the cases run in parallel. Reports are
//! order-independent: per law the reported counterexample is the failing case
//! with the smallest serialization.

mod gen;
mod kernel;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gen::{
    bond_hull, gen_context, gen_lattice, gen_morphism, gen_supmap, random_context, random_context_sized, random_lattice, random_morphism,
    random_supmap, small_contexts, GenConfig, DESK_MAX_LATTICE, DESK_MAX_SIDE,
};
pub use kernel::{Kernel, Mutation};

use crate::error::{Error, Result};

pub const SUITES: [&str; 7] = ["context-core", "category", "monoidal-concept", "monoidal-lattice", "suplat", "equivalence", "disco"];

/// Why a case did not pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Fail(String),
    /// The instance is outside a size cap; counted, never silently passed.
    Skip(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CapExceeded(m) => Failure::Skip(m),
            e => Failure::Fail(e.to_string()),
        }
    }
}

pub type Outcome = std::result::Result<(), Failure>;

/// Shorthand for a law check: fails with `msg` unless `cond`.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Failure::Fail(msg()))
    }
}

type Check = Box<dyn Fn(&Kernel) -> Outcome + Send + Sync>;

/// One law applied to one instance.
pub struct Case {
    pub law: &'static str,
    pub instance: String,
    check: Check,
}

impl Case {
    pub fn new(law: &'static str, instance: impl Into<String>, check: impl Fn(&Kernel) -> Outcome + Send + Sync + 'static) -> Case {
        Case { law, instance: instance.into(), check: Box::new(check) }
    }

    pub fn run(&self, kernel: &Kernel) -> Outcome {
        (self.check)(kernel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawReport {
    pub suite: String,
    pub config: GenConfig,
    pub mutation: Option<Mutation>,
    pub laws: Vec<LawResult>,
    /// One line per skipped law instance group.
    pub notices: Vec<String>,
    pub duration_ms: u128,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| l.failed > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Equality ignoring the wall-clock duration.
    pub fn same_outcome(&self, other: &LawReport) -> bool {
        self.suite == other.suite && self.laws == other.laws && self.notices == other.notices && self.mutation == other.mutation
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {}, trials {})", self.suite, self.config.seed, self.config.trials)?;
        if let Some(m) = self.mutation {
            writeln!(f, "mutation: {m:?}")?;
        }
        let width = self.laws.iter().map(|l| l.law.len()).max().unwrap_or(4).max(4);
        writeln!(f, "{:<width$}  {:>6}  {:>6}  {:>6}", "law", "pass", "fail", "skip")?;
        for l in &self.laws {
            writeln!(f, "{:<width$}  {:>6}  {:>6}  {:>6}", l.law, l.passed, l.failed, l.skipped)?;
        }
        for l in self.failures() {
            if let Some(c) = &l.counterexample {
                writeln!(f, "counterexample for {}: {} ({})", l.law, c.instance, c.message)?;
            }
        }
        for n in &self.notices {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "{} in {} ms", if self.all_passed() { "PASS" } else { "FAIL" }, self.duration_ms)
    }
}

/// The cases of a suite, in generation order.
pub fn suite_cases(name: &str, cfg: &GenConfig) -> Result<Vec<Case>> {
    cfg.validate()?;
    suites::build(name, cfg)
}

pub fn run_suite(name: &str, cfg: &GenConfig) -> Result<LawReport> {
    run_suite_with(name, cfg, &Kernel::sound())
}

pub fn run_suite_with(name: &str, cfg: &GenConfig, kernel: &Kernel) -> Result<LawReport> {
    let start = Instant::now();
    let cases = suite_cases(name, cfg)?;
    let outcomes: Vec<Outcome> = cases.par_iter().map(|c| c.run(kernel)).collect();

    let mut laws: BTreeMap<&'static str, LawResult> = BTreeMap::new();
    let mut skip_notes: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
    for (case, outcome) in cases.iter().zip(outcomes) {
        let entry = laws.entry(case.law).or_insert_with(|| LawResult {
            law: case.law.to_string(),
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexample: None,
        });
        match outcome {
            Ok(()) => entry.passed += 1,
            Err(Failure::Skip(why)) => {
                entry.skipped += 1;
                let note = skip_notes.entry(case.law).or_insert((0, why));
                note.0 += 1;
            }
            Err(Failure::Fail(message)) => {
                entry.failed += 1;
                let candidate = Counterexample { instance: case.instance.clone(), message };
                let smaller = match &entry.counterexample {
                    None => true,
                    Some(c) => (candidate.instance.len(), &candidate.instance) < (c.instance.len(), &c.instance),
                };
                if smaller {
                    entry.counterexample = Some(candidate);
                }
            }
        }
    }
    let notices = skip_notes.into_iter().map(|(law, (n, why))| format!("{law}: {n} instance(s) skipped, e.g. {why}")).collect();
    Ok(LawReport {
        suite: name.to_string(),
        config: cfg.clone(),
        mutation: kernel.mutation(),
        laws: laws.into_values().collect(),
        notices,
        duration_ms: start.elapsed().as_millis(),
    })
}

/// Re-runs one reported case on its own. `Ok(Some(msg))` means it failed again.
pub fn replay(name: &str, cfg: &GenConfig, kernel: &Kernel, law: &str, instance: &str) -> Result<Option<String>> {
    let cases = suite_cases(name, cfg)?;
    let case = cases
        .iter()
        .find(|c| c.law == law && c.instance == instance)
        .ok_or_else(|| Error::Lawcheck(format!("no case {law} / {instance} in suite {name}")))?;
    Ok(match case.run(kernel) {
        Err(Failure::Fail(m)) => Some(m),
        _ => None,
    })
}
