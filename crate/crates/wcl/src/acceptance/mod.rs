//! The acceptance suite behind `wcl selftest` and the `acceptance` test
//! target. Each criterion reports PASS/FAIL, its wall time, and on failure
//! the first few mismatches.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use wcl_core::Caps;

mod examples;
pub use examples::{counterexample_pair, PINNED_TSP, PINNED_TSP_LENGTH};
mod first_order;
mod normal_forms;
mod propositional;
mod weighted;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Criteria whose key or number contains this string; all when `None`.
    pub filter: Option<String>,
    /// Perturb one weight of the pinned TSP fixture.
    pub mutate_tsp: bool,
    pub caps: Caps,
    pub tolerance: f64,
    /// Enforce the per-criterion time budgets.
    pub budgets: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0x5eed,
            filter: None,
            mutate_tsp: false,
            caps: Caps::default(),
            tolerance: 1e-9,
            budgets: true,
        }
    }
}

pub struct Criterion {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub budget: Duration,
    run: fn(&Options) -> Outcome,
}

pub const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        key: "counterexample",
        title: "distributivity counterexample over N evaluates to 108 and 648",
        budget: Duration::from_millis(1),
        run: examples::counterexample,
    },
    Criterion {
        id: 2,
        key: "tsp",
        title: "TSP formula agrees with brute force for n = 4, 5, 6",
        budget: Duration::from_secs(10),
        run: examples::tsp,
    },
    Criterion {
        id: 3,
        key: "weighted-laws",
        title: "weighted coalescing and closure laws",
        budget: Duration::from_secs(60),
        run: weighted::laws,
    },
    Criterion {
        id: 4,
        key: "pcl-laws",
        title: "unweighted PCL laws over two ports",
        budget: Duration::from_secs(30),
        run: propositional::laws,
    },
    Criterion {
        id: 5,
        key: "fnf",
        title: "full normal forms",
        budget: Duration::from_secs(120),
        run: normal_forms::fnf,
    },
    Criterion {
        id: 6,
        key: "focl",
        title: "first-order laws, counterexamples and weighted quantifiers",
        budget: Duration::from_secs(60),
        run: first_order::laws,
    },
    Criterion {
        id: 7,
        key: "pubsub",
        title: "publish/subscribe value is k11 * k32 over Viterbi",
        budget: Duration::from_secs(5),
        run: examples::pubsub,
    },
    Criterion {
        id: 8,
        key: "strategy",
        title: "direct and sparse evaluation agree",
        budget: Duration::from_secs(30),
        run: examples::strategy,
    },
];

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: usize,
    pub failures: Vec<String>,
    /// Extra facts worth printing, such as counterexamples found by search.
    pub notes: Vec<String>,
    failed: usize,
}

const SHOWN_FAILURES: usize = 5;

impl Outcome {
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < SHOWN_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Records an error as a failed check.
    pub fn ok<T>(&mut self, r: Result<T, impl std::fmt::Display>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => {
                Some(v)
            }
            Err(e) => {
                let msg = format!("{}: {e}", context());
                self.check(false, || msg);
                None
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn failed(&self) -> usize {
        self.failed
    }
}

#[derive(Debug)]
pub struct Report {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub elapsed: Duration,
    pub budget: Duration,
    pub outcome: Outcome,
    pub over_budget: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome.failed == 0 && !self.over_budget
    }

    /// One status line, then indented notes and failures.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{} [{}] {}: {} ({} checks, {})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.key,
            self.title,
            self.outcome.checks,
            fmt_duration(self.elapsed),
        );
        for n in &self.outcome.notes {
            let _ = write!(s, "\n    {n}");
        }
        if self.over_budget {
            let _ = write!(s, "\n    over budget: {} > {}", fmt_duration(self.elapsed), fmt_duration(self.budget));
        }
        if self.outcome.failed > 0 {
            let _ = write!(s, "\n    {} failed check(s)", self.outcome.failed);
        }
        for f in &self.outcome.failures {
            for (i, line) in f.lines().enumerate() {
                let _ = write!(s, "\n    {} {line}", if i == 0 { "-" } else { " " });
            }
        }
        s
    }
}

fn fmt_duration(d: Duration) -> String {
    if d < Duration::from_millis(1) {
        format!("{} us", d.as_micros())
    } else if d < Duration::from_secs(1) {
        format!("{:.1} ms", d.as_secs_f64() * 1e3)
    } else {
        format!("{:.2} s", d.as_secs_f64())
    }
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        self.key.contains(filter) || self.id.to_string() == filter
    }

    pub fn run(&self, opts: &Options) -> Report {
        let start = Instant::now();
        let outcome = (self.run)(opts);
        let elapsed = start.elapsed();
        Report {
            id: self.id,
            key: self.key,
            title: self.title,
            elapsed,
            budget: self.budget,
            over_budget: opts.budgets && elapsed > self.budget,
            outcome,
        }
    }
}

pub fn selected(opts: &Options) -> impl Iterator<Item = &'static Criterion> + '_ {
    CRITERIA
        .iter()
        .filter(move |c| opts.filter.as_deref().is_none_or(|f| c.matches(f)))
}

/// Runs the selected criteria in order, handing each report to `sink` as it
/// finishes.
pub fn run(opts: &Options, mut sink: impl FnMut(&Report)) -> Vec<Report> {
    selected(opts)
        .map(|c| {
            let r = c.run(opts);
            sink(&r);
            r
        })
        .collect()
}
