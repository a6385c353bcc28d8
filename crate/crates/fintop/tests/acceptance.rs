//! Acceptance suite: runs every verification criterion and prints one
//! pass/fail line per criterion (visible with `--nocapture`).  All criteria
//! must pass.

use fintop::classes::{Catalog, Pred};
use fintop::suites::{self, SuiteReport};

struct Tally {
    lines: Vec<(String, bool, String)>,
}

impl Tally {
    fn new() -> Self {
        Tally { lines: Vec::new() }
    }

    fn add(&mut self, criterion: &str, pass: bool, details: String) {
        println!(
            "criterion {criterion}: {} — {details}",
            if pass { "PASS" } else { "FAIL" }
        );
        self.lines.push((criterion.to_string(), pass, details));
    }

    fn add_report(&mut self, criterion: &str, rep: &SuiteReport, select: &[&str]) {
        let checks: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| select.is_empty() || select.iter().any(|s| c.label.starts_with(s)))
            .collect();
        let pass = checks.iter().all(|c| c.pass);
        let details = checks
            .iter()
            .map(|c| format!("{} ({})", c.label, c.details))
            .collect::<Vec<_>>()
            .join("; ");
        self.add(criterion, pass, details);
    }

    fn assert_all(&self) {
        let failed: Vec<&str> = self
            .lines
            .iter()
            .filter(|(_, p, _)| !p)
            .map(|(n, _, _)| n.as_str())
            .collect();
        assert!(failed.is_empty(), "failing criteria: {}", failed.join(", "));
    }
}

#[test]
fn acceptance_criteria() {
    let mut cat = Catalog::new();
    let mut tally = Tally::new();

    let rep = suites::prime_decomp(&mut cat, 5).expect("prime_decomp suite");
    tally.add_report("01 prime decomposition", &rep, &[]);

    let rep = suites::retraction(6).expect("retraction suite");
    tally.add_report("02 prime retractions", &rep, &[]);

    let rep = suites::pinch(&mut cat, 3).expect("pinch suite");
    tally.add_report("03 pinch order", &rep, &["pinch order"]);
    tally.add_report("04 pinch quotient", &rep, &["pinch quotient"]);

    let rep = suites::heredity(&mut cat).expect("heredity suite");
    tally.add_report("05 heredity sweep", &rep, &[]);

    let rep = suites::t0(&mut cat).expect("t0 suite");
    tally.add_report("06 t0 reflection", &rep, &["t0 arrow flags", "t0 reflection shadow"]);

    let rep = suites::oracle_crossval(&mut cat).expect("oracle crossval");
    tally.add_report("07 oracle cross-validation", &rep, &[]);

    let rep = suites::towers(4).expect("towers suite");
    tally.add_report("08 towers", &rep, &[]);

    let rep = suites::lmp(&mut cat, 3).expect("lmp suite");
    tally.add_report("09 p-predicate and lmp", &rep, &[]);

    let rep = suites::t0(&mut cat).expect("t0 suite (cached)");
    tally.add_report("10 singleton-fiber sections", &rep, &["t0 singleton-fiber"]);

    let rep = suites::omega(suites::OMEGA_SEED).expect("omega suite");
    tally.add_report("11 omega fragment", &rep, &[]);

    let rep = suites::enumeration_sanity(&mut cat).expect("enumeration sanity");
    tally.add_report("12 enumeration sanity", &rep, &[]);

    tally.assert_all();
}

/// The strongly rigid search is a recorded finding, not a criterion; it must
/// at least run and include the trivial one-point answer.
#[test]
fn rigidity_report_runs() {
    let mut cat = Catalog::new();
    let rep = suites::rigidity_report(&mut cat).expect("rigidity report");
    assert!(rep.passed());
    // the search space includes all classes up to five points
    assert_eq!(cat.universe(5, Pred::All).unwrap().len(), 139);
}
