//! Oracle equivalence suites behind `z2lab verify`.

use z2lab::oracles::suites::{all_suites, SuiteReport};

/// One line per suite, `PASS` or `FAIL`, with the first few mismatches.
pub fn render(reports: &[SuiteReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        s += &format!("{verdict} {} ({} cases, {} failures)\n", r.name, r.cases, r.failures.len());
        for f in r.failures.iter().take(5) {
            s += &format!("    {f}\n");
        }
    }
    s
}

pub fn verify(seed: u64) -> (bool, String) {
    let reports = all_suites(seed);
    (reports.iter().all(SuiteReport::passed), render(&reports))
}
