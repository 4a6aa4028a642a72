//! Acceptance criteria over the shipped corpus. Prints one line per
//! criterion and exits nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hscat::corpus::Corpus;
use hscat::io::to_json;
use hscat::suite::{run_suite, Report, SuiteConfig, Verdict, SUITES};
use hscat_core::Guard;

const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Run {
    report: Report,
    elapsed: Duration,
}

impl Run {
    fn clean(&self) -> bool {
        self.report.failed == 0 && self.report.passed > 0 && self.elapsed < TIME_LIMIT
    }

    fn has_check(&self, id_prefix: &str, check: &str) -> bool {
        self.report
            .instances
            .iter()
            .any(|i| i.id.starts_with(id_prefix) && i.verdict == Verdict::Pass && i.checks.iter().any(|c| c == check))
    }

    fn summary(&self) -> String {
        let r = &self.report;
        format!(
            "{}: {} passed, {} failed, {} skipped in {:.1}s",
            r.suite,
            r.passed,
            r.failed,
            r.skipped,
            self.elapsed.as_secs_f64()
        )
    }
}

fn run(name: &str, corpus: &Corpus, cfg: &SuiteConfig) -> Run {
    let start = Instant::now();
    let report = run_suite(name, corpus, cfg).expect("suite runs");
    Run {
        report,
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let corpus = Corpus::load(&dir).expect("shipped corpus loads");
    let cfg = SuiteConfig::default();
    let runs: Vec<Run> = SUITES.iter().map(|s| run(s, &corpus, &cfg)).collect();
    let get = |name: &str| runs.iter().find(|r| r.report.suite == name).unwrap();

    let mut results: Vec<(usize, &str, bool, String)> = Vec::new();

    let adj = get("adjunction");
    let wide = run(
        "adjunction",
        &corpus,
        &SuiteConfig {
            guard: Guard(100_000_000),
            ..SuiteConfig::default()
        },
    );
    results.push((
        1,
        "adjunction",
        adj.clean() && wide.clean() && wide.report.skipped == 0,
        format!("{}; with --guard 1e8: {}", adj.summary(), wide.summary()),
    ));

    let simple = [
        (2, "lemma-natpb", None),
        (3, "classification", Some(("a2/", "factors_through_larger"))),
        (4, "hs-recovery", Some(("example/point-a3", "elements"))),
        (5, "hierarchy", Some(("", "cartesian"))),
        (6, "omega", Some(("arrow/", "sizes_on_arrow"))),
        (7, "truncation", Some(("", "idempotent"))),
        (8, "realign", Some(("", "search_agrees"))),
        (9, "basechange", Some(("", "lifting"))),
        (10, "comprehensive", Some(("", "unique_up_to_iso"))),
    ];
    for (n, name, witness) in simple {
        let r = get(name);
        let ok = r.clean() && r.report.skipped == 0 && witness.is_none_or(|(p, c)| r.has_check(p, c));
        results.push((n, name, ok, r.summary()));
    }
    let truncation_a3 = get("truncation").report.instances.iter().filter(|i| i.id.ends_with("/a3")).count();
    if truncation_a3 != corpus.categories.len() {
        results[6].2 = false;
    }

    let (fib, tr) = (get("fibration"), get("transfer"));
    let kinds_covered = ["trivial/", "pointed/"]
        .iter()
        .all(|k| fib.has_check(k, "pullback_recovers_structure") && tr.has_check(k, "section_counts_match"));
    results.push((
        11,
        "fibration + transfer",
        fib.clean() && tr.clean() && fib.report.skipped == 0 && tr.report.skipped == 0 && kinds_covered,
        format!("{}; {}", fib.summary(), tr.summary()),
    ));

    let mut deterministic = true;
    let mut mismatched = Vec::new();
    for r in &runs {
        let base = to_json(&r.report).unwrap();
        for seed in [None, Some(1), Some(0xDEAD_BEEF)] {
            let again = run_suite(&r.report.suite, &corpus, &SuiteConfig { seed, ..SuiteConfig::default() }).unwrap();
            if to_json(&again).unwrap() != base {
                deterministic = false;
                mismatched.push(format!("{}{seed:?}", r.report.suite));
            }
        }
    }
    results.push((
        12,
        "determinism",
        deterministic,
        if deterministic {
            format!("{} suites byte-identical across a rerun and two seeds", runs.len())
        } else {
            format!("differs: {}", mismatched.join(", "))
        },
    ));

    for (n, name, ok, detail) in &results {
        println!("criterion {n:>2} {name}: {} ({detail})", if *ok { "PASS" } else { "FAIL" });
    }
    if results.iter().all(|r| r.2) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
