//! Acceptance suite: one line per criterion, timings listed afterwards.

use prodwidth::sweep::{run_sweep, run_sweep_timed, Corpus, SweepConfig};
use std::time::Instant;

/// Failures that are properties of the mathematics rather than of the code:
/// check name and the exact counterexample set. See the README.
const KNOWN: &[(&str, &[&str])] = &[(
    "direct lower witnesses attain the lower bound",
    &["F`?GO", "Kw?Woo??G@?C"],
)];

fn known(check: &prodwidth::sweep::CheckReport) -> bool {
    KNOWN.iter().any(|(name, graphs)| {
        *name == check.name
            && check.failures == check.counterexamples.len()
            && check
                .counterexamples
                .iter()
                .all(|x| x.graphs.iter().all(|g| graphs.contains(&g.as_str())))
    })
}

fn main() {
    let build = Instant::now();
    let corpus = Corpus::standard(8);
    let build = build.elapsed();
    let config = SweepConfig::default();

    let start = Instant::now();
    let (first, times) = run_sweep_timed(&corpus, &config, None);
    let suite = start.elapsed();
    let mut failed = 0;
    for c in &first.criteria {
        let cases: usize = c.checks.iter().map(|x| x.cases).sum();
        let unexpected = c.checks.iter().any(|x| !x.passed() && !known(x));
        let status = match (c.passed, unexpected) {
            (true, _) => "PASS",
            (false, false) => "FAIL (known)",
            (false, true) => "FAIL",
        };
        println!("{status} {:>2}. {} ({cases} cases)", c.id, c.title);
        for check in c.checks.iter().filter(|x| !x.passed()) {
            println!("       {}: {} failures", check.name, check.failures);
            for x in &check.counterexamples {
                println!("         {:?}: {}", x.graphs, x.detail);
            }
        }
        failed += usize::from(unexpected);
    }

    let again = Instant::now();
    let second = run_sweep(&corpus, &config, None);
    let again = again.elapsed();
    let same = first.to_json() == second.to_json();
    println!(
        "{} 10. two full sweeps give byte-identical reports ({} bytes)",
        if same { "PASS" } else { "FAIL" },
        first.to_json().len()
    );
    failed += usize::from(!same);

    println!();
    println!("warnings:");
    for w in first.warnings.iter() {
        println!("  {w}");
    }
    for c in &first.criteria {
        for check in &c.checks {
            for w in &check.warnings {
                println!("  {}. {}: {w}", c.id, check.name);
            }
        }
    }
    println!();
    println!("timings:");
    println!("  corpus ({} graphs): {:.2?}", corpus.graphs().len(), build);
    for (id, t) in &times {
        println!("  criterion {id:>2}: {t:.2?}");
    }
    println!("  criterion 10: {again:.2?} for the second sweep (first took {suite:.2?})");

    if failed > 0 {
        println!("\n{failed} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
