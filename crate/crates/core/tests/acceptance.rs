use std::time::Duration;

use tl_core::generate::Bounds;
use tl_core::suites::run_suite;

struct Criterion {
    id: u8,
    suite: &'static str,
    trials: u64,
    max_rank: usize,
    target: Duration,
    what: &'static str,
}

const SEED: u64 = 20_240_601;

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, suite: "signmod4", trials: 1000, max_rank: 8, target: Duration::from_secs(30), what: "sign ≡ 2τ + (2k+1)χ mod 4 on 1000 symmetric complexes" },
    Criterion { id: 2, suite: "det-mod4", trials: 1000, max_rank: 8, target: Duration::from_secs(10), what: "sign ≡ rank + det − 1 and 2τ ≡ det − 1 mod 4 on 1000 forms" },
    Criterion { id: 3, suite: "mod8", trials: 200, max_rank: 8, target: Duration::from_secs(10), what: "even unimodular forms have signature ≡ 0 mod 8 (200 forms)" },
    Criterion { id: 4, suite: "torsion-axioms", trials: 500, max_rank: 3, target: Duration::from_secs(30), what: "composition, sum and homotopy invariance, 500 each, plus predicted torsion" },
    Criterion { id: 5, suite: "product-formula", trials: 300, max_rank: 4, target: Duration::from_secs(30), what: "τ(X⊗Y) = χ(X)τ(Y) + χ(Y)τ(X) on 300 pairs, τ(⟨1⟩⊗H) = 1" },
    Criterion { id: 6, suite: "invariance", trials: 300, max_rank: 4, target: Duration::from_secs(60), what: "300 filtered contractibles, 300 filtered equivalences, ρ simple" },
    Criterion { id: 7, suite: "filtered-dual", trials: 200, max_rank: 3, target: Duration::from_secs(30), what: "θ simple and structural dual identity on 200 admissible complexes and the tensors" },
    Criterion { id: 8, suite: "fixtures", trials: 1, max_rank: 4, target: Duration::from_secs(1), what: "τ(H) = 1, σ(E8) = 8, χ(round) = 0, τ(round) = 1" },
    Criterion { id: 9, suite: "invariants", trials: 200, max_rank: 8, target: Duration::from_secs(20), what: "τ and σ unchanged under η-flip and basis change (200 complexes)" },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in CRITERIA {
        let report = run_suite(c.suite, c.trials, SEED, Bounds { max_rank: c.max_rank, max_degree: 4 }).expect("known suite");
        let elapsed = Duration::from_secs_f64(report.elapsed_secs);
        let in_time = elapsed < c.target;
        let ok = report.pass && in_time && report.trials == c.trials;
        println!(
            "[{}] {} {:<16} {}: {} checks, {} failures, exact equality, {:.3}s (target < {}s)",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.suite,
            c.what,
            report.checks,
            report.failures.len(),
            report.elapsed_secs,
            c.target.as_secs()
        );
        for f in report.failures.iter().take(3) {
            println!("      trial {}: {} expected {} got {}", f.trial, f.check, f.expected, f.actual);
        }
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
