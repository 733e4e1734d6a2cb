//! The verification harness as a library: sample a deterministic domain,
//! run the law suites (compositional route vs closed forms, algebraic laws,
//! calculus and entropy identities), and inspect the machine-readable
//! verdict.
//!
//! Run with `cargo run --example verify_report`.

use qdeform::verify::{full_suite, to_json, verdict, SampleDomain};

fn main() {
    let mut domain = SampleDomain::with_seed(42);
    domain.count = 150;

    println!(
        "sampling {} points per law, q in [{}, {}], operands in [{}, {}]\n",
        domain.count, domain.q_range.0, domain.q_range.1, domain.x_range.0, domain.x_range.1
    );

    let laws = full_suite(&domain);
    println!(
        "{:<44} {:>8} {:>7} {:>6} {:>13} {:>6}",
        "law", "samples", "passes", "skips", "max residual", "pass"
    );
    for law in &laws {
        let flag = if law.pass { "ok" } else { "FAIL" };
        let note = if law.expect_counterexample {
            " (passes by failing)"
        } else {
            ""
        };
        println!(
            "{:<44} {:>8} {:>7} {:>6} {:>13.3e} {:>6}{note}",
            law.law, law.samples, law.passes, law.skips, law.max_residual, flag
        );
    }

    let v = verdict("all", &domain, laws);
    println!(
        "\nsuite '{}' seed {}: all_pass = {}",
        v.suite, v.seed, v.all_pass
    );

    let json = to_json(&v);
    let first: String = json.lines().take(12).collect::<Vec<_>>().join("\n");
    println!("\nJSON report (first lines — same bytes for the same seed):\n{first}\n...");
}
