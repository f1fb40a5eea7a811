//! Runs every seeded claim suite with a small trial count.

use rpotent::verify::{run_claim, VerifyOptions, CLAIMS};

fn main() -> rpotent::Result<()> {
    let opts = VerifyOptions { trials: 20, ..Default::default() };
    for (id, _) in CLAIMS {
        let report = run_claim(id, &opts)?;
        println!(
            "{:>4} {:<4} {}/{} passed  {}",
            id,
            if report.all_passed() { "ok" } else { "FAIL" },
            report.passed,
            report.trials,
            report.claim
        );
    }
    Ok(())
}
