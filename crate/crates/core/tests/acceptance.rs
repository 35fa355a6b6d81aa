//! One line per acceptance criterion; exits nonzero if any fails.

use irredcert::selftest::{run_all, DEFAULT_SEED};

fn main() {
    let outcomes = run_all(DEFAULT_SEED);
    for o in &outcomes {
        println!("{o} ({:.3}s)", o.elapsed.as_secs_f64());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
