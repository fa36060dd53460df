//! Runs every suite with default parameters and prints failures and timings.

use dualsym::suites::{run, Suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig::default();
    for s in Suite::EACH {
        let t = std::time::Instant::now();
        let r = run(s, &cfg);
        println!("{s}: {} checks, {} failed, {:?}", r.checks.len(), r.failures(), t.elapsed());
        for c in r.checks.iter().filter(|c| !c.pass) {
            println!("  FAIL {} {}", c.name, c.detail);
        }
    }
}
