//! One PASS/FAIL line per acceptance criterion.

fn main() {
    let results = parcay::suite::run_all();
    for r in &results {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {:<24} {:>7} ms  {}", r.id, r.name, r.millis, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
}
