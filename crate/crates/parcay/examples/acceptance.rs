//! Runs the acceptance battery; `cargo run --example acceptance -- 7` runs one.

fn main() {
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let results = match only {
        Some(i) => parcay::suite::run_one(i).into_iter().collect(),
        None => parcay::suite::run_all(),
    };
    for r in results {
        println!("{:>2} {} {} ({} ms): {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.millis, r.detail);
    }
}
