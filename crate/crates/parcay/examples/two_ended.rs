//! The cubic two-ended vertex-transitive graph on a finite window.

use parcay::constructions::{parse_auto_word, two_ended_window, verify_two_ended};

fn main() {
    let w = two_ended_window(-3, 3).unwrap();
    println!("window [-3,3]: {} vertices, {} edges", w.graph.vertex_count(), w.graph.edge_count());

    let stab = parse_auto_word("t^-3 s t s").unwrap();
    println!("v(0,0) -> {:?}, v(0,1) -> {:?}", stab.apply((0, 0)), stab.apply((0, 1)));

    let report = verify_two_ended(-6, 6).unwrap();
    for c in &report.checks {
        println!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}
