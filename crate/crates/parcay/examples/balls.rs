//! Finite balls of an infinite partite Cayley graph.

use parcay::builder::{ball_sp, build_sp, Ball};
use parcay::presentation::parse;

fn main() {
    let p = parse(include_str!("../fixtures/multi_cycle.pp")).unwrap();
    match build_sp(&p, 50_000) {
        Ok(sp) => println!("closed with {} vertices", sp.graph.vertex_count()),
        Err(e) => println!("full build: {e}"),
    }
    for r in 1..=4 {
        let b = ball_sp(&p, r, 4, 50_000).unwrap();
        let frontier = b.frontier.iter().filter(|&&f| f).count();
        println!("radius {r}: {} vertices, {frontier} on the frontier", b.graph.vertex_count());
    }
    println!("note: {}", Ball::CAVEAT);
}
