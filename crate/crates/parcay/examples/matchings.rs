//! Miss sequences and lexicographically maximal matchings on windows.

use parcay::constructions::fig_reg;
use parcay::infmatch::{
    is_critical, maximal_matching_with_ties, miss_sequence, symmetric_difference_report, windowed_perfect_matching,
    Exhaustion, Family,
};

fn main() {
    let g = fig_reg();
    let ex = Exhaustion::balls(&g, 0, 5).unwrap();
    let ties: Vec<usize> = (0..g.vertex_count()).collect();
    let m = maximal_matching_with_ties(&g, &ex, &ties);
    println!("fig_reg staged optimum misses {:?}, sequence {:?}", m.missed_vertices(), miss_sequence(&m, &ex).0);
    println!("centre critical: {}", is_critical(&g, 0));

    let rev: Vec<usize> = ties.iter().rev().copied().collect();
    let other = maximal_matching_with_ties(&g, &ex, &rev);
    let report = symmetric_difference_report(&g, &m, &other, &ex);
    for c in &report.components {
        println!("{:?} of {} edges, end shells {:?}", c.kind, c.edges.len(), c.end_shells);
    }

    for n in 1..=5 {
        let w = windowed_perfect_matching(&Family::TwoEnded, n, 2).unwrap();
        println!("two-ended B_{n}: {} vertices covered", w.exhaustion.set(n).len());
    }
}
