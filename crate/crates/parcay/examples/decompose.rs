//! 2-factorizations, matchings and weak multicycle colourings.

use parcay::constructions::{complete, cube, fig_reg, generalized_petersen};
use parcay::decompose::{is_partition_friendly, maximum_matching, two_factorization, weak_multicycle_colouring};

fn main() {
    let k7 = complete(7);
    let factors = two_factorization(&k7).unwrap();
    println!("K7 splits into {} 2-factors of {} edges", factors.len(), factors[0].len());

    for (name, g) in [("cube", cube()), ("P(5,2)", generalized_petersen(5, 2).unwrap())] {
        let col = weak_multicycle_colouring(&g).unwrap();
        println!("{name}: colours {:?}, partition friendly: {}", col.names, is_partition_friendly(&g, &col));
    }

    let g = fig_reg();
    let m = maximum_matching(&g);
    println!("fig_reg: maximum matching misses {:?}", m.missed_vertices());
    println!("fig_reg colouring: {}", weak_multicycle_colouring(&g).unwrap_err());
}
