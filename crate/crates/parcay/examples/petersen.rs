//! The Petersen graph as a partite Cayley graph of a two-class presentation.

use parcay::builder::{build_sp, vertex_group_order, DEFAULT_MAX_ROWS};
use parcay::constructions::{generalized_petersen, petersen_coloured, petersen_presentation};
use parcay::graph::{deck_group, is_cayley, is_vertex_transitive, isomorphic, IsoOptions};
use parcay::presentation::from_two_partite;

fn main() {
    let p = from_two_partite(&petersen_presentation(5, 2).unwrap()).unwrap();
    let sp = build_sp(&p, DEFAULT_MAX_ROWS).unwrap();
    let g = &sp.graph;
    println!("{} vertices, {} edges, closed: {}", g.vertex_count(), g.edge_count(), sp.closed);
    println!("rows defined {}, coincidences {}", sp.stats.rows_defined, sp.stats.coincidences);

    let want = petersen_coloured(5, 2).unwrap();
    println!("colour-preserving iso to P(5,2): {}", isomorphic(g, &want, IsoOptions::colours()).is_some());
    for x in 0..p.class_count() {
        println!("vertex group of class {x}: order {}", vertex_group_order(&p, x, DEFAULT_MAX_ROWS).unwrap());
    }
    println!("deck group order {}", deck_group(g).unwrap().len());

    let plain = generalized_petersen(5, 2).unwrap().uncoloured();
    println!("vertex-transitive: {}", is_vertex_transitive(&plain).unwrap());
    println!("Cayley: {}", is_cayley(&plain).unwrap().is_some());

    for (n, k) in [(6, 1), (7, 2), (8, 3), (6, 2)] {
        let p = from_two_partite(&petersen_presentation(n, k).unwrap()).unwrap();
        let sp = build_sp(&p, DEFAULT_MAX_ROWS).unwrap();
        let iso =
            isomorphic(&sp.graph.uncoloured(), &generalized_petersen(n, k).unwrap().uncoloured(), IsoOptions::plain());
        println!("P({n},{k}): {}", if iso.is_some() { "ok" } else { "mismatch" });
    }
}
