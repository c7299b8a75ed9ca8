//! Line graphs of Cayley graphs as partite Cayley graphs.

use parcay::builder::build_sp;
use parcay::constructions::{cayley_graph, generalized_petersen, line_graph, line_graph_presentation};
use parcay::graph::{isomorphic, IsoOptions};
use parcay::presentation::parse;

fn main() {
    let rels = ["a^5", "b^2", "a b a^-1 b^-1"];
    let lp = line_graph_presentation(&[("a", false), ("b", false)], &rels).unwrap();
    for (x, w) in &lp.first_kind {
        println!("first kind at {}: {}", lp.presentation.classes[*x], lp.render(w));
    }
    for (x, w) in &lp.star {
        println!("star at {}: {}", lp.presentation.classes[*x], lp.render(w));
    }
    let sp = build_sp(&lp.presentation, 100_000).unwrap();
    let want = line_graph(&cayley_graph(&["a", "b"], &rels, 100_000).unwrap()).unwrap();
    let iso = isomorphic(&sp.graph.uncoloured(), &want, IsoOptions::plain()).is_some();
    println!("{} vertices, iso to the line graph: {iso}", sp.graph.vertex_count());

    // L(P(5,2)) has no multicycle colouring but is a partite Cayley graph
    let p = parse(include_str!("../fixtures/line_petersen.pp")).unwrap();
    let sp = build_sp(&p, 100_000).unwrap();
    let lp = line_graph(&generalized_petersen(5, 2).unwrap()).unwrap();
    let iso = isomorphic(&sp.graph.uncoloured(), &lp, IsoOptions::plain()).is_some();
    println!("L(P(5,2)): {} vertices, degree {:?}, iso: {iso}", sp.graph.vertex_count(), sp.graph.regular_degree());
}
