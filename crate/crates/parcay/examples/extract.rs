//! From coloured graphs back to presentations, and the roundtrip.

use parcay::builder::build_sp;
use parcay::constructions::{cube, FiniteGroupTable};
use parcay::extract::{bicayley_to_presentation, paired_bi_cayley, pipeline_presentation};
use parcay::graph::{isomorphic, IsoOptions};
use parcay::presentation::{from_two_partite, serialize};

fn main() {
    let g = cube();
    let p = pipeline_presentation(&g).unwrap();
    print!("{}", serialize(&p));
    let sp = build_sp(&p, 100_000).unwrap();
    let same = isomorphic(&sp.graph.uncoloured(), &g.uncoloured(), IsoOptions::plain()).is_some();
    println!("rebuilt cube isomorphic: {same}");

    // Bi(Z5, {1,4}, {2,3}, {0}) is the Petersen graph
    let z5 = FiniteGroupTable::cyclic(5);
    let tp = bicayley_to_presentation(&z5, &[1, 4], &[2, 3], &[0]).unwrap();
    println!("S1 = {:?}, I2 = {:?}, {} relators", tp.s1, tp.i2, tp.r0.len());
    let sp = build_sp(&from_two_partite(&tp).unwrap(), 100_000).unwrap();
    let bi = paired_bi_cayley(&z5, &[1, 4], &[2, 3], &[0]).unwrap();
    println!("colour-preserving iso to Bi: {}", isomorphic(&sp.graph, &bi, IsoOptions::colours()).is_some());
}
