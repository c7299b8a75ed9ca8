//! Hamiltonian decompositions and 1-factorizations of complete graphs.

use parcay::decompose::{is_multicycle, k_n_factorization};

fn main() {
    for n in [5, 6, 9, 12] {
        let f = k_n_factorization(n);
        println!("K{n}: {} colours, multicycle: {}", f.colouring.colour_count(), is_multicycle(&f.graph, &f.colouring));
    }
    let f = k_n_factorization(7);
    for c in 0..f.colouring.colour_count() {
        let edges: Vec<_> = f.colouring.edges_of(c).into_iter().map(|e| f.graph.endpoints(e)).collect();
        println!("{} {:?}", f.colouring.names[c], edges);
    }
}
