use std::cmp::Ordering;

use proptest::prelude::*;

use parcay::builder::{build_sp, check_invariants};
use parcay::constructions::{bi_cayley, petersen_presentation, FiniteGroupTable};
use parcay::decompose::{is_multicycle, k_n_factorization, maximum_matching, two_factor, two_factorization};
use parcay::extract::bicayley_to_presentation;
use parcay::graph::{parse_graph, write_graph, ColouredGraph};
use parcay::infmatch::{
    compare, enumerate_matchings, maximal_matching_wrt_miss, miss_sequence, symmetric_difference_report, Exhaustion,
};
use parcay::presentation::{from_two_partite, parse, serialize};
use parcay::words::{invert, reduce, Alphabet, Letter};

fn small_graph(max_n: usize, max_e: usize) -> impl Strategy<Value = ColouredGraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |edges| ColouredGraph::plain(n, &edges))
    })
}

/// `2k`-regular multigraph: union of `k` permutation graphs.
fn even_regular() -> impl Strategy<Value = ColouredGraph> {
    (3..=9usize, 1..=3usize).prop_flat_map(|(n, k)| {
        proptest::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), k).prop_map(move |perms| {
            let edges: Vec<(usize, usize)> = perms.iter().flat_map(|p| (0..n).map(move |v| (v, p[v]))).collect();
            ColouredGraph::plain(n, &edges)
        })
    })
}

fn degrees(g: &ColouredGraph, edges: &[usize]) -> Vec<usize> {
    let mut d = vec![0; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        d[u] += 1;
        d[v] += 1;
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blossom_matches_brute_force(g in small_graph(9, 14)) {
        let best = enumerate_matchings(&g).iter().map(|m| m.size()).max().unwrap();
        prop_assert_eq!(maximum_matching(&g).size(), best);
    }

    #[test]
    fn two_factor_is_spanning_two_regular(g in even_regular()) {
        let f = two_factor(&g).unwrap();
        prop_assert!(degrees(&g, &f).iter().all(|&d| d == 2));
        let all = two_factorization(&g).unwrap();
        let mut used = all.concat();
        used.sort_unstable();
        prop_assert_eq!(used, (0..g.edge_count()).collect::<Vec<_>>());
    }

    #[test]
    fn graph_format_roundtrip(g in small_graph(8, 12)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn presentation_text_roundtrip(n in 3usize..9, k in 1usize..8) {
        prop_assume!(k < n);
        let p = from_two_partite(&petersen_presentation(n, k).unwrap()).unwrap();
        prop_assert_eq!(parse(&serialize(&p)).unwrap(), p);
    }

    #[test]
    fn petersen_builds_are_clean(n in 3usize..9, k in 1usize..8) {
        prop_assume!(k < n && (2 * k) % n != 0);
        let p = from_two_partite(&petersen_presentation(n, k).unwrap()).unwrap();
        let sp = build_sp(&p, 100_000).unwrap();
        prop_assert!(sp.closed);
        prop_assert_eq!(sp.graph.vertex_count(), 2 * n);
        prop_assert!(check_invariants(&sp.graph, &p).is_clean());
    }

    #[test]
    fn bicayley_builds_are_clean(n in 3usize..8, r in 1usize..4, s in 0usize..8) {
        let g = FiniteGroupTable::cyclic(n);
        let r = r % n;
        prop_assume!(r != 0 && 2 * r != n);
        let (rs, ls) = ([r, n - r], [n - r, r]);
        let s = [0, s % n];
        prop_assume!(bi_cayley(&g, &rs, &ls, &s).map(|h| h.is_connected()).unwrap_or(false));
        let tp = bicayley_to_presentation(&g, &rs, &ls, &s).unwrap();
        let p = from_two_partite(&tp).unwrap();
        let sp = build_sp(&p, 100_000).unwrap();
        prop_assert_eq!(sp.graph.vertex_count(), 2 * n);
        prop_assert!(check_invariants(&sp.graph, &p).is_clean());
    }

    #[test]
    fn reduction(ws in proptest::collection::vec((0usize..3, any::<bool>()), 0..20)) {
        let al = Alphabet::from_parts(&["a", "b"], &["c"]).unwrap();
        let raw: Vec<Letter> = ws.iter().map(|&(g, i)| Letter::new(g, i)).collect();
        let w = reduce(&raw, &al);
        prop_assert_eq!(reduce(w.letters(), &al), w.clone());
        let mut both = w.letters().to_vec();
        both.extend_from_slice(invert(&w, &al).letters());
        prop_assert!(reduce(&both, &al).is_empty());
    }

    #[test]
    fn compare_is_a_total_preorder(g in small_graph(6, 8), root in 0usize..6) {
        let root = root % g.vertex_count();
        prop_assume!(g.is_connected());
        let ex = Exhaustion::balls(&g, root, g.vertex_count()).unwrap();
        let ms = enumerate_matchings(&g);
        let ms = &ms[..ms.len().min(40)];
        for a in ms {
            for b in ms {
                let ab = compare(a, b, &ex);
                prop_assert_eq!(ab, compare(b, a, &ex).reverse());
                prop_assert_eq!(ab == Ordering::Equal, miss_sequence(a, &ex) == miss_sequence(b, &ex));
                for c in ms {
                    if ab != Ordering::Less && compare(b, c, &ex) != Ordering::Less {
                        prop_assert!(compare(a, c, &ex) != Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn staged_optimum_is_brute_force_optimum(g in small_graph(10, 14), root in 0usize..10) {
        let root = root % g.vertex_count();
        prop_assume!(g.is_connected());
        let ex = Exhaustion::balls(&g, root, g.vertex_count()).unwrap();
        let all = enumerate_matchings(&g);
        let staged = maximal_matching_wrt_miss(&g, &ex);
        for m in &all {
            prop_assert!(compare(&staged, m, &ex) != Ordering::Less);
        }
        prop_assert_eq!(staged.size(), maximum_matching(&g).size());
        let optima: Vec<_> = all.iter().filter(|m| compare(m, &staged, &ex) == Ordering::Equal).collect();
        for m in optima.iter().take(12) {
            prop_assert!(symmetric_difference_report(&g, &staged, m, &ex).is_consistent());
        }
    }
}

#[test]
fn complete_graph_factorizations() {
    for n in 2..=20 {
        let f = k_n_factorization(n);
        assert!(is_multicycle(&f.graph, &f.colouring), "K{n}");
    }
}
