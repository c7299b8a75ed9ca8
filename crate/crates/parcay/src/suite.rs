//! The acceptance battery, shared by `parcay suite` and the `acceptance` test
//! target. Each criterion owns its state, so they run on separate threads.

use std::cmp::Ordering;
use std::time::Instant;

use serde::Serialize;

use crate::builder::{build_sp, check_invariants, vertex_group_order, BuildError};
use crate::constructions::{
    cayley_graph, complete, complete_bipartite, cube, cycle, fig_reg, generalized_petersen, ladder, line_graph,
    line_graph_presentation, multi_cycle_figure, petersen_coloured, petersen_presentation, prism, verify_two_ended,
    FiniteGroupTable,
};
use crate::decompose::{
    k_n_factorization, maximum_matching, two_factor, two_factorization, weak_multicycle_colouring, DecomposeError,
};
use crate::extract::{bicayley_to_presentation, pipeline_presentation};
use crate::graph::{deck_group, is_cayley, is_vertex_transitive, isomorphic, ColouredGraph, IsoOptions};
use crate::infmatch::{
    compare, enumerate_matchings, maximal_matching_wrt_miss, symmetric_difference_report, windowed_perfect_matching,
    Exhaustion, Family,
};
use crate::presentation::{from_two_partite, parse, PartitePresentation};

pub const PETERSEN_PP: &str = include_str!("../fixtures/petersen.pp");
pub const LINE_PETERSEN_PP: &str = include_str!("../fixtures/line_petersen.pp");
pub const MULTI_CYCLE_PP: &str = include_str!("../fixtures/multi_cycle.pp");
pub const MULTI_CYCLE_QUOTIENT_PP: &str = include_str!("../fixtures/multi_cycle_quotient.pp");

/// Row budget for builds that are expected to close quickly.
const ROWS: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn() -> Result<String, String>;

const CRITERIA: [(&str, Check); 13] = [
    ("petersen presentation", petersen),
    ("petersen family sweep", petersen_sweep),
    ("vertex groups", vertex_groups),
    ("non-cayley petersen", non_cayley),
    ("multi-cycle figure", multi_cycle),
    ("line graph of petersen", line_petersen),
    ("d10 line graph", d10),
    ("decomposition", decomposition),
    ("roundtrip", roundtrip),
    ("two-ended certificate", two_ended),
    ("k_n factorizations", kn),
    ("matchings on windows", matchings),
    ("builder invariants", invariants),
];

pub fn criterion_names() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs one criterion, numbered from 1.
pub fn run_one(id: usize) -> Option<Outcome> {
    let (name, f) = *CRITERIA.get(id.checked_sub(1)?)?;
    let t = Instant::now();
    let res = f();
    let millis = t.elapsed().as_millis();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Outcome { id, name, passed, detail, millis })
}

pub fn run_all() -> Vec<Outcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA.len()).map(|i| s.spawn(move || run_one(i).expect("id"))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn plain_iso(g: &ColouredGraph, h: &ColouredGraph) -> bool {
    isomorphic(&g.uncoloured(), &h.uncoloured(), IsoOptions::plain()).is_some()
}

/// `(n, k)` with `3 <= n <= 8`, `1 <= k < n`, `2k != 0 mod n`.
pub fn petersen_parameters() -> Vec<(usize, usize)> {
    (3..=8).flat_map(|n| (1..n).map(move |k| (n, k))).filter(|&(n, k)| (2 * k) % n != 0).collect()
}

fn petersen() -> Result<String, String> {
    let p = parse(PETERSEN_PP).map_err(s)?;
    let sp = build_sp(&p, ROWS).map_err(s)?;
    let g = &sp.graph;
    ensure(sp.closed, "table did not close")?;
    ensure(
        (g.vertex_count(), g.edge_count()) == (10, 15),
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count()),
    )?;
    let want = petersen_coloured(5, 2).map_err(s)?;
    ensure(isomorphic(g, &want, IsoOptions::colours()).is_some(), "not colour-isomorphic to P(5,2)")?;
    Ok("10 vertices, 15 edges, closed, colour-preserving iso to P(5,2)".into())
}

fn petersen_sweep() -> Result<String, String> {
    let params = petersen_parameters();
    for &(n, k) in &params {
        let p = from_two_partite(&petersen_presentation(n, k).map_err(s)?).map_err(s)?;
        let sp = build_sp(&p, ROWS).map_err(s)?;
        let want = generalized_petersen(n, k).map_err(s)?;
        ensure(plain_iso(&sp.graph, &want), format!("P({n},{k}) mismatch"))?;
    }
    Ok(format!("{} parameter pairs", params.len()))
}

fn vertex_groups() -> Result<String, String> {
    let p = parse(PETERSEN_PP).map_err(s)?;
    for x in 0..p.class_count() {
        let o = vertex_group_order(&p, x, ROWS).map_err(s)?;
        ensure(o == 5, format!("vertex group of class {x} has order {o}"))?;
    }
    let sp = build_sp(&p, ROWS).map_err(s)?;
    let g = &sp.graph;
    let deck = deck_group(g).map_err(s)?;
    ensure(deck.len() == 5, format!("deck group has order {}", deck.len()))?;
    for u in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            if g.class_of(u) != g.class_of(v) {
                continue;
            }
            let hits = deck.iter().filter(|a| a.vertex_map[u] == v).count();
            ensure(hits == 1, format!("{hits} deck elements map {u} to {v}"))?;
        }
    }
    Ok("order 5 on both classes, deck group regular on each class".into())
}

fn non_cayley() -> Result<String, String> {
    let p52 = generalized_petersen(5, 2).map_err(s)?.uncoloured();
    ensure(is_vertex_transitive(&p52).map_err(s)?, "P(5,2) not vertex-transitive")?;
    ensure(is_cayley(&p52).map_err(s)?.is_none(), "P(5,2) has a regular subgroup")?;
    let p42 = generalized_petersen(4, 2).map_err(s)?.uncoloured();
    ensure(!is_vertex_transitive(&p42).map_err(s)?, "P(4,2) vertex-transitive")?;
    Ok("P(5,2) vertex-transitive and not Cayley; P(4,2) not vertex-transitive".into())
}

fn multi_cycle() -> Result<String, String> {
    let figure = multi_cycle_figure();
    let quotient = parse(MULTI_CYCLE_QUOTIENT_PP)
        .ok()
        .and_then(|p| build_sp(&p, ROWS).ok())
        .is_some_and(|sp| isomorphic(&sp.graph, &figure, IsoOptions::colours()).is_some());
    let note = format!("with b^2 added at both classes the figure is obtained: {quotient}");
    let p = parse(MULTI_CYCLE_PP).map_err(s)?;
    match build_sp(&p, ROWS) {
        Ok(sp) if isomorphic(&sp.graph, &figure, IsoOptions::colours()).is_some() => Ok("matches the figure".into()),
        Ok(sp) => Err(format!("built {} vertices, not the figure; {note}", sp.graph.vertex_count())),
        Err(BuildError::Overflow(n)) => {
            Err(format!("Sp is infinite (pi_1 of the complex is Z*Z/2); overflow at {n} rows; {note}"))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn line_petersen() -> Result<String, String> {
    let p = parse(LINE_PETERSEN_PP).map_err(s)?;
    let sp = build_sp(&p, ROWS).map_err(s)?;
    let g = &sp.graph;
    ensure(
        (g.vertex_count(), g.regular_degree()) == (15, Some(4)),
        format!("{} vertices, degree {:?}", g.vertex_count(), g.regular_degree()),
    )?;
    let want = line_graph(&generalized_petersen(5, 2).map_err(s)?).map_err(s)?;
    ensure(plain_iso(g, &want), "not isomorphic to L(P(5,2))")?;
    Ok("15 vertices, 4-regular, iso to L(P(5,2))".into())
}

fn d10() -> Result<String, String> {
    let rels = ["a^5", "b^2", "a b a^-1 b^-1"];
    let lp = line_graph_presentation(&[("a", false), ("b", false)], &rels).map_err(s)?;
    let first: Vec<String> = lp.first_kind.iter().map(|(_, w)| lp.render(w)).collect();
    ensure(first == ["e^{5}", "e^{2}", "m_{1,1}m_{1,-1}m_{-1,-1}m_{-1,1}"], format!("first kind {first:?}"))?;
    let star: Vec<String> = lp.star.iter().map(|(_, w)| lp.render(w)).collect();
    let want = ["em_{-1,1}m_{-1,-1}", "em_{-1,-1}m_{1,-1}", "m_{1,1}e^{-1}m_{1,-1}", "m_{-1,1}e^{-1}m_{1,1}"];
    ensure(star == want, format!("star {star:?}"))?;
    let sp = build_sp(&lp.presentation, ROWS).map_err(s)?;
    let cay = cayley_graph(&["a", "b"], &rels, ROWS).map_err(s)?;
    let want = line_graph(&cay).map_err(s)?;
    ensure(sp.graph.vertex_count() == 20, format!("{} vertices", sp.graph.vertex_count()))?;
    ensure(plain_iso(&sp.graph, &want), "not iso to the line graph")?;
    Ok("translations reproduced; 20 vertices, iso to L(Cay)".into())
}

fn is_two_factor(g: &ColouredGraph, edges: &[usize]) -> bool {
    let mut deg = vec![0; g.vertex_count()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&d| d == 2)
}

fn decomposition() -> Result<String, String> {
    let lp = line_graph(&generalized_petersen(5, 2).map_err(s)?).map_err(s)?;
    let even = [cycle(5), cycle(8), complete(5), complete(7), complete_bipartite(4, 4), lp.clone()];
    for g in &even {
        let f = two_factor(g).map_err(s)?;
        ensure(is_two_factor(g, &f), "two_factor is not spanning 2-regular")?;
        let all = two_factorization(g).map_err(s)?;
        let mut used: Vec<usize> = all.concat();
        used.sort_unstable();
        ensure(used == (0..g.edge_count()).collect::<Vec<_>>(), "factors do not partition the edges")?;
        ensure(all.iter().all(|f| is_two_factor(g, f)), "a factor is not 2-regular")?;
    }
    let mut vt: Vec<ColouredGraph> = (3..=12).map(cycle).collect();
    vt.extend([complete(4), complete(5), cube(), prism(3), prism(5), lp]);
    vt.push(generalized_petersen(5, 2).map_err(s)?);
    for g in &vt {
        ensure(is_vertex_transitive(g).map_err(s)?, "fixture not vertex-transitive")?;
        let m = maximum_matching(g);
        ensure(m.missed_vertices().len() <= 1, "maximum matching misses two vertices")?;
    }
    ensure(
        matches!(weak_multicycle_colouring(&fig_reg()), Err(DecomposeError::NoPerfectMatching)),
        "fig_reg did not report NoPerfectMatching",
    )?;
    Ok(format!("{} even-regular, {} vertex-transitive fixtures", even.len(), vt.len()))
}

/// The roundtrip corpus.
pub fn graph_corpus() -> Vec<(String, ColouredGraph)> {
    let mut out: Vec<(String, ColouredGraph)> = (3..=12).map(|n| (format!("C{n}"), cycle(n))).collect();
    out.push(("K4".into(), complete(4)));
    out.push(("K5".into(), complete(5)));
    out.push(("cube".into(), cube()));
    for n in 3..=6 {
        out.push((format!("prism{n}"), prism(n)));
    }
    for (n, k) in petersen_parameters() {
        out.push((format!("P({n},{k})"), generalized_petersen(n, k).expect("valid")));
    }
    let lp = line_graph(&generalized_petersen(5, 2).expect("valid")).expect("simple");
    out.push(("L(P(5,2))".into(), lp));
    out
}

fn roundtrip() -> Result<String, String> {
    let corpus = graph_corpus();
    for (name, g) in &corpus {
        let p = pipeline_presentation(g).map_err(|e| format!("{name}: {e}"))?;
        let sp = build_sp(&p, ROWS).map_err(|e| format!("{name}: {e}"))?;
        ensure(plain_iso(&sp.graph, g), format!("{name}: rebuilt graph differs"))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn two_ended() -> Result<String, String> {
    let r = verify_two_ended(-6, 6).map_err(s)?;
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), format!("failed: {}", failed.join(", ")))?;
    Ok(format!("{} checks on [-6,6]", r.checks.len()))
}

fn kn() -> Result<String, String> {
    use crate::decompose::is_multicycle;
    for n in 3..=12 {
        let f = k_n_factorization(n);
        ensure(is_multicycle(&f.graph, &f.colouring), format!("K{n}: not a multicycle colouring"))?;
        let (want, size) = if n % 2 == 1 { ((n - 1) / 2, n) } else { (n - 1, n / 2) };
        ensure(f.colouring.colour_count() == want, format!("K{n}: {} colours", f.colouring.colour_count()))?;
        for c in 0..want {
            let edges = f.colouring.edges_of(c);
            ensure(edges.len() == size, format!("K{n}: colour {c} has {} edges", edges.len()))?;
            if n % 2 == 1 {
                let pairs: Vec<(usize, usize)> = edges.iter().map(|&e| f.graph.endpoints(e)).collect();
                ensure(ColouredGraph::plain(n, &pairs).is_connected(), format!("K{n}: colour {c} not Hamiltonian"))?;
            }
        }
    }
    Ok("n = 3..12".into())
}

/// Small graphs used for the exhaustive matching checks.
pub fn matching_fixtures() -> Vec<(String, ColouredGraph)> {
    vec![
        ("P3".into(), ColouredGraph::plain(3, &[(0, 1), (1, 2)])),
        ("C6".into(), cycle(6)),
        ("C7".into(), cycle(7)),
        ("K4".into(), complete(4)),
        ("prism3".into(), prism(3)),
        ("cube".into(), cube()),
        ("ladder2".into(), ladder(2)),
        ("P(5,2)".into(), generalized_petersen(5, 2).expect("valid")),
        ("spider".into(), ColouredGraph::plain(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])),
        (
            "two-triangles".into(),
            ColouredGraph::plain(8, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (5, 7)]),
        ),
    ]
}

/// Staged optimum equals the brute-force maximum and optimal pairs have
/// consistent symmetric differences. Returns the number of optimal pairs.
pub fn check_staged(g: &ColouredGraph, ex: &Exhaustion) -> Result<usize, String> {
    let all = enumerate_matchings(g);
    let staged = maximal_matching_wrt_miss(g, ex);
    let best = all.iter().max_by(|a, b| compare(a, b, ex)).expect("empty matching");
    ensure(compare(&staged, best, ex) == Ordering::Equal, "staged optimum below brute force")?;
    let optima: Vec<_> = all.iter().filter(|m| compare(m, best, ex) == Ordering::Equal).collect();
    let mut pairs = 0;
    for (i, a) in optima.iter().enumerate() {
        for b in &optima[i + 1..] {
            let r = symmetric_difference_report(g, a, b, ex);
            ensure(r.is_consistent(), "inconsistent symmetric difference")?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn matchings() -> Result<String, String> {
    let mut pairs = 0;
    for (name, g) in matching_fixtures() {
        for root in 0..g.vertex_count() {
            let ex = Exhaustion::balls(&g, root, g.vertex_count()).map_err(s)?;
            pairs += check_staged(&g, &ex).map_err(|e| format!("{name} root {root}: {e}"))?;
        }
    }
    for n in 1..=5 {
        let w = windowed_perfect_matching(&Family::TwoEnded, n, 2).map_err(|e| format!("n = {n}: {e}"))?;
        ensure(w.covers_b_n(), format!("B_{n} not covered"))?;
    }
    Ok(format!("brute force agrees; {pairs} optimal pairs checked; B_1..B_5 covered"))
}

/// Every presentation the battery builds.
pub fn presentation_fixtures() -> Vec<(String, PartitePresentation)> {
    let mut out = Vec::new();
    for (name, text) in [
        ("petersen.pp", PETERSEN_PP),
        ("line_petersen.pp", LINE_PETERSEN_PP),
        ("multi_cycle_quotient.pp", MULTI_CYCLE_QUOTIENT_PP),
    ] {
        out.push((name.to_string(), parse(text).expect("fixture parses")));
    }
    for (n, k) in petersen_parameters() {
        let tp = petersen_presentation(n, k).expect("valid");
        out.push((format!("petersen({n},{k})"), from_two_partite(&tp).expect("valid")));
    }
    let lp = line_graph_presentation(&[("a", false), ("b", false)], &["a^5", "b^2", "a b a^-1 b^-1"]).expect("d10");
    out.push(("d10 line graph".into(), lp.presentation));
    let z5 = FiniteGroupTable::cyclic(5);
    let tp = bicayley_to_presentation(&z5, &[1, 4], &[2, 3], &[0]).expect("bi-cayley");
    out.push(("bi-cayley Z5".into(), from_two_partite(&tp).expect("valid")));
    let d4 = FiniteGroupTable::dihedral(4);
    let tp = bicayley_to_presentation(&d4, &[], &[], &[0, 4, 5]).expect("haar");
    out.push(("haar D4".into(), from_two_partite(&tp).expect("valid")));
    for (name, g) in [("C6", cycle(6)), ("K4", complete(4)), ("cube", cube()), ("prism4", prism(4))] {
        out.push((format!("extracted {name}"), pipeline_presentation(&g).expect("pipeline")));
    }
    out
}

fn invariants() -> Result<String, String> {
    let fixtures = presentation_fixtures();
    for (name, p) in &fixtures {
        let sp = build_sp(p, ROWS).map_err(|e| format!("{name}: {e}"))?;
        let rep = check_invariants(&sp.graph, p);
        ensure(rep.is_clean(), format!("{name}: {rep:?}"))?;
    }
    Ok(format!("{} presentations clean", fixtures.len()))
}
