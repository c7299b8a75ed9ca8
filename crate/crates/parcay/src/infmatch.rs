//! Matchings on finite windows of infinite graphs: exhaustions, miss
//! sequences, lexicographically maximal matchings and symmetric differences.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{ladder, two_ended_window, ConstructionError};
use crate::decompose::{blossom_matching, matching_from_mates, simple_adjacency, Matching};
use crate::graph::ColouredGraph;

#[derive(Debug, Error)]
pub enum InfMatchError {
    #[error("exhaustion set {0} is not contained in the next one")]
    NotNested(usize),
    #[error("exhaustion set {0} does not induce a connected graph")]
    NotConnected(usize),
    #[error("exhaustion has a vertex outside the graph")]
    BadVertex,
    #[error("family has no transitive automorphism supply")]
    NoTransitiveSupply,
    #[error("window misses {missed} vertices of B_{n}; widen the margin")]
    NotCovered { n: usize, missed: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Nested vertex sets `B_1 ⊆ B_2 ⊆ ... ⊆ B_m` of a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhaustion {
    sets: Vec<Vec<usize>>,
    /// `shell[v]`: least `t` with `v` in `B_t`, if any.
    shell: Vec<Option<usize>>,
}

impl Exhaustion {
    /// Checks nesting and that every set induces a connected subgraph.
    pub fn new(g: &ColouredGraph, sets: Vec<Vec<usize>>) -> Result<Self, InfMatchError> {
        let n = g.vertex_count();
        let mut shell = vec![None; n];
        for (t, b) in sets.iter().enumerate() {
            if b.iter().any(|&v| v >= n) {
                return Err(InfMatchError::BadVertex);
            }
            if t > 0 && sets[t - 1].iter().any(|v| !b.contains(v)) {
                return Err(InfMatchError::NotNested(t - 1));
            }
            if !g.induced(b).is_connected() {
                return Err(InfMatchError::NotConnected(t));
            }
            for &v in b {
                shell[v].get_or_insert(t);
            }
        }
        Ok(Exhaustion { sets, shell })
    }

    /// Balls of radius `0..=r` around `root`.
    pub fn balls(g: &ColouredGraph, root: usize, r: usize) -> Result<Self, InfMatchError> {
        let d = g.bfs_distances(root);
        let sets = (0..=r).map(|k| (0..g.vertex_count()).filter(|&v| d[v].is_some_and(|x| x <= k)).collect()).collect();
        Exhaustion::new(g, sets)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, t: usize) -> &[usize] {
        &self.sets[t]
    }

    pub fn shell(&self, v: usize) -> Option<usize> {
        self.shell[v]
    }

    fn contains_last(&self, v: usize) -> bool {
        self.shell[v].is_some()
    }
}

/// `m_t` = number of vertices of `B_t` the matching misses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissSequence(pub Vec<usize>);

pub fn miss_sequence(m: &Matching, ex: &Exhaustion) -> MissSequence {
    let seq: Vec<usize> = ex.sets.iter().map(|b| b.iter().filter(|&&v| m.missed(v)).count()).collect();
    debug_assert!(seq.windows(2).all(|w| w[0] <= w[1]));
    MissSequence(seq)
}

/// Lexicographic order in which fewer misses is greater.
pub fn compare(m1: &Matching, m2: &Matching, ex: &Exhaustion) -> Ordering {
    let (a, b) = (miss_sequence(m1, ex), miss_sequence(m2, ex));
    for (x, y) in a.0.iter().zip(&b.0) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A matching covering every vertex flagged in `keep`, if one exists. Vertices
/// outside `keep` may be absorbed by `def` dummy vertices forming a clique.
fn covering_mates(adj: &[Vec<usize>], keep: &[bool], def: usize) -> Option<Vec<Option<usize>>> {
    let n = adj.len();
    let mut big: Vec<Vec<usize>> = adj.to_vec();
    big.resize(n + def, Vec::new());
    for d in n..n + def {
        for v in 0..n {
            if !keep[v] {
                big[d].push(v);
                big[v].push(d);
            }
        }
        for e in n..n + def {
            if e != d {
                big[d].push(e);
            }
        }
    }
    let mate = blossom_matching(n + def, &big);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    Some(mate[..n].iter().map(|m| m.filter(|&w| w < n)).collect())
}

/// The maximum of the miss-sequence order: coverage of `B_1` is maximised
/// first, then of `B_2`, and so on; vertices outside the exhaustion come last.
pub fn maximal_matching_wrt_miss(g: &ColouredGraph, ex: &Exhaustion) -> Matching {
    let ties: Vec<usize> = (0..g.vertex_count()).collect();
    maximal_matching_with_ties(g, ex, &ties)
}

/// As [`maximal_matching_wrt_miss`], breaking ties inside a shell by
/// `ties[v]` (smaller first). Different tie orders give different optima with
/// the same miss sequence.
pub fn maximal_matching_with_ties(g: &ColouredGraph, ex: &Exhaustion, ties: &[usize]) -> Matching {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ex.shell(v).unwrap_or(usize::MAX), ties[v], v));
    // work on vertices renumbered by priority so the tie order also steers
    // which optimum the blossom search lands on
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut adj = vec![Vec::new(); n];
    for (v, a) in simple_adjacency(g).into_iter().enumerate() {
        adj[rank[v]] = a.into_iter().map(|w| rank[w]).collect();
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let def = blossom_matching(n, &adj).iter().filter(|m| m.is_none()).count();
    // coverable vertex sets form a matroid, so greedy in priority order is
    // optimal
    let mut keep = vec![false; n];
    let mut mate = vec![None; n];
    for v in 0..n {
        keep[v] = true;
        if mate[v].is_some() {
            continue;
        }
        if let Some(m) = covering_mates(&adj, &keep, def) {
            mate = m;
        } else {
            keep[v] = false;
        }
    }
    let back: Vec<Option<usize>> = (0..n).map(|v| mate[rank[v]].map(|w| order[w])).collect();
    matching_from_mates(g, &back)
}

/// Every maximum matching covers `v`.
pub fn is_critical(g: &ColouredGraph, v: usize) -> bool {
    let adj = simple_adjacency(g);
    let size = |adj: &[Vec<usize>]| blossom_matching(adj.len(), adj).iter().filter(|m| m.is_some()).count() / 2;
    let nu = size(&adj);
    let without: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(u, a)| if u == v { Vec::new() } else { a.iter().copied().filter(|&w| w != v).collect() })
        .collect();
    size(&without) < nu
}

/// All matchings of a small graph, by edge index; parallel edges count as
/// distinct matchings.
pub fn enumerate_matchings(g: &ColouredGraph) -> Vec<Matching> {
    fn rec(g: &ColouredGraph, e: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if e == g.edge_count() {
            out.push(Matching::from_edges(g, cur.clone()).expect("disjoint edges"));
            return;
        }
        rec(g, e + 1, used, cur, out);
        let (u, v) = g.endpoints(e);
        if u != v && !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push(e);
            rec(g, e + 1, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(g, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    EvenCycle,
    EvenPath,
    OddPath,
    /// Touches vertices outside the exhaustion; excluded from parity claims.
    Truncated,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffComponent {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Edges alternate between the two matchings along the component.
    pub alternating: bool,
    /// Shells of the end vertices of a path.
    pub end_shells: Option<(usize, usize)>,
}

impl DiffComponent {
    /// Interior even paths end in one shell.
    pub fn shell_condition(&self) -> bool {
        match (self.kind, self.end_shells) {
            (ComponentKind::EvenPath, Some((a, b))) => a == b,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymDiffReport {
    pub components: Vec<DiffComponent>,
}

impl SymDiffReport {
    /// No interior odd path, every component alternates, shell condition holds.
    pub fn is_consistent(&self) -> bool {
        self.components.iter().all(|c| c.kind != ComponentKind::OddPath && c.alternating && c.shell_condition())
    }
}

pub fn symmetric_difference_report(g: &ColouredGraph, m1: &Matching, m2: &Matching, ex: &Exhaustion) -> SymDiffReport {
    let mut owner = vec![0u8; g.edge_count()];
    for &e in &m1.edges {
        owner[e] |= 1;
    }
    for &e in &m2.edges {
        owner[e] |= 2;
    }
    let diff: Vec<usize> = (0..g.edge_count()).filter(|&e| owner[e] == 1 || owner[e] == 2).collect();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &e in &diff {
        let (u, v) = g.endpoints(e);
        inc[u].push(e);
        inc[v].push(e);
    }
    let mut seen_edge = vec![false; g.edge_count()];
    let mut components = Vec::new();
    for &e0 in &diff {
        if seen_edge[e0] {
            continue;
        }
        // walk to one end, then collect the component in order
        let (mut v, _) = g.endpoints(e0);
        let mut prev = e0;
        let mut guard = 0;
        while inc[v].len() == 2 && guard <= diff.len() {
            let next = if inc[v][0] == prev { inc[v][1] } else { inc[v][0] };
            if next == e0 {
                break;
            }
            let (a, b) = g.endpoints(next);
            v = if a == v { b } else { a };
            prev = next;
            guard += 1;
        }
        let start = v;
        let first = if inc[start].len() == 1 { inc[start][0] } else { e0 };
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let (mut cur, mut e) = (start, first);
        loop {
            seen_edge[e] = true;
            edges.push(e);
            let (a, b) = g.endpoints(e);
            cur = if a == cur { b } else { a };
            let next = inc[cur].iter().copied().find(|&x| x != e && !seen_edge[x]);
            match next {
                Some(x) => {
                    vertices.push(cur);
                    e = x;
                }
                None => {
                    if cur != start {
                        vertices.push(cur);
                    }
                    break;
                }
            }
        }
        let cycle = vertices.iter().all(|&x| inc[x].len() == 2);
        let alternating = edges.windows(2).all(|w| owner[w[0]] != owner[w[1]])
            && (!cycle || owner[edges[0]] != owner[*edges.last().unwrap()]);
        let truncated = vertices.iter().any(|&x| !ex.contains_last(x));
        let kind = if truncated {
            ComponentKind::Truncated
        } else if cycle {
            ComponentKind::EvenCycle
        } else if edges.len() % 2 == 0 {
            ComponentKind::EvenPath
        } else {
            ComponentKind::OddPath
        };
        let end_shells = (!cycle && !truncated).then(|| {
            let (a, b) = (vertices[0], *vertices.last().unwrap());
            (ex.shell(a).unwrap(), ex.shell(b).unwrap())
        });
        components.push(DiffComponent { kind, vertices, edges, alternating, end_shells });
    }
    SymDiffReport { components }
}

/// Windows with a transitive automorphism supply.
#[derive(Clone, Debug)]
pub enum Family {
    /// The two-ended cubic graph; `B_k` is the layers `-k..=k`.
    TwoEnded,
    /// `Z x K2`; `B_k` is the columns `-k..=k`.
    Ladder,
    /// A window with a given exhaustion. `translations` lists automorphisms
    /// (vertex maps) available to move vertices; one must be non-trivial.
    Custom { graph: Box<ColouredGraph>, exhaustion: Exhaustion, translations: Vec<Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct WindowMatching {
    pub graph: ColouredGraph,
    pub exhaustion: Exhaustion,
    pub matching: Matching,
    /// Index of `B_n` in the exhaustion.
    pub n: usize,
}

impl WindowMatching {
    pub fn covers_b_n(&self) -> bool {
        self.exhaustion.set(self.n).iter().all(|&v| !self.matching.missed(v))
    }
}

/// A matching of the window `B_{n+margin}` covering `B_n`: the staged optimum
/// of the miss order, checked for coverage.
pub fn windowed_perfect_matching(family: &Family, n: usize, margin: usize) -> Result<WindowMatching, InfMatchError> {
    let r = n + margin;
    let (graph, exhaustion) = match family {
        Family::TwoEnded => {
            let w = two_ended_window(-(r as i64), r as i64)?;
            let sets = (0..=r as i64).map(|k| w.ball(k)).collect();
            let ex = Exhaustion::new(&w.graph, sets)?;
            (w.graph, ex)
        }
        Family::Ladder => {
            let g = ladder(r);
            let sets = (0..=r).map(|k| (2 * (r - k)..2 * (r + k + 1)).collect()).collect();
            let ex = Exhaustion::new(&g, sets)?;
            (g, ex)
        }
        Family::Custom { graph, exhaustion, translations } => {
            if translations.iter().all(|t| t.iter().enumerate().all(|(i, &j)| i == j)) {
                return Err(InfMatchError::NoTransitiveSupply);
            }
            (graph.as_ref().clone(), exhaustion.clone())
        }
    };
    let n = n.min(exhaustion.len().saturating_sub(1));
    let matching = maximal_matching_wrt_miss(&graph, &exhaustion);
    let out = WindowMatching { graph, exhaustion, matching, n };
    if !out.covers_b_n() {
        let missed = out.exhaustion.set(n).iter().filter(|&&v| out.matching.missed(v)).count();
        return Err(InfMatchError::NotCovered { n, missed });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, fig_reg};
    use crate::decompose::maximum_matching;

    fn path3() -> ColouredGraph {
        ColouredGraph::plain(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn miss_sequences() {
        let p = path3();
        let ex = Exhaustion::new(&p, vec![vec![1], vec![0, 1, 2]]).unwrap();
        let m = Matching::from_edges(&p, vec![0]).unwrap();
        assert_eq!(miss_sequence(&m, &ex), MissSequence(vec![0, 1]));
        let empty = Matching::empty(3);
        assert_eq!(miss_sequence(&empty, &ex), MissSequence(vec![1, 3]));
        assert_eq!(compare(&m, &empty, &ex), Ordering::Greater);
        assert_eq!(compare(&m, &m, &ex), Ordering::Equal);
        let best = maximal_matching_wrt_miss(&p, &ex);
        assert!(!best.missed(1));
    }

    #[test]
    fn exhaustion_checks() {
        let p = path3();
        assert!(matches!(Exhaustion::new(&p, vec![vec![0, 2]]), Err(InfMatchError::NotConnected(0))));
        assert!(matches!(Exhaustion::new(&p, vec![vec![0], vec![1]]), Err(InfMatchError::NotNested(0))));
    }

    #[test]
    fn staged_is_maximum() {
        let g = fig_reg();
        let ex = Exhaustion::balls(&g, 0, 6).unwrap();
        let m = maximal_matching_wrt_miss(&g, &ex);
        assert_eq!(m.missed_vertices().len(), 22 - 2 * maximum_matching(&g).size());
        assert_eq!(m.missed_vertices().len(), 2);
    }

    #[test]
    fn critical() {
        let p = path3();
        assert!(is_critical(&p, 1));
        assert!(!is_critical(&p, 0));
        assert!(is_critical(&cycle(6), 0));
    }

    #[test]
    fn symmetric_difference() {
        let c = cycle(6);
        let ex = Exhaustion::balls(&c, 0, 3).unwrap();
        let m1 = Matching::from_edges(&c, vec![0, 2, 4]).unwrap();
        let m2 = Matching::from_edges(&c, vec![1, 3, 5]).unwrap();
        let r = symmetric_difference_report(&c, &m1, &m2, &ex);
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].kind, ComponentKind::EvenCycle);
        assert!(r.is_consistent());
        assert!(symmetric_difference_report(&c, &m1, &m1, &ex).components.is_empty());
    }

    #[test]
    fn windows() {
        let w = windowed_perfect_matching(&Family::Ladder, 3, 1).unwrap();
        assert!(w.matching.is_perfect());
        let t = windowed_perfect_matching(&Family::TwoEnded, 3, 2).unwrap();
        assert_eq!(t.exhaustion.set(3).len(), 70);
        assert!(t.covers_b_n());
    }
}
