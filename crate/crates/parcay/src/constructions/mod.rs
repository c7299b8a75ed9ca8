//! Graph and presentation families: generalized Petersen graphs, bi-Cayley
//! and Haar graphs, line graphs and their presentations, the two-ended cubic
//! graph, and small fixtures.

use thiserror::Error;

use crate::builder::{build_sp, BuildError};
use crate::graph::ColouredGraph;
use crate::presentation::{PresentationError, TwoPartitePresentation};
use crate::words::{Alphabet, ClassAction, GenKind, Letter, WordError};

mod line;
mod two_ended;

pub use line::{line_graph, line_graph_presentation, LineGraphPresentation};
pub use two_ended::{
    parse_auto_word, two_ended_auto, two_ended_window, verify_two_ended, AutoName, Check, TwoEndedReport,
    TwoEndedWindow, V,
};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("{0} is not closed under inverses")]
    NotSymmetric(&'static str),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("line graphs of graphs with loops are not supported")]
    LoopsUnsupported,
    #[error("the Cayley graph is infinite or too large ({0} rows)")]
    InfiniteCayleyGraph(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `P(n,k)` with colours `outer`, `spoke`, `inner`. Vertex `i` is `x_i`,
/// vertex `n + i` is `y_i`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<ColouredGraph, ConstructionError> {
    if n < 3 || k == 0 || k >= n {
        return Err(ConstructionError::BadParameters(format!("P({n},{k}) needs n >= 3 and 1 <= k < n")));
    }
    let palette = Alphabet::from_parts(&[], &["outer", "spoke", "inner"])?;
    let mut g = ColouredGraph::with_vertices(palette, 2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, Letter::new(0, false));
    }
    for i in 0..n {
        g.add_edge(i, n + i, Letter::new(1, false));
    }
    for i in 0..n {
        g.add_edge(n + i, n + (i + k) % n, Letter::new(2, false));
    }
    Ok(g)
}

/// `<{a}, {}, {b} | {a^n, a b a^k b}, {a^n}>`.
pub fn petersen_presentation(n: usize, k: usize) -> Result<TwoPartitePresentation, ConstructionError> {
    if n < 3 || k == 0 || k >= n {
        return Err(ConstructionError::BadParameters(format!("P({n},{k}) needs n >= 3 and 1 <= k < n")));
    }
    let an = format!("a^{n}");
    let rel = format!("a b a^{k} b");
    Ok(TwoPartitePresentation::parse(&["a"], &[], &["b"], &[&an, &rel], &[&an])?)
}

/// `P(n,k)` coloured like the partite Cayley graph of
/// [`petersen_presentation`]: outer edges `a` along `x_i -> x_{i+1}`, spokes
/// `b`, inner edges `a` oriented so that `a^k` steps `y_{i+1} -> y_i`.
/// Needs `gcd(n, k) = 1`.
pub fn petersen_coloured(n: usize, k: usize) -> Result<ColouredGraph, ConstructionError> {
    if n < 3 || k == 0 || k >= n {
        return Err(ConstructionError::BadParameters(format!("P({n},{k}) needs n >= 3 and 1 <= k < n")));
    }
    // inner a-step t with k t = -1 mod n
    let t = (1..n)
        .find(|&t| (k * t) % n == n - 1)
        .ok_or_else(|| ConstructionError::BadParameters(format!("gcd({n},{k}) != 1")))?;
    let palette = Alphabet::from_parts(&["a"], &["b"])?;
    let mut g = ColouredGraph::with_vertices(palette, 2 * n);
    let a = Letter::new(0, false);
    let b = Letter::new(1, false);
    for i in 0..n {
        g.set_class(i, "0");
    }
    for i in 0..n {
        g.set_class(n + i, "1");
    }
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, a);
    }
    for i in 0..n {
        g.add_edge(i, n + i, b);
    }
    for i in 0..n {
        g.add_edge(n + i, n + (i + t) % n, a);
    }
    Ok(g)
}

/// Multiplication table of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, ConstructionError> {
        let n = names.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(ConstructionError::NotAGroup("table is not n x n over the elements".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| ConstructionError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| mul[x][y] == identity && mul[y][x] == identity)
                .ok_or_else(|| ConstructionError::NotAGroup(format!("{} has no inverse", names[x])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(ConstructionError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { names, mul, identity, inverse })
    }

    /// `Z/n`, elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable::from_table(names, mul).expect("cyclic group")
    }

    /// Dihedral group of order `2n`; element `i + n j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..2 * n).map(|x| if x < n { format!("r{x}") } else { format!("r{}s", x - n) }).collect();
        // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
        let mul = (0..2 * n)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                (0..2 * n)
                    .map(|y| {
                        let (k, l) = (y % n, y / n);
                        let r = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                        r + n * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroupTable::from_table(names, mul).expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Splits a symmetric set into inverse pairs (represented by their smaller
/// element) and involutions, both in increasing order.
pub(crate) fn inverse_pairs(g: &FiniteGroupTable, set: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let mut reps = Vec::new();
    let mut invols = Vec::new();
    for &x in &s {
        let y = g.inv(x);
        if y == x {
            invols.push(x);
        } else if x < y {
            reps.push(x);
        }
    }
    (reps, invols)
}

fn check_subset(g: &FiniteGroupTable, set: &[usize], what: &'static str) -> Result<(), ConstructionError> {
    if set.iter().any(|&x| x >= g.order()) {
        return Err(ConstructionError::BadParameters(format!("{what} has an element outside the group")));
    }
    if set.iter().any(|&x| !set.contains(&g.inv(x))) {
        return Err(ConstructionError::NotSymmetric(what));
    }
    Ok(())
}

/// `Bi(G, R, L, S)`. Vertex `g` is `(g)_0`, vertex `|G| + g` is `(g)_1`.
/// Colours: `r1, r2, ..` for inverse pairs and involutions of `R` (directed
/// `g -> g r` along the smaller element), `l1, ..` likewise for `L`, and
/// involutive `s1, ..` for `S`.
pub fn bi_cayley(
    g: &FiniteGroupTable,
    r: &[usize],
    l: &[usize],
    s: &[usize],
) -> Result<ColouredGraph, ConstructionError> {
    check_subset(g, r, "R")?;
    check_subset(g, l, "L")?;
    if r.contains(&g.identity()) || l.contains(&g.identity()) {
        return Err(ConstructionError::BadParameters("R and L must not contain the identity".into()));
    }
    if s.iter().any(|&x| x >= g.order()) {
        return Err(ConstructionError::BadParameters("S has an element outside the group".into()));
    }
    let n = g.order();
    let mut out = ColouredGraph::with_vertices(Alphabet::new(), 2 * n);
    for v in 0..n {
        out.set_class(v, "0");
    }
    for v in 0..n {
        out.set_class(n + v, "1");
    }
    for (side, set, prefix) in [(0, r, "r"), (1, l, "l")] {
        let (reps, invols) = inverse_pairs(g, set);
        let mut idx = 0;
        for x in reps {
            idx += 1;
            let c = out.ensure_colour(&format!("{prefix}{idx}"), GenKind::U);
            for h in 0..n {
                out.add_edge(side * n + h, side * n + g.mul(h, x), Letter::new(c, false));
            }
        }
        for x in invols {
            idx += 1;
            let c = out.ensure_colour(&format!("{prefix}{idx}"), GenKind::I);
            for h in 0..n {
                if h < g.mul(h, x) {
                    out.add_edge(side * n + h, side * n + g.mul(h, x), Letter::new(c, false));
                }
            }
        }
    }
    let mut sorted_s = s.to_vec();
    sorted_s.sort_unstable();
    sorted_s.dedup();
    for (j, &x) in sorted_s.iter().enumerate() {
        let c = out.ensure_colour(&format!("s{}", j + 1), GenKind::I);
        for h in 0..n {
            out.add_edge(h, n + g.mul(h, x), Letter::new(c, false));
        }
    }
    Ok(out)
}

/// The Haar graph `Bi(G, {}, {}, S)`.
pub fn haar(g: &FiniteGroupTable, s: &[usize]) -> Result<ColouredGraph, ConstructionError> {
    bi_cayley(g, &[], &[], s)
}

/// Cayley graph of `<gens | relators>` by coset enumeration; every generator
/// is directed, so an element of order 2 gives doubled edges.
pub fn cayley_graph(gens: &[&str], relators: &[&str], max_rows: usize) -> Result<ColouredGraph, ConstructionError> {
    let alphabet = Alphabet::from_parts(gens, &[])?;
    let action = ClassAction::trivial(&alphabet);
    let rels = relators.iter().map(|r| crate::words::parse_word(r, &alphabet)).collect::<Result<Vec<_>, _>>()?;
    let p = crate::presentation::PartitePresentation::new(vec!["0".into()], alphabet, action, vec![rels]);
    match build_sp(&p, max_rows) {
        Ok(sp) => Ok(sp.graph),
        Err(BuildError::Overflow(n)) => Err(ConstructionError::InfiniteCayleyGraph(n)),
        Err(e) => Err(e.into()),
    }
}

pub fn cycle(n: usize) -> ColouredGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    ColouredGraph::plain(n, &edges)
}

pub fn complete(n: usize) -> ColouredGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    ColouredGraph::plain(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> ColouredGraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    ColouredGraph::plain(a + b, &edges)
}

/// Prism over `C_n`, i.e. `P(n,1)` without colours.
pub fn prism(n: usize) -> ColouredGraph {
    generalized_petersen(n, 1).expect("n >= 3").uncoloured()
}

/// The 3-cube.
pub fn cube() -> ColouredGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    ColouredGraph::plain(8, &edges)
}

/// Ladder window `Z x K2` restricted to columns `-n..=n`: vertex `2(i + n) + j`
/// is `(i, j)`.
pub fn ladder(n: usize) -> ColouredGraph {
    let cols = 2 * n + 1;
    let mut edges = Vec::new();
    for c in 0..cols {
        edges.push((2 * c, 2 * c + 1));
        if c + 1 < cols {
            edges.push((2 * c, 2 * c + 2));
            edges.push((2 * c + 1, 2 * c + 3));
        }
    }
    ColouredGraph::plain(2 * cols, &edges)
}

/// Cubic graph on 22 vertices without a perfect matching: a centre joined to
/// three copies of a 7-vertex gadget.
pub fn fig_reg() -> ColouredGraph {
    const BLOCK: [(usize, usize); 10] =
        [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 5), (4, 7), (5, 6), (6, 7)];
    let mut edges = Vec::new();
    for b in 0..3 {
        let base = 7 * b;
        edges.push((0, base + 1));
        for (u, v) in BLOCK {
            edges.push((base + u, base + v));
        }
    }
    ColouredGraph::plain(22, &edges)
}

/// The 4-vertex multigraph with loops and doubled edges: two end vertices of
/// class `0` carrying an `a`-loop, a doubled `a`-edge between the two middle
/// vertices of class `1`, and `b`-edges in both directions between classes.
pub fn multi_cycle_figure() -> ColouredGraph {
    let palette = Alphabet::from_parts(&["a", "b"], &[]).expect("names");
    let mut g = ColouredGraph::with_vertices(palette, 4);
    for (v, c) in [(0, "0"), (1, "1"), (2, "1"), (3, "0")] {
        g.set_class(v, c);
    }
    let a = Letter::new(0, false);
    let b = Letter::new(1, false);
    for (u, v, l) in [(0, 0, a), (0, 1, b), (1, 0, b), (1, 2, a), (2, 1, a), (2, 3, b), (3, 2, b), (3, 3, a)] {
        g.add_edge(u, v, l);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_vertex_transitive, isomorphic, IsoOptions};

    #[test]
    fn petersen_family() {
        let p = generalized_petersen(5, 2).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert_eq!(p.regular_degree(), Some(3));
        let q = generalized_petersen(4, 1).unwrap();
        assert!(isomorphic(&q.uncoloured(), &cube(), IsoOptions::plain()).is_some());
        let r = generalized_petersen(4, 2).unwrap();
        assert_eq!(r.multiplicity(4, 6), 2);
        assert!(!is_vertex_transitive(&r.uncoloured()).unwrap());
        assert!(generalized_petersen(2, 1).is_err());
    }

    #[test]
    fn groups() {
        let d5 = FiniteGroupTable::dihedral(5);
        assert_eq!(d5.order(), 10);
        let s = d5.element("r0s").unwrap();
        assert_eq!(d5.inv(s), s);
        assert!(FiniteGroupTable::from_table(vec!["x".into(), "y".into()], vec![vec![0, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn bi_cayley_examples() {
        let z5 = FiniteGroupTable::cyclic(5);
        let g = bi_cayley(&z5, &[1, 4], &[2, 3], &[0]).unwrap();
        let p = generalized_petersen(5, 2).unwrap();
        assert!(isomorphic(&g.uncoloured(), &p.uncoloured(), IsoOptions::plain()).is_some());
        let z3 = FiniteGroupTable::cyclic(3);
        let k33 = haar(&z3, &[0, 1, 2]).unwrap();
        assert!(isomorphic(&k33.uncoloured(), &complete_bipartite(3, 3), IsoOptions::plain()).is_some());
        let m = haar(&z3, &[0]).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (6, 3));
        assert!(matches!(bi_cayley(&z5, &[1], &[], &[]), Err(ConstructionError::NotSymmetric("R"))));
    }

    #[test]
    fn fixtures() {
        let f = fig_reg();
        assert_eq!(f.vertex_count(), 22);
        assert_eq!(f.regular_degree(), Some(3));
        assert!(f.is_connected());
        let m = multi_cycle_figure();
        assert_eq!(m.regular_degree(), Some(4));
        assert_eq!(ladder(2).vertex_count(), 10);
        let d10 = cayley_graph(&["a", "b"], &["a^5", "b^2", "a b a^-1 b^-1"], 1000).unwrap();
        assert_eq!((d10.vertex_count(), d10.edge_count()), (10, 20));
        assert!(matches!(cayley_graph(&["a"], &[], 100), Err(ConstructionError::InfiniteCayleyGraph(_))));
    }
}
