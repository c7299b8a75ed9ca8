//! Edge decompositions: balanced orientations, 2-factors, maximum matchings,
//! partition-friendly weak multicycle colourings and factorizations of `K_n`.

use thiserror::Error;

use crate::graph::ColouredGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("graph is not regular of even positive degree")]
    NotEvenRegular,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("colouring has {got} entries for {want} edges")]
    BadColouring { got: usize, want: usize },
}

/// A colour per undirected edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    pub colour: Vec<usize>,
    pub names: Vec<String>,
}

impl EdgeColouring {
    pub fn new(colour: Vec<usize>, names: Vec<String>) -> Self {
        debug_assert!(colour.iter().all(|&c| c < names.len()));
        EdgeColouring { colour, names }
    }

    /// Colours from string labels, numbered in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        let mut names: Vec<String> = Vec::new();
        let colour = labels
            .iter()
            .map(|l| match names.iter().position(|n| n == l.as_ref()) {
                Some(i) => i,
                None => {
                    names.push(l.as_ref().to_string());
                    names.len() - 1
                }
            })
            .collect();
        EdgeColouring { colour, names }
    }

    pub fn colour_count(&self) -> usize {
        self.names.len()
    }

    pub fn edges_of(&self, c: usize) -> Vec<usize> {
        (0..self.colour.len()).filter(|&e| self.colour[e] == c).collect()
    }

    /// Degree of every vertex in the subgraph of colour `c`.
    pub fn class_degrees(&self, g: &ColouredGraph, c: usize) -> Vec<usize> {
        let mut deg = vec![0; g.vertex_count()];
        for e in self.edges_of(c) {
            let (u, v) = g.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Common degree of colour `c`, if its subgraph is regular.
    pub fn class_degree(&self, g: &ColouredGraph, c: usize) -> Option<usize> {
        let d = self.class_degrees(g, c);
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    fn check(&self, g: &ColouredGraph) -> Result<(), DecomposeError> {
        if self.colour.len() != g.edge_count() {
            return Err(DecomposeError::BadColouring { got: self.colour.len(), want: g.edge_count() });
        }
        Ok(())
    }
}

/// A set of pairwise disjoint non-loop edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn from_edges(g: &ColouredGraph, edges: Vec<usize>) -> Option<Self> {
        let mut mate = vec![None; g.vertex_count()];
        for &e in &edges {
            let (u, v) = g.endpoints(e);
            if u == v || mate[u].is_some() || mate[v].is_some() {
                return None;
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        Some(Matching { edges, mate })
    }

    pub fn empty(n: usize) -> Self {
        Matching { edges: Vec::new(), mate: vec![None; n] }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn missed(&self, v: usize) -> bool {
        self.mate[v].is_none()
    }

    pub fn missed_vertices(&self) -> Vec<usize> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }
}

/// One dart per edge with in-degree equal to out-degree everywhere, read
/// off Euler circuits of each component.
pub fn euler_orientation(g: &ColouredGraph) -> Result<Vec<usize>, DecomposeError> {
    let active = vec![true; g.edge_count()];
    euler_orientation_on(g, &active)
}

fn euler_orientation_on(g: &ColouredGraph, active: &[bool]) -> Result<Vec<usize>, DecomposeError> {
    let n = g.vertex_count();
    let mut deg = vec![0; n];
    for e in 0..g.edge_count() {
        if active[e] {
            let (u, v) = g.endpoints(e);
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| deg[v] % 2 == 1) {
        return Err(DecomposeError::OddDegree(v));
    }
    let out: Vec<Vec<usize>> = (0..n).map(|v| g.out_darts(v).filter(|&d| active[d / 2]).collect()).collect();
    let mut used = vec![false; g.edge_count()];
    let mut ptr = vec![0usize; n];
    let mut orientation = Vec::new();
    for s in 0..n {
        let mut stack: Vec<(usize, Option<usize>)> = vec![(s, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, din)) = stack.last() {
            while ptr[v] < out[v].len() && used[out[v][ptr[v]] / 2] {
                ptr[v] += 1;
            }
            if ptr[v] < out[v].len() {
                let d = out[v][ptr[v]];
                used[d / 2] = true;
                stack.push((g.tau(d), Some(d)));
            } else {
                stack.pop();
                if let Some(d) = din {
                    circuit.push(d);
                }
            }
        }
        circuit.reverse();
        orientation.extend(circuit);
    }
    Ok(orientation)
}

/// Spanning 2-regular subgraph of a `2k`-regular graph, as edge indices.
pub fn two_factor(g: &ColouredGraph) -> Result<Vec<usize>, DecomposeError> {
    match g.regular_degree() {
        Some(d) if d > 0 && d % 2 == 0 => {}
        _ => return Err(DecomposeError::NotEvenRegular),
    }
    two_factor_on(g, &vec![true; g.edge_count()])
}

/// Orient along Euler circuits, split each vertex into an out-copy and an
/// in-copy, and take a perfect matching of the resulting k-regular bipartite
/// graph.
fn two_factor_on(g: &ColouredGraph, active: &[bool]) -> Result<Vec<usize>, DecomposeError> {
    let n = g.vertex_count();
    let orient = euler_orientation_on(g, active)?;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &d in &orient {
        adj[g.origin(d)].push((g.tau(d), d / 2));
    }
    let m = bipartite_matching(n, n, &adj.iter().map(|a| a.iter().map(|x| x.0).collect()).collect::<Vec<_>>());
    let mut edges = Vec::with_capacity(n);
    for u in 0..n {
        let v = m[u].ok_or(DecomposeError::NotEvenRegular)?;
        edges.push(adj[u].iter().find(|x| x.0 == v).unwrap().1);
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Partition of a `2k`-regular graph into `k` 2-factors.
pub fn two_factorization(g: &ColouredGraph) -> Result<Vec<Vec<usize>>, DecomposeError> {
    let d = match g.regular_degree() {
        Some(d) if d > 0 && d % 2 == 0 => d,
        _ => return Err(DecomposeError::NotEvenRegular),
    };
    let mut active = vec![true; g.edge_count()];
    let mut out = Vec::new();
    for _ in 0..d / 2 {
        let f = two_factor_on(g, &active)?;
        for &e in &f {
            active[e] = false;
        }
        out.push(f);
    }
    Ok(out)
}

/// Augmenting-path bipartite matching; `adj[u]` lists right vertices.
/// Returns the partner of each left vertex.
pub fn bipartite_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut match_r: Vec<Option<usize>> = vec![None; right];
    let mut match_l: Vec<Option<usize>> = vec![None; left];
    for u in 0..left {
        let mut seen = vec![false; right];
        augment(u, adj, &mut seen, &mut match_r);
    }
    for (v, m) in match_r.iter().enumerate() {
        if let Some(u) = m {
            match_l[*u] = Some(v);
        }
    }
    match_l
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_r: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_r[v].is_none_or(|w| augment(w, adj, seen, match_r)) {
            match_r[v] = Some(u);
            return true;
        }
    }
    false
}

/// Edmonds' blossom algorithm on a simple graph given by adjacency lists.
/// Returns `mate[v]`.
pub fn blossom_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const NIL: usize = usize::MAX;
    let mut mate = vec![NIL; n];
    // greedy start
    for v in 0..n {
        if mate[v] == NIL {
            if let Some(&w) = adj[v].iter().find(|&&w| w != v && mate[w] == NIL) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut p = vec![NIL; n];
    let mut base = vec![0; n];
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];
    for root in 0..n {
        if mate[root] != NIL {
            continue;
        }
        // breadth-first search for an augmenting path from root
        p.fill(NIL);
        used.fill(false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut q = std::collections::VecDeque::from([root]);
        let mut end = NIL;
        'bfs: while let Some(v) = q.pop_front() {
            for &to in &adj[v] {
                if to == v || base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NIL && p[mate[to]] != NIL) {
                    let cur = lca(&mate, &base, &p, v, to);
                    blossom.fill(false);
                    mark_path(&mate, &mut base, &mut blossom, &mut p, v, cur, to);
                    mark_path(&mate, &mut base, &mut blossom, &mut p, to, cur, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                q.push_back(i);
                            }
                        }
                    }
                } else if p[to] == NIL {
                    p[to] = v;
                    if mate[to] == NIL {
                        end = to;
                        break 'bfs;
                    }
                    let t2 = mate[to];
                    used[t2] = true;
                    q.push_back(t2);
                }
            }
        }
        let mut v = end;
        while v != NIL {
            let pv = p[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    mate.into_iter().map(|m| (m != NIL).then_some(m)).collect()
}

fn lca(mate: &[usize], base: &[usize], p: &[usize], a: usize, b: usize) -> usize {
    const NIL: usize = usize::MAX;
    let mut seen = vec![false; mate.len()];
    let mut a = a;
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == NIL {
            break;
        }
        a = p[mate[a]];
    }
    let mut b = b;
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = p[mate[b]];
    }
}

fn mark_path(
    mate: &[usize],
    base: &mut [usize],
    blossom: &mut [bool],
    p: &mut [usize],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        p[v] = child;
        child = mate[v];
        v = p[mate[v]];
    }
}

/// Simple adjacency of `g`: loops dropped, parallel edges collapsed.
pub(crate) fn simple_adjacency(g: &ColouredGraph) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> =
        (0..g.vertex_count()).map(|v| g.neighbours(v).filter(|&w| w != v).collect()).collect();
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

/// The lowest-index edge between `u` and `v`.
pub(crate) fn edge_between(g: &ColouredGraph, u: usize, v: usize) -> Option<usize> {
    g.out_darts(u).filter(|&d| g.tau(d) == v).map(|d| d / 2).min()
}

pub fn maximum_matching(g: &ColouredGraph) -> Matching {
    let mate = blossom_matching(g.vertex_count(), &simple_adjacency(g));
    matching_from_mates(g, &mate)
}

pub(crate) fn matching_from_mates(g: &ColouredGraph, mate: &[Option<usize>]) -> Matching {
    let mut edges = Vec::new();
    for (u, m) in mate.iter().enumerate() {
        if let Some(v) = *m {
            if u < v {
                edges.push(edge_between(g, u, v).expect("matched vertices are adjacent"));
            }
        }
    }
    edges.sort_unstable();
    Matching::from_edges(g, edges).expect("blossom output is a matching")
}

/// A perfect matching, if one exists.
pub fn perfect_matching(g: &ColouredGraph) -> Option<Matching> {
    let m = maximum_matching(g);
    m.is_perfect().then_some(m)
}

/// Odd degree: one perfect matching colour first; then 2-factors.
pub fn weak_multicycle_colouring(g: &ColouredGraph) -> Result<EdgeColouring, DecomposeError> {
    let d = g.regular_degree().ok_or(DecomposeError::NotRegular)?;
    let mut colour = vec![usize::MAX; g.edge_count()];
    let mut names = Vec::new();
    let mut active = vec![true; g.edge_count()];
    if d % 2 == 1 {
        let m = perfect_matching(g).ok_or(DecomposeError::NoPerfectMatching)?;
        for &e in &m.edges {
            colour[e] = 0;
            active[e] = false;
        }
        names.push("m".to_string());
    }
    for k in 0..d / 2 {
        let f = two_factor_on(g, &active)?;
        let c = names.len();
        names.push(format!("c{}", k + 1));
        for &e in &f {
            colour[e] = c;
            active[e] = false;
        }
    }
    Ok(EdgeColouring { colour, names })
}

/// Shape of one colour class.
struct ClassShape {
    degrees: Vec<usize>,
    /// Per component: (vertex count, edge count, max degree) for components
    /// with at least one edge.
    components: Vec<(usize, usize, usize)>,
}

fn class_shape(g: &ColouredGraph, col: &EdgeColouring, c: usize) -> ClassShape {
    let n = g.vertex_count();
    let edges = col.edges_of(c);
    let mut degrees = vec![0; n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &e in &edges {
        let (u, v) = g.endpoints(e);
        degrees[u] += 1;
        degrees[v] += 1;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut comp: std::collections::BTreeMap<usize, (usize, usize, usize)> = Default::default();
    for v in 0..n {
        if degrees[v] > 0 {
            let r = find(&mut parent, v);
            let ent = comp.entry(r).or_default();
            ent.0 += 1;
            ent.2 = ent.2.max(degrees[v]);
        }
    }
    for &e in &edges {
        let (u, _) = g.endpoints(e);
        let r = find(&mut parent, u);
        comp.get_mut(&r).unwrap().1 += 1;
    }
    ClassShape { degrees, components: comp.into_values().collect() }
}

/// Each colour class is a vertex-disjoint union of cycles and single edges.
pub fn is_weak_multicycle(g: &ColouredGraph, col: &EdgeColouring) -> bool {
    if col.check(g).is_err() {
        return false;
    }
    (0..col.colour_count()).all(|c| {
        let s = class_shape(g, col, c);
        // connected with as many edges as vertices and max degree 2 forces
        // every degree to be 2
        s.components.iter().all(|&(nv, ne, maxd)| (maxd == 2 && ne == nv) || (nv == 2 && ne == 1))
    })
}

/// Weak multicycle with every colour class regular: spanning cycles or a
/// perfect matching.
pub fn is_partition_friendly(g: &ColouredGraph, col: &EdgeColouring) -> bool {
    is_weak_multicycle(g, col)
        && (0..col.colour_count()).all(|c| {
            let s = class_shape(g, col, c);
            let d = s.degrees.first().copied().unwrap_or(0);
            (d == 1 || d == 2) && s.degrees.iter().all(|&x| x == d)
        })
}

/// Partition-friendly with all cycles of one colour of equal length.
pub fn is_multicycle(g: &ColouredGraph, col: &EdgeColouring) -> bool {
    is_partition_friendly(g, col)
        && (0..col.colour_count()).all(|c| {
            let s = class_shape(g, col, c);
            let lens: Vec<usize> = s.components.iter().map(|x| x.1).collect();
            lens.windows(2).all(|w| w[0] == w[1])
        })
}

/// A factorization of `K_n` into Hamiltonian cycles (odd `n`) or perfect
/// matchings (even `n`), with the permutation each colour induces.
#[derive(Clone, Debug)]
pub struct KnFactorization {
    pub graph: ColouredGraph,
    pub colouring: EdgeColouring,
    /// Orientation of each cycle as a successor map, or the matching as an
    /// involution.
    pub perms: Vec<Vec<usize>>,
}

pub fn k_n_factorization(n: usize) -> KnFactorization {
    assert!(n >= 2, "K_n factorization needs n >= 2");
    let mut edges = Vec::new();
    let mut colour = Vec::new();
    let mut perms = Vec::new();
    if n % 2 == 1 {
        // Walecki: inf, i, i+1, i-1, i+2, i-2, ..., i+m on Z/2m plus inf
        let m = (n - 1) / 2;
        let inf = 2 * m;
        let z = 2 * m;
        for i in 0..m {
            let mut seq = vec![inf, i];
            for j in 1..=m {
                seq.push((i + j) % z);
                if j < m {
                    seq.push((i + z - j) % z);
                }
            }
            let mut perm = vec![0; n];
            for k in 0..seq.len() {
                let (a, b) = (seq[k], seq[(k + 1) % seq.len()]);
                perm[a] = b;
                edges.push((a, b));
                colour.push(i);
            }
            perms.push(perm);
        }
    } else {
        // round robin: (r, inf) and (r+i, r-i) on Z/(n-1)
        let z = n - 1;
        let inf = n - 1;
        for r in 0..z {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut pairs = vec![(r, inf)];
            for i in 1..n / 2 {
                pairs.push(((r + i) % z, (r + z - i) % z));
            }
            for (a, b) in pairs {
                perm[a] = b;
                perm[b] = a;
                edges.push((a.min(b), a.max(b)));
                colour.push(r);
            }
            perms.push(perm);
        }
    }
    let count = perms.len();
    let names = (0..count).map(|i| format!("w{i}")).collect();
    KnFactorization { graph: ColouredGraph::plain(n, &edges), colouring: EdgeColouring { colour, names }, perms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColouredGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColouredGraph::plain(n, &e)
    }

    fn complete(n: usize) -> ColouredGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        ColouredGraph::plain(n, &e)
    }

    fn balanced(g: &ColouredGraph, o: &[usize]) -> bool {
        let mut inn = vec![0; g.vertex_count()];
        let mut out = vec![0; g.vertex_count()];
        for &d in o {
            out[g.origin(d)] += 1;
            inn[g.tau(d)] += 1;
        }
        o.len() == g.edge_count() && inn == out
    }

    #[test]
    fn euler_examples() {
        let c4 = cycle(4);
        assert!(balanced(&c4, &euler_orientation(&c4).unwrap()));
        let k5 = complete(5);
        let o = euler_orientation(&k5).unwrap();
        assert!(balanced(&k5, &o));
        let cube = ColouredGraph::plain(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
        );
        assert!(matches!(euler_orientation(&cube), Err(DecomposeError::OddDegree(_))));
    }

    #[test]
    fn two_factors() {
        let c6 = cycle(6);
        assert_eq!(two_factor(&c6).unwrap().len(), 6);
        let k5 = complete(5);
        let parts = two_factorization(&k5).unwrap();
        assert_eq!(parts.len(), 2);
        let mut all: Vec<usize> = parts.concat();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
        assert_eq!(two_factor(&complete(4)), Err(DecomposeError::NotEvenRegular));
    }

    #[test]
    fn matchings() {
        let k4 = complete(4);
        assert_eq!(perfect_matching(&k4).unwrap().size(), 2);
        let c5 = cycle(5);
        assert_eq!(maximum_matching(&c5).size(), 2);
        assert!(perfect_matching(&c5).is_none());
    }

    #[test]
    fn colourings() {
        let c6 = cycle(6);
        let col = weak_multicycle_colouring(&c6).unwrap();
        assert_eq!(col.colour_count(), 1);
        assert!(is_multicycle(&c6, &col));

        let path = ColouredGraph::plain(3, &[(0, 1), (1, 2)]);
        let one = EdgeColouring::new(vec![0, 0], vec!["x".into()]);
        assert!(!is_weak_multicycle(&path, &one));
    }

    #[test]
    fn kn() {
        let f5 = k_n_factorization(5);
        assert_eq!(f5.colouring.colour_count(), 2);
        assert!(is_multicycle(&f5.graph, &f5.colouring));
        let f4 = k_n_factorization(4);
        assert_eq!(f4.colouring.colour_count(), 3);
        assert!(is_multicycle(&f4.graph, &f4.colouring));
        let f2 = k_n_factorization(2);
        assert_eq!(f2.graph.edge_count(), 1);
    }
}
