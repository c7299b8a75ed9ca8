//! Graphs with directed edges in the sense of Gersten: every undirected edge
//! is a pair of darts `d`, `d ^ 1`, each with a terminus and a colour.
//!
//! Colours are letters over the graph's palette (an [`Alphabet`]). A dart
//! coloured `a` has its reverse coloured `a^-1`; involutive colours label both
//! darts with the same letter. Loops are dart pairs with equal termini and add
//! two to the degree.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::words::{reduce, Alphabet, GenKind, Letter, Word};

mod io;
mod iso;
mod symmetry;

pub use io::{parse_graph, parse_graph_labelled, to_dot, write_graph, write_graph_labelled, GraphParseError};
pub use iso::{
    automorphism_group, automorphism_group_bounded, find_automorphism, isomorphic, Automorphism, ColourMode,
    IsoOptions, Isomorphism, DEFAULT_SEARCH_BOUND,
};
pub use symmetry::{
    deck_group, is_cayley, is_vertex_transitive, presentation_symmetry_implies_vt, ComplexSymmetry, RegularSubgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("colouring is not Cayley-like: vertex {vertex} has two outgoing darts coloured {colour}")]
    NotCayleyLike { vertex: usize, colour: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no outgoing dart coloured {colour} at vertex {vertex}")]
    MissingStep { vertex: usize, colour: String },
    #[error("walk is not contiguous at step {0}")]
    BrokenWalk(usize),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("automorphism search bound exceeded: {vertices} vertices > {bound}")]
    SearchBoundExceeded { vertices: usize, bound: usize },
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    palette: Alphabet,
    tau: Vec<u32>,
    colour: Vec<Letter>,
    out: Vec<Vec<u32>>,
    class: Vec<Option<u32>>,
    class_names: Vec<String>,
}

impl ColouredGraph {
    pub fn new(palette: Alphabet) -> Self {
        ColouredGraph {
            palette,
            tau: Vec::new(),
            colour: Vec::new(),
            out: Vec::new(),
            class: Vec::new(),
            class_names: Vec::new(),
        }
    }

    /// `n` vertices, no edges.
    pub fn with_vertices(palette: Alphabet, n: usize) -> Self {
        let mut g = ColouredGraph::new(palette);
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Uncoloured multigraph: every edge gets the single involutive colour `e`.
    pub fn plain(n: usize, edges: &[(usize, usize)]) -> Self {
        let palette = Alphabet::from_parts(&[], &["e"]).unwrap();
        let mut g = ColouredGraph::with_vertices(palette, n);
        let e = Letter::new(0, false);
        for &(u, v) in edges {
            g.add_edge(u, v, e);
        }
        g
    }

    pub fn palette(&self) -> &Alphabet {
        &self.palette
    }

    /// Adds a colour to the palette, or returns the existing one.
    pub fn ensure_colour(&mut self, name: &str, kind: GenKind) -> usize {
        match self.palette.index(name) {
            Some(i) => i,
            None => self.palette.push(name, kind).expect("valid colour name"),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.out.push(Vec::new());
        self.class.push(None);
        self.out.len() - 1
    }

    /// Adds an edge `u -> v` coloured `c`; returns the edge index. The dart
    /// `2e` runs from `u` to `v`.
    pub fn add_edge(&mut self, u: usize, v: usize, c: Letter) -> usize {
        let c = self.palette.normal_letter(c);
        let e = self.tau.len() / 2;
        self.tau.push(v as u32);
        self.tau.push(u as u32);
        self.colour.push(c);
        self.colour.push(self.palette.inverse_letter(c));
        self.out[u].push((2 * e) as u32);
        self.out[v].push((2 * e + 1) as u32);
        e
    }

    pub fn add_edge_named(&mut self, u: usize, v: usize, colour: &str) -> Result<usize, GraphError> {
        let c = self.palette.index(colour).ok_or_else(|| GraphError::UnknownColour(colour.to_string()))?;
        Ok(self.add_edge(u, v, Letter::new(c, false)))
    }

    pub fn set_class(&mut self, v: usize, name: &str) {
        let id = match self.class_names.iter().position(|c| c == name) {
            Some(i) => i,
            None => {
                self.class_names.push(name.to_string());
                self.class_names.len() - 1
            }
        };
        self.class[v] = Some(id as u32);
    }

    pub fn class_of(&self, v: usize) -> Option<&str> {
        self.class[v].map(|i| self.class_names[i as usize].as_str())
    }

    pub fn class_id(&self, v: usize) -> Option<usize> {
        self.class[v].map(|i| i as usize)
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn has_classes(&self) -> bool {
        self.class.iter().any(Option::is_some)
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn dart_count(&self) -> usize {
        self.tau.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tau.len() / 2
    }

    pub fn tau(&self, d: usize) -> usize {
        self.tau[d] as usize
    }

    pub fn origin(&self, d: usize) -> usize {
        self.tau[d ^ 1] as usize
    }

    pub fn inv(d: usize) -> usize {
        d ^ 1
    }

    pub fn colour(&self, d: usize) -> Letter {
        self.colour[d]
    }

    pub fn colour_name(&self, d: usize) -> String {
        self.palette.letter_name(self.colour[d])
    }

    /// Endpoints `(origin, terminus)` of the first dart of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.origin(2 * e), self.tau(2 * e))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Darts whose origin is `v`.
    pub fn out_darts(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&d| d as usize)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_darts(v).map(move |d| self.tau(d))
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.out.first().map(Vec::len).unwrap_or(0);
        self.out.iter().all(|o| o.len() == d).then_some(d)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.edge_count()).map(move |e| self.endpoints(e))
    }

    /// Number of edges between `u` and `v` (loops counted once each).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.out_darts(u).filter(|&d| self.tau(d) == v && (u != v || d % 2 == 0)).count()
    }

    pub fn bfs_distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut q = VecDeque::new();
        dist[from] = Some(0);
        q.push_back(from);
        while let Some(v) = q.pop_front() {
            let dv = dist[v].unwrap();
            for w in self.neighbours(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut c = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Subgraph induced on `keep` (in the given order), with classes and colours.
    pub fn induced(&self, keep: &[usize]) -> ColouredGraph {
        let mut idx = vec![usize::MAX; self.vertex_count()];
        let mut h = ColouredGraph::with_vertices(self.palette.clone(), keep.len());
        for (i, &v) in keep.iter().enumerate() {
            idx[v] = i;
            if let Some(c) = self.class_of(v) {
                h.set_class(i, c);
            }
        }
        for e in 0..self.edge_count() {
            let (u, v) = self.endpoints(e);
            if idx[u] != usize::MAX && idx[v] != usize::MAX {
                h.add_edge(idx[u], idx[v], self.colour[2 * e]);
            }
        }
        h
    }

    /// Copy with every edge recoloured by `f(edge)`; the palette is replaced.
    pub fn recoloured(&self, palette: Alphabet, f: impl Fn(usize) -> Letter) -> ColouredGraph {
        let mut h = ColouredGraph::with_vertices(palette, self.vertex_count());
        h.class = self.class.clone();
        h.class_names = self.class_names.clone();
        for e in 0..self.edge_count() {
            let (u, v) = self.endpoints(e);
            h.add_edge(u, v, f(e));
        }
        h
    }

    /// Same edges, one involutive colour `e`, no classes.
    pub fn uncoloured(&self) -> ColouredGraph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        ColouredGraph::plain(self.vertex_count(), &edges)
    }

    /// Checks that no vertex has two outgoing darts of one colour and returns
    /// the per-vertex step table.
    pub fn cayley_like(&self) -> Result<CayleyLikeWitness, GraphError> {
        let letters = self.palette.letters();
        let mut col_of = vec![[usize::MAX; 2]; self.palette.len()];
        for (i, l) in letters.iter().enumerate() {
            col_of[l.gen()][l.inv as usize] = i;
        }
        let mut step = vec![vec![u32::MAX; letters.len()]; self.vertex_count()];
        for v in 0..self.vertex_count() {
            for d in self.out_darts(v) {
                let l = self.colour[d];
                let c = col_of[l.gen()][l.inv as usize];
                if step[v][c] != u32::MAX {
                    return Err(GraphError::NotCayleyLike { vertex: v, colour: self.palette.letter_name(l) });
                }
                step[v][c] = d as u32;
            }
        }
        Ok(CayleyLikeWitness { step, col_of })
    }

    pub fn walk_word(&self, w: &Walk) -> Result<Word, GraphError> {
        w.check(self)?;
        let raw: Vec<Letter> = w.darts.iter().map(|&d| self.colour[d]).collect();
        Ok(reduce(&raw, &self.palette))
    }

    /// The walk from `v` following the word's letters.
    pub fn dictated_walk(&self, v: usize, word: &Word) -> Result<Walk, GraphError> {
        let wit = self.cayley_like()?;
        wit.dictated_walk(self, v, word)
    }

    /// Spanning-tree generators of the fundamental group at `base`, as words.
    pub fn fundamental_cycle_words(&self, base: usize) -> Result<Vec<Word>, GraphError> {
        self.cayley_like()?;
        if base >= self.vertex_count() {
            return Err(GraphError::BadVertex(base));
        }
        let (parent, order) = self.bfs_tree(base);
        if order.len() != self.vertex_count() {
            return Err(GraphError::Disconnected);
        }
        let mut path: Vec<Vec<Letter>> = vec![Vec::new(); self.vertex_count()];
        for &v in &order[1..] {
            let d = parent[v];
            let mut p = path[self.origin(d)].clone();
            p.push(self.colour[d]);
            path[v] = p;
        }
        let mut tree_edge = vec![false; self.edge_count()];
        for &v in &order[1..] {
            tree_edge[parent[v] / 2] = true;
        }
        let mut out = Vec::new();
        for e in 0..self.edge_count() {
            if tree_edge[e] {
                continue;
            }
            let (u, v) = self.endpoints(e);
            let mut raw = path[u].clone();
            raw.push(self.colour[2 * e]);
            raw.extend(path[v].iter().rev().map(|&l| self.palette.inverse_letter(l)));
            out.push(reduce(&raw, &self.palette));
        }
        Ok(out)
    }

    /// BFS tree: `parent[v]` is the dart into `v`; returns the visiting order.
    pub(crate) fn bfs_tree(&self, base: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut order = vec![base];
        seen[base] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for d in self.out_darts(v) {
                let w = self.tau(d);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = d;
                    order.push(w);
                }
            }
        }
        (parent, order)
    }
}

/// Outgoing dart per vertex and colour of a Cayley-like colouring.
#[derive(Clone, Debug)]
pub struct CayleyLikeWitness {
    step: Vec<Vec<u32>>,
    col_of: Vec<[usize; 2]>,
}

impl CayleyLikeWitness {
    pub fn out_dart(&self, v: usize, l: Letter) -> Option<usize> {
        let d = self.step[v][self.col_of[l.gen()][l.inv as usize]];
        (d != u32::MAX).then_some(d as usize)
    }

    /// True if every vertex has an outgoing dart of every colour.
    pub fn is_complete(&self) -> bool {
        self.step.iter().all(|r| r.iter().all(|&d| d != u32::MAX))
    }

    pub fn dictated_walk(&self, g: &ColouredGraph, v: usize, word: &Word) -> Result<Walk, GraphError> {
        if v >= g.vertex_count() {
            return Err(GraphError::BadVertex(v));
        }
        let mut walk = Walk::trivial(v);
        let mut cur = v;
        for &l in word.letters() {
            let d = self
                .out_dart(cur, l)
                .ok_or_else(|| GraphError::MissingStep { vertex: cur, colour: g.palette.letter_name(l) })?;
            cur = g.tau(d);
            walk.push(d, cur);
        }
        Ok(walk)
    }

    /// End vertex of the dictated walk, without building it.
    pub fn follow(&self, g: &ColouredGraph, v: usize, letters: &[Letter]) -> Option<usize> {
        let mut cur = v;
        for &l in letters {
            cur = g.tau(self.out_dart(cur, l)?);
        }
        Some(cur)
    }
}

/// `v0 e1 v1 ... en vn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub darts: Vec<usize>,
}

impl Walk {
    pub fn trivial(v: usize) -> Self {
        Walk { vertices: vec![v], darts: Vec::new() }
    }

    pub fn push(&mut self, d: usize, v: usize) {
        self.darts.push(d);
        self.vertices.push(v);
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn check(&self, g: &ColouredGraph) -> Result<(), GraphError> {
        if self.vertices.len() != self.darts.len() + 1 {
            return Err(GraphError::BrokenWalk(0));
        }
        for (i, &d) in self.darts.iter().enumerate() {
            if g.origin(d) != self.vertices[i] || g.tau(d) != self.vertices[i + 1] {
                return Err(GraphError::BrokenWalk(i));
            }
        }
        Ok(())
    }

    /// Removes backtracking `d d^-1` pairs.
    pub fn without_spurs(&self) -> Walk {
        let mut w = Walk::trivial(self.start());
        for (i, &d) in self.darts.iter().enumerate() {
            if w.darts.last() == Some(&(d ^ 1)) {
                w.darts.pop();
                w.vertices.pop();
            } else {
                w.push(d, self.vertices[i + 1]);
            }
        }
        w
    }
}

impl fmt::Display for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn directed_cycle(n: usize) -> ColouredGraph {
        let mut g = ColouredGraph::with_vertices(Alphabet::from_parts(&["a"], &[]).unwrap(), n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n, Letter::new(0, false));
        }
        g
    }

    #[test]
    fn dart_structure() {
        let g = directed_cycle(3);
        for d in 0..g.dart_count() {
            assert_ne!(ColouredGraph::inv(d), d);
            assert_eq!(ColouredGraph::inv(ColouredGraph::inv(d)), d);
            assert_eq!(g.colour(d ^ 1), g.palette().inverse_letter(g.colour(d)));
        }
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn loops_count_twice() {
        let mut g = ColouredGraph::with_vertices(Alphabet::from_parts(&["a"], &[]).unwrap(), 1);
        g.add_edge(0, 0, Letter::new(0, false));
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.multiplicity(0, 0), 1);
        assert!(g.cayley_like().is_ok());
    }

    #[test]
    fn dictated_walks() {
        let g = directed_cycle(3);
        let a = g.palette().clone();
        let w = g.dictated_walk(0, &parse_word("a^3", &a).unwrap()).unwrap();
        assert!(w.is_closed());
        assert_eq!(w.len(), 3);
        assert_eq!(g.walk_word(&w).unwrap(), parse_word("a^3", &a).unwrap());
        let t = g.dictated_walk(1, &Word::empty()).unwrap();
        assert_eq!(t, Walk::trivial(1));
    }

    #[test]
    fn fundamental_cycles() {
        let tree = ColouredGraph::plain(4, &[(0, 1), (1, 2), (1, 3)]);
        // one colour on a star is not Cayley-like, so colour the tree properly
        assert!(tree.fundamental_cycle_words(0).is_err());
        let mut t = ColouredGraph::with_vertices(Alphabet::from_parts(&["a", "b"], &[]).unwrap(), 3);
        t.add_edge(0, 1, Letter::new(0, false));
        t.add_edge(0, 2, Letter::new(1, false));
        assert!(t.fundamental_cycle_words(0).unwrap().is_empty());

        let g = directed_cycle(5);
        let ws = g.fundamental_cycle_words(0).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].len(), 5);
        assert!(g.dictated_walk(0, &ws[0]).unwrap().is_closed());
    }

    #[test]
    fn not_cayley_like() {
        let g = ColouredGraph::plain(3, &[(0, 1), (0, 2)]);
        assert!(matches!(g.cayley_like(), Err(GraphError::NotCayleyLike { vertex: 0, .. })));
    }

    #[test]
    fn disconnected_detected() {
        let mut g = directed_cycle(3);
        g.add_vertex();
        assert_eq!(g.fundamental_cycle_words(0), Err(GraphError::Disconnected));
    }
}
