//! Construction of the presentation graph `C(P)`, the presentation complex,
//! and the partite Cayley graph `Sp(P)` by HLT coset enumeration.
//!
//! Rows of the table are vertices of `Sp(P)`; each row carries a class and one
//! slot per column (`s`, `s^-1` for directed generators, a single slot for
//! involutions). A row of class `x` gets every relator of `R_x` scanned, which
//! realises the normal closure without listing conjugates.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{deck_group, ColouredGraph, GraphError, Walk};
use crate::presentation::{PartitePresentation, Violation};
use crate::words::{GenKind, Letter};

pub const DEFAULT_MAX_ROWS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("coset table exceeded {0} rows without closing")]
    Overflow(usize),
    #[error("presentation is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("ball rejected: relator `{relator}` does not close at vertex {vertex}")]
    BallInconsistent { vertex: usize, relator: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct BuildStats {
    pub rows_defined: usize,
    pub coincidences: usize,
    pub deductions: usize,
    pub relator_scans: usize,
}

/// A finished `Sp(P)` with its enumeration statistics.
#[derive(Clone, Debug)]
pub struct SpBuild {
    pub graph: ColouredGraph,
    pub class_sizes: Vec<usize>,
    pub stats: BuildStats,
    /// Every slot filled and every relator closes at every row.
    pub closed: bool,
}

/// A finite window of `Sp(P)` around the base vertex.
#[derive(Clone, Debug)]
pub struct Ball {
    pub graph: ColouredGraph,
    pub distance: Vec<usize>,
    pub frontier: Vec<bool>,
    pub radius: usize,
    pub stats: BuildStats,
}

impl Ball {
    /// Vertices of the ball are distinct only relative to the identifications
    /// the enumeration performed.
    pub const CAVEAT: &'static str = "vertices are distinct relative to performed identifications only";
}

const NONE: u32 = u32::MAX;

struct Table<'p> {
    p: &'p PartitePresentation,
    ncols: usize,
    col_letter: Vec<Letter>,
    col_inv: Vec<usize>,
    rels: Vec<Vec<Vec<usize>>>,
    slots: Vec<u32>,
    class: Vec<u32>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    queue: Vec<u32>,
    max_rows: usize,
    depth_limit: Option<u32>,
    stats: BuildStats,
    changed: bool,
}

impl<'p> Table<'p> {
    fn new(p: &'p PartitePresentation, max_rows: usize, max_rel_len: Option<usize>) -> Self {
        let a = &p.alphabet;
        let mut col_letter = Vec::new();
        let mut col_of = vec![[0usize; 2]; a.len()];
        for g in 0..a.len() {
            col_of[g][0] = col_letter.len();
            col_of[g][1] = col_letter.len();
            col_letter.push(Letter::new(g, false));
            if a.kind(g) == GenKind::U {
                col_of[g][1] = col_letter.len();
                col_letter.push(Letter::new(g, true));
            }
        }
        let col_inv = col_letter
            .iter()
            .map(|&l| {
                let li = a.inverse_letter(l);
                col_of[li.gen()][li.inv as usize]
            })
            .collect();
        let rels = p
            .relators
            .iter()
            .map(|rs| {
                rs.iter()
                    .filter(|r| max_rel_len.is_none_or(|m| r.len() <= m))
                    .map(|r| r.letters().iter().map(|l| col_of[l.gen()][l.inv as usize]).collect())
                    .collect()
            })
            .collect();
        Table {
            p,
            ncols: col_letter.len(),
            col_letter,
            col_inv,
            rels,
            slots: Vec::new(),
            class: Vec::new(),
            parent: Vec::new(),
            depth: Vec::new(),
            queue: Vec::new(),
            max_rows,
            depth_limit: None,
            stats: BuildStats::default(),
            changed: false,
        }
    }

    fn rows(&self) -> usize {
        self.class.len()
    }

    fn get(&self, r: usize, c: usize) -> u32 {
        self.slots[r * self.ncols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u32) {
        self.slots[r * self.ncols + c] = v;
    }

    fn live(&self, r: usize) -> bool {
        self.parent[r] as usize == r
    }

    fn find(&mut self, r: usize) -> usize {
        let mut root = r;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut x = r;
        while self.parent[x] as usize != root {
            let next = self.parent[x] as usize;
            self.parent[x] = root as u32;
            x = next;
        }
        root
    }

    fn new_row(&mut self, class: usize, depth: u32) -> Result<usize, BuildError> {
        if self.rows() >= self.max_rows {
            return Err(BuildError::Overflow(self.max_rows));
        }
        let r = self.rows();
        self.slots.extend(std::iter::repeat_n(NONE, self.ncols));
        self.class.push(class as u32);
        self.parent.push(r as u32);
        self.depth.push(depth);
        self.stats.rows_defined += 1;
        self.changed = true;
        Ok(r)
    }

    fn may_define(&self, r: usize) -> bool {
        self.depth_limit.is_none_or(|lim| self.depth[r] < lim)
    }

    /// New row behind slot `(r, c)`.
    fn define(&mut self, r: usize, c: usize) -> Result<usize, BuildError> {
        let l = self.col_letter[c];
        let x = self.p.action.apply_letter(l, self.class[r] as usize);
        let n = self.new_row(x, self.depth[r] + 1)?;
        self.set(r, c, n as u32);
        self.set(n, self.col_inv[c], r as u32);
        Ok(n)
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<(), BuildError> {
        self.stats.relator_scans += 1;
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, self.col_inv[w[j as usize]]) != NONE {
                b = self.get(b, self.col_inv[w[j as usize]]) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, self.col_inv[w[i]], f as u32);
                self.stats.deductions += 1;
                self.changed = true;
                return Ok(());
            }
            if !self.may_define(f) {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k = self.find(k);
        let l = self.find(l);
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        debug_assert_eq!(self.class[lo], self.class[hi], "coincidence across classes");
        self.parent[hi] = lo as u32;
        self.depth[lo] = self.depth[lo].min(self.depth[hi]);
        self.queue.push(hi as u32);
        self.stats.coincidences += 1;
        self.changed = true;
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for c in 0..self.ncols {
                let d = self.get(g, c);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                let ci = self.col_inv[c];
                if self.get(d, ci) as usize == g {
                    self.set(d, ci, NONE);
                }
                let mu = self.find(g);
                let nu = self.find(d);
                if self.get(mu, c) != NONE {
                    let t = self.get(mu, c) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, ci) != NONE {
                    let t = self.get(nu, ci) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, c, nu as u32);
                    self.set(nu, ci, mu as u32);
                }
            }
        }
    }

    /// One HLT pass over all rows in order.
    fn pass(&mut self) -> Result<(), BuildError> {
        let mut alpha = 0;
        while alpha < self.rows() {
            if self.live(alpha) {
                let x = self.class[alpha] as usize;
                for k in 0..self.rels[x].len() {
                    let w = std::mem::take(&mut self.rels[x][k]);
                    let res = self.scan_and_fill(alpha, &w);
                    self.rels[x][k] = w;
                    res?;
                    if !self.live(alpha) {
                        break;
                    }
                }
                if self.live(alpha) && self.may_define(alpha) {
                    for c in 0..self.ncols {
                        if self.get(alpha, c) == NONE {
                            self.define(alpha, c)?;
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Follows `w` from row `r` through defined slots.
    fn trace(&mut self, r: usize, w: &[usize]) -> Option<usize> {
        let mut cur = r;
        for &c in w {
            let n = self.get(cur, c);
            if n == NONE {
                return None;
            }
            cur = self.find(n as usize);
        }
        Some(cur)
    }

    fn is_closed(&mut self) -> bool {
        for r in 0..self.rows() {
            if !self.live(r) {
                continue;
            }
            if (0..self.ncols).any(|c| self.get(r, c) == NONE) {
                return false;
            }
            let x = self.class[r] as usize;
            for k in 0..self.rels[x].len() {
                let w = self.rels[x][k].clone();
                if self.trace(r, &w) != Some(r) {
                    return false;
                }
            }
        }
        true
    }

    fn live_rows(&self) -> Vec<usize> {
        (0..self.rows()).filter(|&r| self.live(r)).collect()
    }

    /// Builds the coloured graph on the given rows; slots leaving the set
    /// are dropped.
    fn graph_on(&mut self, rows: &[usize]) -> ColouredGraph {
        let mut vid = vec![usize::MAX; self.rows()];
        for (i, &r) in rows.iter().enumerate() {
            vid[r] = i;
        }
        let mut g = ColouredGraph::with_vertices(self.p.alphabet.clone(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            g.set_class(i, &self.p.classes[self.class[r] as usize]);
        }
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.ncols {
                let l = self.col_letter[c];
                if l.inv {
                    continue;
                }
                let t = self.get(r, c);
                if t == NONE {
                    continue;
                }
                let t = self.find(t as usize);
                let j = vid[t];
                if j == usize::MAX {
                    continue;
                }
                let involutive = self.p.alphabet.is_involution(l.gen());
                if !involutive || i < j {
                    g.add_edge(i, j, l);
                }
            }
        }
        g
    }
}

/// `C(P)`: one vertex per class and the generator darts between them.
pub fn presentation_graph(p: &PartitePresentation) -> ColouredGraph {
    let mut g = ColouredGraph::with_vertices(p.alphabet.clone(), p.class_count());
    for (x, name) in p.classes.iter().enumerate() {
        g.set_class(x, name);
    }
    for s in 0..p.alphabet.len() {
        let img = p.action.image(s);
        for x in 0..p.class_count() {
            if p.alphabet.kind(s) == GenKind::U || x < img[x] {
                g.add_edge(x, img[x], Letter::new(s, false));
            }
        }
    }
    g
}

/// A 2-cell of the presentation complex: the closed walk of `C(P)` dictated
/// by relator `relator` of `R_class`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub class: usize,
    pub relator: usize,
    pub boundary: Walk,
}

#[derive(Clone, Debug)]
pub struct PresentationComplex {
    pub graph: ColouredGraph,
    pub cells: Vec<Cell>,
}

pub fn presentation_complex(p: &PartitePresentation) -> Result<PresentationComplex, BuildError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let graph = presentation_graph(p);
    let wit = graph.cayley_like()?;
    let mut cells = Vec::new();
    for (x, rs) in p.relators.iter().enumerate() {
        for (i, r) in rs.iter().enumerate() {
            let boundary = wit.dictated_walk(&graph, x, r)?;
            debug_assert!(boundary.is_closed());
            cells.push(Cell { class: x, relator: i, boundary });
        }
    }
    Ok(PresentationComplex { graph, cells })
}

pub fn build_sp(p: &PartitePresentation, max_rows: usize) -> Result<SpBuild, BuildError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let mut t = Table::new(p, max_rows, None);
    t.new_row(0, 0)?;
    loop {
        t.changed = false;
        t.pass()?;
        if t.is_closed() || !t.changed {
            break;
        }
    }
    let closed = t.is_closed();
    let rows = t.live_rows();
    let graph = t.graph_on(&rows);
    let mut class_sizes = vec![0; p.class_count()];
    for &r in &rows {
        class_sizes[t.class[r] as usize] += 1;
    }
    Ok(SpBuild { graph, class_sizes, stats: t.stats, closed })
}

/// Order of the vertex group `G_x`, read off as `|V_x|`.
pub fn vertex_group_order(p: &PartitePresentation, class: usize, max_rows: usize) -> Result<usize, BuildError> {
    Ok(build_sp(p, max_rows)?.class_sizes[class])
}

/// Explores rows out to depth `radius + scan_margin`, scanning relators of
/// length at most `scan_margin`, and returns the ball of the given radius
/// around the base vertex.
pub fn ball_sp(
    p: &PartitePresentation,
    radius: usize,
    scan_margin: usize,
    max_rows: usize,
) -> Result<Ball, BuildError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    let mut t = Table::new(p, max_rows, Some(scan_margin));
    t.depth_limit = Some((radius + scan_margin) as u32);
    t.new_row(0, 0)?;
    loop {
        t.changed = false;
        t.pass()?;
        // deductions can shorten paths; lower depths to true distances
        let dist = distances(&mut t);
        let mut lowered = false;
        for r in 0..t.rows() {
            if let Some(d) = dist[r] {
                if (d as u32) < t.depth[r] {
                    t.depth[r] = d as u32;
                    lowered = true;
                }
            }
        }
        if !t.changed && !lowered {
            break;
        }
    }
    let dist = distances(&mut t);
    let mut rows: Vec<usize> = (0..t.rows()).filter(|&r| dist[r].is_some_and(|d| d <= radius)).collect();
    rows.sort_by_key(|&r| (dist[r].unwrap(), r));
    let mut frontier = Vec::with_capacity(rows.len());
    let mut inside = vec![false; t.rows()];
    for &r in &rows {
        inside[r] = true;
    }
    for &r in &rows {
        let mut open = false;
        for c in 0..t.ncols {
            let n = t.get(r, c);
            if n == NONE || !inside[t.find(n as usize)] {
                open = true;
            }
        }
        frontier.push(open);
    }
    // post-hoc validation: relators that stay inside the ball must close
    for &r in &rows {
        let x = t.class[r] as usize;
        for rel in &p.relators[x] {
            let mut cur = r;
            let mut fits = true;
            for l in rel.letters() {
                let c = t.col_letter.iter().position(|cl| cl == l).unwrap();
                let n = t.get(cur, c);
                if n == NONE {
                    fits = false;
                    break;
                }
                cur = t.find(n as usize);
                if !inside[cur] {
                    fits = false;
                    break;
                }
            }
            if fits && cur != r {
                return Err(BuildError::BallInconsistent {
                    vertex: rows.iter().position(|&q| q == r).unwrap(),
                    relator: rel.display(&p.alphabet).to_string(),
                });
            }
        }
    }
    let distance = rows.iter().map(|&r| dist[r].unwrap()).collect();
    let graph = t.graph_on(&rows);
    Ok(Ball { graph, distance, frontier, radius, stats: t.stats })
}

fn distances(t: &mut Table) -> Vec<Option<usize>> {
    let mut dist = vec![None; t.rows()];
    let base = t.find(0);
    dist[base] = Some(0);
    let mut q = VecDeque::from([base]);
    while let Some(r) = q.pop_front() {
        for c in 0..t.ncols {
            let n = t.get(r, c);
            if n == NONE {
                continue;
            }
            let n = t.find(n as usize);
            if dist[n].is_none() {
                dist[n] = Some(dist[r].unwrap() + 1);
                q.push_back(n);
            }
        }
    }
    dist
}

/// Results of the two characterisations of `Sp(P)` checked on a built graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantReport {
    /// Class map to `C(P)` fails to be a local bijection on darts.
    pub cover: Vec<String>,
    /// A relator walk fails to close.
    pub closure: Vec<String>,
    /// The class-preserving colour automorphisms are not regular on a class.
    pub deck: Vec<String>,
}

impl InvariantReport {
    pub fn is_clean(&self) -> bool {
        self.cover.is_empty() && self.closure.is_empty() && self.deck.is_empty()
    }
}

/// Cover, relator-closure and deck-regularity checks of `sp` against `p`.
pub fn check_invariants(sp: &ColouredGraph, p: &PartitePresentation) -> InvariantReport {
    let mut rep = InvariantReport::default();
    let cp = presentation_graph(p);
    let class_of: Vec<Option<usize>> =
        (0..sp.vertex_count()).map(|v| sp.class_of(v).and_then(|c| p.class_index(c))).collect();
    let letter_in_p = |l: Letter| -> Option<Letter> {
        let g = p.alphabet.index(sp.palette().name(l.gen()))?;
        Some(p.alphabet.normal_letter(Letter::new(g, l.inv)))
    };
    for v in 0..sp.vertex_count() {
        let Some(x) = class_of[v] else {
            rep.cover.push(format!("vertex {v} has no class in the presentation"));
            continue;
        };
        let mut want: Vec<(Letter, usize)> = cp.out_darts(x).map(|d| (cp.colour(d), cp.tau(d))).collect();
        let mut have = Vec::new();
        for d in sp.out_darts(v) {
            match (letter_in_p(sp.colour(d)), class_of[sp.tau(d)]) {
                (Some(l), Some(y)) => have.push((l, y)),
                _ => rep.cover.push(format!("dart {d} has a colour or class outside the presentation")),
            }
        }
        want.sort();
        have.sort();
        if want != have {
            rep.cover.push(format!("vertex {v}: darts do not biject onto those of class {}", p.classes[x]));
        }
    }
    match sp.cayley_like() {
        Err(e) => rep.closure.push(e.to_string()),
        Ok(wit) => {
            for v in 0..sp.vertex_count() {
                let Some(x) = class_of[v] else { continue };
                for r in &p.relators[x] {
                    let ls: Option<Vec<Letter>> = r
                        .letters()
                        .iter()
                        .map(|&l| {
                            let g = sp.palette().index(p.alphabet.name(l.gen()))?;
                            Some(sp.palette().normal_letter(Letter::new(g, l.inv)))
                        })
                        .collect();
                    let end = ls.and_then(|ls| wit.follow(sp, v, &ls));
                    if end != Some(v) {
                        rep.closure.push(format!("relator `{}` does not close at vertex {v}", r.display(&p.alphabet)));
                    }
                }
            }
        }
    }
    match deck_group(sp) {
        Err(e) => rep.deck.push(e.to_string()),
        Ok(deck) => {
            for (x, name) in p.classes.iter().enumerate() {
                let members: Vec<usize> = (0..sp.vertex_count()).filter(|&v| class_of[v] == Some(x)).collect();
                if members.is_empty() {
                    continue;
                }
                if deck.len() != members.len() {
                    rep.deck.push(format!(
                        "deck group has order {} but class {name} has {} vertices",
                        deck.len(),
                        members.len()
                    ));
                    continue;
                }
                let mut images: Vec<usize> = deck.iter().map(|a| a.vertex_map[members[0]]).collect();
                images.sort_unstable();
                if images != members {
                    rep.deck.push(format!("deck group is not regular on class {name}"));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    const PETERSEN: &str = "classes: 0 1\ngen a : U : (0)(1)\ngen b : I : (0 1)\nrel 0 : a^5, a b a^2 b\nrel 1 : a^5\n";

    #[test]
    fn petersen_builds() {
        let p = parse(PETERSEN).unwrap();
        let sp = build_sp(&p, DEFAULT_MAX_ROWS).unwrap();
        assert!(sp.closed);
        assert_eq!(sp.graph.vertex_count(), 10);
        assert_eq!(sp.graph.edge_count(), 15);
        assert_eq!(sp.class_sizes, vec![5, 5]);
        assert_eq!(sp.graph.regular_degree(), Some(3));
        assert!(check_invariants(&sp.graph, &p).is_clean());
    }

    #[test]
    fn triangle() {
        let p = parse("classes: 0\ngen a : U : (0)\nrel 0 : a^3\n").unwrap();
        let sp = build_sp(&p, 100).unwrap();
        assert_eq!(sp.graph.vertex_count(), 3);
        assert_eq!(sp.graph.edge_count(), 3);
        assert_eq!(vertex_group_order(&p, 0, 100).unwrap(), 3);
    }

    #[test]
    fn overflow_on_infinite() {
        let p = parse("classes: 0\ngen a : U : (0)\n").unwrap();
        assert_eq!(build_sp(&p, 50).unwrap_err(), BuildError::Overflow(50));
    }

    #[test]
    fn presentation_graph_shapes() {
        let p = parse(PETERSEN).unwrap();
        let cp = presentation_graph(&p);
        assert_eq!(cp.vertex_count(), 2);
        assert_eq!(cp.multiplicity(0, 0), 1);
        assert_eq!(cp.multiplicity(0, 1), 1);
        assert_eq!(cp.regular_degree(), Some(3));
        let rose = presentation_graph(&parse("classes: 0\ngen a : U : (0)\n").unwrap());
        assert_eq!(rose.regular_degree(), Some(2));
        let cx = presentation_complex(&p).unwrap();
        assert_eq!(cx.cells.len(), 3);
        assert!(cx.cells.iter().all(|c| c.boundary.is_closed()));
    }

    #[test]
    fn balls() {
        let free = parse("classes: 0\ngen a : U : (0)\ngen b : U : (0)\n").unwrap();
        let b = ball_sp(&free, 2, 0, 10_000).unwrap();
        assert_eq!(b.graph.vertex_count(), 17);
        assert_eq!(b.frontier.iter().filter(|&&f| f).count(), 12);

        let z = parse("classes: 0\ngen a : U : (0)\n").unwrap();
        let b = ball_sp(&z, 3, 0, 10_000).unwrap();
        assert_eq!(b.graph.vertex_count(), 7);
        assert_eq!(b.graph.edge_count(), 6);

        let p = parse(PETERSEN).unwrap();
        let b = ball_sp(&p, 10, 5, 10_000).unwrap();
        assert_eq!(b.graph.vertex_count(), 10);
        assert!(b.frontier.iter().all(|&f| !f));
    }
}
