//! Isomorphism and automorphism search by backtracking over vertex
//! bijections, pruned with colour refinement. Meant for graphs of a few dozen
//! vertices.

use std::collections::{BTreeMap, HashMap};

use super::{ColouredGraph, GraphError};

pub const DEFAULT_SEARCH_BOUND: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoOptions {
    pub respect_colours: bool,
    pub respect_classes: bool,
}

impl IsoOptions {
    pub fn plain() -> Self {
        IsoOptions::default()
    }

    pub fn colours() -> Self {
        IsoOptions { respect_colours: true, respect_classes: false }
    }

    pub fn colours_and_classes() -> Self {
        IsoOptions { respect_colours: true, respect_classes: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColourMode {
    Plain,
    ColourPreserving,
}

/// A vertex bijection together with a compatible dart bijection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub dart_map: Vec<usize>,
}

pub type Automorphism = Isomorphism;

impl Isomorphism {
    /// Checks that the map commutes with terminus and reversal, and with
    /// colours/classes when asked.
    pub fn verify(&self, g: &ColouredGraph, h: &ColouredGraph, opts: IsoOptions) -> bool {
        if self.vertex_map.len() != g.vertex_count() || self.dart_map.len() != g.dart_count() {
            return false;
        }
        let mut seen = vec![false; h.dart_count()];
        for d in 0..g.dart_count() {
            let e = self.dart_map[d];
            if e >= h.dart_count() || seen[e] {
                return false;
            }
            seen[e] = true;
            if self.dart_map[d ^ 1] != e ^ 1 || h.tau(e) != self.vertex_map[g.tau(d)] {
                return false;
            }
            if opts.respect_colours && g.colour_name(d) != h.colour_name(e) {
                return false;
            }
        }
        if opts.respect_classes {
            for v in 0..g.vertex_count() {
                if g.class_of(v) != h.class_of(self.vertex_map[v]) {
                    return false;
                }
            }
        }
        true
    }
}

struct Keyed {
    n: usize,
    /// `(dart key, terminus)` per outgoing dart.
    darts: Vec<Vec<(u32, usize)>>,
    /// Distinct neighbours with the sorted dart keys towards them.
    nbrs: Vec<Vec<(usize, Vec<u32>)>>,
    vkey: Vec<u32>,
}

impl Keyed {
    fn keys_to(&self, u: usize, w: usize) -> Option<&[u32]> {
        self.nbrs[u].binary_search_by_key(&w, |(x, _)| *x).ok().map(|i| self.nbrs[u][i].1.as_slice())
    }
}

fn keyed_pair(g: &ColouredGraph, h: &ColouredGraph, opts: IsoOptions) -> (Keyed, Keyed) {
    let mut colour_ids: HashMap<String, u32> = HashMap::new();
    let mut class_ids: HashMap<Option<String>, u32> = HashMap::new();
    let mut build = |x: &ColouredGraph| {
        let mut darts = Vec::with_capacity(x.vertex_count());
        let mut nbrs = Vec::with_capacity(x.vertex_count());
        let mut vkey = Vec::with_capacity(x.vertex_count());
        for v in 0..x.vertex_count() {
            let mut ds = Vec::new();
            for d in x.out_darts(v) {
                let k = if opts.respect_colours {
                    let next = colour_ids.len() as u32;
                    *colour_ids.entry(x.colour_name(d)).or_insert(next)
                } else {
                    0
                };
                ds.push((k, x.tau(d)));
            }
            let mut by: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for &(k, w) in &ds {
                by.entry(w).or_default().push(k);
            }
            nbrs.push(
                by.into_iter()
                    .map(|(w, mut ks)| {
                        ks.sort_unstable();
                        (w, ks)
                    })
                    .collect(),
            );
            darts.push(ds);
            let ck = if opts.respect_classes {
                let next = class_ids.len() as u32;
                *class_ids.entry(x.class_of(v).map(str::to_string)).or_insert(next)
            } else {
                0
            };
            vkey.push(ck);
        }
        Keyed { n: x.vertex_count(), darts, nbrs, vkey }
    };
    let a = build(g);
    let b = build(h);
    (a, b)
}

/// Joint colour refinement; returns cells for both graphs, or `None` if the
/// cell histograms already differ.
fn refine(a: &Keyed, b: &Keyed) -> Option<(Vec<u32>, Vec<u32>)> {
    let init = |k: &Keyed, v: usize| {
        let loops = k.keys_to(v, v).map(|s| s.to_vec()).unwrap_or_default();
        (k.vkey[v], k.darts[v].len(), loops)
    };
    let mut ids: BTreeMap<(u32, usize, Vec<u32>), u32> = BTreeMap::new();
    for v in 0..a.n {
        let next = ids.len() as u32;
        ids.entry(init(a, v)).or_insert(next);
    }
    for v in 0..b.n {
        let next = ids.len() as u32;
        ids.entry(init(b, v)).or_insert(next);
    }
    let mut ca: Vec<u32> = (0..a.n).map(|v| ids[&init(a, v)]).collect();
    let mut cb: Vec<u32> = (0..b.n).map(|v| ids[&init(b, v)]).collect();
    let mut count = ids.len();
    loop {
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        let sig = |k: &Keyed, c: &[u32], v: usize| {
            let mut s: Vec<(u32, u32)> = k.darts[v].iter().map(|&(key, w)| (key, c[w])).collect();
            s.sort_unstable();
            (c[v], s)
        };
        let mut ids: BTreeMap<(u32, Vec<(u32, u32)>), u32> = BTreeMap::new();
        let sa: Vec<_> = (0..a.n).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.n).map(|v| sig(b, &cb, v)).collect();
        for s in sa.iter().chain(&sb) {
            let next = ids.len() as u32;
            ids.entry(s.clone()).or_insert(next);
        }
        let na: Vec<u32> = sa.iter().map(|s| ids[s]).collect();
        let nb: Vec<u32> = sb.iter().map(|s| ids[s]).collect();
        let stable = ids.len() == count;
        count = ids.len();
        ca = na;
        cb = nb;
        if stable {
            break;
        }
    }
    (histogram(&ca) == histogram(&cb)).then_some((ca, cb))
}

fn histogram(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &x in c {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

struct Search<'a> {
    a: &'a Keyed,
    b: &'a Keyed,
    ca: Vec<u32>,
    cb: Vec<u32>,
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
    fixed: HashMap<usize, usize>,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(a: &'a Keyed, b: &'a Keyed, ca: Vec<u32>, cb: Vec<u32>, fixed: &[(usize, usize)]) -> Self {
        let n = a.n;
        let mut cell_size: HashMap<u32, usize> = HashMap::new();
        for &c in &ca {
            *cell_size.entry(c).or_insert(0) += 1;
        }
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut adjacent_count = vec![0usize; n];
        let place = |v: usize, order: &mut Vec<usize>, placed: &mut Vec<bool>, adj: &mut Vec<usize>| {
            placed[v] = true;
            order.push(v);
            for (w, _) in &a.nbrs[v] {
                adj[*w] += 1;
            }
        };
        for &(u, _) in fixed {
            if !placed[u] {
                place(u, &mut order, &mut placed, &mut adjacent_count);
            }
        }
        while order.len() < n {
            // prefer vertices adjacent to the placed set, then small cells
            let next = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| (adjacent_count[v] == 0, cell_size[&ca[v]], std::cmp::Reverse(adjacent_count[v]), v))
                .unwrap();
            place(next, &mut order, &mut placed, &mut adjacent_count);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let anchor = order
            .iter()
            .map(|&v| a.nbrs[v].iter().map(|(w, _)| *w).filter(|&w| w != v && pos[w] < pos[v]).min_by_key(|&w| pos[w]))
            .collect();
        Search {
            a,
            b,
            ca,
            cb,
            order,
            anchor,
            fixed: fixed.iter().copied().collect(),
            fwd: vec![NONE; n],
            bwd: vec![NONE; b.n],
        }
    }

    fn feasible(&self, u: usize, x: usize) -> bool {
        if self.ca[u] != self.cb[x] || self.bwd[x] != NONE {
            return false;
        }
        if self.a.keys_to(u, u) != self.b.keys_to(x, x) {
            return false;
        }
        let mut mapped_a = 0;
        for (w, ks) in &self.a.nbrs[u] {
            if *w == u || self.fwd[*w] == NONE {
                continue;
            }
            mapped_a += 1;
            if self.b.keys_to(x, self.fwd[*w]) != Some(ks.as_slice()) {
                return false;
            }
        }
        let mapped_b = self.b.nbrs[x].iter().filter(|(y, _)| *y != x && self.bwd[*y] != NONE).count();
        mapped_a == mapped_b
    }

    fn run(&mut self, i: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if i == self.order.len() {
            return visit(&self.fwd);
        }
        let u = self.order[i];
        let candidates: Vec<usize> = if let Some(&t) = self.fixed.get(&u) {
            vec![t]
        } else if let Some(w) = self.anchor[i] {
            self.b.nbrs[self.fwd[w]].iter().map(|(y, _)| *y).collect()
        } else {
            (0..self.b.n).filter(|&x| self.cb[x] == self.ca[u]).collect()
        };
        for x in candidates {
            if !self.feasible(u, x) {
                continue;
            }
            self.fwd[u] = x;
            self.bwd[x] = u;
            let go_on = self.run(i + 1, visit);
            self.fwd[u] = NONE;
            self.bwd[x] = NONE;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Runs the backtracking search, calling `visit` on each complete vertex map
/// until it returns false.
fn search(
    g: &ColouredGraph,
    h: &ColouredGraph,
    opts: IsoOptions,
    fixed: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    if g.vertex_count() != h.vertex_count() || g.dart_count() != h.dart_count() {
        return;
    }
    let (a, b) = keyed_pair(g, h, opts);
    let Some((ca, cb)) = refine(&a, &b) else {
        return;
    };
    let mut s = Search::new(&a, &b, ca, cb, fixed);
    s.run(0, visit);
}

/// Pairs up darts once the vertex map is known.
fn derive_darts(g: &ColouredGraph, h: &ColouredGraph, vmap: &[usize], opts: IsoOptions) -> Option<Vec<usize>> {
    let key = |x: &ColouredGraph, d: usize| if opts.respect_colours { x.colour_name(d) } else { String::new() };
    let mut used = vec![false; h.edge_count()];
    let mut dmap = vec![usize::MAX; g.dart_count()];
    for e in 0..g.edge_count() {
        let d = 2 * e;
        let (u, v) = g.endpoints(e);
        let (kd, kr) = (key(g, d), key(g, d ^ 1));
        let found = h
            .out_darts(vmap[u])
            .find(|&dd| !used[dd / 2] && h.tau(dd) == vmap[v] && key(h, dd) == kd && key(h, dd ^ 1) == kr)?;
        used[found / 2] = true;
        dmap[d] = found;
        dmap[d ^ 1] = found ^ 1;
    }
    Some(dmap)
}

pub fn isomorphic(g: &ColouredGraph, h: &ColouredGraph, opts: IsoOptions) -> Option<Isomorphism> {
    if opts.respect_colours && !opts.respect_classes {
        if let Some(r) = cayley_like_iso(g, h) {
            return r;
        }
    }
    let mut found = None;
    search(g, h, opts, &[], &mut |m| {
        found = Some(m.to_vec());
        false
    });
    let vmap = found?;
    let dart_map = derive_darts(g, h, &vmap, opts).expect("adjacency multisets agree");
    Some(Isomorphism { vertex_map: vmap, dart_map })
}

/// Some automorphism sending `u` to `v`, if one exists.
pub fn find_automorphism(g: &ColouredGraph, mode: ColourMode, u: usize, v: usize) -> Option<Automorphism> {
    let opts = mode_opts(mode);
    let mut found = None;
    search(g, g, opts, &[(u, v)], &mut |m| {
        found = Some(m.to_vec());
        false
    });
    let vmap = found?;
    let dart_map = derive_darts(g, g, &vmap, opts)?;
    Some(Isomorphism { vertex_map: vmap, dart_map })
}

fn mode_opts(mode: ColourMode) -> IsoOptions {
    match mode {
        ColourMode::Plain => IsoOptions::plain(),
        ColourMode::ColourPreserving => IsoOptions::colours(),
    }
}

/// All automorphisms, as distinct vertex permutations, for graphs within the
/// default search bound.
pub fn automorphism_group(g: &ColouredGraph, mode: ColourMode) -> Result<Vec<Automorphism>, GraphError> {
    automorphism_group_bounded(g, mode, DEFAULT_SEARCH_BOUND)
}

pub fn automorphism_group_bounded(
    g: &ColouredGraph,
    mode: ColourMode,
    bound: usize,
) -> Result<Vec<Automorphism>, GraphError> {
    if g.vertex_count() > bound {
        return Err(GraphError::SearchBoundExceeded { vertices: g.vertex_count(), bound });
    }
    let opts = mode_opts(mode);
    if mode == ColourMode::ColourPreserving {
        if let Some(auts) = cayley_like_automorphisms(g) {
            return Ok(auts);
        }
    }
    let mut maps = Vec::new();
    search(g, g, opts, &[], &mut |m| {
        maps.push(m.to_vec());
        true
    });
    Ok(maps
        .into_iter()
        .map(|vmap| {
            let dart_map = derive_darts(g, g, &vmap, opts).expect("automorphism");
            Isomorphism { vertex_map: vmap, dart_map }
        })
        .collect())
}

/// On a connected graph with a Cayley-like colouring a colour-preserving map
/// is fixed by the image of one vertex, so every candidate image is tried and
/// propagated.
pub(crate) fn cayley_like_automorphisms(g: &ColouredGraph) -> Option<Vec<Automorphism>> {
    if g.vertex_count() == 0 || !g.is_connected() {
        return None;
    }
    let wit = g.cayley_like().ok()?;
    let (parent, order) = g.bfs_tree(0);
    let mut out = Vec::new();
    for x in 0..g.vertex_count() {
        if let Some(a) = propagate(g, g, &wit, &parent, &order, x, &|l| Some(l)) {
            out.push(a);
        }
    }
    Some(out)
}

/// Colour-preserving isomorphism between connected Cayley-like graphs.
/// Returns `None` when the fast path does not apply.
fn cayley_like_iso(g: &ColouredGraph, h: &ColouredGraph) -> Option<Option<Isomorphism>> {
    if g.vertex_count() == 0 || !g.is_connected() || !h.is_connected() {
        return None;
    }
    g.cayley_like().ok()?;
    let wh = h.cayley_like().ok()?;
    if g.vertex_count() != h.vertex_count() || g.dart_count() != h.dart_count() {
        return Some(None);
    }
    let hp = h.palette();
    let map_letter = |l: crate::words::Letter| {
        let gen = hp.index(g.palette().name(l.gen()))?;
        Some(hp.normal_letter(crate::words::Letter::new(gen, l.inv)))
    };
    let (parent, order) = g.bfs_tree(0);
    for x in 0..h.vertex_count() {
        if let Some(iso) = propagate(g, h, &wh, &parent, &order, x, &map_letter) {
            return Some(Some(iso));
        }
    }
    Some(None)
}

fn propagate(
    g: &ColouredGraph,
    h: &ColouredGraph,
    wh: &super::CayleyLikeWitness,
    parent: &[usize],
    order: &[usize],
    x: usize,
    map_letter: &dyn Fn(crate::words::Letter) -> Option<crate::words::Letter>,
) -> Option<Isomorphism> {
    let n = g.vertex_count();
    let mut vmap = vec![NONE; n];
    vmap[order[0]] = x;
    for &v in &order[1..] {
        let d = parent[v];
        let l = map_letter(g.colour(d))?;
        let dd = wh.out_dart(vmap[g.origin(d)], l)?;
        vmap[v] = h.tau(dd);
    }
    let mut hit = vec![false; h.vertex_count()];
    for &y in &vmap {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    let mut dmap = vec![NONE; g.dart_count()];
    for d in 0..g.dart_count() {
        let l = map_letter(g.colour(d))?;
        let dd = wh.out_dart(vmap[g.origin(d)], l)?;
        if h.tau(dd) != vmap[g.tau(d)] {
            return None;
        }
        dmap[d] = dd;
    }
    let mut seen = vec![false; h.dart_count()];
    for &dd in &dmap {
        if seen[dd] {
            return None;
        }
        seen[dd] = true;
    }
    Some(Isomorphism { vertex_map: vmap, dart_map: dmap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, shift: usize) -> ColouredGraph {
        let edges: Vec<_> = (0..n).map(|i| ((i + shift) % n, (i + 1 + shift) % n)).collect();
        ColouredGraph::plain(n, &edges)
    }

    fn petersen() -> ColouredGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        ColouredGraph::plain(10, &e)
    }

    #[test]
    fn cycles_isomorphic() {
        let g = cycle(6, 0);
        let mut relabel = ColouredGraph::plain(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]);
        let iso = isomorphic(&g, &relabel, IsoOptions::plain()).unwrap();
        assert!(iso.verify(&g, &relabel, IsoOptions::plain()));
        relabel.add_vertex();
        assert!(isomorphic(&g, &relabel, IsoOptions::plain()).is_none());
    }

    #[test]
    fn prism_not_k33() {
        let prism = ColouredGraph::plain(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        let mut e = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                e.push((i, j));
            }
        }
        let k33 = ColouredGraph::plain(6, &e);
        assert!(isomorphic(&prism, &k33, IsoOptions::plain()).is_none());
    }

    #[test]
    fn petersen_group_order() {
        let g = petersen();
        let auts = automorphism_group(&g, ColourMode::Plain).unwrap();
        assert_eq!(auts.len(), 120);
        for a in &auts {
            assert!(a.verify(&g, &g, IsoOptions::plain()));
        }
    }

    #[test]
    fn single_vertex_identity_only() {
        let g = ColouredGraph::plain(1, &[]);
        assert_eq!(automorphism_group(&g, ColourMode::Plain).unwrap().len(), 1);
    }

    #[test]
    fn bound_enforced() {
        let g = cycle(70, 0);
        assert!(matches!(automorphism_group(&g, ColourMode::Plain), Err(GraphError::SearchBoundExceeded { .. })));
    }

    #[test]
    fn multigraph_automorphisms() {
        // two vertices joined by a double edge: swap only
        let g = ColouredGraph::plain(2, &[(0, 1), (0, 1)]);
        assert_eq!(automorphism_group(&g, ColourMode::Plain).unwrap().len(), 2);
        let l = ColouredGraph::plain(2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(automorphism_group(&l, ColourMode::Plain).unwrap().len(), 2);
        let m = ColouredGraph::plain(2, &[(0, 0), (0, 1)]);
        assert_eq!(automorphism_group(&m, ColourMode::Plain).unwrap().len(), 1);
    }
}
