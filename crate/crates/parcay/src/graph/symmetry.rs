//! Transitivity, Cayley recognition, deck groups and symmetries of the
//! presentation complex.

use std::collections::{HashSet, VecDeque};

use super::iso::{
    automorphism_group, automorphism_group_bounded, cayley_like_automorphisms, find_automorphism, Automorphism,
    ColourMode, DEFAULT_SEARCH_BOUND,
};
use super::{ColouredGraph, GraphError};
use crate::builder::{presentation_complex, BuildError};
use crate::presentation::PartitePresentation;

/// Colour-preserving automorphisms that also preserve class labels.
pub fn deck_group(g: &ColouredGraph) -> Result<Vec<Automorphism>, GraphError> {
    let all = match cayley_like_automorphisms(g) {
        Some(a) => a,
        None => automorphism_group_bounded(g, ColourMode::ColourPreserving, DEFAULT_SEARCH_BOUND)?,
    };
    Ok(all
        .into_iter()
        .filter(|a| (0..g.vertex_count()).all(|v| g.class_of(v) == g.class_of(a.vertex_map[v])))
        .collect())
}

/// Orbit of vertex 0 under the full (uncoloured) automorphism group.
pub fn is_vertex_transitive(g: &ColouredGraph) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    if n > DEFAULT_SEARCH_BOUND {
        return Err(GraphError::SearchBoundExceeded { vertices: n, bound: DEFAULT_SEARCH_BOUND });
    }
    if n == 0 {
        return Ok(true);
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut orbit = vec![false; n];
    orbit[0] = true;
    for v in 1..n {
        if orbit[v] {
            continue;
        }
        let Some(a) = find_automorphism(g, ColourMode::Plain, 0, v) else {
            return Ok(false);
        };
        gens.push(a.vertex_map);
        // close the orbit under every generator found so far
        let mut q: VecDeque<usize> = (0..n).filter(|&x| orbit[x]).collect();
        while let Some(x) = q.pop_front() {
            for p in &gens {
                if !orbit[p[x]] {
                    orbit[p[x]] = true;
                    q.push_back(p[x]);
                }
            }
        }
    }
    Ok(true)
}

/// A subgroup of `Aut(g)` acting regularly on the vertices.
#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    pub generators: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
}

/// Complete search for a regular subgroup of the automorphism group. `None`
/// certifies that `g` is not a Cayley graph.
pub fn is_cayley(g: &ColouredGraph) -> Result<Option<RegularSubgroup>, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(None);
    }
    let auts: Vec<Vec<usize>> = automorphism_group(g, ColourMode::Plain)?.into_iter().map(|a| a.vertex_map).collect();
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    Ok(grow(&auts, vec![], vec![id], n, &mut seen))
}

fn grow(
    auts: &[Vec<usize>],
    gens: Vec<Vec<usize>>,
    elems: Vec<Vec<usize>>,
    n: usize,
    seen: &mut HashSet<Vec<Vec<usize>>>,
) -> Option<RegularSubgroup> {
    if elems.len() == n {
        return Some(RegularSubgroup { generators: gens, elements: elems });
    }
    let mut orbit = vec![false; n];
    for e in &elems {
        orbit[e[0]] = true;
    }
    let v = (0..n).find(|&x| !orbit[x])?;
    for a in auts.iter().filter(|a| a[0] == v) {
        let mut new_gens = gens.clone();
        new_gens.push(a.clone());
        let Some(mut h) = semiregular_closure(&new_gens, n) else {
            continue;
        };
        h.sort();
        if !seen.insert(h.clone()) {
            continue;
        }
        if let Some(r) = grow(auts, new_gens, h, n, seen) {
            return Some(r);
        }
    }
    None
}

/// Closure of the generators, abandoned once it exceeds `n` elements or a
/// non-identity element fixes a vertex.
fn semiregular_closure(gens: &[Vec<usize>], n: usize) -> Option<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..n).collect();
    let mut set: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        i += 1;
        for g in gens {
            let y: Vec<usize> = (0..n).map(|v| g[x[v]]).collect();
            if set.contains(&y) {
                continue;
            }
            if (0..n).any(|v| y[v] == v) {
                return None;
            }
            set.insert(y.clone());
            out.push(y);
            if out.len() > n {
                return None;
            }
        }
    }
    Some(out)
}

/// Automorphisms of the presentation complex whose vertex action is
/// transitive on classes.
#[derive(Clone, Debug)]
pub struct ComplexSymmetry {
    /// `(vertex permutation of the classes, dart permutation of C(P))`.
    pub generators: Vec<(Vec<usize>, Vec<usize>)>,
}

const COMPLEX_SEARCH_LIMIT: usize = 2_000_000;

/// Searches for simplicial automorphisms of the presentation complex moving
/// the first class to every other; returns them as a certificate that
/// `Sp(P)` is vertex transitive. `None` proves nothing.
pub fn presentation_symmetry_implies_vt(p: &PartitePresentation) -> Result<Option<ComplexSymmetry>, BuildError> {
    let cx = presentation_complex(p)?;
    let g = &cx.graph;
    let n = g.vertex_count();
    let canon = |cycle: &[usize]| canonical_cycle(cycle);
    let mut target: Vec<Vec<usize>> = cx.cells.iter().map(|c| canon(&c.boundary.darts)).collect();
    target.sort();

    let plain = g.uncoloured();
    let vperms = automorphism_group_bounded(&plain, ColourMode::Plain, usize::MAX)?;

    // edges grouped by unordered endpoint pair
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        groups.entry((u.min(v), u.max(v))).or_default().push(e);
    }

    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut budget = COMPLEX_SEARCH_LIMIT;
    for vp in vperms {
        let pi = vp.vertex_map;
        if found.iter().any(|(f, _)| *f == pi) {
            continue;
        }
        // choices per group: a bijection onto the image group, with
        // orientations for loops
        let mut slots: Vec<(Vec<usize>, Vec<usize>, bool)> = Vec::new();
        for (&(u, v), es) in &groups {
            let (a, b) = (pi[u], pi[v]);
            let img = groups[&(a.min(b), a.max(b))].clone();
            slots.push((es.clone(), img, u == v));
        }
        if let Some(dmap) = search_dart_maps(g, &pi, &slots, &target, &mut budget) {
            found.push((pi, dmap));
        }
        if budget == 0 {
            return Err(BuildError::Graph(GraphError::SearchBoundExceeded {
                vertices: n,
                bound: COMPLEX_SEARCH_LIMIT,
            }));
        }
    }
    // greedy generating set for the orbit of class 0
    let mut orbit = vec![false; n];
    if n > 0 {
        orbit[0] = true;
    }
    let mut gens: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    loop {
        let grew = found.iter().find(|(pi, _)| (0..n).any(|x| orbit[x] && !orbit[pi[x]]));
        let Some(f) = grew.cloned() else { break };
        gens.push(f);
        let mut q: VecDeque<usize> = (0..n).filter(|&x| orbit[x]).collect();
        while let Some(x) = q.pop_front() {
            for (pi, _) in &gens {
                if !orbit[pi[x]] {
                    orbit[pi[x]] = true;
                    q.push_back(pi[x]);
                }
            }
        }
    }
    if orbit.iter().all(|&o| o) {
        if gens.is_empty() {
            let id: Vec<usize> = (0..n).collect();
            let did: Vec<usize> = (0..g.dart_count()).collect();
            gens.push((id, did));
        }
        Ok(Some(ComplexSymmetry { generators: gens }))
    } else {
        Ok(None)
    }
}

fn search_dart_maps(
    g: &ColouredGraph,
    pi: &[usize],
    slots: &[(Vec<usize>, Vec<usize>, bool)],
    target: &[Vec<usize>],
    budget: &mut usize,
) -> Option<Vec<usize>> {
    let mut dmap = vec![usize::MAX; g.dart_count()];
    rec_slot(g, pi, slots, 0, &mut dmap, target, budget)
}

fn rec_slot(
    g: &ColouredGraph,
    pi: &[usize],
    slots: &[(Vec<usize>, Vec<usize>, bool)],
    k: usize,
    dmap: &mut Vec<usize>,
    target: &[Vec<usize>],
    budget: &mut usize,
) -> Option<Vec<usize>> {
    if *budget == 0 {
        return None;
    }
    if k == slots.len() {
        *budget -= 1;
        return cells_preserved(dmap, target).then(|| dmap.clone());
    }
    let (es, img, is_loop) = &slots[k];
    let mut used = vec![false; img.len()];
    rec_edge(g, pi, slots, k, 0, es, img, *is_loop, &mut used, dmap, target, budget)
}

#[allow(clippy::too_many_arguments)]
fn rec_edge(
    g: &ColouredGraph,
    pi: &[usize],
    slots: &[(Vec<usize>, Vec<usize>, bool)],
    k: usize,
    i: usize,
    es: &[usize],
    img: &[usize],
    is_loop: bool,
    used: &mut Vec<bool>,
    dmap: &mut Vec<usize>,
    target: &[Vec<usize>],
    budget: &mut usize,
) -> Option<Vec<usize>> {
    if i == es.len() {
        return rec_slot(g, pi, slots, k + 1, dmap, target, budget);
    }
    let e = es[i];
    let d = 2 * e;
    for j in 0..img.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let f = img[j];
        let orientations: Vec<usize> = if is_loop {
            vec![2 * f, 2 * f + 1]
        } else if g.origin(2 * f) == pi[g.origin(d)] {
            vec![2 * f]
        } else {
            vec![2 * f + 1]
        };
        for dd in orientations {
            dmap[d] = dd;
            dmap[d ^ 1] = dd ^ 1;
            if let Some(r) = rec_edge(g, pi, slots, k, i + 1, es, img, is_loop, used, dmap, target, budget) {
                return Some(r);
            }
            if *budget == 0 {
                return None;
            }
        }
        used[j] = false;
    }
    None
}

fn cells_preserved(dmap: &[usize], target: &[Vec<usize>]) -> bool {
    let mut mapped: Vec<Vec<usize>> =
        target.iter().map(|c| canonical_cycle(&c.iter().map(|&d| dmap[d]).collect::<Vec<_>>())).collect();
    mapped.sort();
    mapped == target
}

/// Least rotation of the dart cycle or of its reverse traversal.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = cycle.iter().rev().map(|&d| d ^ 1).collect();
    let mut best: Option<Vec<usize>> = None;
    for seq in [cycle, rev.as_slice()] {
        for s in 0..seq.len().max(1) {
            let rot: Vec<usize> = seq[s..].iter().chain(&seq[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse;

    fn cycle(n: usize) -> ColouredGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColouredGraph::plain(n, &e)
    }

    #[test]
    fn cycles_are_cayley() {
        let g = cycle(7);
        assert!(is_vertex_transitive(&g).unwrap());
        let r = is_cayley(&g).unwrap().unwrap();
        assert_eq!(r.elements.len(), 7);
    }

    #[test]
    fn complex_symmetry() {
        let one = parse("classes: 0\ngen a : U : (0)\nrel 0 : a^4\n").unwrap();
        assert!(presentation_symmetry_implies_vt(&one).unwrap().is_some());
        let pet = parse("classes: 0 1\ngen a : U : (0)(1)\ngen b : I : (0 1)\nrel 0 : a^5, a b a^2 b\nrel 1 : a^5\n")
            .unwrap();
        assert!(presentation_symmetry_implies_vt(&pet).unwrap().is_none());
        let prism =
            parse("classes: 0 1\ngen a : U : (0)(1)\ngen b : I : (0 1)\nrel 0 : a^5, a b a b\nrel 1 : a^5\n").unwrap();
        let cert = presentation_symmetry_implies_vt(&prism).unwrap().unwrap();
        assert_eq!(cert.generators[0].0, vec![1, 0]);
    }
}
