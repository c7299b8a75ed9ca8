//! From a graph with a partition-friendly weak multicycle colouring back to a
//! partite presentation, and from bi-Cayley data to a 2-partite presentation.

use thiserror::Error;

use crate::constructions::{bi_cayley, inverse_pairs, ConstructionError, FiniteGroupTable};
use crate::decompose::{is_partition_friendly, weak_multicycle_colouring, DecomposeError, EdgeColouring};
use crate::graph::{ColouredGraph, GraphError};
use crate::presentation::{PartitePresentation, TwoPartitePresentation};
use crate::words::{Alphabet, ClassAction, GenKind, Letter, Word, WordError};

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("colouring is not a partition-friendly weak multicycle colouring")]
    NotPartitionFriendly,
    #[error("base vertex {0} out of range")]
    BadBase(usize),
    #[error("R or L contains an involution")]
    InvolutionInR,
    #[error("|R| = {r} but |L| = {l}")]
    SizeMismatch { r: usize, l: usize },
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The refined Cayley-like colouring: 2-regular colours become directed
/// generators oriented along their cycles, 1-regular colours involutions.
/// Vertex `v` is class `v`.
pub fn directed_colouring(g: &ColouredGraph, col: &EdgeColouring) -> Result<ColouredGraph, ExtractError> {
    if !is_partition_friendly(g, col) {
        return Err(ExtractError::NotPartitionFriendly);
    }
    let n = g.vertex_count();
    let mut palette = Alphabet::new();
    let mut letter_of = vec![None; g.edge_count()];
    // dart index chosen as the positive direction of each edge
    let mut forward = vec![0usize; g.edge_count()];
    for c in 0..col.colour_count() {
        let edges = col.edges_of(c);
        let degree = col.class_degree(g, c).ok_or(ExtractError::NotPartitionFriendly)?;
        let kind = if degree == 2 { GenKind::U } else { GenKind::I };
        let id = palette.push(&col.names[c], kind)?;
        let in_class = |d: usize| col.colour[d / 2] == c;
        if degree == 1 {
            for e in edges {
                letter_of[e] = Some(Letter::new(id, false));
                forward[e] = 2 * e;
            }
            continue;
        }
        let mut done = vec![false; g.edge_count()];
        for start in 0..n {
            let first = g.out_darts(start).filter(|&d| in_class(d) && !done[d / 2]).min_by_key(|&d| (g.tau(d), d));
            let Some(mut d) = first else { continue };
            // least vertex of its cycle: every earlier vertex was handled
            loop {
                done[d / 2] = true;
                letter_of[d / 2] = Some(Letter::new(id, false));
                forward[d / 2] = d;
                let w = g.tau(d);
                if w == start {
                    break;
                }
                let back = ColouredGraph::inv(d);
                d = g.out_darts(w).find(|&x| in_class(x) && x != back).expect("2-regular colour");
            }
        }
    }
    let mut out = ColouredGraph::with_vertices(palette, n);
    for v in 0..n {
        out.set_class(v, &v.to_string());
    }
    for e in 0..g.edge_count() {
        let d = forward[e];
        out.add_edge(g.origin(d), g.tau(d), letter_of[e].expect("every edge coloured"));
    }
    Ok(out)
}

/// A presentation with `X = V(g)` whose partite Cayley graph is `g`. The
/// relators are the fundamental cycles at `base`, attached to its class.
pub fn presentation_from_colouring(
    g: &ColouredGraph,
    col: &EdgeColouring,
    base: usize,
) -> Result<PartitePresentation, ExtractError> {
    if base >= g.vertex_count() {
        return Err(ExtractError::BadBase(base));
    }
    if !g.is_connected() {
        return Err(ExtractError::Disconnected);
    }
    let d = directed_colouring(g, col)?;
    let n = g.vertex_count();
    let palette = d.palette().clone();
    let mut images = vec![(0..n).collect::<Vec<_>>(); palette.len()];
    for dart in 0..d.dart_count() {
        let l = d.colour(dart);
        if !l.inv {
            images[l.gen()][d.origin(dart)] = d.tau(dart);
        }
    }
    let action = ClassAction::new(n, images, &palette)?;
    let mut relators: Vec<Vec<Word>> = vec![Vec::new(); n];
    relators[base] = d.fundamental_cycle_words(base)?;
    let classes = (0..n).map(|v| v.to_string()).collect();
    Ok(PartitePresentation::new(classes, palette, action, relators))
}

/// Decomposition followed by extraction at base vertex `0`.
pub fn pipeline_presentation(g: &ColouredGraph) -> Result<PartitePresentation, ExtractError> {
    if !g.is_connected() {
        return Err(ExtractError::Disconnected);
    }
    let col = weak_multicycle_colouring(g)?;
    presentation_from_colouring(g, &col, 0)
}

/// Generators `r1, ..` pair the inverse pairs of `R` and `L` in sorted order;
/// `s1, ..` are the elements of `S` as involutions. Relators are the
/// fundamental cycles at `(1)_0`.
pub fn bicayley_to_presentation(
    g: &FiniteGroupTable,
    r: &[usize],
    l: &[usize],
    s: &[usize],
) -> Result<TwoPartitePresentation, ExtractError> {
    let graph = paired_bi_cayley(g, r, l, s)?;
    let names = |v: Vec<&str>| v.into_iter().map(String::from).collect::<Vec<_>>();
    let tp = TwoPartitePresentation {
        s1: names(graph.palette().u_gens()),
        u2: Vec::new(),
        i2: names(graph.palette().i_gens()),
        r0: graph.fundamental_cycle_words(g.identity())?,
        r1: Vec::new(),
    };
    debug_assert!(tp.check_parity().is_ok());
    Ok(tp)
}

/// `Bi(G, R, L, S)` with the `r_i` and `l_i` colours merged into one
/// directed colour `r_i`, matching [`bicayley_to_presentation`].
pub fn paired_bi_cayley(
    g: &FiniteGroupTable,
    r: &[usize],
    l: &[usize],
    s: &[usize],
) -> Result<ColouredGraph, ExtractError> {
    let (rp, ri) = inverse_pairs(g, r);
    let (lp, li) = inverse_pairs(g, l);
    if !ri.is_empty() || !li.is_empty() {
        return Err(ExtractError::InvolutionInR);
    }
    if rp.len() != lp.len() {
        return Err(ExtractError::SizeMismatch { r: r.len(), l: l.len() });
    }
    let raw = bi_cayley(g, r, l, s)?;
    if !raw.is_connected() {
        return Err(ExtractError::Disconnected);
    }
    let u: Vec<String> = (1..=rp.len()).map(|i| format!("r{i}")).collect();
    let mut sorted_s = s.to_vec();
    sorted_s.sort_unstable();
    sorted_s.dedup();
    let i: Vec<String> = (1..=sorted_s.len()).map(|j| format!("s{j}")).collect();
    let u_ref: Vec<&str> = u.iter().map(String::as_str).collect();
    let i_ref: Vec<&str> = i.iter().map(String::as_str).collect();
    let palette = Alphabet::from_parts(&u_ref, &i_ref)?;
    let old = raw.palette().clone();
    Ok(raw.recoloured(palette.clone(), |e| {
        let c = raw.colour(2 * e);
        let name = old.name(c.gen());
        let new = match name.as_bytes()[0] {
            b'l' => format!("r{}", &name[1..]),
            _ => name.to_string(),
        };
        Letter::new(palette.index(&new).expect("colour"), c.inv)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_sp;
    use crate::constructions::{complete, cycle, fig_reg, generalized_petersen};
    use crate::graph::{isomorphic, IsoOptions};
    use crate::presentation::from_two_partite;

    fn roundtrip(g: &ColouredGraph, p: &PartitePresentation) -> bool {
        let sp = build_sp(p, 100_000).unwrap();
        isomorphic(&sp.graph.uncoloured(), &g.uncoloured(), IsoOptions::plain()).is_some()
    }

    #[test]
    fn cycle_one_colour() {
        let c = cycle(7);
        let col = EdgeColouring::new(vec![0; 7], vec!["c".into()]);
        let p = presentation_from_colouring(&c, &col, 0).unwrap();
        assert_eq!(p.class_count(), 7);
        assert_eq!(p.relator_count(), 1);
        assert!(p.is_valid());
        assert!(roundtrip(&c, &p));
    }

    #[test]
    fn petersen_and_k4() {
        let g = generalized_petersen(5, 2).unwrap();
        // outer and inner pentagons one colour, spokes another
        let colour = (0..15).map(|e| usize::from(e / 5 == 1)).collect();
        let col = EdgeColouring::new(colour, vec!["p".into(), "s".into()]);
        let p = presentation_from_colouring(&g, &col, 0).unwrap();
        assert_eq!(p.relator_count(), 15 - 10 + 1);
        assert!(roundtrip(&g, &p));
        let k4 = complete(4);
        let p = pipeline_presentation(&k4).unwrap();
        assert_eq!(p.class_count(), 4);
        assert!(roundtrip(&k4, &p));
        assert!(matches!(
            pipeline_presentation(&fig_reg()),
            Err(ExtractError::Decompose(DecomposeError::NoPerfectMatching))
        ));
    }

    #[test]
    fn bicayley() {
        let z5 = FiniteGroupTable::cyclic(5);
        let tp = bicayley_to_presentation(&z5, &[1, 4], &[2, 3], &[0]).unwrap();
        let p = from_two_partite(&tp).unwrap();
        let sp = build_sp(&p, 10_000).unwrap();
        let want = paired_bi_cayley(&z5, &[1, 4], &[2, 3], &[0]).unwrap();
        assert!(isomorphic(&sp.graph, &want, IsoOptions::colours()).is_some());
        let pet = generalized_petersen(5, 2).unwrap().uncoloured();
        assert!(isomorphic(&sp.graph.uncoloured(), &pet, IsoOptions::plain()).is_some());

        let z3 = FiniteGroupTable::cyclic(3);
        let tp = bicayley_to_presentation(&z3, &[], &[], &[0, 1, 2]).unwrap();
        assert!(tp.s1.is_empty());
        let z2 = FiniteGroupTable::cyclic(2);
        assert!(matches!(bicayley_to_presentation(&z2, &[1], &[1], &[]), Err(ExtractError::InvolutionInR)));
    }
}
