//! Line graphs, and partite presentations of line graphs of Cayley graphs.

use super::ConstructionError;
use crate::decompose::{k_n_factorization, KnFactorization};
use crate::graph::ColouredGraph;
use crate::presentation::PartitePresentation;
use crate::words::{parse_word, reduce, Alphabet, ClassAction, Letter, Word};

/// `L(g)`: one vertex per edge, one edge per pair of edge-ends meeting at a
/// vertex. Parallel edges of `g` give parallel edges of `L(g)`.
pub fn line_graph(g: &ColouredGraph) -> Result<ColouredGraph, ConstructionError> {
    if (0..g.edge_count()).any(|e| g.is_loop(e)) {
        return Err(ConstructionError::LoopsUnsupported);
    }
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let ends: Vec<usize> = g.out_darts(v).map(|d| d / 2).collect();
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                edges.push((ends[i], ends[j]));
            }
        }
    }
    Ok(ColouredGraph::plain(g.edge_count(), &edges))
}

/// A presentation of `L(Cay<S | R>)` with one class per generator.
#[derive(Clone, Debug)]
pub struct LineGraphPresentation {
    pub presentation: PartitePresentation,
    /// Generator names of the Cayley presentation (the classes).
    pub gens: Vec<String>,
    /// Factorization of `K_S`; `None` for a single generator.
    pub factorization: Option<KnFactorization>,
    /// Relators obtained by translating the Cayley relators, with their class.
    pub first_kind: Vec<(usize, Word)>,
    /// Triangle relators from the stars of vertices, with their class.
    pub star: Vec<(usize, Word)>,
}

/// A letter of the Cayley alphabet: generator and sign.
type SLetter = (usize, bool);

impl LineGraphPresentation {
    fn is_matching(&self, w: usize) -> bool {
        let f = self.factorization.as_ref().expect("factorization");
        let p = &f.perms[w];
        (0..p.len()).all(|x| p[p[x]] == x)
    }

    fn colour_base(&self, w: usize) -> String {
        let f = self.factorization.as_ref().expect("factorization");
        if f.perms.len() == 1 {
            "m".to_string()
        } else {
            format!("m{}", w + 1)
        }
    }

    /// `chi(x, y)` for Cayley letters `x`, `y` with `x != y^-1`; empty word
    /// when `x = y^-1`.
    pub fn chi(&self, x: SLetter, y: SLetter) -> Word {
        let al = &self.presentation.alphabet;
        let (s, si) = x;
        let (t, ti) = y;
        if s == t {
            if si != ti {
                return Word::empty();
            }
            let e = al.index("e").expect("e");
            return reduce(&[Letter::new(e, si)], al);
        }
        let f = self.factorization.as_ref().expect("two or more generators");
        let sign = |inv: bool| if inv { 'n' } else { 'p' };
        for (w, p) in f.perms.iter().enumerate() {
            let base = self.colour_base(w);
            if p[s] == t {
                let (i, j) = (sign(si), sign(ti));
                if self.is_matching(w) && (i, j) == ('n', 'n') {
                    let g = al.index(&format!("{base}_pp")).expect("generator");
                    return reduce(&[Letter::new(g, true)], al);
                }
                let g = al.index(&format!("{base}_{i}{j}")).expect("generator");
                return reduce(&[Letter::new(g, false)], al);
            }
            if p[t] == s {
                // theta(s, t) = m^-1, and (m^-1)_{i,j} = (m_{-j,-i})^-1
                let (i, j) = (sign(!ti), sign(!si));
                let g = al.index(&format!("{base}_{i}{j}")).expect("generator");
                return reduce(&[Letter::new(g, true)], al);
            }
        }
        unreachable!("factorization covers every pair")
    }

    /// Renders a word in subscript notation, e.g. `em_{-1,1}m_{-1,-1}`.
    pub fn render(&self, w: &Word) -> String {
        let mut out = String::new();
        let ls = w.letters();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let (sym, inv) = self.symbol(ls[i]);
            out.push_str(&sym);
            let k = (j - i) as i64 * if inv { -1 } else { 1 };
            if k != 1 {
                out.push_str(&format!("^{{{k}}}"));
            }
            i = j;
        }
        out
    }

    fn symbol(&self, l: Letter) -> (String, bool) {
        let al = &self.presentation.alphabet;
        let name = al.name(l.gen());
        if name == "e" {
            return ("e".into(), l.inv);
        }
        let (base, idx) = name.split_once('_').expect("m-generator");
        let num = |c: char| if c == 'p' { "1" } else { "-1" };
        let mut c = idx.chars();
        let (i, j) = (c.next().unwrap(), c.next().unwrap());
        if !l.inv {
            return (format!("{base}_{{{},{}}}", num(i), num(j)), false);
        }
        let w: usize = base[1..].parse().map(|x: usize| x - 1).unwrap_or(0);
        if self.is_matching(w) {
            // (m_{i,j})^-1 = m_{-j,-i}
            let flip = |c: char| if c == 'p' { "-1" } else { "1" };
            (format!("{base}_{{{},{}}}", flip(j), flip(i)), false)
        } else {
            let flip = |c: char| if c == 'p' { "-1" } else { "1" };
            (format!("{base}^{{-1}}_{{{},{}}}", flip(j), flip(i)), false)
        }
    }
}

/// Builds the presentation of the line graph of `Cay<gens | relators>`.
/// Generators flagged as involutions are rejected; give them as ordinary
/// generators with an `s^2` relator.
pub fn line_graph_presentation(
    gens: &[(&str, bool)],
    relators: &[&str],
) -> Result<LineGraphPresentation, ConstructionError> {
    if gens.is_empty() {
        return Err(ConstructionError::BadParameters("no generators".into()));
    }
    if let Some((g, _)) = gens.iter().find(|g| g.1) {
        return Err(ConstructionError::Unsupported(format!(
            "involution generator `{g}`; use an ordinary generator with a square relator"
        )));
    }
    let names: Vec<&str> = gens.iter().map(|g| g.0).collect();
    let cay = Alphabet::from_parts(&names, &[])?;
    let cay_rels: Vec<Word> = relators.iter().map(|r| parse_word(r, &cay)).collect::<Result<_, _>>()?;
    // the Cayley graph must be finite
    super::cayley_graph(&names, relators, crate::builder::DEFAULT_MAX_ROWS)?;

    let n = names.len();
    let factorization = (n >= 2).then(|| k_n_factorization(n));
    let mut u: Vec<String> = vec!["e".into()];
    let mut i_gens: Vec<String> = Vec::new();
    let mut images: Vec<(String, Vec<usize>)> = vec![("e".into(), (0..n).collect())];
    if let Some(f) = &factorization {
        for (w, p) in f.perms.iter().enumerate() {
            let base = if f.perms.len() == 1 { "m".to_string() } else { format!("m{}", w + 1) };
            let matching = (0..n).all(|x| p[p[x]] == x);
            for ij in ["pp", "pn", "np", "nn"] {
                let name = format!("{base}_{ij}");
                if matching {
                    match ij {
                        "pp" => u.push(name.clone()),
                        "nn" => continue,
                        _ => i_gens.push(name.clone()),
                    }
                } else {
                    u.push(name.clone());
                }
                images.push((name, p.clone()));
            }
        }
    }
    let u_ref: Vec<&str> = u.iter().map(String::as_str).collect();
    let i_ref: Vec<&str> = i_gens.iter().map(String::as_str).collect();
    let alphabet = Alphabet::from_parts(&u_ref, &i_ref)?;
    let mut imgs = vec![Vec::new(); alphabet.len()];
    for (name, p) in images {
        imgs[alphabet.index(&name).expect("generator")] = p;
    }
    let action = ClassAction::new(n, imgs, &alphabet)?;
    let classes: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let presentation = PartitePresentation::new(classes, alphabet, action, vec![Vec::new(); n]);
    let mut lp = LineGraphPresentation {
        presentation,
        gens: names.iter().map(|s| s.to_string()).collect(),
        factorization,
        first_kind: Vec::new(),
        star: Vec::new(),
    };

    let chi_cycle = |lp: &LineGraphPresentation, seq: &[SLetter]| -> Word {
        let mut raw = Vec::new();
        for k in 0..seq.len() {
            raw.extend_from_slice(lp.chi(seq[k], seq[(k + 1) % seq.len()]).letters());
        }
        reduce(&raw, &lp.presentation.alphabet)
    };

    for r in &cay_rels {
        let seq: Vec<SLetter> = cyclic_reduce(r.letters()).iter().map(|l| (l.gen(), l.inv)).collect();
        if seq.is_empty() {
            continue;
        }
        let w = chi_cycle(&lp, &seq);
        if !w.is_empty() {
            lp.first_kind.push((seq[0].0, w));
        }
    }

    // half-edges at a vertex, by the letter leaving along them, in the order
    // in(s1), out(s1), then out(s), in(s) for the other generators
    let mut pos: Vec<SLetter> = vec![(0, true), (0, false)];
    for s in 1..n {
        pos.push((s, false));
        pos.push((s, true));
    }
    for p in 0..pos.len() {
        for q in p + 1..pos.len() {
            for r in q + 1..pos.len() {
                // chi(y1^-1, y2) chi(y2^-1, y3) chi(y3^-1, y1)
                let tri = [pos[p], pos[q], pos[r]];
                let mut raw = Vec::new();
                for k in 0..3 {
                    let (s, i) = tri[k];
                    raw.extend_from_slice(lp.chi((s, !i), tri[(k + 1) % 3]).letters());
                }
                let w = reduce(&raw, &lp.presentation.alphabet);
                lp.star.push((pos[p].0, w));
            }
        }
    }

    let mut rels = vec![Vec::new(); n];
    for (c, w) in lp.first_kind.iter().chain(&lp.star) {
        if !rels[*c].contains(w) {
            rels[*c].push(w.clone());
        }
    }
    lp.presentation.relators = rels;
    Ok(lp)
}

fn cyclic_reduce(ls: &[Letter]) -> Vec<Letter> {
    let mut v = ls.to_vec();
    while v.len() >= 2 {
        let (a, b) = (v[0], v[v.len() - 1]);
        if a.gen == b.gen && a.inv != b.inv {
            v.pop();
            v.remove(0);
        } else {
            break;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_sp;
    use crate::constructions::{cayley_graph, complete, cycle, generalized_petersen};
    use crate::graph::{isomorphic, IsoOptions};

    #[test]
    fn line_graphs() {
        let k3 = complete(3);
        assert!(isomorphic(&line_graph(&k3).unwrap(), &k3, IsoOptions::plain()).is_some());
        let lp = line_graph(&generalized_petersen(5, 2).unwrap()).unwrap();
        assert_eq!((lp.vertex_count(), lp.regular_degree()), (15, Some(4)));
        let oct = line_graph(&complete(4)).unwrap();
        assert_eq!((oct.vertex_count(), oct.regular_degree()), (6, Some(4)));
        let loopy = ColouredGraph::plain(1, &[(0, 0)]);
        assert!(matches!(line_graph(&loopy), Err(ConstructionError::LoopsUnsupported)));
    }

    #[test]
    fn d10_translations() {
        let lp = line_graph_presentation(&[("a", false), ("b", false)], &["a^5", "b^2", "a b a^-1 b^-1"]).unwrap();
        let first: Vec<String> = lp.first_kind.iter().map(|(_, w)| lp.render(w)).collect();
        assert_eq!(first, ["e^{5}", "e^{2}", "m_{1,1}m_{1,-1}m_{-1,-1}m_{-1,1}"]);
        let star: Vec<String> = lp.star.iter().map(|(_, w)| lp.render(w)).collect();
        assert_eq!(
            star,
            ["em_{-1,1}m_{-1,-1}", "em_{-1,-1}m_{1,-1}", "m_{1,1}e^{-1}m_{1,-1}", "m_{-1,1}e^{-1}m_{1,1}"]
        );
        assert!(lp.presentation.is_valid());
        let sp = build_sp(&lp.presentation, 10_000).unwrap();
        assert_eq!(sp.graph.vertex_count(), 20);
        let cay = cayley_graph(&["a", "b"], &["a^5", "b^2", "a b a^-1 b^-1"], 1000).unwrap();
        let l = line_graph(&cay).unwrap();
        assert!(isomorphic(&sp.graph.uncoloured(), &l, IsoOptions::plain()).is_some());
    }

    #[test]
    fn one_generator() {
        let lp = line_graph_presentation(&[("a", false)], &["a^6"]).unwrap();
        assert_eq!(lp.presentation.class_count(), 1);
        let sp = build_sp(&lp.presentation, 1000).unwrap();
        assert!(isomorphic(&sp.graph.uncoloured(), &cycle(6), IsoOptions::plain()).is_some());
        assert!(line_graph_presentation(&[("a", true)], &[]).is_err());
    }
}
