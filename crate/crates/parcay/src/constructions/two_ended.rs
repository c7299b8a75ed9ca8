//! The cubic two-ended vertex-transitive graph on `Z x Z/10` and its
//! automorphisms `sigma`, `tau`.

use serde::Serialize;

use super::ConstructionError;
use crate::graph::ColouredGraph;
use crate::words::{parse_word, Alphabet, GenKind, Letter};

/// A vertex `v_{n,k}`, with `k` in `0..10`.
pub type V = (i64, i64);

/// Finite window of layers `n_min..=n_max`.
#[derive(Clone, Debug)]
pub struct TwoEndedWindow {
    pub n_min: i64,
    pub n_max: i64,
    /// Colours `layer` (the 10-cycles) and `cross` (edges between layers).
    pub graph: ColouredGraph,
}

impl TwoEndedWindow {
    pub fn index(&self, v: V) -> Option<usize> {
        let (n, k) = v;
        (self.n_min..=self.n_max).contains(&n).then(|| ((n - self.n_min) * 10 + k.rem_euclid(10)) as usize)
    }

    pub fn vertex(&self, i: usize) -> V {
        (self.n_min + (i / 10) as i64, (i % 10) as i64)
    }

    /// Not on the first or last layer.
    pub fn is_interior(&self, i: usize) -> bool {
        let n = self.vertex(i).0;
        self.n_min < n && n < self.n_max
    }

    /// Vertices of the layers `-r..=r`.
    pub fn ball(&self, r: i64) -> Vec<usize> {
        (-r..=r).flat_map(|n| (0..10).map(move |k| (n, k))).filter_map(|v| self.index(v)).collect()
    }
}

pub fn two_ended_window(n_min: i64, n_max: i64) -> Result<TwoEndedWindow, ConstructionError> {
    if n_min >= n_max {
        return Err(ConstructionError::BadParameters("window needs n_min < n_max".into()));
    }
    let layers = (n_max - n_min + 1) as usize;
    let palette = Alphabet::from_parts(&[], &["layer", "cross"]).expect("names");
    let mut g = ColouredGraph::with_vertices(palette, 10 * layers);
    let mut w = TwoEndedWindow { n_min, n_max, graph: ColouredGraph::new(Alphabet::new()) };
    for n in n_min..=n_max {
        for k in 0..10 {
            let (u, v) = (w.index((n, k)).unwrap(), w.index((n, k + 1)).unwrap());
            g.add_edge(u, v, Letter::new(0, false));
        }
    }
    for n in n_min..n_max {
        // k and k + 5 give the same edge
        for k in 0..5 {
            let (u, v) = (w.index((n, 2 * k + 1)).unwrap(), w.index((n + 1, 4 * k + 2)).unwrap());
            g.add_edge(u, v, Letter::new(1, false));
        }
    }
    w.graph = g;
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AutoName {
    Sigma,
    Tau,
    /// `sigma tau^-1 sigma tau sigma`
    SigmaTilde,
    /// `sigma tau sigma`
    TauTilde,
}

fn sigma((n, k): V, inv: bool) -> V {
    (if inv { n - 1 } else { n + 1 }, k)
}

fn tau((n, k): V) -> V {
    let k = match n.rem_euclid(4) {
        0 => k + 1,
        1 => 3 - k,
        2 => k + 9,
        _ => 7 - k,
    };
    (-n, k.rem_euclid(10))
}

fn tau_inv((m, j): V) -> V {
    let n = -m;
    let k = match n.rem_euclid(4) {
        0 => j - 1,
        1 => 3 - j,
        2 => j + 1,
        _ => 7 - j,
    };
    (n, k.rem_euclid(10))
}

const SIGMA: usize = 0;
const TAU: usize = 1;
const SIGMA_T: usize = 2;
const TAU_T: usize = 3;

fn apply_gen(g: usize, inv: bool, v: V) -> V {
    // composites in written order; maps compose right to left
    let word: &[(usize, bool)] = match g {
        SIGMA => return sigma(v, inv),
        TAU => return if inv { tau_inv(v) } else { tau(v) },
        SIGMA_T => &[(SIGMA, false), (TAU, true), (SIGMA, false), (TAU, false), (SIGMA, false)],
        _ => &[(SIGMA, false), (TAU, false), (SIGMA, false)],
    };
    if inv {
        word.iter().fold(v, |x, &(h, i)| apply_gen(h, !i, x))
    } else {
        word.iter().rev().fold(v, |x, &(h, i)| apply_gen(h, i, x))
    }
}

pub fn two_ended_auto(name: AutoName, v: V) -> V {
    let g = match name {
        AutoName::Sigma => SIGMA,
        AutoName::Tau => TAU,
        AutoName::SigmaTilde => SIGMA_T,
        AutoName::TauTilde => TAU_T,
    };
    apply_gen(g, false, (v.0, v.1.rem_euclid(10)))
}

/// A composite of `sigma` (`s`), `tau` (`t`), `sigma~` (`S`) and `tau~` (`T`),
/// composed right to left like maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoWord(Vec<Letter>);

pub fn parse_auto_word(text: &str) -> Result<AutoWord, ConstructionError> {
    let al = auto_alphabet();
    Ok(AutoWord(parse_word(text, &al)?.letters().to_vec()))
}

fn auto_alphabet() -> Alphabet {
    let mut al = Alphabet::new();
    for n in ["s", "t", "S", "T"] {
        al.push(n, GenKind::U).expect("names");
    }
    al
}

impl AutoWord {
    pub fn apply(&self, v: V) -> V {
        self.0.iter().rev().fold((v.0, v.1.rem_euclid(10)), |x, l| apply_gen(l.gen(), l.inv, x))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoEndedReport {
    pub n_min: i64,
    pub n_max: i64,
    pub checks: Vec<Check>,
}

impl TwoEndedReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the certificate computations on the window `n_min..=n_max`.
pub fn verify_two_ended(n_min: i64, n_max: i64) -> Result<TwoEndedReport, ConstructionError> {
    let w = two_ended_window(n_min, n_max)?;
    let g = &w.graph;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check { name: name.to_string(), passed, detail });
    };

    let interior: Vec<usize> = (0..g.vertex_count()).filter(|&i| w.is_interior(i)).collect();
    let cubic = interior.iter().all(|&i| g.degree(i) == 3);
    push("interior-cubic", cubic, format!("{} interior vertices", interior.len()));
    let layers_ok = (n_min..=n_max).all(|n| {
        (0..10).all(|k| {
            let (a, b) = (w.index((n, k)).unwrap(), w.index((n, k + 1)).unwrap());
            g.multiplicity(a, b) == 1
        })
    });
    push("layers-are-10-cycles", layers_ok, String::new());

    let word = |t: &str| parse_auto_word(t).expect("fixed word");
    for (name, m) in [("sigma", word("s")), ("tau", word("t")), ("sigma^-1", word("s^-1")), ("tau^-1", word("t^-1"))] {
        let mut checked = 0;
        let mut bad = Vec::new();
        for (u, v) in g.edges() {
            let (iu, iv) = (w.index(m.apply(w.vertex(u))), w.index(m.apply(w.vertex(v))));
            if let (Some(a), Some(b)) = (iu, iv) {
                checked += 1;
                if g.multiplicity(a, b) == 0 {
                    bad.push((w.vertex(u), w.vertex(v)));
                }
            }
        }
        push(
            &format!("{name}-preserves-edges"),
            bad.is_empty(),
            format!("{checked} edges checked, {} broken", bad.len()),
        );
    }

    let v00 = (0, 0);
    let reached = interior.iter().all(|&i| {
        let (n, k) = w.vertex(i);
        let mut ls = vec![Letter::new(SIGMA, n < 0); n.unsigned_abs() as usize];
        ls.extend(vec![Letter::new(TAU, false); k as usize]);
        AutoWord(ls).apply(v00) == (n, k)
    });
    push("transitivity-witness", reached, format!("sigma^n tau^k (v00) over {} vertices", interior.len()));

    let stab = word("t^-3 s t s");
    let ok = stab.apply((0, 0)) == (0, 0) && stab.apply((0, 1)) == (0, 9);
    push("stabilizer-element", ok, format!("v01 -> {:?}", stab.apply((0, 1))));

    let all: Vec<V> = (0..g.vertex_count()).map(|i| w.vertex(i)).collect();
    for (text, fixed) in [("t S t S", (0, 3)), ("T s T s", (0, 2)), ("T S T S", (0, 9))] {
        let m = word(text);
        let fixes = m.apply(fixed) == fixed;
        let moved = all.iter().find(|&&v| m.apply(v) != v).copied();
        push(&format!("fixed-point {text}"), fixes && moved.is_some(), format!("fixes {fixed:?}; moves {moved:?}"));
    }

    for text in ["t^10", "(t^-1 s t s)^2", "s^-1 t^2 s t^-4", "(s^-2 t)^2"] {
        let m = word(text);
        let trivial = all.iter().all(|&v| m.apply(v) == v);
        push(&format!("relation {text}"), trivial, String::new());
    }

    // the quasi-isometry only needs this distance to be one constant
    let dists: Vec<Option<usize>> = (n_min + 1..n_max - 1)
        .map(|n| g.bfs_distances(w.index((n, 0)).unwrap())[w.index((n + 1, 0)).unwrap()])
        .collect();
    let uniform = dists.first().is_some_and(|d| d.is_some() && dists.iter().all(|x| x == d));
    push(
        "layer-step-distance",
        uniform,
        format!("d(v_n0, v_n+1,0) = {:?} over {} layer pairs", dists.first().copied().flatten(), dists.len()),
    );

    // every word of length <= 8 fixing v00 acts as the identity or as the
    // stabilizer element on the layers -1..=1
    let probe: Vec<V> = (-1..=1).flat_map(|n| (0..10).map(move |k| (n, k))).collect();
    let stab_map: Vec<V> = probe.iter().map(|&v| stab.apply(v)).collect();
    let mut fixing = 0usize;
    let mut bad = 0usize;
    let gens = [(SIGMA, false), (SIGMA, true), (TAU, false), (TAU, true)];
    let mut stack: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    while let Some(wd) = stack.pop() {
        let apply = |v: V| wd.iter().rev().fold(v, |x, &(h, i)| apply_gen(h, i, x));
        if apply(v00) == v00 {
            fixing += 1;
            let img: Vec<V> = probe.iter().map(|&v| apply(v)).collect();
            if img != probe && img != stab_map {
                bad += 1;
            }
        }
        if wd.len() < 8 {
            for &l in &gens {
                if wd.last().is_some_and(|&(h, i)| h == l.0 && i != l.1) {
                    continue;
                }
                let mut next = wd.clone();
                next.push(l);
                stack.push(next);
            }
        }
    }
    push("stabilizer-order-2", bad == 0, format!("{fixing} reduced words fix v00"));

    Ok(TwoEndedReport { n_min, n_max, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_shape() {
        let w = two_ended_window(-2, 2).unwrap();
        assert_eq!(w.graph.vertex_count(), 50);
        for i in 0..50 {
            if w.is_interior(i) {
                assert_eq!(w.graph.degree(i), 3);
            }
        }
    }

    #[test]
    fn formulas() {
        assert_eq!(two_ended_auto(AutoName::Sigma, (0, 0)), (1, 0));
        for k in 0..10 {
            assert_eq!(two_ended_auto(AutoName::Tau, (1, k)), (-1, (3 - k).rem_euclid(10)));
            assert_eq!(tau_inv(tau((3, k))), (3, k));
            assert_eq!(two_ended_auto(AutoName::TauTilde, (0, k)), (0, (3 - k).rem_euclid(10)));
            assert_eq!(two_ended_auto(AutoName::SigmaTilde, (0, k)), (1, (2 - k).rem_euclid(10)));
        }
        let m = parse_auto_word("t^-3 s t s").unwrap();
        assert_eq!(m.apply((0, 0)), (0, 0));
        assert_eq!(m.apply((0, 1)), (0, 9));
    }

    #[test]
    fn certificate() {
        let r = verify_two_ended(-6, 6).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{} failed: {}", c.name, c.detail);
        }
    }
}
