//! Partite presentations `<X | U | I | phi | R>` and their text format.
//!
//! ```text
//! classes: 0 1
//! gen a : U : (0)(1)
//! gen b : I : (0 1)
//! rel 0 : a^5, a b a^2 b
//! rel 1 : a^5
//! ```

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::words::{parse_word, valid_ident, Alphabet, ClassAction, GenKind, Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitePresentation {
    pub classes: Vec<String>,
    pub alphabet: Alphabet,
    pub action: ClassAction,
    /// `relators[x]` is the list `R_x`.
    pub relators: Vec<Vec<Word>>,
}

/// One violated invariant of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotTransitive { unreached: String },
    FixedPointInvolution { gen: String, class: String },
    NotInvolution { gen: String, class: String },
    RelatorNotClosed { class: String, index: usize, relator: String, ends_at: String },
    EmptyRelator { class: String, index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotTransitive { unreached } => {
                write!(f, "NotTransitive: class {unreached} is not reached from the first class")
            }
            Violation::FixedPointInvolution { gen, class } => {
                write!(f, "FixedPointInvolution: {gen} fixes class {class}")
            }
            Violation::NotInvolution { gen, class } => {
                write!(f, "NotInvolution: {gen}^2 moves class {class}")
            }
            Violation::RelatorNotClosed { class, index, relator, ends_at } => {
                write!(f, "RelatorNotClosed: relator #{index} `{relator}` of class {class} ends at class {ends_at}")
            }
            Violation::EmptyRelator { class, index } => {
                write!(f, "EmptyRelator: relator #{index} of class {class} reduces to 1")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: {msg}")]
    Semantic { line: usize, col: usize, msg: String },
    #[error("S2 is empty, so the action on two classes cannot be transitive")]
    EmptyS2,
    #[error("relator `{0}` has an odd number of S2 letters")]
    OddRelator(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl PartitePresentation {
    pub fn new(classes: Vec<String>, alphabet: Alphabet, action: ClassAction, relators: Vec<Vec<Word>>) -> Self {
        assert_eq!(classes.len(), action.class_count());
        assert_eq!(classes.len(), relators.len());
        PartitePresentation { classes, alphabet, action, relators }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == name)
    }

    /// Degree of every vertex of `Sp(P)`: `2|U| + |I|`.
    pub fn degree(&self) -> usize {
        self.alphabet.column_count()
    }

    pub fn word(&self, text: &str) -> Result<Word, WordError> {
        parse_word(text, &self.alphabet)
    }

    pub fn relator_count(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_empty()
    }

    /// Order-independent summary, for comparing presentations up to reordering.
    pub fn canonical_key(&self) -> (Vec<String>, Vec<String>, Vec<Vec<String>>) {
        let mut classes = self.classes.clone();
        classes.sort();
        let mut gens: Vec<String> = (0..self.alphabet.len())
            .map(|g| {
                let img: Vec<String> = self
                    .action
                    .image(g)
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}>{}", self.classes[x], self.classes[y]))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                format!("{}:{}:{}", self.alphabet.name(g), self.alphabet.kind(g), img.join(","))
            })
            .collect();
        gens.sort();
        let mut rels: Vec<(String, Vec<String>)> = self
            .relators
            .iter()
            .enumerate()
            .map(|(x, rs)| {
                let mut v: Vec<String> = rs.iter().map(|r| r.display(&self.alphabet).to_string()).collect();
                v.sort();
                (self.classes[x].clone(), v)
            })
            .collect();
        rels.sort();
        (
            classes,
            gens,
            rels.into_iter()
                .map(|(c, mut v)| {
                    v.insert(0, c);
                    v
                })
                .collect(),
        )
    }
}

pub fn validate(p: &PartitePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = p.class_count();
    let a = &p.alphabet;
    // transitivity: the orbit of class 0 under all generators
    if n > 0 {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in 0..a.len() {
                for y in [p.action.image(g)[x], inverse_image(&p.action, g, x)] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        for (x, s) in seen.iter().enumerate() {
            if !s {
                out.push(Violation::NotTransitive { unreached: p.classes[x].clone() });
            }
        }
    }
    for g in 0..a.len() {
        if a.kind(g) != GenKind::I {
            continue;
        }
        let img = p.action.image(g);
        for x in 0..n {
            if img[x] == x {
                out.push(Violation::FixedPointInvolution { gen: a.name(g).to_string(), class: p.classes[x].clone() });
            } else if img[img[x]] != x {
                out.push(Violation::NotInvolution { gen: a.name(g).to_string(), class: p.classes[x].clone() });
            }
        }
    }
    for (x, rs) in p.relators.iter().enumerate() {
        for (i, r) in rs.iter().enumerate() {
            if r.is_empty() {
                out.push(Violation::EmptyRelator { class: p.classes[x].clone(), index: i });
                continue;
            }
            let end = p.action.apply(r, x).expect("class in range");
            if end != x {
                out.push(Violation::RelatorNotClosed {
                    class: p.classes[x].clone(),
                    index: i,
                    relator: r.display(a).to_string(),
                    ends_at: p.classes[end].clone(),
                });
            }
        }
    }
    out
}

fn inverse_image(phi: &ClassAction, g: usize, x: usize) -> usize {
    phi.image(g).iter().position(|&y| y == x).expect("permutation")
}

/// `<S1, U', I' | R0, R1>` with two classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPartitePresentation {
    pub s1: Vec<String>,
    pub u2: Vec<String>,
    pub i2: Vec<String>,
    pub r0: Vec<Word>,
    pub r1: Vec<Word>,
}

impl TwoPartitePresentation {
    /// Relator text is parsed over the alphabet `S1, U', I'` in that order.
    pub fn parse(s1: &[&str], u2: &[&str], i2: &[&str], r0: &[&str], r1: &[&str]) -> Result<Self, PresentationError> {
        let mut u: Vec<&str> = s1.to_vec();
        u.extend_from_slice(u2);
        let alphabet = Alphabet::from_parts(&u, i2)?;
        let parse_all = |rs: &[&str]| -> Result<Vec<Word>, PresentationError> {
            rs.iter().map(|r| Ok(parse_word(r, &alphabet)?)).collect()
        };
        let tp = TwoPartitePresentation {
            s1: s1.iter().map(|s| s.to_string()).collect(),
            u2: u2.iter().map(|s| s.to_string()).collect(),
            i2: i2.iter().map(|s| s.to_string()).collect(),
            r0: parse_all(r0)?,
            r1: parse_all(r1)?,
        };
        tp.check_parity()?;
        Ok(tp)
    }

    pub fn alphabet(&self) -> Alphabet {
        let mut u: Vec<&str> = self.s1.iter().map(String::as_str).collect();
        u.extend(self.u2.iter().map(String::as_str));
        let i: Vec<&str> = self.i2.iter().map(String::as_str).collect();
        Alphabet::from_parts(&u, &i).expect("names were validated")
    }

    fn is_s2(&self, gen: usize) -> bool {
        gen >= self.s1.len()
    }

    /// Every relator must lie in the kernel of the S2-letter count mod 2.
    pub fn check_parity(&self) -> Result<(), PresentationError> {
        let a = self.alphabet();
        for r in self.r0.iter().chain(&self.r1) {
            if !self.relator_in_kernel(r) {
                return Err(PresentationError::OddRelator(r.display(&a).to_string()));
            }
        }
        Ok(())
    }

    pub fn relator_in_kernel(&self, r: &Word) -> bool {
        r.count_where(|g| self.is_s2(g)).is_multiple_of(2)
    }
}

pub fn from_two_partite(tp: &TwoPartitePresentation) -> Result<PartitePresentation, PresentationError> {
    if tp.u2.is_empty() && tp.i2.is_empty() {
        return Err(PresentationError::EmptyS2);
    }
    tp.check_parity()?;
    let alphabet = tp.alphabet();
    let images = (0..alphabet.len()).map(|g| if tp.is_s2(g) { vec![1, 0] } else { vec![0, 1] }).collect();
    let action = ClassAction::new(2, images, &alphabet)?;
    Ok(PartitePresentation::new(vec!["0".into(), "1".into()], alphabet, action, vec![tp.r0.clone(), tp.r1.clone()]))
}

/// Source positions recorded while parsing, used to point diagnostics at lines.
#[derive(Clone, Debug, Default)]
pub struct Spans {
    pub classes_line: usize,
    pub gen_lines: Vec<usize>,
    pub rel_lines: Vec<Vec<usize>>,
}

/// Parses and validates; violations become `Semantic` errors at the
/// offending line.
pub fn parse(text: &str) -> Result<PartitePresentation, PresentationError> {
    let (p, spans) = parse_unvalidated(text)?;
    if let Some(v) = p.validate().into_iter().next() {
        let line = violation_line(&p, &spans, &v);
        return Err(PresentationError::Semantic { line, col: 1, msg: v.to_string() });
    }
    Ok(p)
}

/// Line number that best locates a violation.
pub fn violation_line(p: &PartitePresentation, spans: &Spans, v: &Violation) -> usize {
    let gen_line = |g: &str| p.alphabet.index(g).map(|i| spans.gen_lines[i]).unwrap_or(0);
    match v {
        Violation::NotTransitive { .. } => spans.classes_line,
        Violation::FixedPointInvolution { gen, .. } | Violation::NotInvolution { gen, .. } => gen_line(gen),
        Violation::RelatorNotClosed { class, index, .. } | Violation::EmptyRelator { class, index } => {
            let x = p.class_index(class).unwrap_or(0);
            spans.rel_lines[x].get(*index).copied().unwrap_or(0)
        }
    }
}

pub fn parse_unvalidated(text: &str) -> Result<(PartitePresentation, Spans), PresentationError> {
    let mut classes: Option<Vec<String>> = None;
    let mut spans = Spans::default();
    let mut alphabet = Alphabet::new();
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut pending_rels: Vec<(usize, usize, String, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let syntax = |col: usize, msg: &str| PresentationError::Syntax { line: line_no, col, msg: msg.to_string() };
        if let Some(rest) = trimmed.strip_prefix("classes:") {
            if classes.is_some() {
                return Err(syntax(indent + 1, "duplicate `classes:` line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(syntax(indent + 9, "expected at least one class name"));
            }
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(PresentationError::Semantic {
                        line: line_no,
                        col: indent + 1,
                        msg: format!("duplicate class `{n}`"),
                    });
                }
                if n.contains(['(', ')', ',', ':']) {
                    return Err(syntax(indent + 1, "class names may not contain ( ) , :"));
                }
            }
            spans.classes_line = line_no;
            classes = Some(names);
        } else if let Some(rest) = trimmed.strip_prefix("gen ") {
            let cls = classes.as_ref().ok_or_else(|| syntax(indent + 1, "`gen` before `classes:`"))?;
            let parts: Vec<&str> = rest.splitn(3, ':').collect();
            if parts.len() != 3 {
                return Err(syntax(indent + 5, "expected `gen NAME : U|I : CYCLES`"));
            }
            let name = parts[0].trim();
            if !valid_ident(name) {
                return Err(syntax(indent + 5, &format!("invalid generator name `{name}`")));
            }
            let kind = match parts[1].trim() {
                "U" => GenKind::U,
                "I" => GenKind::I,
                other => {
                    return Err(syntax(indent + 5 + parts[0].len() + 1, &format!("expected U or I, found `{other}`")))
                }
            };
            let cyc_col = indent + 4 + parts[0].len() + parts[1].len() + 3;
            let img = parse_cycles(parts[2], cls).map_err(|(c, msg)| {
                if msg.starts_with("class") {
                    PresentationError::Semantic { line: line_no, col: cyc_col + c, msg }
                } else {
                    PresentationError::Syntax { line: line_no, col: cyc_col + c, msg }
                }
            })?;
            alphabet.push(name, kind).map_err(|e| PresentationError::Semantic {
                line: line_no,
                col: indent + 5,
                msg: e.to_string(),
            })?;
            spans.gen_lines.push(line_no);
            images.push(img);
        } else if let Some(rest) = trimmed.strip_prefix("rel ") {
            let Some((cls, words)) = rest.split_once(':') else {
                return Err(syntax(indent + 5, "expected `rel CLASS : w1, w2, ...`"));
            };
            let col = indent + 4 + cls.len() + 2;
            for piece in words.split(',') {
                pending_rels.push((line_no, col, cls.trim().to_string(), piece.trim().to_string()));
            }
        } else {
            return Err(syntax(indent + 1, "expected `classes:`, `gen` or `rel`"));
        }
    }

    let classes =
        classes.ok_or(PresentationError::Syntax { line: 1, col: 1, msg: "missing `classes:` line".into() })?;
    let action = ClassAction::new(classes.len(), images, &alphabet)?;
    let mut relators = vec![Vec::new(); classes.len()];
    spans.rel_lines = vec![Vec::new(); classes.len()];
    for (line, col, cls, w) in pending_rels {
        let x = classes.iter().position(|c| *c == cls).ok_or_else(|| PresentationError::Semantic {
            line,
            col: 5,
            msg: format!("unknown class `{cls}`"),
        })?;
        if w.is_empty() {
            continue;
        }
        let word = parse_word(&w, &alphabet).map_err(|e| match e {
            WordError::Syntax { col: c, msg } => PresentationError::Syntax { line, col: col + c, msg },
            other => PresentationError::Semantic { line, col, msg: other.to_string() },
        })?;
        relators[x].push(word);
        spans.rel_lines[x].push(line);
    }
    Ok((PartitePresentation::new(classes, alphabet, action, relators), spans))
}

/// Parses cycle notation like `(0 1)(2)` or `(12)(3)`; omitted classes are fixed.
fn parse_cycles(text: &str, classes: &[String]) -> Result<Vec<usize>, (usize, String)> {
    let n = classes.len();
    let index: HashMap<&str, usize> = classes.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
    let mut img: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c != b'(' {
            return Err((i, format!("expected `(`, found `{}`", c as char)));
        }
        let close = text[i..].find(')').ok_or((i, "unclosed `(`".to_string()))? + i;
        let body = &text[i + 1..close];
        let mut cycle = Vec::new();
        for tok in body.split_whitespace() {
            if let Some(&x) = index.get(tok) {
                cycle.push(x);
            } else {
                for ch in tok.chars() {
                    let x =
                        *index.get(ch.to_string().as_str()).ok_or((i + 1, format!("class `{tok}` is not declared")))?;
                    cycle.push(x);
                }
            }
        }
        for &x in &cycle {
            if touched[x] {
                return Err((i, format!("class {} appears twice in the cycles", classes[x])));
            }
            touched[x] = true;
        }
        for k in 0..cycle.len() {
            img[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
        i = close + 1;
    }
    Ok(img)
}

/// Writes cycle notation, fixed points included.
pub fn format_cycles(img: &[usize], classes: &[String]) -> String {
    let mut seen = vec![false; img.len()];
    let mut out = String::new();
    for start in 0..img.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(classes[x].as_str());
            x = img[x];
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    out
}

pub fn serialize(p: &PartitePresentation) -> String {
    let mut out = String::new();
    out.push_str("classes: ");
    out.push_str(&p.classes.join(" "));
    out.push('\n');
    for g in 0..p.alphabet.len() {
        out.push_str(&format!(
            "gen {} : {} : {}\n",
            p.alphabet.name(g),
            p.alphabet.kind(g),
            format_cycles(p.action.image(g), &p.classes)
        ));
    }
    for (x, rs) in p.relators.iter().enumerate() {
        if rs.is_empty() {
            continue;
        }
        let ws: Vec<String> = rs.iter().map(|r| r.display(&p.alphabet).to_string()).collect();
        out.push_str(&format!("rel {} : {}\n", p.classes[x], ws.join(", ")));
    }
    out
}

impl fmt::Display for PartitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PETERSEN: &str = "classes: 0 1\ngen a : U : (0)(1)\ngen b : I : (0 1)\nrel 0 : a^5, a b a^2 b\nrel 1 : a^5\n";

    #[test]
    fn petersen_parses_and_validates() {
        let p = parse(PETERSEN).unwrap();
        assert_eq!(p.class_count(), 2);
        assert_eq!(p.relator_count(), 3);
        assert_eq!(p.degree(), 3);
        assert_eq!(serialize(&p), PETERSEN);
    }

    #[test]
    fn fixed_point_involution_rejected() {
        let text = "classes: 0 1\ngen a : U : (0 1)\ngen b : I : (0)(1)\n";
        let (p, _) = parse_unvalidated(text).unwrap();
        assert!(matches!(p.validate()[0], Violation::FixedPointInvolution { .. }));
        match parse(text) {
            Err(PresentationError::Semantic { line, msg, .. }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("FixedPointInvolution"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_relator_rejected() {
        let text = "classes: 0 1\ngen a : U : (0)(1)\ngen b : I : (0 1)\nrel 0 : b\n";
        let (p, _) = parse_unvalidated(text).unwrap();
        assert!(matches!(p.validate()[0], Violation::RelatorNotClosed { .. }));
    }

    #[test]
    fn empty_relators_allowed() {
        let p = parse("classes: 0 1\ngen b : I : (0 1)\n").unwrap();
        assert_eq!(p.relator_count(), 0);
        assert!(p.is_valid());
    }

    #[test]
    fn syntax_positions() {
        match parse("classes: 0 1\ngen a : X : (0)(1)\n") {
            Err(PresentationError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("classes: 0 1\ngen a : U : (0)(1)\nrel 0 : a^\n") {
            Err(PresentationError::Syntax { line: 3, col, .. }) => assert!(col > 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("gen a : U : (0)\n"), Err(PresentationError::Syntax { .. })));
        assert!(matches!(parse("classes: 0\ngen a : U : (0)\nrel 0 : c\n"), Err(PresentationError::Semantic { .. })));
        assert!(matches!(parse("classes: 0 1\ngen a : U : (0 2)\n"), Err(PresentationError::Semantic { line: 2, .. })));
    }

    #[test]
    fn concatenated_cycle_notation() {
        let text = "classes: 1 2 3\ngen a : U : (12)(3)\ngen b : U : (1)(23)\nrel 1 : b^5, a^10, a^2 b\nrel 2 : a^-2 b^4\nrel 3 : a^5, b^10, b^2 a\n";
        let p = parse(text).unwrap();
        assert_eq!(p.action.image(0), &[1, 0, 2]);
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn two_partite_conversion() {
        let tp = TwoPartitePresentation::parse(&["a"], &[], &["b"], &["a^5", "a b a^2 b"], &["a^5"]).unwrap();
        let p = from_two_partite(&tp).unwrap();
        assert_eq!(p, parse(PETERSEN).unwrap());

        let haar = TwoPartitePresentation::parse(&[], &[], &["s"], &[], &[]).unwrap();
        assert!(from_two_partite(&haar).unwrap().is_valid());

        let bad = TwoPartitePresentation::parse(&["a"], &[], &[], &["a"], &[]).unwrap();
        assert_eq!(from_two_partite(&bad), Err(PresentationError::EmptyS2));

        assert!(matches!(
            TwoPartitePresentation::parse(&["a"], &[], &["b"], &["a b"], &[]),
            Err(PresentationError::OddRelator(_))
        ));
    }
}
