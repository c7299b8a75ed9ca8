//! Words in the free product of a free group on `U` and copies of Z/2 on `I`.
//!
//! A [`Word`] is always kept in normal form: no `g g^-1` pairs and no `s s`
//! for an involutive generator `s`. Letters are small integer codes so that
//! relator scanning in the coset enumerator stays cheap.

use std::fmt;

use thiserror::Error;

/// Whether a generator is directed (`U`) or an involution (`I`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    U,
    I,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKind::U => write!(f, "U"),
            GenKind::I => write!(f, "I"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown class {0}")]
    UnknownClass(usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("image table for `{0}` is not a permutation")]
    NotPermutation(String),
}

/// A generator together with a sign. `inv` is always false for `I` letters in
/// normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen: gen as u32, inv }
    }

    pub fn gen(&self) -> usize {
        self.gen as usize
    }
}

/// The ordered set of generator names, partitioned into `U` and `I`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
    kinds: Vec<GenKind>,
}

pub(crate) fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    /// Builds an alphabet with all `U` generators first, then all `I` ones.
    pub fn from_parts(u_gens: &[&str], i_gens: &[&str]) -> Result<Self, WordError> {
        let mut a = Alphabet::new();
        for g in u_gens {
            a.push(g, GenKind::U)?;
        }
        for g in i_gens {
            a.push(g, GenKind::I)?;
        }
        Ok(a)
    }

    /// Appends a generator and returns its index.
    pub fn push(&mut self, name: &str, kind: GenKind) -> Result<usize, WordError> {
        if !valid_ident(name) {
            return Err(WordError::BadName(name.to_string()));
        }
        if self.index(name).is_some() {
            return Err(WordError::DuplicateGenerator(name.to_string()));
        }
        self.names.push(name.to_string());
        self.kinds.push(kind);
        Ok(self.names.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn kind(&self, gen: usize) -> GenKind {
        self.kinds[gen]
    }

    pub fn is_involution(&self, gen: usize) -> bool {
        self.kinds[gen] == GenKind::I
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn u_gens(&self) -> Vec<&str> {
        self.iter_kind(GenKind::U)
    }

    pub fn i_gens(&self) -> Vec<&str> {
        self.iter_kind(GenKind::I)
    }

    fn iter_kind(&self, kind: GenKind) -> Vec<&str> {
        self.names.iter().zip(&self.kinds).filter(|(_, k)| **k == kind).map(|(n, _)| n.as_str()).collect()
    }

    /// Letter for a generator name; `inv` is dropped for involutions.
    pub fn letter(&self, name: &str, inv: bool) -> Result<Letter, WordError> {
        let g = self.index(name).ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        Ok(self.normal_letter(Letter::new(g, inv)))
    }

    pub fn normal_letter(&self, l: Letter) -> Letter {
        if self.is_involution(l.gen()) {
            Letter { gen: l.gen, inv: false }
        } else {
            l
        }
    }

    pub fn inverse_letter(&self, l: Letter) -> Letter {
        if self.is_involution(l.gen()) {
            l
        } else {
            Letter { gen: l.gen, inv: !l.inv }
        }
    }

    /// Number of coset-table columns: two per `U` generator, one per `I`.
    pub fn column_count(&self) -> usize {
        self.kinds.iter().map(|k| if *k == GenKind::U { 2 } else { 1 }).sum()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        if l.inv {
            format!("{}^-1", self.names[l.gen()])
        } else {
            self.names[l.gen()].clone()
        }
    }

    /// All letters that can label an outgoing dart: `s`, `s^-1` for `U`, `s` for `I`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for g in 0..self.len() {
            out.push(Letter::new(g, false));
            if !self.is_involution(g) {
                out.push(Letter::new(g, true));
            }
        }
        out
    }
}

/// An element of the free product, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Wraps letters that are already known to be in normal form.
    pub fn concat(&self, other: &Word, alphabet: &Alphabet) -> Word {
        let mut raw = self.letters.clone();
        raw.extend_from_slice(&other.letters);
        reduce(&raw, alphabet)
    }

    pub fn pow(&self, k: i64, alphabet: &Alphabet) -> Word {
        let base = if k < 0 { invert(self, alphabet) } else { self.clone() };
        let mut raw = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            raw.extend_from_slice(&base.letters);
        }
        reduce(&raw, alphabet)
    }

    /// True if every cyclic rotation is also reduced.
    pub fn is_cyclically_reduced(&self, alphabet: &Alphabet) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) if self.len() > 1 => alphabet.inverse_letter(l) != f,
            _ => true,
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }

    /// Number of letters whose generator satisfies `pred`.
    pub fn count_where(&self, mut pred: impl FnMut(usize) -> bool) -> usize {
        self.letters.iter().filter(|l| pred(l.gen())).count()
    }
}

/// Renders a word as `a b^2 c^-1`; the empty word is `1`.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls = &self.word.letters;
        if ls.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let run = (j - i) as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self.alphabet.name(ls[i].gen());
            let e = if ls[i].inv { -run } else { run };
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Free reduction plus `s s = 1` for involutions.
pub fn reduce(raw: &[Letter], alphabet: &Alphabet) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        let l = alphabet.normal_letter(l);
        if let Some(&top) = out.last() {
            if top == alphabet.inverse_letter(l) {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    Word { letters: out }
}

/// Reduces a sequence of `(name, sign)` pairs.
pub fn reduce_named(raw: &[(&str, i32)], alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut ls = Vec::with_capacity(raw.len());
    for &(name, sign) in raw {
        ls.push(alphabet.letter(name, sign < 0)?);
    }
    Ok(reduce(&ls, alphabet))
}

pub fn invert(w: &Word, alphabet: &Alphabet) -> Word {
    Word { letters: w.letters.iter().rev().map(|&l| alphabet.inverse_letter(l)).collect() }
}

/// Permutations of the class set, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAction {
    images: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    n: usize,
}

impl ClassAction {
    /// `images[g][x]` is the image of class `x` under generator `g`.
    pub fn new(n: usize, images: Vec<Vec<usize>>, alphabet: &Alphabet) -> Result<Self, WordError> {
        if images.len() != alphabet.len() {
            return Err(WordError::Syntax {
                col: 0,
                msg: format!("expected {} image tables, got {}", alphabet.len(), images.len()),
            });
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            let mut inv = vec![usize::MAX; n];
            if img.len() != n {
                return Err(WordError::NotPermutation(alphabet.name(g).to_string()));
            }
            for (x, &y) in img.iter().enumerate() {
                if y >= n || inv[y] != usize::MAX {
                    return Err(WordError::NotPermutation(alphabet.name(g).to_string()));
                }
                inv[y] = x;
            }
            inverses.push(inv);
        }
        Ok(ClassAction { images, inverses, n })
    }

    /// The action on a single class where every generator acts trivially.
    pub fn trivial(alphabet: &Alphabet) -> Self {
        ClassAction { images: vec![vec![0]; alphabet.len()], inverses: vec![vec![0]; alphabet.len()], n: 1 }
    }

    pub fn class_count(&self) -> usize {
        self.n
    }

    pub fn image(&self, gen: usize) -> &[usize] {
        &self.images[gen]
    }

    pub fn apply_letter(&self, l: Letter, x: usize) -> usize {
        if l.inv {
            self.inverses[l.gen()][x]
        } else {
            self.images[l.gen()][x]
        }
    }

    /// Follows the word letter by letter starting at `x`, as a walk would.
    pub fn apply(&self, w: &Word, x: usize) -> Result<usize, WordError> {
        self.apply_letters(w.letters(), x)
    }

    pub fn apply_letters(&self, ls: &[Letter], x: usize) -> Result<usize, WordError> {
        if x >= self.n {
            return Err(WordError::UnknownClass(x));
        }
        Ok(ls.iter().fold(x, |y, &l| self.apply_letter(l, y)))
    }
}

pub fn apply_action(phi: &ClassAction, w: &Word, x: usize) -> Result<usize, WordError> {
    phi.apply(w, x)
}

pub fn in_stabilizer(phi: &ClassAction, w: &Word, x: usize) -> Result<bool, WordError> {
    Ok(phi.apply(w, x)? == x)
}

/// Parses a word literal such as `a b a^2 b`, `ab^-1`, or `(ab)^5`.
///
/// A token that is not a generator name is split into single characters if
/// each of them is one.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut p = WordParser { src: text.as_bytes(), pos: 0, alphabet };
    let raw = p.sequence(0)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(reduce(&raw, alphabet))
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl WordParser<'_> {
    fn err(&self, msg: String) -> WordError {
        WordError::Syntax { col: self.pos + 1, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self, depth: usize) -> Result<Vec<Letter>, WordError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b')') if depth > 0 => break,
                Some(b'1') if self.is_unit() => {
                    self.pos += 1;
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(self.err("expected `)`".into()));
                    }
                    self.pos += 1;
                    let e = self.exponent()?;
                    push_power(&mut out, &inner, e, self.alphabet);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphanumeric() || c == b'_' {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let tok = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let letters = self.resolve(tok)?;
                    let e = self.exponent()?;
                    // the exponent binds to the last generator of a split token
                    let (last, init) = letters.split_last().unwrap();
                    out.extend_from_slice(init);
                    push_power(&mut out, &[*last], e, self.alphabet);
                }
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
        }
        Ok(out)
    }

    fn is_unit(&self) -> bool {
        !matches!(self.src.get(self.pos + 1), Some(c) if c.is_ascii_alphanumeric())
    }

    fn resolve(&self, tok: &str) -> Result<Vec<Letter>, WordError> {
        if let Some(g) = self.alphabet.index(tok) {
            return Ok(vec![Letter::new(g, false)]);
        }
        tok.chars()
            .map(|ch| {
                self.alphabet
                    .index(&ch.to_string())
                    .map(|g| Letter::new(g, false))
                    .ok_or_else(|| WordError::UnknownGenerator(tok.to_string()))
            })
            .collect()
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().map_err(|_| WordError::Syntax { col: start + 1, msg: "expected integer exponent".into() })
    }
}

fn push_power(out: &mut Vec<Letter>, base: &[Letter], e: i64, alphabet: &Alphabet) {
    if e >= 0 {
        for _ in 0..e {
            out.extend_from_slice(base);
        }
    } else {
        let inv: Vec<Letter> = base.iter().rev().map(|&l| alphabet.inverse_letter(l)).collect();
        for _ in 0..(-e) {
            out.extend_from_slice(&inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_parts(&["a"], &["b"]).unwrap()
    }

    fn w(s: &str, a: &Alphabet) -> Word {
        parse_word(s, a).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = ab();
        assert_eq!(reduce_named(&[("a", 1), ("a", -1), ("b", 1)], &a).unwrap(), w("b", &a));
        assert!(reduce_named(&[("b", 1), ("b", 1)], &a).unwrap().is_empty());
        let r = reduce_named(&[("a", 1), ("b", 1), ("a", -1), ("a", 1), ("b", 1), ("b", 1)], &a).unwrap();
        assert_eq!(r.display(&a).to_string(), "a b");
        assert!(matches!(reduce_named(&[("c", 1)], &a), Err(WordError::UnknownGenerator(_))));
    }

    #[test]
    fn invert_examples() {
        let a = ab();
        assert_eq!(invert(&w("a b", &a), &a).display(&a).to_string(), "b a^-1");
        assert!(invert(&Word::empty(), &a).is_empty());
        assert_eq!(invert(&w("a^2", &a), &a).display(&a).to_string(), "a^-2");
    }

    #[test]
    fn parse_forms() {
        let a = ab();
        assert_eq!(w("(ab)^5", &a).len(), 10);
        assert_eq!(w("ab a^2b", &a), w("a b a^2 b", &a));
        assert_eq!(w("b^-1", &a), w("b", &a));
        assert_eq!(w("(a b)^-1", &a), w("b a^-1", &a));
        assert!(w("1", &a).is_empty());
        assert!(parse_word("a^", &a).is_err());
        assert!(parse_word("(a b", &a).is_err());
        assert!(parse_word("abc", &a).is_err());
    }

    #[test]
    fn action_examples() {
        let a = ab();
        let phi = ClassAction::new(2, vec![vec![0, 1], vec![1, 0]], &a).unwrap();
        assert_eq!(apply_action(&phi, &w("b", &a), 0).unwrap(), 1);
        assert_eq!(apply_action(&phi, &w("a b a^2 b", &a), 0).unwrap(), 0);
        assert!(!in_stabilizer(&phi, &w("b", &a), 0).unwrap());
        assert!(in_stabilizer(&phi, &w("a^5", &a), 1).unwrap());
        assert!(in_stabilizer(&phi, &Word::empty(), 1).unwrap());
        assert_eq!(apply_action(&phi, &Word::empty(), 7), Err(WordError::UnknownClass(7)));
    }

    #[test]
    fn line_graph_action() {
        // a -> (12)(3), classes 1,2,3 stored as 0,1,2
        let a = Alphabet::from_parts(&["a", "b"], &[]).unwrap();
        let phi = ClassAction::new(3, vec![vec![1, 0, 2], vec![0, 2, 1]], &a).unwrap();
        assert_eq!(phi.apply(&w("a", &a), 0).unwrap(), 1);
    }

    #[test]
    fn rejects_non_permutation() {
        let a = ab();
        assert!(ClassAction::new(2, vec![vec![0, 0], vec![1, 0]], &a).is_err());
    }
}
