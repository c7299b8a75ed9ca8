//! Parse, validate and print partite presentations.

use parcay::presentation::{parse, parse_unvalidated, serialize};
use parcay::words::{invert, parse_word, reduce, Alphabet};

fn main() {
    let p = parse(include_str!("../fixtures/line_petersen.pp")).expect("valid presentation");
    println!("{} classes, {} relators", p.class_count(), p.relator_count());
    print!("{}", serialize(&p));

    // axioms are checked after parsing; each violation names a line
    let (bad, _) = parse_unvalidated(include_str!("../fixtures/bad.pp")).unwrap();
    for v in bad.validate() {
        println!("violation: {v}");
    }

    let al = Alphabet::from_parts(&["a"], &["b"]).unwrap();
    // b is an involution, so b b cancels and the a's meet
    let w = parse_word("a b b a^-1 (a b)^2", &al).unwrap();
    println!("a b b a^-1 (a b)^2 = {}", w.display(&al));
    let inv = invert(&w, &al);
    let mut both = w.letters().to_vec();
    both.extend_from_slice(inv.letters());
    println!("times its inverse {} has length {}", inv.display(&al), reduce(&both, &al).len());
}
