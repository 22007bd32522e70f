//! Small named contexts used by tests, the law suites and the CLI examples.

use crate::context::FormalContext;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Four animals against four attributes. Every animal has exactly one of
/// Mature/Juvenile and one of Feline/Canine.
pub fn animals() -> FormalContext {
    let objects = labels(&["Cat", "Dog", "Kitten", "Puppy"]);
    let attributes = labels(&["Mature", "Feline", "Canine", "Juvenile"]);
    let x = true;
    let o = false;
    FormalContext::new("animals", objects, attributes, &[vec![x, x, o, o], vec![x, o, x, o], vec![o, x, o, x], vec![o, o, x, x]])
        .expect("animals fixture")
}

/// `S_A` on `a, b, c, ...` with `n` elements.
pub fn s(n: usize) -> FormalContext {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    FormalContext::from_set(&names).expect("S_n fixture").with_name(format!("S{n}"))
}

/// `F` of the `n`-element chain `0 < 1 < ... < n-1`.
pub fn chain_context(n: usize) -> FormalContext {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FormalContext::from_fn(format!("C{n}"), names.clone(), names, |i, j| i <= j).expect("chain fixture")
}

/// `F` of the 2-element antichain: the identity matrix; its concept lattice is the diamond.
pub fn antichain2() -> FormalContext {
    FormalContext::from_fn("A2", labels(&["p", "q"]), labels(&["p", "q"]), |i, j| i == j).expect("antichain fixture")
}

/// Reduced context of `M3`: three atoms against three coatoms, incident on the diagonal.
pub fn m3() -> FormalContext {
    let l = labels(&["x", "y", "z"]);
    FormalContext::from_fn("M3", l.clone(), l, |i, j| i == j).expect("M3 fixture")
}

/// Reduced context of the pentagon `N5 = {0 < a < b < 1, 0 < c < 1}`.
pub fn n5() -> FormalContext {
    // objects: join-irreducibles a, b, c; attributes: meet-irreducibles a, b, c
    let x = true;
    let o = false;
    FormalContext::new("N5", labels(&["a", "b", "c"]), labels(&["a'", "b'", "c'"]), &[vec![x, x, o], vec![o, x, o], vec![o, o, x]])
        .expect("N5 fixture")
}

/// A 2x3 context with a full column and an empty row.
pub fn lopsided() -> FormalContext {
    let x = true;
    let o = false;
    FormalContext::new("lopsided", labels(&["g", "h"]), labels(&["m", "n", "k"]), &[vec![x, x, o], vec![x, o, o]])
        .expect("lopsided fixture")
}

pub fn empty() -> FormalContext {
    FormalContext::from_set::<&str>(&[]).expect("empty fixture").with_name("empty")
}

/// The general fixture pool: everything above that stays cheap under brute force.
pub fn pool() -> Vec<FormalContext> {
    vec![FormalContext::trivial(), s(2), s(3), chain_context(2), chain_context(3), antichain2(), m3(), n5(), lopsided(), animals(), empty()]
}

/// Contexts with at most 3 objects and 3 attributes, for the lattice tensor.
pub fn small_pool() -> Vec<FormalContext> {
    vec![FormalContext::trivial(), s(2), chain_context(2), chain_context(3), antichain2(), lopsided(), empty()]
}

/// The toy lexicon shipped in `fixtures/lexicon.json`, with its two type
/// contexts, compiled in.
pub fn toy_lexicon() -> crate::disco::Lexicon {
    crate::disco::Lexicon::from_json_with(include_str!("../fixtures/lexicon.json"), |file| match file {
        "noun.cxt" => Ok(include_str!("../fixtures/noun.cxt").to_string()),
        "sentence.cxt" => Ok(include_str!("../fixtures/sentence.cxt").to_string()),
        other => Err(crate::error::Error::Lexicon(format!("no embedded file {other}"))),
    })
    .expect("toy lexicon")
}
