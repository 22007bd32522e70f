use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{same, Cases};
use crate::bits::Bits;
use crate::disco::{
    all_reductions, entails, interpret, interpret_along, lattice_meaning, reduce, tuple_count, Lexicon, ProtoType, Simple, TensorState,
};
use crate::error::Error;
use crate::fixtures;
use crate::lawcheck::{ensure, GenConfig, Kernel, Outcome};
use crate::morphism::identity;
use crate::suplat::concept_lattice;

const WORDS: [&str; 4] = ["Alice", "Bob", "likes", "fears"];
const MAX_WITNESSES: usize = 64;

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig) {
    let base = Arc::new(fixtures::toy_lexicon());
    for sentence in [&["Alice", "likes", "Bob"][..], &["Bob", "fears", "Alice"], &["Alice"]] {
        let lex = base.clone();
        let words: Vec<String> = sentence.iter().map(|w| w.to_string()).collect();
        let target = if sentence.len() == 1 { "n" } else { "s" };
        cases.add("interpretation-invariance", format!("{} : {target}", words.join(" ")), move |_| {
            invariance(&lex, &words, &target.parse()?)
        });
    }

    let mut rng = cfg.rng();
    for trial in 0..cfg.trials {
        let types = random_types(&mut rng);
        let target = random_types(&mut rng).into_iter().take(rng.gen_range(0..=1)).collect::<Vec<_>>();
        let target = ProtoType::concat(&target);
        let key = format!("trial {trial}: {} ≤ {target}", ProtoType::concat(&types));
        cases.add("reduction-soundness", key, move |_| soundness(&types, &target));

        // half the sentences follow noun-verb-noun, the rest are arbitrary word strings
        let words: Vec<String> = if rng.gen_bool(0.5) {
            [&WORDS[..2], &WORDS[2..], &WORDS[..2]].iter().map(|pick| pick.choose(&mut rng).unwrap().to_string()).collect()
        } else {
            let len = rng.gen_range(1..=5);
            (0..len).map(|_| WORDS.choose(&mut rng).unwrap().to_string()).collect()
        };
        let lex = Arc::new(random_lexicon(&mut rng, &base));
        let bigger = Arc::new(enlarge(&mut rng, &lex));
        let key = format!("trial {trial}: {} / {}", words.join(" "), describe(&lex));
        let (l, w) = (lex.clone(), words.clone());
        cases.add("interpretation-invariance", key.clone(), move |_| invariance(&l, &w, &ProtoType::basic("s")));
        let (l, b, w) = (lex.clone(), bigger.clone(), words.clone());
        cases.add("monotonicity", format!("{key} ⊆ {}", describe(&bigger)), move |_| monotone(&l, &b, &w));
        let (l, w) = (lex.clone(), words);
        cases.add("discarding", key, move |kern| discarding(kern, &l, &w));
    }
}

/// One to six simple types over `n` and `s`, adjoint orders in `-1..=1`.
fn random_types(rng: &mut ChaCha8Rng) -> Vec<ProtoType> {
    (0..rng.gen_range(1..=6))
        .map(|_| {
            let base = if rng.gen_bool(0.6) { "n" } else { "s" };
            ProtoType(vec![Simple::new(base, rng.gen_range(-1..=1)).expect("valid simple")])
        })
        .collect()
}

fn soundness(types: &[ProtoType], target: &ProtoType) -> Outcome {
    let all = all_reductions(types, target, MAX_WITNESSES);
    match reduce(types, target) {
        Ok(w) => {
            same("replayed witness", &w.replay()?, target)?;
            same("witness input", &w.input, &ProtoType::concat(types))?;
            ensure(all.contains(&w), || "the search witness is missing from the full list".into())?;
        }
        Err(Error::Irreducible { .. }) => ensure(all.is_empty(), || format!("reduce failed but {} witnesses exist", all.len()))?,
        Err(e) => return Err(e.into()),
    }
    for w in &all {
        same("replayed witness", &w.replay()?, target)?;
    }
    Ok(())
}

fn random_state(rng: &mut ChaCha8Rng, factors: Vec<Arc<crate::context::FormalContext>>) -> TensorState {
    let n = tuple_count(&factors).expect("toy factors are small");
    let bits = Bits::from_indices(n, (0..n).filter(|_| rng.gen_ratio(1, 4)));
    TensorState::close(factors, bits).expect("tuple set fits")
}

/// The toy lexicon with every word's state redrawn at random.
fn random_lexicon(rng: &mut ChaCha8Rng, base: &Lexicon) -> Lexicon {
    let mut lex = base.clone();
    let entries: Vec<(String, ProtoType, Vec<_>)> =
        base.words().map(|(w, e)| (w.to_string(), e.ty.clone(), e.state.factors().to_vec())).collect();
    for (w, ty, factors) in entries {
        let state = random_state(rng, factors);
        lex.insert(w, ty, state).expect("state over the word's own factors");
    }
    lex
}

/// A copy of `lex` in which one word's state has grown.
fn enlarge(rng: &mut ChaCha8Rng, lex: &Lexicon) -> Lexicon {
    let mut out = lex.clone();
    let word = *WORDS.choose(rng).unwrap();
    let e = lex.entry(word).expect("toy word");
    let extra = random_state(rng, e.state.factors().to_vec());
    let grown = TensorState::close(e.state.factors().to_vec(), e.state.extent().union(extra.extent())).expect("tuple set fits");
    out.insert(word.to_string(), e.ty.clone(), grown).expect("same factors");
    out
}

fn describe(lex: &Lexicon) -> String {
    let parts: Vec<String> = lex.words().map(|(w, e)| format!("{w}={}", e.state.extent().to_bitstring())).collect();
    parts.join(",")
}

fn sentence_types(lex: &Lexicon, words: &[&str]) -> crate::error::Result<Vec<ProtoType>> {
    words.iter().map(|w| Ok(lex.entry(w)?.ty.clone())).collect()
}

/// Every reduction gives the same meaning, and it agrees with the meaning
/// computed inside the concept lattices.
fn invariance(lex: &Lexicon, words: &[String], target: &ProtoType) -> Outcome {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let types = sentence_types(lex, &words)?;
    let witnesses = all_reductions(&types, target, MAX_WITNESSES);
    let first = match interpret(lex, &words, target) {
        Ok(i) => i,
        Err(Error::Irreducible { .. }) => return ensure(witnesses.is_empty(), || "interpret failed on a reducible sentence".into()),
        Err(e) => return Err(e.into()),
    };
    let k = lex.context(&target.simples()[0].base)?;
    let cl = concept_lattice(k);
    for w in &witnesses {
        let state = interpret_along(lex, &words, w)?;
        same("meaning along another witness", &state, &first.state)?;
        let index = cl.index_of_extent(state.extent()).ok_or_else(|| Error::InvalidMorphism("meaning is not an extent".into()))?;
        same("meaning in the concept lattice", &index, &lattice_meaning(lex, &words, w)?)?;
    }
    Ok(())
}

/// Growing a word's state can only grow the meaning, and the smaller meaning entails the larger.
fn monotone(small: &Lexicon, big: &Lexicon, words: &[String]) -> Outcome {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let target = ProtoType::basic("s");
    let (a, b) = match (interpret(small, &words, &target), interpret(big, &words, &target)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::Irreducible { .. }), Err(Error::Irreducible { .. })) => return Ok(()),
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    ensure(a.state.leq(&b.state)?, || "meaning shrank when a word state grew".into())?;
    ensure(entails(&a.concept()?, &b.concept()?)?, || "smaller meaning does not entail the larger".into())?;
    ensure(entails(&a.concept()?, &a.concept()?)?, || "entailment is not reflexive".into())
}

/// Discarding a sentence meaning gives the identity on `I` exactly when the meaning is not the bottom concept.
fn discarding(kern: &Kernel, lex: &Lexicon, words: &[String]) -> Outcome {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let meaning = match interpret(lex, &words, &ProtoType::basic("s")) {
        Ok(i) => i.state,
        Err(Error::Irreducible { .. }) => return Ok(()),
        Err(e) => return Err(e.into()),
    };
    let state = meaning.to_morphism()?;
    let k = state.target().clone();
    let scalar = kern.compose(&kern.discard(&k), &state)?;
    let bottom = k.close_objects_raw(&Bits::empty(k.n_objects()));
    let unit = identity(state.source());
    same("discarded meaning is the identity", &(scalar == unit), &(*meaning.extent() != bottom))
}
