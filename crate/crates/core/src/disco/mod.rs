//! Toy compositional semantics over the lattice tensor.
//!
//! Words carry protogroup types and states of the matching tensor contexts;
//! a sentence is reduced to its target type by contractions, and each
//! contraction is interpreted by a cup `K* ⊠ K → I` (or its mirror image).

mod lexicon;
mod state;
mod types;

use std::sync::Arc;

pub use lexicon::{Entry, Lexicon, StateSpec};
pub use state::{decode, encode, fiber_close, nested_tensor, tuple_count, tuple_label, TensorState, MAX_TUPLES};
pub use types::{all_reductions, reduce, replay, Contraction, ContractionKind, ProtoType, ReductionWitness, Simple};

use crate::concepts::Concept;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::monoidal::{symmetry, tensor, TensorKind, DEFAULT_MAX_HOM};
use crate::morphism::ContextMorphism;
use crate::relation::Relation;
use crate::suplat::concept_lattice;

/// `cup: K* ⊠ K → I`. Its bond relates `(m, g)` to the one attribute of `I`
/// exactly when `g I m`, so the extent side sends `(m, g)` to `⋆` iff `g` lacks `m`.
pub fn cup(k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    let src = tensor(TensorKind::Lattice, &k.dual(), k, DEFAULT_MAX_HOM)?;
    let ng = k.n_objects();
    let bond = Relation::from_fn(src.n_objects(), 1, |mg, _| k.incident(mg % ng, mg / ng));
    ContextMorphism::from_bond(src, Arc::new(FormalContext::trivial()), bond)
}

/// `K ⊠ K* → I`, the cup after the symmetry.
pub fn right_cup(k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    cup(k)?.compose(&symmetry(TensorKind::Lattice, k, &k.dual())?)
}

pub fn entails(c1: &Concept, c2: &Concept) -> Result<bool> {
    c1.leq(c2)
}

#[derive(Clone, Debug)]
pub struct Interpretation {
    pub witness: ReductionWitness,
    pub state: TensorState,
}

impl Interpretation {
    pub fn concept(&self) -> Result<Concept> {
        self.state.to_concept()
    }
}

fn sentence_entries<'a>(lex: &'a Lexicon, sentence: &[&str]) -> Result<Vec<&'a Entry>> {
    if sentence.is_empty() {
        return Err(Error::Lexicon("empty sentence".into()));
    }
    sentence.iter().map(|w| lex.entry(w)).collect()
}

/// Reduces the sentence to `target` and evaluates it along the witness.
pub fn interpret(lex: &Lexicon, sentence: &[&str], target: &ProtoType) -> Result<Interpretation> {
    let entries = sentence_entries(lex, sentence)?;
    let types: Vec<ProtoType> = entries.iter().map(|e| e.ty.clone()).collect();
    lex.factors(target)?;
    let witness = reduce(&types, target)?;
    let state = interpret_along(lex, sentence, &witness)?;
    Ok(Interpretation { witness, state })
}

/// The tensor of the word states, then one cup per contraction step.
pub fn interpret_along(lex: &Lexicon, sentence: &[&str], witness: &ReductionWitness) -> Result<TensorState> {
    let entries = sentence_entries(lex, sentence)?;
    if ProtoType::concat(&entries.iter().map(|e| e.ty.clone()).collect::<Vec<_>>()) != witness.input {
        return Err(Error::Lexicon("witness does not belong to this sentence".into()));
    }
    witness.replay()?;
    let mut state = entries[0].state.clone();
    for e in &entries[1..] {
        state = state.tensor(&e.state)?;
    }
    for step in &witness.steps {
        state = state.contract(step.position)?;
    }
    Ok(state)
}

/// The same meaning computed inside the concept lattices: the join, over all
/// choices of one tuple per word such that every contracted pair `(x, y)`
/// satisfies `γx ≰ μy`, of the object concepts of the surviving entry.
/// Returns a concept index of `𝔹` of the single surviving factor.
pub fn lattice_meaning(lex: &Lexicon, sentence: &[&str], witness: &ReductionWitness) -> Result<usize> {
    let entries = sentence_entries(lex, sentence)?;
    let survivors = witness.survivors();
    let factors: Vec<Arc<FormalContext>> = entries.iter().flat_map(|e| e.state.factors().iter().cloned()).collect();
    let [s] = survivors[..] else {
        return Err(Error::DomainMismatch(format!("lattice meaning needs one surviving factor, found {}", survivors.len())));
    };
    let out = concept_lattice(&factors[s]);
    let pairs: Vec<(usize, usize)> = witness.steps.iter().map(|c| c.original).collect();
    let lattices: Vec<_> = factors.iter().map(|k| concept_lattice(k)).collect();
    let word_tuples: Vec<Vec<Vec<usize>>> = entries.iter().map(|e| e.state.tuples()).collect();

    let mut hits = Vec::new();
    let mut choice = vec![0usize; entries.len()];
    if word_tuples.iter().any(|t| t.is_empty()) {
        return Ok(out.bottom());
    }
    loop {
        let tuple: Vec<usize> = choice.iter().zip(&word_tuples).flat_map(|(&c, ts)| ts[c].iter().copied()).collect();
        let fires = pairs.iter().all(|&(p, q)| {
            let (k, l) = (&factors[p], &lattices[p]);
            !l.leq(l.object_concept(k, tuple[p]), l.attribute_concept(k, tuple[q]))
        });
        if fires {
            hits.push(out.object_concept(&factors[s], tuple[s]));
        }
        // odometer over the word tuples
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out.lattice_join(&hits);
            }
            choice[i] += 1;
            if choice[i] < word_tuples[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
