use std::path::{Path, PathBuf};
use std::sync::Arc;

use cxtcat::disco::{
    all_reductions, cup, entails, interpret, interpret_along, lattice_meaning, reduce, right_cup, Lexicon, ProtoType, TensorState,
};
use cxtcat::hom::enumerate_hom;
use cxtcat::monoidal::{discard, tensor_morphism, unitor_right, TensorKind};
use cxtcat::morphism::identity;
use cxtcat::suplat::{concept_functor_mor, concept_lattice, state_to_concept};
use cxtcat::{fixtures, Bits, Concept, Error, FormalContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn lexicon() -> Lexicon {
    Lexicon::load(&fixture_dir().join("lexicon.json")).unwrap()
}

fn s() -> ProtoType {
    "s".parse().unwrap()
}

fn extent_labels(k: &FormalContext, c: &Concept) -> Vec<String> {
    c.extent().labels(k).into_iter().map(String::from).collect()
}

#[test]
fn alice_likes_bob_matches_lattice_side() {
    let lex = lexicon();
    let sent = ["Alice", "likes", "Bob"];
    let it = interpret(&lex, &sent, &s()).unwrap();
    assert_eq!(it.witness.len(), 2);
    assert_eq!(it.witness.replay().unwrap(), s());

    let via_states = state_to_concept(&it.state.to_morphism().unwrap()).unwrap();
    let oracle = lattice_meaning(&lex, &sent, &it.witness).unwrap();
    assert_eq!(via_states, oracle);

    let k = lex.context("s").unwrap();
    let c = it.concept().unwrap();
    assert_eq!(concept_lattice(k).concept(oracle), &c);
    // frozen from the lattice-side computation
    assert_eq!(extent_labels(k, &c), ["true", "likely"]);
    assert_eq!(c.intent().labels(k), ["plausible"]);
}

#[test]
fn every_fixture_sentence_agrees_with_the_oracle() {
    let lex = lexicon();
    let nouns = ["Alice", "Bob"];
    for verb in ["likes", "fears"] {
        for subj in nouns {
            for obj in nouns {
                let sent = [subj, verb, obj];
                let it = interpret(&lex, &sent, &s()).unwrap();
                let oracle = lattice_meaning(&lex, &sent, &it.witness).unwrap();
                assert_eq!(state_to_concept(&it.state.to_morphism().unwrap()).unwrap(), oracle, "{sent:?}");
            }
        }
    }
}

#[test]
fn all_witnesses_give_the_same_meaning() {
    let lex = lexicon();
    let sent = ["Bob", "likes", "Alice"];
    let types: Vec<ProtoType> = sent.iter().map(|w| lex.entry(w).unwrap().ty.clone()).collect();
    let ws = all_reductions(&types, &s(), 100);
    assert_eq!(ws.len(), 2);
    let first = interpret_along(&lex, &sent, &ws[0]).unwrap();
    for w in &ws[1..] {
        assert_eq!(interpret_along(&lex, &sent, w).unwrap(), first);
    }
}

#[test]
fn single_word_is_its_own_meaning() {
    let lex = lexicon();
    let it = interpret(&lex, &["Alice"], &"n".parse().unwrap()).unwrap();
    assert!(it.witness.is_empty());
    assert_eq!(it.state, lex.entry("Alice").unwrap().state);
}

#[test]
fn bottom_verb_gives_bottom_sentence() {
    let mut lex = lexicon();
    let ty = lex.entry("likes").unwrap().ty.clone();
    let bottom = TensorState::bottom(lex.factors(&ty).unwrap()).unwrap();
    lex.insert("likes".into(), ty, bottom).unwrap();
    let sent = ["Alice", "likes", "Bob"];
    let it = interpret(&lex, &sent, &s()).unwrap();
    let cl = concept_lattice(lex.context("s").unwrap());
    assert_eq!(cl.index_of(&it.concept().unwrap()), Some(cl.bottom()));
    assert_eq!(lattice_meaning(&lex, &sent, &it.witness).unwrap(), cl.bottom());
}

#[test]
fn reduction_failures_and_unbound_types() {
    let lex = lexicon();
    assert!(matches!(interpret(&lex, &["Alice", "Bob"], &s()), Err(Error::Irreducible { .. })));
    assert!(matches!(interpret(&lex, &["Alice"], &"v".parse().unwrap()), Err(Error::UnboundType(_))));
    let bad = r#"{"types":{"n":"noun.cxt"},"words":{"runs":{"type":[["n",1],"s"],"state":{"generators":[]}}}}"#;
    assert!(matches!(Lexicon::from_json(bad, &fixture_dir()), Err(Error::UnboundType(t)) if t == "s"));
    let open = r#"{"types":{"s":"sentence.cxt"},"words":{"maybe":{"type":["s"],"state":{"extent":["likely"]}}}}"#;
    assert!(matches!(Lexicon::from_json(open, &fixture_dir()), Err(Error::Lexicon(_))));
    assert!(reduce(&[], &s()).is_err());
}

fn random_state(rng: &mut ChaCha8Rng, factors: Vec<Arc<FormalContext>>, density: f64) -> TensorState {
    let n = cxtcat::disco::tuple_count(&factors).unwrap();
    let bits = Bits::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)));
    TensorState::close(factors, bits).unwrap()
}

fn grow(rng: &mut ChaCha8Rng, s: &TensorState) -> TensorState {
    let mut bits = s.extent().clone();
    for i in 0..bits.universe() {
        if rng.gen_bool(0.3) {
            bits.insert(i);
        }
    }
    TensorState::close(s.factors().to_vec(), bits).unwrap()
}

#[test]
fn interpretation_is_monotone() {
    let base = lexicon();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sent = ["Alice", "likes", "Bob"];
    for _ in 0..40 {
        let (mut a, mut b) = (base.clone(), base.clone());
        for w in sent {
            let ty = base.entry(w).unwrap().ty.clone();
            let lo = random_state(&mut rng, base.factors(&ty).unwrap(), 0.25);
            let hi = grow(&mut rng, &lo);
            assert!(lo.leq(&hi).unwrap());
            a.insert(w.into(), ty.clone(), lo).unwrap();
            b.insert(w.into(), ty, hi).unwrap();
        }
        let ma = interpret(&a, &sent, &s()).unwrap();
        let mb = interpret(&b, &sent, &s()).unwrap();
        assert!(ma.state.leq(&mb.state).unwrap());
        assert_eq!(state_to_concept(&ma.state.to_morphism().unwrap()).unwrap(), lattice_meaning(&a, &sent, &ma.witness).unwrap());
    }
}

#[test]
fn discarding_the_meaning_tests_for_bottom() {
    let lex = lexicon();
    let k = lex.context("s").unwrap().clone();
    let top = discard(&k);
    let cl = concept_lattice(&k);
    let on_lattice = cxtcat::suplat::tensor::discard(&cxtcat::suplat::concept_functor_obj(&k));
    for sent in [["Alice", "likes", "Bob"], ["Bob", "likes", "Alice"], ["Alice", "likes", "Alice"]] {
        let it = interpret(&lex, &sent, &s()).unwrap();
        let m = it.state.to_morphism().unwrap();
        let scalar = top.compose(&m).unwrap();
        let idx = cl.index_of(&it.concept().unwrap()).unwrap();
        assert_eq!(!scalar.extent().row(0).is_empty(), on_lattice.apply(idx) == 1, "{sent:?}");
        assert_eq!(!scalar.extent().row(0).is_empty(), idx != cl.bottom());
    }
}

#[test]
fn entailment_is_concept_order() {
    let k = fixtures::animals();
    let kitten = Concept::from_extent(&k, &k.objects_by_label(&["Kitten"]).unwrap()).unwrap();
    let feline = Concept::from_extent(&k, &k.objects_by_label(&["Cat", "Kitten"]).unwrap()).unwrap();
    assert!(entails(&kitten, &feline).unwrap());
    assert!(!entails(&feline, &kitten).unwrap());
    let cl = concept_lattice(&k);
    for c in cl.concepts() {
        assert!(entails(c, c).unwrap());
        assert!(entails(cl.concept(cl.bottom()), c).unwrap());
    }
}

/// Pairing an effect (as a state of `K*`) with a state of `K` through the cup
/// gives 1 exactly when the state's concept is not below the effect's.
#[test]
fn cup_is_the_evaluation_pairing() {
    for k in fixtures::small_pool() {
        let k = Arc::new(k);
        let c = cup(&k).unwrap();
        let b_cup = concept_functor_mor(&c);
        let cl = concept_lattice(&k);
        let factors = vec![Arc::new(k.dual()), k.clone()];
        for d in cl.concepts() {
            for x in cl.concepts() {
                let pure: Vec<Vec<usize>> =
                    d.intent().indices().into_iter().flat_map(|m| x.extent().indices().into_iter().map(move |g| vec![m, g])).collect();
                let st = TensorState::from_tuples(factors.clone(), &pure).unwrap();
                let scalar = c.compose(&st.to_morphism().unwrap()).unwrap();
                let expected = !x.leq(d).unwrap();
                assert_eq!(!scalar.extent().row(0).is_empty(), expected);
                let idx = state_to_concept(&st.to_morphism().unwrap()).unwrap();
                assert_eq!(b_cup.apply(idx) == 1, expected);
                assert_eq!(st.contract(0).unwrap().extent().count() == 1, expected);
            }
        }
    }
}

#[test]
fn cup_is_natural() {
    let pool: Vec<Arc<FormalContext>> = fixtures::small_pool().into_iter().filter(|k| k.n_objects() > 0).map(Arc::new).collect();
    for k in &pool {
        for l in &pool {
            if k.n_objects() * l.n_objects() > 6 {
                continue;
            }
            for r in enumerate_hom(k, l, 10_000).unwrap() {
                let l_star = Arc::new(l.dual());
                let lhs = cup(l).unwrap().compose(&tensor_morphism(TensorKind::Lattice, &identity(&l_star), &r).unwrap()).unwrap();
                let rhs = cup(k).unwrap().compose(&tensor_morphism(TensorKind::Lattice, &r.dual(), &identity(k)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn contraction_matches_the_morphism_composite() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = Arc::new(fixtures::chain_context(2));
    for k in [fixtures::s(2), fixtures::antichain2(), fixtures::chain_context(2)] {
        let k = Arc::new(k);
        let c = cup(&k).unwrap();
        let id_cup = tensor_morphism(TensorKind::Lattice, &identity(&l), &c).unwrap();
        let path = unitor_right(TensorKind::Lattice, &l).unwrap().compose(&id_cup).unwrap();
        let factors = vec![l.clone(), Arc::new(k.dual()), k.clone()];
        for _ in 0..30 {
            let st = random_state(&mut rng, factors.clone(), 0.3);
            let via_morphisms = path.compose(&st.to_morphism().unwrap()).unwrap();
            assert_eq!(via_morphisms.extent().row(0), st.contract(1).unwrap().extent());
        }
        let rc = right_cup(&k).unwrap();
        let st = random_state(&mut rng, vec![k.clone(), Arc::new(k.dual())], 0.5);
        assert_eq!(rc.compose(&st.to_morphism().unwrap()).unwrap().extent().row(0), st.contract(0).unwrap().extent());
    }
}
