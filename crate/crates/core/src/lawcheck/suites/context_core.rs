use std::sync::Arc;

use super::{ckey, same, Cases};
use crate::bits::Bits;
use crate::concepts::{brute_force_extents, next_closure_extents, ConceptLattice};
use crate::context::FormalContext;
use crate::fixtures;
use crate::lawcheck::{ensure, random_context, small_contexts, GenConfig, Outcome};

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig) {
    for n in 0..=4 {
        let k = fixtures::s(n);
        cases.add("powerset", ckey(&k), move |_| powerset(&k, n));
    }
    let mut rng = cfg.rng();
    let contexts = small_contexts(2).into_iter().chain((0..cfg.trials).map(|_| random_context(&mut rng, cfg)));
    for k in contexts {
        let k = Arc::new(k);
        let key = ckey(&k);
        let c = k.clone();
        cases.add("galois-connection", key.clone(), move |_| galois(&c));
        let c = k.clone();
        cases.add("closure-laws", key.clone(), move |_| {
            closure_laws(c.n_objects(), |a| c.close_objects_raw(a))?;
            closure_laws(c.n_attributes(), |b| c.close_attributes_raw(b))
        });
        let c = k.clone();
        cases.add("enumeration-oracle", key.clone(), move |_| {
            let mut fast = next_closure_extents(&c);
            fast.sort();
            same("extents", &fast, &brute_force_extents(&c))?;
            same("concept count", &ConceptLattice::of(&c).len(), &fast.len())
        });
        let c = k.clone();
        cases.add("basic-theorem", key.clone(), move |_| basic_theorem(&c));
        cases.add("dual-anti-isomorphism", key, move |_| anti_isomorphism(&k));
    }
}

fn powerset(k: &FormalContext, n: usize) -> Outcome {
    let l = ConceptLattice::of(k);
    same("concept count", &l.len(), &(1usize << n))?;
    for i in 0..l.len() {
        for j in 0..l.len() {
            let sub = l.concept(i).extent().bits().is_subset(l.concept(j).extent().bits());
            ensure(l.leq(i, j) == sub, || format!("order differs from inclusion at ({i},{j})"))?;
        }
    }
    // S_A: every subset is an extent
    ensure(Bits::all_subsets(n).all(|s| k.is_extent(&s)), || "some subset is not closed".into())
}

fn galois(k: &FormalContext) -> Outcome {
    for a in Bits::all_subsets(k.n_objects()) {
        let a1 = k.intent_of(&a);
        for b in Bits::all_subsets(k.n_attributes()) {
            let lhs = a.is_subset(&k.extent_of(&b));
            let rhs = b.is_subset(&a1);
            ensure(lhs == rhs, || format!("A={} B={}", a.to_bitstring(), b.to_bitstring()))?;
        }
    }
    Ok(())
}

fn closure_laws(n: usize, close: impl Fn(&Bits) -> Bits) -> Outcome {
    let all: Vec<Bits> = Bits::all_subsets(n).collect();
    let closed: Vec<Bits> = all.iter().map(&close).collect();
    for (a, ca) in all.iter().zip(&closed) {
        ensure(a.is_subset(ca), || format!("not extensive at {}", a.to_bitstring()))?;
        ensure(close(ca) == *ca, || format!("not idempotent at {}", a.to_bitstring()))?;
    }
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if a.is_subset(b) {
                ensure(closed[i].is_subset(&closed[j]), || format!("not monotone at {} ⊆ {}", a.to_bitstring(), b.to_bitstring()))?;
            }
            let lhs = close(&a.union(b));
            let rhs = close(&closed[i].union(&closed[j]));
            ensure(lhs == rhs, || format!("union law fails at {}, {}", a.to_bitstring(), b.to_bitstring()))?;
        }
    }
    Ok(())
}

fn basic_theorem(k: &FormalContext) -> Outcome {
    let l = ConceptLattice::of(k);
    let ext = |i: usize| l.concept(i).extent().bits().clone();
    let int = |i: usize| l.concept(i).intent().bits().clone();
    for i in 0..l.len() {
        ensure(k.intent_of(&ext(i)) == int(i) && k.extent_of(&int(i)) == ext(i), || format!("concept {i} is not a fixed pair"))?;
        ensure(l.leq(l.bottom(), i) && l.leq(i, l.top()), || format!("bottom/top not extreme at {i}"))?;
        for j in 0..l.len() {
            let by_ext = ext(i).is_subset(&ext(j));
            ensure(l.leq(i, j) == by_ext && by_ext == int(j).is_subset(&int(i)), || format!("order at ({i},{j})"))?;
            ensure(ext(l.meet(i, j)) == ext(i).intersection(&ext(j)), || format!("meet extent at ({i},{j})"))?;
            ensure(int(l.join(i, j)) == int(i).intersection(&int(j)), || format!("join intent at ({i},{j})"))?;
        }
    }
    Ok(())
}

fn anti_isomorphism(k: &FormalContext) -> Outcome {
    let l = ConceptLattice::of(k);
    let d = ConceptLattice::of(&k.dual());
    same("concept count of the dual", &d.len(), &l.len())?;
    let map: Vec<usize> = (0..l.len())
        .map(|i| d.index_of_extent(l.concept(i).intent().bits()).ok_or(i))
        .collect::<Result<_, _>>()
        .map_err(|i| crate::lawcheck::Failure::Fail(format!("intent of concept {i} is not an extent of the dual")))?;
    let mut seen = map.clone();
    seen.sort();
    seen.dedup();
    same("image size", &seen.len(), &l.len())?;
    for i in 0..l.len() {
        for j in 0..l.len() {
            ensure(l.leq(i, j) == d.leq(map[j], map[i]), || format!("order not reversed at ({i},{j})"))?;
        }
    }
    Ok(())
}
