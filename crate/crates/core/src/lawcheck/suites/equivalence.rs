use std::collections::BTreeSet;
use std::sync::Arc;

use super::{ckey, fkey, mkey, same, Cases};
use crate::context::FormalContext;
use crate::fixtures;
use crate::hom::enumerate_hom;
use crate::lawcheck::{ensure, random_context, random_lattice, random_morphism, random_supmap, small_contexts, GenConfig, Kernel, Outcome};
use crate::monoidal::TensorKind;
use crate::morphism::{identity, ContextMorphism};
use crate::suplat::{
    concept_functor_mor, concept_functor_obj, context_functor_mor, counit_iso, effects_iso, enumerate_sup_maps, isomorphic, phi_iso,
    states_iso, suplat_lattice_tensor, tensor_of_maps, unit_iso, SupMap,
};

type Ctx = Arc<FormalContext>;

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig) {
    let classes: Vec<Ctx> = small_contexts(2).into_iter().map(Arc::new).collect();
    for a in &classes {
        for b in &classes {
            let (x, y) = (a.clone(), b.clone());
            cases.add("fully-faithful", format!("{} , {}", ckey(a), ckey(b)), move |_| fully_faithful(&x, &y));
        }
    }
    let pool: Vec<Ctx> = fixtures::small_pool().into_iter().map(Arc::new).collect();
    for a in &pool {
        for b in &pool {
            let (x, y) = (a.clone(), b.clone());
            cases.add("lattice-tensor", format!("{} , {}", ckey(a), ckey(b)), move |kern| {
                let prod = kern.tensor(TensorKind::Lattice, &x, &y)?;
                let direct = suplat_lattice_tensor(&concept_functor_obj(&x), &concept_functor_obj(&y), 1 << 16)?;
                ensure(isomorphic(&concept_functor_obj(&prod), &direct), || "𝔹(K₁ ⊠ K₂) ≇ (𝔹K₁ ⊸ 𝔹K₂*)*".into())
            });
        }
    }

    let mut rng = cfg.rng();
    for trial in 0..cfg.trials {
        let v = Arc::new(random_lattice(&mut rng, cfg));
        let w = Arc::new(random_lattice(&mut rng, cfg));
        let f = random_supmap(&mut rng, &v, &w);
        cases.add("unit-iso", format!("trial {trial}: {}", fkey(&f)), move |_| unit_laws(&f));

        let ks: Vec<Ctx> = (0..4).map(|_| Arc::new(random_context(&mut rng, cfg))).collect();
        let r = random_morphism(&mut rng, &ks[0], &ks[1]);
        let s = random_morphism(&mut rng, &ks[1], &ks[2]);
        let t = random_morphism(&mut rng, &ks[2], &ks[3]);
        let key = format!("trial {trial}: {} ; {}", mkey(&r), mkey(&s));
        let (r1, s1) = (r.clone(), s.clone());
        cases.add("functoriality", key.clone(), move |kern| {
            same("𝔹(s∘r)", &concept_functor_mor(&kern.compose(&s1, &r1)?), &concept_functor_mor(&r1).then(&concept_functor_mor(&s1))?)?;
            same("𝔹(id)", &concept_functor_mor(&identity(r1.source())), &SupMap::identity(&concept_functor_obj(r1.source())))
        });
        let r1 = r.clone();
        cases.add("counit-iso", key.clone(), move |kern| counit_laws(kern, &r1));
        let k = ks[0].clone();
        cases.add("states-are-concepts", format!("trial {trial}: {}", ckey(&k)), move |_| {
            let unit = Arc::new(FormalContext::trivial());
            states_iso(&k, &enumerate_hom(&unit, &k, 1 << 16)?)?;
            effects_iso(&k, &enumerate_hom(&k, &unit, 1 << 16)?)?;
            Ok(())
        });
        let k = ks[1].clone();
        cases.add("discard-is-nonzero-test", format!("trial {trial}: {}", ckey(&k)), move |kern| {
            let d = concept_functor_mor(&kern.discard(&k));
            let (src, tgt) = (d.source().clone(), d.target().clone());
            for c in 0..src.len() {
                ensure((d.apply(c) != tgt.bottom()) == (c != src.bottom()), || format!("𝔹(discard) at concept {c}"))?;
            }
            Ok(())
        });
        let (r1, t1) = (r.clone(), t.clone());
        cases.add("tensor-comparison", format!("trial {trial}: {} ; {}", mkey(&r), mkey(&t)), move |kern| phi_laws(kern, &r1, &t1));
        let k = ks[2].clone();
        cases.add("dual-is-opposite", format!("trial {trial}: {}", ckey(&k)), move |_| {
            ensure(isomorphic(&concept_functor_obj(&k.dual()), &concept_functor_obj(&k).op()), || "𝔹(K*) ≇ 𝔹(K)^op".into())
        });
    }
}

/// `𝔹` is a bijection from `hom(K₁, K₂)` onto the sup-maps `𝔹K₁ → 𝔹K₂`.
fn fully_faithful(a: &Ctx, b: &Ctx) -> Outcome {
    let homs = enumerate_hom(a, b, 1 << 16)?;
    let maps = enumerate_sup_maps(&concept_functor_obj(a), &concept_functor_obj(b), 1 << 16)?;
    same("|hom| vs |sup-maps|", &homs.len(), &maps.len())?;
    let image: BTreeSet<Vec<usize>> = homs.iter().map(|r| concept_functor_mor(r).table().to_vec()).collect();
    same("distinct images", &image.len(), &homs.len())?;
    let all: BTreeSet<Vec<usize>> = maps.iter().map(|f| f.table().to_vec()).collect();
    same("image of 𝔹", &image, &all)
}

fn unit_laws(f: &SupMap) -> Outcome {
    let (v, w) = (f.source(), f.target());
    let (uv, uw) = (unit_iso(v), unit_iso(w));
    ensure(uv.is_isomorphism() && uw.is_isomorphism(), || "V → 𝔹F(V) is not an isomorphism".into())?;
    let ff = concept_functor_mor(&context_functor_mor(f)?);
    same("naturality of the unit", &f.then(&uw)?, &uv.then(&ff)?)
}

fn counit_laws(kern: &Kernel, r: &ContextMorphism) -> Outcome {
    let (k1, k2) = (r.source(), r.target());
    let (fwd1, bwd1) = counit_iso(k1);
    let (fwd2, bwd2) = counit_iso(k2);
    same("counit⁻¹∘counit", &kern.compose(&bwd1, &fwd1)?, &identity(k1))?;
    same("counit∘counit⁻¹", &kern.compose(&fwd1, &bwd1)?, &identity(fwd1.target()))?;
    // FB(r) ∘ ε = ε ∘ r
    let fbr = context_functor_mor(&concept_functor_mor(r))?;
    let lhs = kern.compose(&fbr, &fwd1)?;
    let rhs = kern.compose(&fwd2, r)?;
    same("naturality of the counit", &lhs, &rhs)?;
    same("inverse naturality", &kern.compose(r, &bwd1)?, &kern.compose(&bwd2, &fbr)?)
}

/// `φ: 𝔹K₁ ⊗ 𝔹K₂ → 𝔹(K₁ ⊗ K₂)` is an isomorphism, natural in both factors.
fn phi_laws(kern: &Kernel, r1: &ContextMorphism, r2: &ContextMorphism) -> Outcome {
    let (src, tgt) = (phi_iso(r1.source(), r2.source()), phi_iso(r1.target(), r2.target()));
    ensure(src.is_isomorphism(), || "φ is not an isomorphism".into())?;
    let tm = kern.tensor_morphism(TensorKind::Concept, r1, r2)?;
    let lhs = tensor_of_maps(&concept_functor_mor(r1), &concept_functor_mor(r2)).then(&tgt)?;
    let rhs = src.then(&concept_functor_mor(&tm))?;
    same("φ∘(𝔹r₁ ⊗ 𝔹r₂) vs 𝔹(r₁ ⊗ r₂)∘φ", &lhs, &rhs)
}
