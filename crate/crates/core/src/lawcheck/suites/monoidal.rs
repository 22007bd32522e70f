use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{ckey, mkey, same, valid, Cases};
use crate::autonomy::{curry, natural_in_first, natural_in_second, natural_in_third, star_autonomy_bijection, uncurry};
use crate::bits::Bits;
use crate::context::FormalContext;
use crate::fixtures;
use crate::hom::enumerate_hom;
use crate::lawcheck::{ensure, random_context, random_morphism, small_contexts, GenConfig, Kernel, Outcome};
use crate::monoidal::{
    associator, associator_inv, concept_tensor, dual_of_concept_tensor, rel_embed, symmetry, tensor, unitor_left, unitor_left_inv,
    unitor_right_inv, PairIndexMap, TensorKind, DEFAULT_MAX_HOM,
};
use crate::morphism::{identity, ChuPair, ContextMorphism};
use crate::relation::Relation;
use crate::suplat::{concept_functor_mor, concept_functor_obj, find_isomorphism};

type Ctx = Arc<FormalContext>;

fn arcs(ks: Vec<FormalContext>) -> Vec<Ctx> {
    ks.into_iter().map(Arc::new).collect()
}

fn unit() -> Ctx {
    Arc::new(FormalContext::trivial())
}

/// Whether the tensor of all of `ks` stays within `side` objects and attributes.
fn fits(ks: &[&Ctx], side: usize) -> bool {
    ks.iter().map(|k| k.n_objects()).product::<usize>() <= side && ks.iter().map(|k| k.n_attributes()).product::<usize>() <= side
}

/// Pool members with at most `side` objects and attributes.
fn pool_upto(side: usize) -> Vec<Ctx> {
    arcs(fixtures::pool().into_iter().filter(|k| k.n_objects() <= side && k.n_attributes() <= side).collect())
}

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig, kind: TensorKind) {
    let (pairs_pool, triples_pool) = match kind {
        TensorKind::Concept => (arcs(fixtures::pool()), pool_upto(3)),
        TensorKind::Lattice => (arcs(fixtures::small_pool()), pool_upto(2)),
    };
    let quad_pool = pool_upto(2);

    let u = unit();
    cases.add("discard-unit", ckey(&u), move |kern| same("discard(I)", &kern.discard(&u), &identity(&u)));

    for a in &pairs_pool {
        let k = a.clone();
        cases.add("unitor-iso", ckey(a), move |kern| unitor_laws(kern, kind, &k));
        for b in &pairs_pool {
            let key = format!("{} , {}", ckey(a), ckey(b));
            let (x, y) = (a.clone(), b.clone());
            cases.add("symmetry-involution", key.clone(), move |kern| {
                let back = kern.compose(&symmetry(kind, &y, &x)?, &symmetry(kind, &x, &y)?)?;
                same("σ∘σ", &back, &identity(&kern.tensor(kind, &x, &y)?))
            });
            let (x, y) = (a.clone(), b.clone());
            cases.add("triangle", key.clone(), move |kern| triangle(kern, kind, &x, &y));
            let (x, y) = (a.clone(), b.clone());
            cases.add("discard-tensor", key, move |kern| discard_tensor(kern, kind, &x, &y));
        }
    }
    for a in &triples_pool {
        for b in &triples_pool {
            for c in &triples_pool {
                if !fits(&[a, b, c], 12) {
                    continue;
                }
                let key = format!("{} , {} , {}", ckey(a), ckey(b), ckey(c));
                let (x, y, z) = (a.clone(), b.clone(), c.clone());
                cases.add("hexagon", key.clone(), move |kern| hexagon(kern, kind, &x, &y, &z));
                let (x, y, z) = (a.clone(), b.clone(), c.clone());
                cases.add("associator-iso", key, move |kern| {
                    let fwd = associator(kind, &x, &y, &z)?;
                    let bwd = associator_inv(kind, &x, &y, &z)?;
                    same("α⁻¹∘α", &kern.compose(&bwd, &fwd)?, &identity(fwd.source()))?;
                    same("α∘α⁻¹", &kern.compose(&fwd, &bwd)?, &identity(fwd.target()))
                });
            }
        }
    }
    for a in &quad_pool {
        for b in &quad_pool {
            for c in &quad_pool {
                for d in &quad_pool {
                    // four two-object factors under ⊠ take seconds each
                    if kind == TensorKind::Lattice && !fits(&[a, b, c, d], 8) {
                        continue;
                    }
                    let key = format!("{} , {} , {} , {}", ckey(a), ckey(b), ckey(c), ckey(d));
                    let (w, x, y, z) = (a.clone(), b.clone(), c.clone(), d.clone());
                    cases.add("pentagon", key, move |kern| pentagon(kern, kind, &w, &x, &y, &z));
                }
            }
        }
    }

    let mut rng = cfg.rng();
    // the lattice tensor enumerates bonds, so its random factors stay small
    let small = GenConfig { max_objects: cfg.max_objects.min(3), max_attributes: cfg.max_attributes.min(3), ..cfg.clone() };
    let tiny = GenConfig { max_objects: 2, max_attributes: 2, ..cfg.clone() };
    let (pair_cfg, triple_cfg) = match kind {
        TensorKind::Concept => (cfg, &small),
        TensorKind::Lattice => (&small, &tiny),
    };
    for trial in 0..cfg.trials {
        let [a, b, c, d, e, f]: [Ctx; 6] = std::array::from_fn(|_| Arc::new(random_context(&mut rng, pair_cfg)));
        let r1 = random_morphism(&mut rng, &a, &b);
        let r2 = random_morphism(&mut rng, &c, &d);
        let s1 = random_morphism(&mut rng, &b, &e);
        let s2 = random_morphism(&mut rng, &d, &f);
        let key = format!("trial {trial}: {} ; {} ; {} ; {}", mkey(&r1), mkey(&r2), mkey(&s1), mkey(&s2));
        let (x1, x2, y1, y2) = (r1.clone(), r2.clone(), s1.clone(), s2.clone());
        cases.add("bifunctor", key.clone(), move |kern| bifunctor(kern, kind, &x1, &x2, &y1, &y2));
        let (x1, x2) = (r1.clone(), r2.clone());
        cases.add("symmetry-naturality", key.clone(), move |kern| {
            let lhs = kern.compose(&symmetry(kind, x1.target(), x2.target())?, &kern.tensor_morphism(kind, &x1, &x2)?)?;
            let rhs = kern.compose(&kern.tensor_morphism(kind, &x2, &x1)?, &symmetry(kind, x1.source(), x2.source())?)?;
            same("σ∘(f⊗g) vs (g⊗f)∘σ", &lhs, &rhs)
        });
        let x1 = r1.clone();
        cases.add("unitor-naturality", key.clone(), move |kern| unitor_naturality(kern, kind, &x1));
        if kind == TensorKind::Concept {
            let (x1, x2) = (r1.clone(), r2.clone());
            cases.add("chu-pair", key.clone(), move |kern| chu_pair(kern, &x1, &x2));
            let (x1, x2) = (r1.clone(), r2.clone());
            cases.add("closure-of-tensor-image", key.clone(), move |kern| tensor_image(kern, &x1, &x2));
            let (x, y) = (a.clone(), c.clone());
            cases.add("dual-of-tensor", format!("{} , {}", ckey(&x), ckey(&y)), move |_| {
                ensure(dual_of_concept_tensor(&x, &y), || "(K₁⊗K₂)* differs from K₁*⊗K₂*".into())
            });
        }
        let ts: Vec<Ctx> = (0..6).map(|_| Arc::new(random_context(&mut rng, triple_cfg))).collect();
        let fs: Vec<ContextMorphism> = (0..3).map(|i| random_morphism(&mut rng, &ts[i], &ts[i + 3])).collect();
        let key = format!("trial {trial}: {} ; {} ; {}", mkey(&fs[0]), mkey(&fs[1]), mkey(&fs[2]));
        cases.add("associator-naturality", key, move |kern| {
            let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
            let lhs = kern.compose(
                &associator(kind, f.target(), g.target(), h.target())?,
                &kern.tensor_morphism(kind, f, &kern.tensor_morphism(kind, g, h)?)?,
            )?;
            let rhs = kern.compose(
                &kern.tensor_morphism(kind, &kern.tensor_morphism(kind, f, g)?, h)?,
                &associator(kind, f.source(), g.source(), h.source())?,
            )?;
            same("α∘(f⊗(g⊗h)) vs ((f⊗g)⊗h)∘α", &lhs, &rhs)
        });
    }

    match kind {
        TensorKind::Concept => concept_only(cases, cfg, &mut rng),
        TensorKind::Lattice => lattice_only(cases, cfg, &mut rng),
    }
}

fn unitor_laws(kern: &Kernel, kind: TensorKind, k: &Ctx) -> Outcome {
    let rho = kern.unitor_right(kind, k)?;
    valid("ρ", &rho)?;
    let rho_inv = unitor_right_inv(kind, k)?;
    same("ρ∘ρ⁻¹", &kern.compose(&rho, &rho_inv)?, &identity(k))?;
    same("ρ⁻¹∘ρ", &kern.compose(&rho_inv, &rho)?, &identity(rho.source()))?;
    let lam = unitor_left(kind, k)?;
    let lam_inv = unitor_left_inv(kind, k)?;
    same("λ∘λ⁻¹", &kern.compose(&lam, &lam_inv)?, &identity(k))?;
    same("λ⁻¹∘λ", &kern.compose(&lam_inv, &lam)?, &identity(lam.source()))?;
    // 𝔹(K ⊗ I) ≅ 𝔹(K), witnessed by 𝔹(ρ) and by a search on the kernel's own tensor
    let image = concept_functor_mor(&rho);
    ensure(image.is_isomorphism(), || "𝔹(ρ) is not an isomorphism".into())?;
    let tensored = concept_functor_obj(&*kern.tensor(kind, k, &FormalContext::trivial())?);
    ensure(find_isomorphism(&tensored, &concept_functor_obj(k)).is_some(), || {
        format!("𝔹(K {} I) has {} elements, 𝔹(K) has {}", kind.symbol(), tensored.len(), concept_functor_obj(k).len())
    })
}

fn triangle(kern: &Kernel, kind: TensorKind, a: &Ctx, b: &Ctx) -> Outcome {
    let i = unit();
    let lhs = kern.compose(&kern.tensor_morphism(kind, &kern.unitor_right(kind, a)?, &identity(b))?, &associator(kind, a, &i, b)?)?;
    let rhs = kern.tensor_morphism(kind, &identity(a), &unitor_left(kind, b)?)?;
    same("(ρ⊗id)∘α vs id⊗λ", &lhs, &rhs)
}

fn hexagon(kern: &Kernel, kind: TensorKind, a: &Ctx, b: &Ctx, c: &Ctx) -> Outcome {
    let ab = kern.tensor(kind, a, b)?;
    let lhs = kern.compose(&associator(kind, c, a, b)?, &kern.compose(&symmetry(kind, &ab, c)?, &associator(kind, a, b, c)?)?)?;
    let rhs = kern.compose(
        &kern.tensor_morphism(kind, &symmetry(kind, a, c)?, &identity(b))?,
        &kern.compose(&associator(kind, a, c, b)?, &kern.tensor_morphism(kind, &identity(a), &symmetry(kind, b, c)?)?)?,
    )?;
    same("hexagon", &lhs, &rhs)
}

fn pentagon(kern: &Kernel, kind: TensorKind, a: &Ctx, b: &Ctx, c: &Ctx, d: &Ctx) -> Outcome {
    let (ab, bc, cd) = (kern.tensor(kind, a, b)?, kern.tensor(kind, b, c)?, kern.tensor(kind, c, d)?);
    let lhs = kern.compose(&associator(kind, &ab, c, d)?, &associator(kind, a, b, &cd)?)?;
    let first = kern.tensor_morphism(kind, &identity(a), &associator(kind, b, c, d)?)?;
    let last = kern.tensor_morphism(kind, &associator(kind, a, b, c)?, &identity(d))?;
    let rhs = kern.compose(&last, &kern.compose(&associator(kind, a, &bc, d)?, &first)?)?;
    same("pentagon", &lhs, &rhs)
}

fn discard_tensor(kern: &Kernel, kind: TensorKind, a: &Ctx, b: &Ctx) -> Outcome {
    let i = unit();
    let lhs = kern.discard(&kern.tensor(kind, a, b)?);
    let rhs = kern.compose(&unitor_left(kind, &i)?, &kern.tensor_morphism(kind, &kern.discard(a), &kern.discard(b))?)?;
    same("⊤(A⊗B) vs λ∘(⊤⊗⊤)", &lhs, &rhs)
}

fn bifunctor(
    kern: &Kernel,
    kind: TensorKind,
    r1: &ContextMorphism,
    r2: &ContextMorphism,
    s1: &ContextMorphism,
    s2: &ContextMorphism,
) -> Outcome {
    let t = kern.tensor_morphism(kind, r1, r2)?;
    valid("R₁⊗R₂", &t)?;
    let ids = kern.tensor_morphism(kind, &identity(r1.source()), &identity(r2.source()))?;
    same("id⊗id", &ids, &identity(t.source()))?;
    let lhs = kern.tensor_morphism(kind, &kern.compose(s1, r1)?, &kern.compose(s2, r2)?)?;
    let rhs = kern.compose(&kern.tensor_morphism(kind, s1, s2)?, &t)?;
    same("(S₁∘R₁)⊗(S₂∘R₂) vs (S₁⊗S₂)∘(R₁⊗R₂)", &lhs, &rhs)
}

fn unitor_naturality(kern: &Kernel, kind: TensorKind, f: &ContextMorphism) -> Outcome {
    let i = unit();
    let id_i = identity(&i);
    let lhs = kern.compose(&kern.unitor_right(kind, f.target())?, &kern.tensor_morphism(kind, f, &id_i)?)?;
    let rhs = kern.compose(f, &kern.unitor_right(kind, f.source())?)?;
    same("ρ∘(f⊗id) vs f∘ρ", &lhs, &rhs)?;
    let lhs = kern.compose(&unitor_left(kind, f.target())?, &kern.tensor_morphism(kind, &id_i, f)?)?;
    let rhs = kern.compose(f, &unitor_left(kind, f.source())?)?;
    same("λ∘(id⊗f) vs f∘λ", &lhs, &rhs)
}

/// The intent side `(m₃,m₄) ↦ close(R₁*(m₃) × R₂*(m₄))` pairs with the extent side.
fn chu_pair(kern: &Kernel, r1: &ContextMorphism, r2: &ContextMorphism) -> Outcome {
    let t = kern.tensor_morphism(TensorKind::Concept, r1, r2)?;
    let src = t.source();
    let sp = PairIndexMap::new(r1.source().n_attributes(), r2.source().n_attributes());
    let tp = PairIndexMap::new(r1.target().n_attributes(), r2.target().n_attributes());
    let rows = (0..tp.len())
        .map(|m| {
            let (m3, m4) = tp.split(m);
            src.close_attributes_raw(&sp.product(r1.intent().row(m3), r2.intent().row(m4)))
        })
        .collect();
    let intent = Relation::from_rows(sp.len(), rows);
    same("intent side", t.intent(), &intent)?;
    let chu = ChuPair { extent: t.extent().clone(), intent };
    ContextMorphism::from_chu(src.clone(), t.target().clone(), chu)?;
    Ok(())
}

/// `close((R₁⊗R₂)(A×B)) = close(R₁(A) × R₂(B))` for all `A`, `B`.
fn tensor_image(kern: &Kernel, r1: &ContextMorphism, r2: &ContextMorphism) -> Outcome {
    let t = kern.tensor_morphism(TensorKind::Concept, r1, r2)?;
    let tgt = t.target();
    let sp = PairIndexMap::new(r1.source().n_objects(), r2.source().n_objects());
    let tp = PairIndexMap::new(r1.target().n_objects(), r2.target().n_objects());
    for a in Bits::all_subsets(sp.left) {
        for b in Bits::all_subsets(sp.right) {
            let lhs = tgt.close_objects_raw(&t.extent().image(&sp.product(&a, &b)));
            let rhs = tgt.close_objects_raw(&tp.product(&r1.extent().image(&a), &r2.extent().image(&b)));
            ensure(lhs == rhs, || format!("A={} B={}", a.to_bitstring(), b.to_bitstring()))?;
        }
    }
    Ok(())
}

/// `A×B ▽ C×D ⟺ A I C or B I D`, over every quadruple of subsets.
fn incidence_of_products(kern: &Kernel, k1: &Ctx, k2: &Ctx) -> Outcome {
    let p = kern.tensor(TensorKind::Concept, k1, k2)?;
    let objs = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    let attrs = PairIndexMap::new(k1.n_attributes(), k2.n_attributes());
    let subsets = |n: usize| Bits::all_subsets(n).collect::<Vec<_>>();
    let (ga, gb, mc, md) = (subsets(k1.n_objects()), subsets(k2.n_objects()), subsets(k1.n_attributes()), subsets(k2.n_attributes()));
    for a in &ga {
        for b in &gb {
            let ab = objs.product(a, b);
            let common = p.intent_of(&ab);
            for c in &mc {
                for d in &md {
                    let lhs = attrs.product(c, d).is_subset(&common);
                    let rhs = c.is_subset(&k1.intent_of(a)) || d.is_subset(&k2.intent_of(b));
                    ensure(lhs == rhs, || {
                        format!("A={} B={} C={} D={}", a.to_bitstring(), b.to_bitstring(), c.to_bitstring(), d.to_bitstring())
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `close(A×B) = close(close(A) × close(B))`.
fn closure_of_products(kern: &Kernel, k1: &Ctx, k2: &Ctx) -> Outcome {
    let p = kern.tensor(TensorKind::Concept, k1, k2)?;
    let objs = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    // (M₁ × M₂)′: the pairs with a full row on either side
    let full_rows = p.extent_of(&Bits::full(p.n_attributes()));
    for a in Bits::all_subsets(k1.n_objects()) {
        for b in Bits::all_subsets(k2.n_objects()) {
            let lhs = p.close_objects_raw(&objs.product(&a, &b));
            let closed = objs.product(&k1.close_objects_raw(&a), &k2.close_objects_raw(&b));
            ensure(lhs == p.close_objects_raw(&closed), || format!("A={} B={}", a.to_bitstring(), b.to_bitstring()))?;
            ensure(lhs == closed.union(&full_rows), || {
                format!("close(A)×close(B) ∪ (M₁×M₂)′ at A={} B={}", a.to_bitstring(), b.to_bitstring())
            })?;
        }
    }
    Ok(())
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Relation {
    Relation::from_fn(n, m, |_, _| rng.gen_bool(0.5))
}

fn set_labels(n: usize, tag: char) -> Vec<String> {
    (0..n).map(|i| format!("{tag}{i}")).collect()
}

fn concept_only(cases: &mut Cases, cfg: &GenConfig, rng: &mut ChaCha8Rng) {
    let small = arcs(small_contexts(2));
    for a in &small {
        for b in &small {
            let key = format!("{} , {}", ckey(a), ckey(b));
            let (x, y) = (a.clone(), b.clone());
            cases.add("incidence-of-products", key.clone(), move |kern| incidence_of_products(kern, &x, &y));
            let (x, y) = (a.clone(), b.clone());
            cases.add("closure-of-products", key, move |kern| closure_of_products(kern, &x, &y));
        }
    }
    for na in 0..=3 {
        for nb in 0..=3 {
            cases.add("rel-embedding-full", format!("S{na} -> S{nb}"), move |_| {
                let sa = Arc::new(FormalContext::from_set(&set_labels(na, 'a'))?);
                let sb = Arc::new(FormalContext::from_set(&set_labels(nb, 'b'))?);
                same("|hom(S_A, S_B)|", &enumerate_hom(&sa, &sb, 1 << 12)?.len(), &(1usize << (na * nb)))?;
                let pairs: Vec<String> = sa.objects().iter().flat_map(|x| sb.objects().iter().map(move |y| format!("({x},{y})"))).collect();
                let product = FormalContext::from_set(&pairs)?;
                let tensor = concept_tensor(&sa, &sb);
                ensure(product.objects() == tensor.objects() && product.attributes() == tensor.attributes(), || "labels differ".into())?;
                same("S_{A×B} vs S_A ⊗ S_B", &product.incidence(), &tensor.incidence())
            });
        }
    }
    for trial in 0..cfg.trials {
        let (na, nb, nc) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let r = random_relation(rng, na, nb);
        let s = random_relation(rng, nb, nc);
        let key = format!("trial {trial}: {} ; {}", r.to_key(), s.to_key());
        cases.add("rel-embedding-functor", key, move |kern| {
            let (a, b, c) = (set_labels(na, 'a'), set_labels(nb, 'b'), set_labels(nc, 'c'));
            let er = rel_embed(&a, &b, &r)?;
            let es = rel_embed(&b, &c, &s)?;
            same("S∘R", &rel_embed(&a, &c, &r.then(&s))?, &kern.compose(&es, &er)?)?;
            same("identity", &rel_embed(&a, &a, &Relation::identity(na))?, &identity(er.source()))?;
            same("R†", &rel_embed(&b, &a, &r.transpose())?, &er.dual())
        });
    }
}

fn lattice_only(cases: &mut Cases, cfg: &GenConfig, rng: &mut ChaCha8Rng) {
    let trio = arcs(vec![FormalContext::trivial(), fixtures::s(2), fixtures::chain_context(2)]);
    for a in &trio {
        for b in &trio {
            for c in &trio {
                let key = format!("{} , {} , {}", ckey(a), ckey(b), ckey(c));
                let (x, y, z) = (a.clone(), b.clone(), c.clone());
                cases.add("star-autonomy-bijection", key, move |_| {
                    let bij = star_autonomy_bijection(&x, &y, &z, DEFAULT_MAX_HOM)?;
                    for m in &bij.curried {
                        same("curry∘uncurry", &curry(&x, &y, &z, &uncurry(&x, &y, &z, m)?)?, m)?;
                    }
                    Ok(())
                });
            }
        }
    }
    for trial in 0..cfg.trials {
        let mut pick = || trio[rng.gen_range(0..trio.len())].clone();
        let (a, b, c, x) = (pick(), pick(), pick(), pick());
        let ab = tensor(TensorKind::Lattice, &a, &b, DEFAULT_MAX_HOM).expect("small tensor");
        let m = random_morphism(rng, &ab, &Arc::new(c.dual()));
        let f = random_morphism(rng, &x, &a);
        let h = random_morphism(rng, &x, &b);
        let g = random_morphism(rng, &x, &c);
        let key = format!("trial {trial}: {} ; {} ; {} ; {}", mkey(&m), mkey(&f), mkey(&h), mkey(&g));
        cases.add("star-autonomy-naturality", key, move |_| {
            ensure(natural_in_first(&b, &c, &m, &f)?, || "not natural in the first argument".into())?;
            ensure(natural_in_second(&a, &c, &m, &h)?, || "not natural in the second argument".into())?;
            ensure(natural_in_third(&a, &b, &m, &g)?, || "not natural in the third argument".into())
        });
    }
}
