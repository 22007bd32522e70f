use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::{ckey, mkey, same, valid, Cases};
use crate::context::FormalContext;
use crate::hom::{enumerate_hom, hom_lattice};
use crate::lawcheck::{ensure, random_context, random_morphism, small_contexts, GenConfig, Kernel, Outcome};
use crate::morphism::{
    bond_compose, check_bond, check_closed_relation, extent_to_intent, identity, intent_to_extent, is_compatible_relation, moshier_compose,
    ContextMorphism,
};
use crate::relation::Relation;

type Homs = Arc<Vec<ContextMorphism>>;

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig) {
    exhaustive(cases);
    let mut rng = cfg.rng();
    for trial in 0..cfg.trials {
        let ks: Vec<Arc<FormalContext>> = (0..4).map(|_| Arc::new(random_context(&mut rng, cfg))).collect();
        let r = random_morphism(&mut rng, &ks[0], &ks[1]);
        let s = random_morphism(&mut rng, &ks[1], &ks[2]);
        let t = random_morphism(&mut rng, &ks[2], &ks[3]);
        let seeds: Vec<Relation> =
            (0..8).map(|_| Relation::from_fn(ks[0].n_objects(), ks[1].n_attributes(), |_, _| rng.gen_bool(0.5))).collect();
        let key = format!("trial {trial}: {} ; {} ; {}", mkey(&r), mkey(&s), mkey(&t));
        let (r1, s1, t1) = (r.clone(), s.clone(), t.clone());
        cases.add("associativity", key.clone(), move |kern| associative(kern, &r1, &s1, &t1));
        let (r1, s1) = (r.clone(), s.clone());
        cases.add("composite-is-morphism", key.clone(), move |kern| valid("s∘r", &kern.compose(&s1, &r1)?));
        let r1 = r.clone();
        cases.add("identity", key.clone(), move |kern| identities(kern, &r1));
        let r1 = r.clone();
        cases.add("representations", key.clone(), move |_| round_trips(&r1));
        let (r1, s1) = (r.clone(), s.clone());
        cases.add("bond-composition", key.clone(), move |kern| bond_composition(kern, &r1, &s1));
        let (r1, s1) = (r.clone(), s.clone());
        cases.add("duality", key.clone(), move |kern| duality(kern, &r1, &s1));
        let (a, b) = (ks[0].clone(), ks[1].clone());
        cases.add("moshier-compatibility", key, move |_| seeds.iter().try_for_each(|rel| moshier_agrees(&a, &b, rel)));
    }
}

fn exhaustive(cases: &mut Cases) {
    let ks: Vec<Arc<FormalContext>> = small_contexts(2).into_iter().map(Arc::new).collect();
    let n = ks.len();
    let homs: Vec<Vec<Homs>> =
        ks.iter().map(|a| ks.iter().map(|b| Arc::new(enumerate_hom(a, b, 1 << 16).expect("2x2 hom-sets are small"))).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            let key = format!("{} -> {}", ckey(&ks[i]), ckey(&ks[j]));
            let (a, b, h) = (ks[i].clone(), ks[j].clone(), homs[i][j].clone());
            cases.add("representations", key.clone(), move |_| representation_counts(&a, &b, &h));
            let h = homs[i][j].clone();
            cases.add("identity", key.clone(), move |kern| h.iter().try_for_each(|r| identities(kern, r)));
            let (h, back) =
                (homs[i][j].clone(), Arc::new(enumerate_hom(&Arc::new(ks[j].dual()), &Arc::new(ks[i].dual()), 1 << 16).unwrap()));
            cases.add("duality", key.clone(), move |_| dual_bijection(&h, &back));
            let h = homs[i][j].clone();
            cases.add("hom-lattice", key.clone(), move |_| {
                let l = hom_lattice(&h)?;
                same("hom-lattice size", &l.len(), &h.len())
            });
            let (a, b) = (ks[i].clone(), ks[j].clone());
            cases.add("moshier-compatibility", key, move |_| {
                let cells = a.n_objects() * b.n_attributes();
                (0u32..1 << cells).try_for_each(|mask| {
                    let rel = Relation::from_fn(a.n_objects(), b.n_attributes(), |g, m| mask >> (g * b.n_attributes() + m) & 1 == 1);
                    moshier_agrees(&a, &b, &rel)
                })
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let key = format!("{} -> {} -> {}", ckey(&ks[i]), ckey(&ks[j]), ckey(&ks[k]));
                let (h1, h2) = (homs[i][j].clone(), homs[j][k].clone());
                cases.add("composite-is-morphism", key.clone(), move |kern| {
                    for r in h1.iter() {
                        for s in h2.iter() {
                            valid("s∘r", &kern.compose(s, r)?)?;
                        }
                    }
                    Ok(())
                });
                let (h1, h2) = (homs[i][j].clone(), homs[j][k].clone());
                cases.add("bond-composition", key.clone(), move |kern| {
                    h1.iter().try_for_each(|r| h2.iter().try_for_each(|s| bond_composition(kern, r, s)))
                });
                let (h1, h2) = (homs[i][j].clone(), homs[j][k].clone());
                cases.add("duality", key.clone(), move |kern| h1.iter().try_for_each(|r| h2.iter().try_for_each(|s| duality(kern, r, s))));
                for l in 0..n {
                    let key = format!("{key} -> {}", ckey(&ks[l]));
                    let (h1, h2, h3) = (homs[i][j].clone(), homs[j][k].clone(), homs[k][l].clone());
                    cases.add("associativity", key, move |kern| {
                        for r in h1.iter() {
                            for s in h2.iter() {
                                let sr = kern.compose(s, r)?;
                                for t in h3.iter() {
                                    let lhs = kern.compose(&kern.compose(t, s)?, r)?;
                                    let rhs = kern.compose(t, &sr)?;
                                    same("(t∘s)∘r vs t∘(s∘r)", &lhs, &rhs)?;
                                }
                            }
                        }
                        Ok(())
                    });
                }
            }
        }
    }
}

fn associative(kern: &Kernel, r: &ContextMorphism, s: &ContextMorphism, t: &ContextMorphism) -> Outcome {
    let lhs = kern.compose(&kern.compose(t, s)?, r)?;
    let rhs = kern.compose(t, &kern.compose(s, r)?)?;
    same("(t∘s)∘r vs t∘(s∘r)", &lhs, &rhs)
}

fn identities(kern: &Kernel, r: &ContextMorphism) -> Outcome {
    same("id∘r", &kern.compose(&identity(r.target()), r)?, r)?;
    same("r∘id", &kern.compose(r, &identity(r.source()))?, r)
}

fn round_trips(r: &ContextMorphism) -> Outcome {
    let (src, tgt) = (r.source().clone(), r.target().clone());
    same("from extent", &ContextMorphism::from_extent(src.clone(), tgt.clone(), r.extent().clone())?, r)?;
    same("from intent", &ContextMorphism::from_intent(src.clone(), tgt.clone(), r.intent().clone())?, r)?;
    same("from Chu pair", &ContextMorphism::from_chu(src.clone(), tgt.clone(), r.to_chu())?, r)?;
    same("from bond", &ContextMorphism::from_bond(src.clone(), tgt.clone(), r.bond().clone())?, r)?;
    same("extent to intent", &extent_to_intent(&src, &tgt, r.extent()), r.intent())?;
    same("intent to extent", &intent_to_extent(&src, &tgt, r.intent()), r.extent())
}

fn all_relations(rows: usize, cols: usize) -> impl Iterator<Item = Relation> {
    (0u32..1 << (rows * cols)).map(move |mask| Relation::from_fn(rows, cols, |a, b| mask >> (a * cols + b) & 1 == 1))
}

/// Each representation, enumerated independently by brute force, has as many
/// members as the hom-set, and the conversions hit exactly those members.
fn representation_counts(a: &Arc<FormalContext>, b: &Arc<FormalContext>, homs: &[ContextMorphism]) -> Outcome {
    let bonds: BTreeSet<String> =
        all_relations(a.n_objects(), b.n_attributes()).filter(|r| check_bond(a, b, r).is_ok()).map(|r| r.to_key()).collect();
    let extents: BTreeSet<String> =
        all_relations(a.n_objects(), b.n_objects()).filter(|r| check_closed_relation(a, b, r).is_ok()).map(|r| r.to_key()).collect();
    let (ad, bd) = (a.dual(), b.dual());
    let intents: BTreeSet<String> = all_relations(b.n_attributes(), a.n_attributes())
        .filter(|r| check_closed_relation(&bd, &ad, r).is_ok())
        .map(|r| r.to_key())
        .collect();
    same("bond count", &bonds.len(), &homs.len())?;
    same("extent count", &extents.len(), &homs.len())?;
    same("intent count", &intents.len(), &homs.len())?;
    same("bonds", &homs.iter().map(|r| r.bond().to_key()).collect::<BTreeSet<_>>(), &bonds)?;
    same("extents", &homs.iter().map(|r| r.extent().to_key()).collect::<BTreeSet<_>>(), &extents)?;
    same("intents", &homs.iter().map(|r| r.intent().to_key()).collect::<BTreeSet<_>>(), &intents)?;
    homs.iter().try_for_each(round_trips)
}

fn bond_composition(kern: &Kernel, r: &ContextMorphism, s: &ContextMorphism) -> Outcome {
    let composite = kern.compose(s, r)?;
    same("bond composite", &bond_compose(r.target(), s.bond(), r.bond()), composite.bond())?;
    same("Moshier composite", &moshier_compose(r.target(), s.bond(), r.bond()), composite.bond())
}

fn duality(kern: &Kernel, r: &ContextMorphism, s: &ContextMorphism) -> Outcome {
    same("r**", &r.dual().dual(), r)?;
    same("(s∘r)*", &kern.compose(s, r)?.dual(), &kern.compose(&r.dual(), &s.dual())?)
}

fn dual_bijection(homs: &[ContextMorphism], back: &[ContextMorphism]) -> Outcome {
    same("|hom(K₂*, K₁*)|", &back.len(), &homs.len())?;
    let image: BTreeSet<String> = homs.iter().map(|r| r.dual().bond().to_key()).collect();
    let target: BTreeSet<String> = back.iter().map(|r| r.bond().to_key()).collect();
    same("image of (-)*", &image, &target)
}

fn moshier_agrees(a: &FormalContext, b: &FormalContext, rel: &Relation) -> Outcome {
    let compatible = is_compatible_relation(a, b, rel).is_ok();
    let bond = check_bond(a, b, rel).is_ok();
    ensure(compatible == bond, || format!("{} compatible={compatible} bond={bond}", rel.to_key()))
}
