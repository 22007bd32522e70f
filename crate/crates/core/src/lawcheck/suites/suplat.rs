use std::sync::Arc;

use super::{fkey, lkey, same, Cases};
use crate::bits::Bits;
use crate::error::Error;
use crate::lawcheck::{ensure, random_lattice, random_supmap, GenConfig, Outcome};
use crate::suplat::supmap::{check_sup_table_exhaustive, enumerate_sup_maps_naive};
use crate::suplat::tensor::{
    associator, associator_inv, discard, dual_strong_monoidal_check, symmetry, unit_lattice, unitor_left, unitor_left_inv, unitor_right,
    unitor_right_inv,
};
use crate::suplat::{
    enumerate_sup_maps, is_mutually_distributive, isomorphic, suplat_concept_tensor, tensor_of_maps, universal_map, FiniteLattice, SupMap,
};

type Lat = Arc<FiniteLattice>;

/// Largest product of factor sizes for the threefold and fourfold coherence instances.
const TRIPLE_BOUND: usize = 50;
const QUAD_BOUND: usize = 36;

/// Lattices for the coherence laws: up to five elements, both non-distributive ones included.
fn coherence_pool() -> Vec<Lat> {
    [FiniteLattice::two(), FiniteLattice::chain(3), FiniteLattice::diamond(), FiniteLattice::m3(), FiniteLattice::n5()]
        .into_iter()
        .map(Arc::new)
        .collect()
}

pub(super) fn build(cases: &mut Cases, cfg: &GenConfig) {
    let two = unit_lattice();
    let t = two.clone();
    cases.add("unit-laws", "2 ⊗ 2", move |_| {
        let rho = unitor_right(&t);
        ensure(rho.is_isomorphism(), || "2 ⊗ 2 → 2 is not an isomorphism".into())?;
        same("|2 ⊗ 2|", &rho.source().len(), &2)
    });
    let t = two.clone();
    cases.add("discard", "2", move |_| same("discard(2)", &discard(&t), &SupMap::identity(&t)));

    let pool = coherence_pool();
    let quad: Vec<Lat> = pool[..3].to_vec();
    for v in &pool {
        let x = v.clone();
        cases.add("unit-laws", lkey(v), move |_| unit_laws(&x));
        for w in &pool {
            let key = format!("{} , {}", lkey(v), lkey(w));
            let (x, y) = (v.clone(), w.clone());
            cases.add("symmetry-involution", key.clone(), move |_| {
                same("σ∘σ", &symmetry(&x, &y).then(&symmetry(&y, &x))?, &SupMap::identity(suplat_concept_tensor(&x, &y).lattice()))
            });
            let (x, y) = (v.clone(), w.clone());
            cases.add("triangle", key.clone(), move |_| {
                let i = unit_lattice();
                let lhs = associator(&x, &i, &y).then(&tensor_of_maps(&unitor_right(&x), &SupMap::identity(&y)))?;
                same("(ρ⊗id)∘α vs id⊗λ", &lhs, &tensor_of_maps(&SupMap::identity(&x), &unitor_left(&y)))
            });
            let (x, y) = (v.clone(), w.clone());
            cases.add("tensor-structure", key.clone(), move |_| tensor_structure(&x, &y));
            let (x, y) = (v.clone(), w.clone());
            cases.add("dual-strong-monoidal", key.clone(), move |_| dual_strong_monoidal_check(&x, &y).map(|_| ()).map_err(Into::into));
            let (x, y) = (v.clone(), w.clone());
            cases.add("discard", key, move |_| {
                let i = unit_lattice();
                let t = suplat_concept_tensor(&x, &y);
                let rhs = tensor_of_maps(&discard(&x), &discard(&y)).then(&unitor_left(&i))?;
                same("⊤(V⊗W) vs λ∘(⊤⊗⊤)", &discard(t.lattice()), &rhs)
            });
            for u in &pool {
                if v.len() * w.len() * u.len() > TRIPLE_BOUND {
                    continue;
                }
                let key = format!("{} , {} , {}", lkey(v), lkey(w), lkey(u));
                let (x, y, z) = (v.clone(), w.clone(), u.clone());
                cases.add("hexagon", key.clone(), move |_| {
                    let xy = suplat_concept_tensor(&x, &y);
                    let lhs = associator(&x, &y, &z).then(&symmetry(xy.lattice(), &z))?.then(&associator(&z, &x, &y))?;
                    let rhs = tensor_of_maps(&SupMap::identity(&x), &symmetry(&y, &z))
                        .then(&associator(&x, &z, &y))?
                        .then(&tensor_of_maps(&symmetry(&x, &z), &SupMap::identity(&y)))?;
                    same("hexagon", &lhs, &rhs)
                });
                let (x, y, z) = (v.clone(), w.clone(), u.clone());
                cases.add("associator-iso", key, move |_| {
                    let (fwd, bwd) = (associator(&x, &y, &z), associator_inv(&x, &y, &z));
                    same("α⁻¹∘α", &fwd.then(&bwd)?, &SupMap::identity(fwd.source()))?;
                    same("α∘α⁻¹", &bwd.then(&fwd)?, &SupMap::identity(fwd.target()))
                });
            }
        }
    }
    for a in &quad {
        for b in &quad {
            for c in &quad {
                for d in &quad {
                    if a.len() * b.len() * c.len() * d.len() > QUAD_BOUND {
                        continue;
                    }
                    let key = format!("{} , {} , {} , {}", lkey(a), lkey(b), lkey(c), lkey(d));
                    let (w, x, y, z) = (a.clone(), b.clone(), c.clone(), d.clone());
                    cases.add("pentagon", key, move |_| {
                        let (wx, xy, yz) = (suplat_concept_tensor(&w, &x), suplat_concept_tensor(&x, &y), suplat_concept_tensor(&y, &z));
                        let lhs = associator(&w, &x, yz.lattice()).then(&associator(wx.lattice(), &y, &z))?;
                        let rhs = tensor_of_maps(&SupMap::identity(&w), &associator(&x, &y, &z))
                            .then(&associator(&w, xy.lattice(), &z))?
                            .then(&tensor_of_maps(&associator(&w, &x, &y), &SupMap::identity(&z)))?;
                        same("pentagon", &lhs, &rhs)
                    });
                }
            }
        }
    }

    let mut rng = cfg.rng();
    let small = GenConfig { max_lattice: cfg.max_lattice.min(4), ..cfg.clone() };
    for trial in 0..cfg.trials {
        let v = Arc::new(random_lattice(&mut rng, cfg));
        let w = Arc::new(random_lattice(&mut rng, cfg));
        let m = Arc::new(random_lattice(&mut rng, cfg));
        let f = random_supmap(&mut rng, &v, &w);
        let g = random_supmap(&mut rng, &w, &m);
        let key = format!("trial {trial}: {} ; {}", fkey(&f), fkey(&g));
        let x = v.clone();
        cases.add("lattice-axioms", format!("trial {trial}: {}", lkey(&v)), move |_| lattice_axioms(&x));
        let (f1, g1) = (f.clone(), g.clone());
        cases.add("sup-maps", key.clone(), move |_| sup_maps(&f1, &g1));
        let (x, y) = (v.clone(), w.clone());
        cases.add("sup-map-enumeration", format!("trial {trial}: {} , {}", lkey(&v), lkey(&w)), move |_| {
            let fast: Vec<Vec<usize>> = enumerate_sup_maps(&x, &y, 1 << 20)?.iter().map(|f| f.table().to_vec()).collect();
            let mut slow: Vec<Vec<usize>> = enumerate_sup_maps_naive(&x, &y).iter().map(|f| f.table().to_vec()).collect();
            slow.sort();
            same("sup-maps", &fast, &slow)
        });

        // the universal property, with uniqueness checked by exhaustive search into a small target
        let (a, b) = (Arc::new(random_lattice(&mut rng, &small)), Arc::new(random_lattice(&mut rng, &small)));
        let n = Arc::new(random_lattice(&mut rng, &small));
        let (p, q) = (random_supmap(&mut rng, &a, &n), random_supmap(&mut rng, &b, &n));
        cases.add("universal-map", format!("trial {trial}: {} ; {}", fkey(&p), fkey(&q)), move |_| universal(&p, &q, true));
        let (p, q) = (random_supmap(&mut rng, &v, &m), random_supmap(&mut rng, &w, &m));
        cases.add("universal-map", format!("trial {trial}: {} ; {}", fkey(&p), fkey(&q)), move |_| universal(&p, &q, false));

        // naturality and bifunctoriality over the coherence pool
        let pick = |i: usize| pool[i % pool.len()].clone();
        let idx: Vec<usize> = (0..6).map(|_| rand::Rng::gen_range(&mut rng, 0..pool.len())).collect();
        let (v1, v2, w1, w2, u1, u2) = (pick(idx[0]), pick(idx[1]), pick(idx[2]), pick(idx[3]), pick(idx[4]), pick(idx[5]));
        let f1 = random_supmap(&mut rng, &v1, &v2);
        let g1 = random_supmap(&mut rng, &w1, &w2);
        let f2 = random_supmap(&mut rng, &v2, &u1);
        let g2 = random_supmap(&mut rng, &w2, &u2);
        let key = format!("trial {trial}: {} ; {} ; {} ; {}", fkey(&f1), fkey(&g1), fkey(&f2), fkey(&g2));
        cases.add("naturality", key, move |_| naturality(&f1, &g1, &f2, &g2));

        let idx: Vec<usize> = (0..6).map(|_| rand::Rng::gen_range(&mut rng, 0..quad.len())).collect();
        let ends: Vec<Lat> = idx.iter().map(|&i| quad[i].clone()).collect();
        if ends[..3].iter().chain(&ends[3..]).map(|l| l.len()).product::<usize>() <= TRIPLE_BOUND * TRIPLE_BOUND {
            let fs: Vec<SupMap> = (0..3).map(|i| random_supmap(&mut rng, &ends[i], &ends[i + 3])).collect();
            let key = format!("trial {trial}: {} ; {} ; {}", fkey(&fs[0]), fkey(&fs[1]), fkey(&fs[2]));
            cases.add("associator-naturality", key, move |_| {
                let (f, g, h) = (&fs[0], &fs[1], &fs[2]);
                let lhs = tensor_of_maps(f, &tensor_of_maps(g, h)).then(&associator(f.target(), g.target(), h.target()))?;
                let rhs = associator(f.source(), g.source(), h.source()).then(&tensor_of_maps(&tensor_of_maps(f, g), h))?;
                same("α∘(f⊗(g⊗h)) vs ((f⊗g)⊗h)∘α", &lhs, &rhs)
            });
        }
    }
}

fn unit_laws(v: &Lat) -> Outcome {
    let rho = unitor_right(v);
    ensure(rho.is_isomorphism(), || "ρ: V ⊗ 2 → V is not an isomorphism".into())?;
    same("ρ⁻¹∘ρ", &rho.then(&unitor_right_inv(v))?, &SupMap::identity(rho.source()))?;
    same("ρ∘ρ⁻¹", &unitor_right_inv(v).then(&rho)?, &SupMap::identity(v))?;
    let lam = unitor_left(v);
    ensure(lam.is_isomorphism(), || "λ: 2 ⊗ V → V is not an isomorphism".into())?;
    same("λ∘λ⁻¹", &unitor_left_inv(v).then(&lam)?, &SupMap::identity(v))
}

/// Embeddings, the wedge description of elements, and generation by the embeddings.
fn tensor_structure(v: &Lat, w: &Lat) -> Outcome {
    let t = suplat_concept_tensor(v, w);
    let l = t.lattice();
    for e in [t.eps1(), t.eps2()] {
        ensure(e.is_complete_hom() && e.is_injective(), || "an embedding is not an injective complete homomorphism".into())?;
    }
    is_mutually_distributive(l, t.eps1().table(), t.eps2().table())
        .map_err(|f| crate::lawcheck::Failure::Fail(format!("embedding images: {f}")))?;
    for x in 0..v.len() {
        for y in 0..w.len() {
            same("x ∧̄ y", &Some(t.owedge(x, y)), &t.owedge_explicit(x, y))?;
        }
    }
    for c in 0..l.len() {
        let wedge = l.join_all(t.extent_pairs(c).into_iter().map(|(x, y)| t.owedge(x, y)));
        same("element as a join of wedges", &wedge, &c)?;
    }
    let mut generated = Bits::from_indices(l.len(), t.eps1().table().iter().chain(t.eps2().table()).copied());
    loop {
        let mut next = generated.clone();
        for a in generated.ones() {
            for b in generated.ones() {
                next.insert(l.join(a, b));
                next.insert(l.meet(a, b));
            }
        }
        if next == generated {
            break;
        }
        generated = next;
    }
    ensure(generated.is_full(), || format!("embeddings generate {} of {} elements", generated.count(), l.len()))
}

fn lattice_axioms(v: &Lat) -> Outcome {
    let again = FiniteLattice::from_leq(v.labels().to_vec(), v.leq_matrix())?;
    same("rebuilt from its order", &again, &**v)?;
    same("op∘op", &v.op().op(), &**v)?;
    for i in 0..v.len() {
        for j in 0..v.len() {
            let (m, jn) = (v.meet(i, j), v.join(i, j));
            ensure(v.leq(m, i) && v.leq(m, j) && v.leq(i, jn) && v.leq(j, jn), || format!("bounds at ({i},{j})"))?;
            ensure(v.leq(i, j) == (m == i) && v.leq(i, j) == (jn == j), || format!("order vs tables at ({i},{j})"))?;
        }
    }
    Ok(())
}

fn sup_maps(f: &SupMap, g: &SupMap) -> Outcome {
    check_sup_table_exhaustive(f.source(), f.target(), f.table()).map_err(crate::lawcheck::Failure::Fail)?;
    let gf = f.then(g)?;
    check_sup_table_exhaustive(gf.source(), gf.target(), gf.table()).map_err(crate::lawcheck::Failure::Fail)?;
    // f(x) ≤ y ⟺ x ≤ f*(y), with f* read back in the original orders
    let adj = f.adjoint();
    let (v, w) = (f.source(), f.target());
    for x in 0..v.len() {
        for y in 0..w.len() {
            ensure(w.leq(f.apply(x), y) == v.leq(x, adj.apply(y)), || format!("adjunction at ({x},{y})"))?;
        }
    }
    same("f**", &adj.adjoint().table().to_vec(), &f.table().to_vec())
}

fn universal(f: &SupMap, g: &SupMap, exhaustive: bool) -> Outcome {
    let t = suplat_concept_tensor(f.source(), g.source());
    let m = f.target();
    let h = match universal_map(&t, f, g) {
        Ok(h) => h,
        Err(Error::NotMutuallyDistributive(why)) => {
            // legitimate only when the images really are not mutually distributive
            return ensure(is_mutually_distributive(m, f.table(), g.table()).is_err(), || why);
        }
        Err(e) => return Err(e.into()),
    };
    for x in 0..f.source().len() {
        for y in 0..g.source().len() {
            ensure(h.apply(t.owedge(x, y)) == m.meet(f.apply(x), g.apply(y)), || format!("h(x ∧̄ y) at ({x},{y})"))?;
        }
    }
    let (join_form, meet_form) = crate::suplat::tensor::universal_map_forms(&t, f, g)?;
    same("join form vs meet form", &join_form, &meet_form)?;
    if exhaustive {
        let all = enumerate_sup_maps(t.lattice(), m, 1 << 20)?;
        let fitting: Vec<&SupMap> = all
            .iter()
            .filter(|k| {
                (0..f.source().len()).all(|x| (0..g.source().len()).all(|y| k.apply(t.owedge(x, y)) == m.meet(f.apply(x), g.apply(y))))
            })
            .collect();
        same("number of maps with the universal property", &fitting.len(), &1)?;
        same("the unique map", fitting[0], &h)?;
    }
    Ok(())
}

fn naturality(f1: &SupMap, g1: &SupMap, f2: &SupMap, g2: &SupMap) -> Outcome {
    let fg = tensor_of_maps(f1, g1);
    ensure(fg.is_sup_map(), || "f ⊗ g is not a sup-map".into())?;
    let lhs = tensor_of_maps(&f1.then(f2)?, &g1.then(g2)?);
    same("(f'∘f)⊗(g'∘g) vs (f'⊗g')∘(f⊗g)", &lhs, &fg.then(&tensor_of_maps(f2, g2))?)?;
    let (v, w) = (f1.source(), g1.source());
    same("id⊗id", &tensor_of_maps(&SupMap::identity(v), &SupMap::identity(w)), &SupMap::identity(fg.source()))?;
    let lhs = fg.then(&symmetry(f1.target(), g1.target()))?;
    let rhs = symmetry(v, w).then(&tensor_of_maps(g1, f1))?;
    same("σ∘(f⊗g) vs (g⊗f)∘σ", &lhs, &rhs)?;
    let two = unit_lattice();
    let lhs = tensor_of_maps(f1, &SupMap::identity(&two)).then(&unitor_right(f1.target()))?;
    same("ρ∘(f⊗id) vs f∘ρ", &lhs, &unitor_right(v).then(f1)?)?;
    ensure(isomorphic(fg.source(), symmetry(v, w).target()), || "V⊗W ≇ W⊗V".into())
}
