use std::sync::Arc;

use cxtcat::hom::enumerate_hom;
use cxtcat::lawcheck::{random_context, random_lattice, random_morphism, random_supmap, GenConfig};
use cxtcat::morphism::{compose, identity};
use cxtcat::suplat::tensor::{associator, discard, dual_strong_monoidal_check, symmetry, unitor_left, unitor_right};
use cxtcat::suplat::{
    concept_functor_mor, concept_functor_obj, context_functor_mor, context_functor_obj, counit_iso, enumerate_sup_maps, find_isomorphism,
    hom_lattice, is_mutually_distributive, isomorphic, phi_iso, states_iso, suplat_concept_tensor, tensor_of_maps, unit_iso, universal_map,
    FiniteLattice, SupMap,
};
use cxtcat::{fixtures, FormalContext};
use proptest::prelude::*;

type Lat = Arc<FiniteLattice>;

fn lat(l: FiniteLattice) -> Lat {
    Arc::new(l)
}

fn two() -> Lat {
    lat(FiniteLattice::two())
}

fn chain3() -> Lat {
    lat(FiniteLattice::chain(3))
}

fn diamond() -> Lat {
    lat(FiniteLattice::diamond())
}

fn same(f: &SupMap, g: &SupMap) -> bool {
    f.table() == g.table() && f.source().id() == g.source().id() && f.target().id() == g.target().id()
}

fn random_pair(rng: &mut rand_chacha::ChaCha8Rng, cfg: &GenConfig) -> (Lat, Lat) {
    (lat(random_lattice(rng, cfg)), lat(random_lattice(rng, cfg)))
}

/// Down-sets of the product of the join-irreducible posets, counted by brute force.
fn downsets_of_irreducible_product(v: &FiniteLattice, w: &FiniteLattice) -> usize {
    let (jv, jw) = (v.join_irreducibles(), w.join_irreducibles());
    let pts: Vec<(usize, usize)> = jv.iter().flat_map(|&a| jw.iter().map(move |&b| (a, b))).collect();
    let below = |p: (usize, usize), q: (usize, usize)| v.leq(p.0, q.0) && w.leq(p.1, q.1);
    (0u32..1 << pts.len())
        .filter(|mask| {
            (0..pts.len()).all(|i| mask >> i & 1 == 0 || (0..pts.len()).all(|j| !below(pts[j], pts[i]) || mask >> j & 1 == 1))
        })
        .count()
}

#[test]
fn sup_maps() {
    let c = chain3();
    assert!(SupMap::identity(&c).is_sup_map());
    assert!(SupMap::new(c.clone(), c.clone(), vec![c.top(); 3]).is_err());

    let (d, t) = (diamond(), two());
    let table: Vec<usize> = (0..d.len()).map(|x| usize::from(x != d.bottom())).collect();
    let f = SupMap::new(d.clone(), t, table).unwrap();
    assert!(f.is_sup_map());
    assert!(!f.is_complete_hom());
}

#[test]
fn adjoints() {
    let d = diamond();
    assert!(same(&SupMap::identity(&d).adjoint(), &SupMap::identity(&lat(d.op()))));

    let cfg = GenConfig::default();
    let mut rng = cfg.clone().with_seed(7).rng();
    for _ in 0..500 {
        let (u, v) = random_pair(&mut rng, &cfg);
        let w = lat(random_lattice(&mut rng, &cfg));
        let f = random_supmap(&mut rng, &u, &v);
        let g = random_supmap(&mut rng, &v, &w);
        let fa = f.adjoint();
        for x in 0..u.len() {
            for y in 0..v.len() {
                assert_eq!(v.leq(f.apply(x), y), u.leq(x, fa.apply(y)));
            }
        }
        assert!(same(&fa.adjoint(), &f));
        let gf = f.then(&g).unwrap();
        assert!(same(&gf.adjoint(), &g.adjoint().then(&fa).unwrap()));
    }
}

#[test]
fn sup_map_counts() {
    // sup-maps V → 2 are determined by the largest element sent to 0
    for v in [two(), chain3(), diamond(), lat(FiniteLattice::m3()), lat(FiniteLattice::n5())] {
        assert_eq!(enumerate_sup_maps(&v, &two(), 1000).unwrap().len(), v.len());
    }
    // for a distributive lattice, the same count is the number of antichains of join-irreducibles
    let d = diamond();
    let j = d.join_irreducibles();
    let antichains = (0u32..1 << j.len())
        .filter(|m| (0..j.len()).all(|a| (0..j.len()).all(|b| a == b || m >> a & 1 == 0 || m >> b & 1 == 0 || !d.leq(j[a], j[b]))))
        .count();
    assert_eq!(enumerate_sup_maps(&d, &two(), 1000).unwrap().len(), antichains);

    for v in [two(), chain3(), diamond()] {
        let (h, _) = hom_lattice(&two(), &v, 1000).unwrap();
        assert!(isomorphic(&h, &v));
    }
}

#[test]
fn concept_functor() {
    let s2 = Arc::new(fixtures::s(2));
    let id = concept_functor_mor(&identity(&s2));
    assert!(same(&id, &SupMap::identity(&concept_functor_obj(&s2))));

    let cfg = GenConfig { max_objects: 3, max_attributes: 3, ..GenConfig::default() };
    let mut rng = cfg.clone().with_seed(11).rng();
    for _ in 0..500 {
        let ks: Vec<_> = (0..3).map(|_| Arc::new(random_context(&mut rng, &cfg))).collect();
        let r = random_morphism(&mut rng, &ks[0], &ks[1]);
        let s = random_morphism(&mut rng, &ks[1], &ks[2]);
        let (br, bs) = (concept_functor_mor(&r), concept_functor_mor(&s));
        assert!(br.is_sup_map());
        assert!(same(&concept_functor_mor(&compose(&s, &r).unwrap()), &br.then(&bs).unwrap()));
    }
}

#[test]
fn context_functor() {
    let t = two();
    let f2 = context_functor_obj(&t);
    assert_eq!((f2.n_objects(), f2.n_attributes()), (2, 2));
    assert!(isomorphic(&concept_functor_obj(&f2), &t));

    let fid = context_functor_mor(&SupMap::identity(&t)).unwrap();
    assert_eq!(fid.bond(), identity(&Arc::new(f2)).bond());

    let cfg = GenConfig::default();
    let mut rng = cfg.clone().with_seed(3).rng();
    for _ in 0..100 {
        let (v, w) = random_pair(&mut rng, &cfg);
        let f = random_supmap(&mut rng, &v, &w);
        let round = concept_functor_mor(&context_functor_mor(&f).unwrap());
        // 𝔹F(f) ∘ η = η ∘ f
        let lhs = unit_iso(&v).then(&round).unwrap();
        let rhs = f.then(&unit_iso(&w)).unwrap();
        assert_eq!(lhs.table(), rhs.table());
    }
}

#[test]
fn units_and_counits() {
    for (v, n) in [(two(), 2), (diamond(), 4)] {
        let eta = unit_iso(&v);
        assert!(eta.is_isomorphism());
        assert_eq!(eta.target().len(), n);
    }
    let k = Arc::new(fixtures::animals());
    let (fwd, bwd) = counit_iso(&k);
    assert_eq!(compose(&bwd, &fwd).unwrap().bond(), identity(&k).bond());
    assert_eq!(compose(&fwd, &bwd).unwrap().bond(), identity(fwd.target()).bond());
    assert_eq!(fwd.target().n_objects(), 10);
}

#[test]
fn states() {
    let unit = Arc::new(FormalContext::trivial());
    let k = Arc::new(fixtures::animals());
    let st = enumerate_hom(&unit, &k, 1000).unwrap();
    assert_eq!(st.len(), 10);
    assert_eq!(states_iso(&k, &st).unwrap().len(), 10);
    assert_eq!(enumerate_hom(&unit, &unit, 1000).unwrap().len(), 2);
}

#[test]
fn tensor_sizes() {
    let t = two();
    assert!(isomorphic(suplat_concept_tensor(&t, &t).lattice(), &t));
    for v in [chain3(), diamond(), lat(FiniteLattice::m3()), lat(FiniteLattice::n5()), lat(FiniteLattice::powerset(3))] {
        assert!(isomorphic(suplat_concept_tensor(&v, &t).lattice(), &v));
        assert!(isomorphic(suplat_concept_tensor(&t, &v).lattice(), &v));
    }
    for (v, w) in [(chain3(), chain3()), (diamond(), chain3()), (diamond(), diamond()), (lat(FiniteLattice::chain(4)), chain3())] {
        let n = suplat_concept_tensor(&v, &w).lattice().len();
        assert_eq!(n, downsets_of_irreducible_product(&v, &w));
    }
    assert_eq!(suplat_concept_tensor(&chain3(), &chain3()).lattice().len(), 6);
}

#[test]
fn pure_tensors() {
    let c = chain3();
    let t = suplat_concept_tensor(&c, &c);
    let m = t.lattice();
    assert_eq!(t.owedge(c.top(), c.top()), m.top());
    assert_eq!(t.ovee(c.bottom(), c.bottom()), m.bottom());
    let (e1, e2) = (t.eps1(), t.eps2());
    for x in 0..c.len() {
        assert_eq!(t.owedge(x, c.top()), e1.apply(x));
        assert_eq!(t.owedge(c.top(), x), e2.apply(x));
        assert_eq!(t.ovee(x, c.bottom()), e1.apply(x));
        for y in 0..c.len() {
            if let Some(explicit) = t.owedge_explicit(x, y) {
                assert_eq!(explicit, t.owedge(x, y));
            }
            assert_eq!(t.owedge(x, y), m.meet(e1.apply(x), e2.apply(y)));
        }
    }
}

#[test]
fn mutual_distributivity() {
    let p = FiniteLattice::powerset(2);
    let all: Vec<usize> = (0..p.len()).collect();
    assert!(is_mutually_distributive(&p, &all, &all).is_ok());

    let m3 = FiniteLattice::m3();
    let atoms = m3.join_irreducibles();
    assert!(is_mutually_distributive(&m3, &atoms[..1], &atoms[1..]).is_err());

    for (v, w) in [(chain3(), chain3()), (diamond(), two()), (lat(FiniteLattice::m3()), chain3())] {
        let t = suplat_concept_tensor(&v, &w);
        assert!(is_mutually_distributive(t.lattice(), t.eps1().table(), t.eps2().table()).is_ok());
    }
}

#[test]
fn universal_maps() {
    let c = chain3();
    let t = suplat_concept_tensor(&c, &c);
    let h = universal_map(&t, &t.eps1(), &t.eps2()).unwrap();
    assert!(same(&h, &SupMap::identity(t.lattice())));

    let tt = suplat_concept_tensor(&two(), &two());
    let mult = universal_map(&tt, &SupMap::identity(&two()), &SupMap::identity(&two())).unwrap();
    assert_eq!(mult.table(), unitor_right(&two()).table());

    // into a chain every pair of images is mutually distributive
    let into = lat(FiniteLattice::chain(4));
    for f in enumerate_sup_maps(&c, &into, 1000).unwrap() {
        for g in enumerate_sup_maps(&c, &into, 1000).unwrap() {
            let h = universal_map(&t, &f, &g).unwrap();
            for x in 0..c.len() {
                for y in 0..c.len() {
                    assert_eq!(h.apply(t.owedge(x, y)), into.meet(f.apply(x), g.apply(y)));
                }
            }
        }
    }
}

#[test]
fn tensor_of_maps_is_a_bifunctor() {
    let t = two();
    let id = tensor_of_maps(&SupMap::identity(&t), &SupMap::identity(&t));
    assert!(same(&id, &SupMap::identity(suplat_concept_tensor(&t, &t).lattice())));

    let cfg = GenConfig { max_lattice: 4, ..GenConfig::default() };
    let mut rng = cfg.clone().with_seed(5).rng();
    for _ in 0..200 {
        let ls: Vec<Lat> = (0..6).map(|_| lat(random_lattice(&mut rng, &cfg))).collect();
        let f = random_supmap(&mut rng, &ls[0], &ls[1]);
        let f2 = random_supmap(&mut rng, &ls[1], &ls[2]);
        let g = random_supmap(&mut rng, &ls[3], &ls[4]);
        let g2 = random_supmap(&mut rng, &ls[4], &ls[5]);
        let lhs = tensor_of_maps(&f.then(&f2).unwrap(), &g.then(&g2).unwrap());
        let rhs = tensor_of_maps(&f, &g).then(&tensor_of_maps(&f2, &g2)).unwrap();
        assert_eq!(lhs.table(), rhs.table());
    }
}

#[test]
fn symmetric_monoidal_structure() {
    let (t, c) = (two(), chain3());
    let ss = symmetry(&t, &c).then(&symmetry(&c, &t)).unwrap();
    assert!(same(&ss, &SupMap::identity(suplat_concept_tensor(&t, &c).lattice())));

    // (ρ ⊗ id) ∘ α = id ⊗ λ on C ⊗ (2 ⊗ C)
    let lhs = associator(&c, &t, &c).then(&tensor_of_maps(&unitor_right(&c), &SupMap::identity(&c))).unwrap();
    let rhs = tensor_of_maps(&SupMap::identity(&c), &unitor_left(&c));
    assert_eq!(lhs.table(), rhs.table());

    for (v, w) in [(t.clone(), c.clone()), (diamond(), c.clone()), (lat(FiniteLattice::n5()), t.clone())] {
        let lhs = tensor_of_maps(&discard(&v), &discard(&w)).then(&unitor_left(&t)).unwrap();
        let tv = suplat_concept_tensor(&v, &w);
        assert_eq!(lhs.table(), discard(tv.lattice()).table());
    }
}

#[test]
fn phi_and_duals() {
    let unit = FormalContext::trivial();
    let p = phi_iso(&unit, &unit);
    assert!(p.is_isomorphism());
    assert_eq!(p.source().len(), 2);
    let s2 = fixtures::s(2);
    let p = phi_iso(&s2, &s2);
    assert!(p.is_isomorphism());
    assert_eq!(p.target().len(), 16);

    for (v, w) in [(two(), two()), (chain3(), chain3()), (diamond(), chain3())] {
        let iso = dual_strong_monoidal_check(&v, &w).unwrap();
        assert!(iso.is_isomorphism());
        assert!(find_isomorphism(iso.source(), iso.target()).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_of_sup_maps_is_associative(seed in any::<u64>()) {
        let cfg = GenConfig::default().with_seed(seed);
        let mut rng = cfg.rng();
        let ls: Vec<Lat> = (0..4).map(|_| lat(random_lattice(&mut rng, &cfg))).collect();
        let f = random_supmap(&mut rng, &ls[0], &ls[1]);
        let g = random_supmap(&mut rng, &ls[1], &ls[2]);
        let h = random_supmap(&mut rng, &ls[2], &ls[3]);
        let a = f.then(&g).unwrap().then(&h).unwrap();
        let b = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(a.table(), b.table());
        prop_assert!(a.is_sup_map());
    }

    #[test]
    fn tensor_of_random_lattices(seed in any::<u64>()) {
        let cfg = GenConfig { max_lattice: 5, ..GenConfig::default().with_seed(seed) };
        let mut rng = cfg.rng();
        let (v, w) = random_pair(&mut rng, &cfg);
        let t = suplat_concept_tensor(&v, &w);
        prop_assert!(t.eps1().is_sup_map() && t.eps2().is_sup_map());
        prop_assert!(isomorphic(t.lattice(), suplat_concept_tensor(&w, &v).lattice()));
        let h = universal_map(&t, &t.eps1(), &t.eps2()).unwrap();
        let id = SupMap::identity(t.lattice());
        prop_assert_eq!(h.table(), id.table());
        if v.is_distributive() && w.is_distributive() {
            prop_assert_eq!(t.lattice().len(), downsets_of_irreducible_product(&v, &w));
        }
    }
}
