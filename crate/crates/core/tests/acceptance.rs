//! The acceptance criteria, run in order, one line per criterion.
//!
//! Built with `harness = false`: `cargo test --test acceptance` prints every
//! line and exits non-zero if any criterion fails or overruns its time budget.

use std::collections::BTreeSet;
use std::error::Error as StdError;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cxtcat::autonomy::{
    compact_closure_search, natural_in_first, natural_in_second, natural_in_third, star_autonomy_bijection, CompactClosureSearch,
};
use cxtcat::concepts::{brute_force_extents, next_closure_extents};
use cxtcat::disco::{entails, interpret, lattice_meaning, reduce, ProtoType, TensorState};
use cxtcat::hom::enumerate_hom;
use cxtcat::lawcheck::{
    random_context, random_lattice, random_morphism, random_supmap, replay, run_suite, run_suite_with, small_contexts, GenConfig, Kernel,
    LawReport, Mutation,
};
use cxtcat::monoidal::{self, DEFAULT_MAX_HOM};
use cxtcat::morphism::{bond_compose, check_bond, compose, identity, is_compatible_relation};
use cxtcat::suplat::tensor::{self as st, universal_map_forms};
use cxtcat::suplat::{
    concept_functor_mor, concept_functor_obj, context_functor_obj, enumerate_sup_maps, find_isomorphism, is_mutually_distributive,
    is_order_isomorphism, phi_iso, suplat_concept_tensor, tensor_of_maps, unit_iso, universal_map, FiniteLattice, SupMap,
};
use cxtcat::{fixtures, Bits, ConceptLattice, FormalContext, Relation, TensorKind};
use rand::seq::SliceRandom;

type Checked = Result<String, Box<dyn StdError>>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Box<dyn StdError>> {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn suite_clean(r: &LawReport, required: &[&str]) -> Result<usize, Box<dyn StdError>> {
    for law in required {
        let l = r.laws.iter().find(|l| l.law == *law).ok_or_else(|| format!("{}: law {law} missing", r.suite))?;
        ensure(l.passed > 0, || format!("{}: law {law} never ran", r.suite))?;
    }
    if let Some(l) = r.failures().next() {
        let ce = l.counterexample.as_ref().map(|c| format!("{} ({})", c.instance, c.message)).unwrap_or_default();
        return Err(format!("{}: {} failed at {ce}", r.suite, l.law).into());
    }
    ensure(r.notices.is_empty(), || format!("{}: skipped instances: {:?}", r.suite, r.notices))?;
    Ok(r.laws.iter().map(|l| l.passed).sum())
}

fn powerset_law() -> Checked {
    for n in 0..=4 {
        let k = fixtures::s(n);
        let l = ConceptLattice::of(&k);
        ensure(l.len() == 1 << n, || format!("S{n} has {} concepts", l.len()))?;
        let extents: BTreeSet<Vec<usize>> = l.concepts().iter().map(|c| c.extent().bits().to_vec()).collect();
        let subsets: BTreeSet<Vec<usize>> = Bits::all_subsets(n).map(|b| b.to_vec()).collect();
        ensure(extents == subsets, || format!("S{n}: extents are not all subsets"))?;
        for i in 0..l.len() {
            for j in 0..l.len() {
                let sub = l.concept(i).extent().bits().is_subset(l.concept(j).extent().bits());
                ensure(l.leq(i, j) == sub, || format!("S{n}: order differs from inclusion at {i},{j}"))?;
            }
        }
    }
    Ok("2^n concepts ordered by inclusion for n = 0..4".into())
}

fn animals_fixture() -> Checked {
    let k = fixtures::animals();
    let l = ConceptLattice::of(&k);
    ensure(l.len() == 10, || format!("{} concepts", l.len()))?;
    let family: BTreeSet<BTreeSet<&str>> =
        l.concepts().iter().map(|c| c.extent().bits().ones().map(|g| k.objects()[g].as_str()).collect()).collect();
    let expected: BTreeSet<BTreeSet<&str>> = [
        &[][..],
        &["Cat"],
        &["Dog"],
        &["Kitten"],
        &["Puppy"],
        &["Cat", "Dog"],
        &["Cat", "Kitten"],
        &["Dog", "Puppy"],
        &["Kitten", "Puppy"],
        &["Cat", "Dog", "Kitten", "Puppy"],
    ]
    .iter()
    .map(|s| s.iter().copied().collect())
    .collect();
    ensure(family == expected, || format!("extent family {family:?}"))?;
    let mut nc = next_closure_extents(&k);
    let mut bf = brute_force_extents(&k);
    nc.sort_by_key(|b| b.to_vec());
    bf.sort_by_key(|b| b.to_vec());
    ensure(nc == bf, || "NextClosure disagrees with closing every subset".into())?;
    Ok("10 concepts, extent family and NextClosure match the oracle".into())
}

fn category_laws() -> Checked {
    let r = run_suite("category", &GenConfig::default().with_seed(42).with_trials(1000))?;
    let n = suite_clean(&r, &["associativity", "identity", "representations", "composite-is-morphism", "hom-lattice"])?;
    Ok(format!("exhaustive <=2x2 plus 1000 trials at <=4x4, {n} cases"))
}

fn bonds_and_moshier() -> Checked {
    let classes: Vec<Arc<FormalContext>> = small_contexts(2).into_iter().map(Arc::new).collect();
    let homs: Vec<Vec<Vec<_>>> = classes
        .iter()
        .map(|a| classes.iter().map(|b| enumerate_hom(a, b, DEFAULT_MAX_HOM)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let mut composites = 0usize;
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            for k in 0..classes.len() {
                for r in &homs[i][j] {
                    for s in &homs[j][k] {
                        let direct = compose(s, r)?;
                        let via_bonds = bond_compose(&classes[j], s.bond(), r.bond());
                        ensure(*direct.bond() == via_bonds, || format!("bond composite differs on classes {i},{j},{k}"))?;
                        composites += 1;
                    }
                }
            }
        }
    }
    let mut matrices = 0usize;
    for a in classes.iter().filter(|k| k.n_objects() == 2) {
        for b in classes.iter().filter(|k| k.n_attributes() == 2) {
            for mask in 0u32..16 {
                let m = Relation::from_fn(2, 2, |g, n| mask >> (2 * g + n) & 1 == 1);
                let compatible = is_compatible_relation(a, b, &m).is_ok();
                ensure(compatible == check_bond(a, b, &m).is_ok(), || format!("compatibility differs from bond check on mask {mask}"))?;
                matrices += 1;
            }
        }
    }
    Ok(format!("{composites} composites agree, {matrices} matrices classified alike"))
}

fn equivalence_with_suplat() -> Checked {
    let pool: Vec<Arc<FormalContext>> = fixtures::pool().into_iter().map(Arc::new).collect();
    ensure(pool.len() >= 6, || "pool too small".into())?;
    for a in &pool {
        for b in &pool {
            let homs = enumerate_hom(a, b, DEFAULT_MAX_HOM)?;
            let maps = enumerate_sup_maps(&concept_functor_obj(a), &concept_functor_obj(b), DEFAULT_MAX_HOM)?;
            ensure(homs.len() == maps.len(), || format!("{} -> {}: {} bonds, {} sup-maps", a.name(), b.name(), homs.len(), maps.len()))?;
        }
    }
    let cfg = GenConfig { max_lattice: 6, ..GenConfig::default() };
    let mut rng = cfg.rng();
    let lattices: Vec<Arc<FiniteLattice>> = (0..60).map(|_| Arc::new(random_lattice(&mut rng, &cfg))).collect();
    let mut shapes = BTreeSet::new();
    for v in &lattices {
        ensure(v.len() <= 6, || format!("generated a lattice of {} elements", v.len()))?;
        let u = unit_iso(v);
        ensure(u.is_isomorphism(), || format!("unit is not an isomorphism on {:?}", v.leq_matrix()))?;
        let fv = concept_functor_obj(&context_functor_obj(v));
        ensure(is_order_isomorphism(v, &fv, u.table()), || "unit is not an order isomorphism".into())?;
        shapes.insert(v.len());
    }
    Ok(format!("{} pool pairs fully faithful, {} lattices (sizes {:?}) with V = B(F(V))", pool.len() * pool.len(), lattices.len(), shapes))
}

fn smc_suites() -> Checked {
    let cfg = GenConfig::default();
    let common = ["pentagon", "triangle", "hexagon", "symmetry-involution", "associator-naturality"];
    let mut total = 0;
    for suite in ["monoidal-concept", "monoidal-lattice"] {
        let r = run_suite(suite, &cfg)?;
        let mut required = common.to_vec();
        required.extend(["symmetry-naturality", "unitor-naturality", "bifunctor"]);
        total += suite_clean(&r, &required)?;
    }
    let r = run_suite("suplat", &cfg)?;
    let mut required = common.to_vec();
    required.push("naturality");
    total += suite_clean(&r, &required)?;
    Ok(format!("concept, lattice and sup-lattice tensors: {total} cases"))
}

fn unit_laws() -> Checked {
    let unit = Arc::new(FormalContext::trivial());
    let mut count = 0;
    for (kind, pool) in [(TensorKind::Concept, fixtures::pool()), (TensorKind::Lattice, fixtures::small_pool())] {
        for k in pool.into_iter().map(Arc::new) {
            let rho = concept_functor_mor(&monoidal::unitor_right(kind, &k)?);
            let lambda = concept_functor_mor(&monoidal::unitor_left(kind, &k)?);
            ensure(rho.is_isomorphism() && lambda.is_isomorphism(), || {
                format!("unitor on {} {} I is not invertible", k.name(), kind.symbol())
            })?;
            let prod = monoidal::tensor(kind, &k, &unit, DEFAULT_MAX_HOM)?;
            let iso = find_isomorphism(&concept_functor_obj(&prod), &concept_functor_obj(&k));
            ensure(iso.is_some(), || format!("no isomorphism B({} {} I) -> B({})", k.name(), kind.symbol(), k.name()))?;
            count += 1;
        }
    }
    let lattices = [FiniteLattice::two(), FiniteLattice::chain(3), FiniteLattice::diamond(), FiniteLattice::m3(), FiniteLattice::n5()];
    for v in lattices.into_iter().map(Arc::new) {
        let (r, l) = (st::unitor_right(&v), st::unitor_left(&v));
        ensure(r.is_isomorphism() && l.is_isomorphism(), || format!("V (x) 2 -> V not invertible for {} elements", v.len()))?;
        ensure(is_order_isomorphism(r.source(), &v, r.table()), || "right unitor is not an order isomorphism".into())?;
        count += 1;
    }
    let two = Arc::new(FiniteLattice::two());
    let t = suplat_concept_tensor(&two, &two);
    let r = st::unitor_right(&two);
    ensure(t.lattice().len() == 2 && r.is_isomorphism(), || "2 (x) 2 is not 2".into())?;
    Ok(format!("{} explicit unit isomorphisms", count + 1))
}

fn universal_property() -> Checked {
    let cfg = GenConfig { max_lattice: 4, ..GenConfig::default() };
    let mut rng = cfg.rng();
    let (mut counted, mut rejected, mut attempts) = (0, 0, 0);
    while counted < 20 {
        attempts += 1;
        ensure(attempts <= 2000, || format!("only {counted} distributive pairs in 2000 draws"))?;
        let v1 = Arc::new(random_lattice(&mut rng, &cfg));
        let v2 = Arc::new(random_lattice(&mut rng, &cfg));
        let m = Arc::new(random_lattice(&mut rng, &cfg));
        let f = random_supmap(&mut rng, &v1, &m);
        let g = random_supmap(&mut rng, &v2, &m);
        let t = suplat_concept_tensor(&v1, &v2);
        let (x_img, y_img): (Vec<usize>, Vec<usize>) = (t.eps1().table().to_vec(), t.eps2().table().to_vec());
        ensure(is_mutually_distributive(t.lattice(), &x_img, &y_img).is_ok(), || "embedding images are not mutually distributive".into())?;
        if is_mutually_distributive(&m, f.table(), g.table()).is_err() {
            rejected += 1;
            continue;
        }
        let h = universal_map(&t, &f, &g)?;
        for x in 0..v1.len() {
            for y in 0..v2.len() {
                ensure(h.apply(t.owedge(x, y)) == m.meet(f.apply(x), g.apply(y)), || format!("h(x wedge y) wrong at {x},{y}"))?;
            }
        }
        let (join_form, meet_form) = universal_map_forms(&t, &f, &g)?;
        ensure(join_form == meet_form, || "join form and meet form differ".into())?;
        let agreeing: Vec<SupMap> = enumerate_sup_maps(t.lattice(), &m, DEFAULT_MAX_HOM)?
            .into_iter()
            .filter(|k| (0..v1.len()).all(|x| (0..v2.len()).all(|y| k.apply(t.owedge(x, y)) == m.meet(f.apply(x), g.apply(y)))))
            .collect();
        ensure(agreeing.len() == 1 && agreeing[0] == h, || format!("{} sup-maps agree on all wedges", agreeing.len()))?;
        counted += 1;
    }
    Ok(format!("{counted} distributive pairs checked ({rejected} non-distributive draws skipped)"))
}

fn phi_naturality() -> Checked {
    let cfg = GenConfig { max_objects: 3, max_attributes: 3, ..GenConfig::default() };
    let mut rng = cfg.rng();
    let unit = FormalContext::trivial();
    ensure(phi_iso(&unit, &unit).is_isomorphism() && concept_functor_obj(&unit).len() == 2, || "phi on I, I".into())?;
    for trial in 0..100 {
        let ks: Vec<Arc<FormalContext>> = (0..4).map(|_| Arc::new(random_context(&mut rng, &cfg))).collect();
        let r1 = random_morphism(&mut rng, &ks[0], &ks[2]);
        let r2 = random_morphism(&mut rng, &ks[1], &ks[3]);
        let (src, tgt) = (phi_iso(&ks[0], &ks[1]), phi_iso(&ks[2], &ks[3]));
        ensure(src.is_isomorphism() && tgt.is_isomorphism(), || format!("trial {trial}: phi is not an isomorphism"))?;
        let tm = monoidal::tensor_morphism(TensorKind::Concept, &r1, &r2)?;
        let lhs = tensor_of_maps(&concept_functor_mor(&r1), &concept_functor_mor(&r2)).then(&tgt)?;
        let rhs = src.then(&concept_functor_mor(&tm))?;
        ensure(lhs == rhs, || format!("trial {trial}: naturality square does not commute"))?;
    }
    Ok("100 seeded pairs".into())
}

fn star_autonomy() -> Checked {
    let pool: Vec<Arc<FormalContext>> =
        [FormalContext::trivial(), fixtures::s(2), fixtures::chain_context(2)].into_iter().map(Arc::new).collect();
    let mut rng = GenConfig::default().rng();
    let (mut triples, mut squares) = (0, 0);
    for a in &pool {
        for b in &pool {
            for c in &pool {
                let bij = star_autonomy_bijection(a, b, c, DEFAULT_MAX_HOM)?;
                triples += 1;
                for m in bij.uncurried.choose_multiple(&mut rng, 2) {
                    for other in &pool {
                        let f = enumerate_hom(other, a, DEFAULT_MAX_HOM)?.choose(&mut rng).cloned().ok_or("empty hom")?;
                        let h = enumerate_hom(other, b, DEFAULT_MAX_HOM)?.choose(&mut rng).cloned().ok_or("empty hom")?;
                        let g = enumerate_hom(other, c, DEFAULT_MAX_HOM)?.choose(&mut rng).cloned().ok_or("empty hom")?;
                        ensure(natural_in_first(b, c, m, &f)?, || format!("not natural in A at {} {} {}", a.name(), b.name(), c.name()))?;
                        ensure(natural_in_second(a, c, m, &h)?, || format!("not natural in B at {} {} {}", a.name(), b.name(), c.name()))?;
                        ensure(natural_in_third(a, b, m, &g)?, || format!("not natural in C at {} {} {}", a.name(), b.name(), c.name()))?;
                        squares += 3;
                    }
                }
            }
        }
    }
    let search = match compact_closure_search(&fixtures::small_pool(), DEFAULT_MAX_HOM) {
        CompactClosureSearch::Witness { left, right, sizes } => format!("witness {left} vs {right}, {} vs {} concepts", sizes.0, sizes.1),
        CompactClosureSearch::Exhausted { pairs_checked, skipped } => format!("no witness in {pairs_checked} pairs ({skipped} skipped)"),
    };
    Ok(format!("{triples} triples in bijection, {squares} naturality squares, {search}"))
}

fn disco_fixture() -> Checked {
    let lex = fixtures::toy_lexicon();
    let words = ["Alice", "likes", "Bob"];
    let s = ProtoType::basic("s");
    let types: Vec<ProtoType> = words.iter().map(|w| Ok(lex.entry(w)?.ty.clone())).collect::<cxtcat::Result<_>>()?;
    let witness = reduce(&types, &s)?;
    ensure(witness.steps.len() == 2, || format!("{} contractions", witness.steps.len()))?;
    let meaning = interpret(&lex, &words, &s)?;
    let k = lex.context("s")?;
    let cl = ConceptLattice::of(k);
    let index = cl.index_of_extent(meaning.state.extent()).ok_or("meaning is not an extent")?;
    ensure(index == lattice_meaning(&lex, &words, &meaning.witness)?, || "context side and lattice side disagree".into())?;

    let state = meaning.state.to_morphism()?;
    let scalar = compose(&monoidal::discard(k), &state)?;
    let nonzero = *meaning.state.extent() != k.close_objects_raw(&Bits::empty(k.n_objects()));
    ensure((scalar == identity(state.source())) == nonzero, || "discarding does not test for the bottom meaning".into())?;

    // raise the verb to the top state: the meaning can only grow
    let mut bigger = lex.clone();
    let verb = lex.entry("likes")?;
    bigger.insert("likes".into(), verb.ty.clone(), TensorState::top(verb.state.factors().to_vec())?)?;
    let grown = interpret(&bigger, &words, &s)?;
    ensure(meaning.state.leq(&grown.state)? && entails(&meaning.concept()?, &grown.concept()?)?, || "meaning shrank".into())?;

    let r = run_suite("disco", &GenConfig::default())?;
    let n = suite_clean(&r, &["interpretation-invariance", "monotonicity", "discarding", "reduction-soundness"])?;
    Ok(format!("2 contractions, extent {:?}, {n} seeded disco cases", meaning.state.labels()))
}

fn mutations() -> Checked {
    let cfg = GenConfig::default();
    let mut caught = Vec::new();
    for m in Mutation::ALL {
        let kernel = Kernel::mutated(m);
        let mut by = Vec::new();
        for suite in ["category", "monoidal-concept", "equivalence", "disco"] {
            let r = run_suite_with(suite, &cfg, &kernel)?;
            let first = r.failures().next().cloned();
            if let Some(l) = first {
                let ce = l.counterexample.clone().ok_or("failure without counterexample")?;
                let again = replay(suite, &cfg, &kernel, &l.law, &ce.instance)?;
                ensure(again.is_some(), || format!("{m}: counterexample for {} does not replay", l.law))?;
                let sound = replay(suite, &cfg, &Kernel::sound(), &l.law, &ce.instance)?;
                ensure(sound.is_none(), || format!("{m}: counterexample for {} also fails the sound kernel", l.law))?;
                by.push(format!("{suite}/{}", l.law));
            }
        }
        ensure(!by.is_empty(), || format!("{m} not detected"))?;
        caught.push(format!("{m} by {}", by.join(", ")));
    }
    Ok(caught.join("; "))
}

type Criterion = (&'static str, u64, fn() -> Checked);

const CRITERIA: [Criterion; 12] = [
    ("powerset law", 1, powerset_law),
    ("animals fixture", 1, animals_fixture),
    ("category laws", 30, category_laws),
    ("bonds and Moshier compatibility", 30, bonds_and_moshier),
    ("equivalence with sup-lattices", 60, equivalence_with_suplat),
    ("symmetric monoidal suites", 120, smc_suites),
    ("unit laws", 10, unit_laws),
    ("universal property", 60, universal_property),
    ("phi naturality", 60, phi_naturality),
    ("star-autonomy", 120, star_autonomy),
    ("disco fixture", 10, disco_fixture),
    ("mutation sensitivity", 120, mutations),
];

fn main() -> ExitCode {
    // `cargo test -- --list` and filters come through here too
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for (i, (name, budget, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*budget);
        let (status, detail) = match outcome {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("over the {budget} s budget; {d}")),
            Err(e) => ("FAIL", e.to_string()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name} ({:.2} s): {detail}", i + 1, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
