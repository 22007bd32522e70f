use cxtcat::lawcheck::{
    gen_context, gen_lattice, random_context_sized, replay, run_suite, run_suite_with, small_contexts, suite_cases, GenConfig, Kernel,
    Mutation, SUITES,
};
use cxtcat::Error;

fn quick() -> GenConfig {
    GenConfig { trials: 10, ..GenConfig::default() }
}

#[test]
fn every_suite_passes_under_the_sound_kernel() {
    for name in SUITES {
        let r = run_suite(name, &quick()).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(r.laws.iter().all(|l| l.passed > 0), "{r}");
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["category", "monoidal-concept", "disco"] {
        let a = run_suite(name, &quick()).unwrap();
        let b = run_suite(name, &quick()).unwrap();
        assert!(a.same_outcome(&b));
        assert_eq!(a.laws, b.laws);
    }
    let a = run_suite_with("category", &quick(), &Kernel::mutated(Mutation::ComposeNoClosure)).unwrap();
    let b = run_suite_with("category", &quick(), &Kernel::mutated(Mutation::ComposeNoClosure)).unwrap();
    assert!(a.same_outcome(&b));
}

#[test]
fn case_lists_depend_only_on_the_config() {
    let names = |cfg: &GenConfig| suite_cases("category", cfg).unwrap().into_iter().map(|c| c.instance).collect::<Vec<_>>();
    assert_eq!(names(&quick()), names(&quick()));
    assert_ne!(names(&quick()), names(&quick().with_seed(43)));
}

#[test]
fn counterexamples_replay() {
    let kernel = Kernel::mutated(Mutation::ComposeNoClosure);
    let r = run_suite_with("category", &quick(), &kernel).unwrap();
    assert!(!r.all_passed());
    assert_eq!(r.mutation, Some(Mutation::ComposeNoClosure));
    let law = r.failures().next().unwrap();
    let ce = law.counterexample.as_ref().unwrap();
    assert!(replay("category", &quick(), &kernel, &law.law, &ce.instance).unwrap().is_some());
    assert_eq!(replay("category", &quick(), &Kernel::sound(), &law.law, &ce.instance).unwrap(), None);
}

#[test]
fn replay_of_an_unknown_case_is_an_error() {
    let e = replay("category", &quick(), &Kernel::sound(), "no-such-law", "nothing").unwrap_err();
    assert!(matches!(e, Error::Lawcheck(_)));
}

#[test]
fn bad_configs_are_rejected() {
    assert!(matches!(run_suite("no-such-suite", &quick()), Err(Error::Lawcheck(_))));
    assert!(matches!(run_suite("category", &GenConfig { max_objects: 99, ..quick() }), Err(Error::CapExceeded(_))));
    assert!(matches!(run_suite("category", &GenConfig { density: (3, 2), ..quick() }), Err(Error::Lawcheck(_))));
    assert!(matches!(run_suite("category", &GenConfig { trials: 0, ..quick() }), Err(Error::Lawcheck(_))));
}

#[test]
fn equivalence_suite_covers_the_functors() {
    let r = run_suite("equivalence", &quick()).unwrap();
    let laws: Vec<&str> = r.laws.iter().map(|l| l.law.as_str()).collect();
    assert!(laws.iter().any(|l| l.contains("faithful")), "{laws:?}");
}

#[test]
fn category_suite_at_full_strength() {
    let r = run_suite("category", &GenConfig::default().with_trials(1000)).unwrap();
    assert!(r.all_passed(), "{r}");
    assert!(r.notices.is_empty(), "{r}");
}

#[test]
fn generators() {
    let mut rng = GenConfig::default().rng();
    let empty = random_context_sized(&mut rng, 3, 4, (0, 1));
    assert!(empty.incidence().iter().flatten().all(|&b| !b));
    let full = random_context_sized(&mut rng, 3, 4, (1, 1));
    assert!(full.incidence().iter().flatten().all(|&b| b));
    assert_eq!((full.n_objects(), full.n_attributes()), (3, 4));

    let cfg = GenConfig::default();
    assert_eq!(gen_context(&cfg), gen_context(&cfg));
    for seed in 0..50 {
        let cfg = GenConfig { max_lattice: 4, ..GenConfig::default().with_seed(seed) };
        let k = gen_context(&cfg);
        assert!((1..=4).contains(&k.n_objects()) && (1..=4).contains(&k.n_attributes()));
        assert!(gen_lattice(&cfg).len() <= 4);
    }
    // classes per shape: five empty shapes, 2 at 1x1, 3 at 1x2 and at 2x1, 7 at 2x2
    assert_eq!(small_contexts(2).len(), 20);
}
