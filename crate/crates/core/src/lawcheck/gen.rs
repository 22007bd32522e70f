//! Seeded generators and small exhaustive enumerators.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::hom::enumerate_hom;
use crate::morphism::ContextMorphism;
use crate::relation::Relation;
use crate::suplat::{FiniteLattice, SupMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_objects: usize,
    pub max_attributes: usize,
    pub max_lattice: usize,
    /// Incidence probability, as numerator over denominator.
    pub density: (u32, u32),
    pub trials: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 42, max_objects: 4, max_attributes: 4, max_lattice: 6, density: (1, 2), trials: 100 }
    }
}

/// Hard ceilings on generator sizes.
pub const DESK_MAX_SIDE: usize = 6;
pub const DESK_MAX_LATTICE: usize = 12;

impl GenConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (num, den) = self.density;
        if den == 0 || num > den {
            return Err(Error::Lawcheck(format!("density {num}/{den} is not in [0,1]")));
        }
        if self.trials == 0 || self.max_lattice == 0 || self.max_objects == 0 || self.max_attributes == 0 {
            return Err(Error::Lawcheck("trials, max_objects, max_attributes and max_lattice must be positive".into()));
        }
        if self.max_objects > DESK_MAX_SIDE || self.max_attributes > DESK_MAX_SIDE || self.max_lattice > DESK_MAX_LATTICE {
            return Err(Error::CapExceeded(format!(
                "generator caps {}x{} / lattice {} exceed {DESK_MAX_SIDE}x{DESK_MAX_SIDE} / {DESK_MAX_LATTICE}",
                self.max_objects, self.max_attributes, self.max_lattice
            )));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn coin(rng: &mut ChaCha8Rng, (num, den): (u32, u32)) -> bool {
    rng.gen_ratio(num, den)
}

/// A random context with `1..=max` objects and attributes.
pub fn random_context(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> FormalContext {
    let n_g = rng.gen_range(1..=cfg.max_objects.max(1));
    let n_m = rng.gen_range(1..=cfg.max_attributes.max(1));
    random_context_sized(rng, n_g, n_m, cfg.density)
}

pub fn random_context_sized(rng: &mut ChaCha8Rng, n_g: usize, n_m: usize, density: (u32, u32)) -> FormalContext {
    let rows = (0..n_g).map(|_| Bits::from_indices(n_m, (0..n_m).filter(|_| coin(rng, density)))).collect();
    FormalContext::from_rows("gen", (0..n_g).map(|i| format!("g{i}")).collect(), (0..n_m).map(|i| format!("m{i}")).collect(), rows)
        .expect("generated labels are distinct")
}

/// The least bond containing `seed`: alternately close rows (as intents of
/// the target) and columns (as extents of the source). Bonds are closed under
/// intersection and the full relation is one, so this always terminates in a bond.
pub fn bond_hull(k1: &FormalContext, k2: &FormalContext, seed: Relation) -> Relation {
    let mut b = seed;
    loop {
        let rows: Vec<Bits> = b.rows().iter().map(|r| k2.close_attributes_raw(r)).collect();
        let by_rows = Relation::from_rows(k2.n_attributes(), rows);
        let cols: Vec<Bits> = by_rows.transpose().rows().iter().map(|c| k1.close_objects_raw(c)).collect();
        let next = Relation::from_rows(k1.n_objects(), cols).transpose();
        if next == b {
            return b;
        }
        b = next;
    }
}

/// A random morphism: sampled from the full hom-set when it is small,
/// otherwise the bond hull of a sparse random relation.
pub fn random_morphism(rng: &mut ChaCha8Rng, k1: &Arc<FormalContext>, k2: &Arc<FormalContext>) -> ContextMorphism {
    if k1.n_objects() * k2.n_attributes() <= 12 {
        if let Ok(homs) = enumerate_hom(k1, k2, 5000) {
            return homs.choose(rng).expect("hom-sets are never empty").clone();
        }
    }
    let p = rng.gen_range(0..=3u32);
    let seed = Relation::from_fn(k1.n_objects(), k2.n_attributes(), |_, _| rng.gen_ratio(p, 8));
    let bond = bond_hull(k1, k2, seed);
    ContextMorphism::from_bond(k1.clone(), k2.clone(), bond).expect("bond hull is a bond")
}

/// A complete lattice: the closure system generated by random subsets of a
/// small universe, retried until it has at most `max_lattice` elements.
pub fn random_lattice(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> FiniteLattice {
    loop {
        let universe = rng.gen_range(1..=3);
        let count = rng.gen_range(0..=4);
        let family: Vec<Bits> = (0..count).map(|_| Bits::from_indices(universe, (0..universe).filter(|_| rng.gen_bool(0.5)))).collect();
        let l = FiniteLattice::from_closure_system(universe, &family);
        if l.len() <= cfg.max_lattice {
            return l;
        }
    }
}

/// A random join of the elementary sup-maps `x ↦ (x ≤ a ? 0 : b)`.
pub fn random_supmap(rng: &mut ChaCha8Rng, v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> SupMap {
    let mut table = vec![w.bottom(); v.len()];
    for _ in 0..rng.gen_range(0..=3) {
        let a = rng.gen_range(0..v.len());
        let b = rng.gen_range(0..w.len());
        for (x, t) in table.iter_mut().enumerate() {
            if !v.leq(x, a) {
                *t = w.join(*t, b);
            }
        }
    }
    SupMap::new(v.clone(), w.clone(), table).expect("joins of elementary maps are sup-maps")
}

/// `gen_context(cfg)`: the first context drawn from `cfg.seed`.
pub fn gen_context(cfg: &GenConfig) -> FormalContext {
    random_context(&mut cfg.rng(), cfg)
}

pub fn gen_morphism(cfg: &GenConfig, k1: &Arc<FormalContext>, k2: &Arc<FormalContext>) -> ContextMorphism {
    random_morphism(&mut cfg.rng(), k1, k2)
}

pub fn gen_lattice(cfg: &GenConfig) -> FiniteLattice {
    random_lattice(&mut cfg.rng(), cfg)
}

pub fn gen_supmap(cfg: &GenConfig, v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> SupMap {
    random_supmap(&mut cfg.rng(), v, w)
}

/// Every context with `|G|, |M| ≤ max`, one per isomorphism class (row and
/// column permutations), in a fixed order.
pub fn small_contexts(max: usize) -> Vec<FormalContext> {
    let mut classes: BTreeSet<(usize, usize, Vec<Vec<bool>>)> = BTreeSet::new();
    for n_g in 0..=max {
        for n_m in 0..=max {
            for mask in 0u32..(1 << (n_g * n_m)) {
                let m: Vec<Vec<bool>> = (0..n_g).map(|g| (0..n_m).map(|a| mask >> (g * n_m + a) & 1 == 1).collect()).collect();
                classes.insert((n_g, n_m, canonical(&m, n_m)));
            }
        }
    }
    classes
        .into_iter()
        .map(|(n_g, n_m, m)| {
            FormalContext::new(
                format!("{n_g}x{n_m}"),
                (0..n_g).map(|i| format!("g{i}")).collect(),
                (0..n_m).map(|i| format!("m{i}")).collect(),
                &m,
            )
            .expect("small context")
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(m: &[Vec<bool>], n_m: usize) -> Vec<Vec<bool>> {
    let mut best: Option<Vec<Vec<bool>>> = None;
    for cp in permutations(n_m) {
        let mut rows: Vec<Vec<bool>> = m.iter().map(|r| cp.iter().map(|&c| r[c]).collect()).collect();
        rows.sort();
        if best.as_ref().is_none_or(|b| rows < *b) {
            best = Some(rows);
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::check_bond;

    #[test]
    fn density_extremes() {
        let mut cfg = GenConfig { density: (0, 1), ..GenConfig::default() };
        assert!(gen_context(&cfg).rows().iter().all(Bits::is_empty));
        cfg.density = (1, 1);
        assert!(gen_context(&cfg).rows().iter().all(Bits::is_full));
    }

    #[test]
    fn seed_zero_two_by_two_is_frozen() {
        let cfg = GenConfig { seed: 0, max_objects: 2, max_attributes: 2, ..GenConfig::default() };
        let k = random_context_sized(&mut cfg.rng(), 2, 2, cfg.density);
        assert_eq!(k, random_context_sized(&mut cfg.rng(), 2, 2, cfg.density));
        assert_eq!(crate::io::write_cxt(&k), FROZEN_SEED0);
    }

    const FROZEN_SEED0: &str = "B\ngen\n2\n2\n\ng0\ng1\nm0\nm1\n.X\n.X\n";

    #[test]
    fn hull_is_a_bond() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GenConfig::default();
        for _ in 0..200 {
            let (a, b) = (random_context(&mut rng, &cfg), random_context(&mut rng, &cfg));
            let seed = Relation::from_fn(a.n_objects(), b.n_attributes(), |_, _| rng.gen_bool(0.3));
            let h = bond_hull(&a, &b, seed.clone());
            assert!(check_bond(&a, &b, &h).is_ok());
            assert!(seed.is_subset(&h));
        }
    }

    #[test]
    fn small_context_classes() {
        // 5 with an empty side, 2 of 1x1, 3 each of 1x2 and 2x1, 7 of 2x2
        assert_eq!(small_contexts(2).len(), 20);
    }

    #[test]
    fn generated_supmaps_and_lattices_are_valid() {
        let cfg = GenConfig::default();
        let mut rng = cfg.rng();
        for _ in 0..50 {
            let v = Arc::new(random_lattice(&mut rng, &cfg));
            let w = Arc::new(random_lattice(&mut rng, &cfg));
            assert!(v.len() <= cfg.max_lattice);
            assert!(random_supmap(&mut rng, &v, &w).is_sup_map());
        }
    }
}
