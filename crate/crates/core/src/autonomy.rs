//! Currying for the lattice tensor.
//!
//! A bond `A ⊠ B → C*` and a bond `A → (B ⊠ C)*` are both ternary relations
//! on `G_A × G_B × G_C` whose one-dimensional fibers are extents, so the
//! bijection `hom(A ⊠ B, C*) ≅ hom(A, (B ⊠ C)*)` is a re-reading of the same
//! bits. [`curry`] and [`uncurry`] still validate their output.

use std::sync::Arc;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::hom::enumerate_hom;
use crate::monoidal::{tensor, tensor_morphism, TensorKind, DEFAULT_MAX_HOM};
use crate::morphism::{dual_morphism, identity, ContextMorphism};
use crate::relation::Relation;
use crate::suplat::{concept_functor_obj, find_isomorphism};

fn boxed(a: &FormalContext, b: &FormalContext) -> Result<Arc<FormalContext>> {
    tensor(TensorKind::Lattice, a, b, DEFAULT_MAX_HOM)
}

/// `A ⊠ B` and `C*`, the ends of the uncurried side.
pub fn uncurried_ends(a: &FormalContext, b: &FormalContext, c: &FormalContext) -> Result<(Arc<FormalContext>, Arc<FormalContext>)> {
    Ok((boxed(a, b)?, Arc::new(c.dual())))
}

/// `A` and `(B ⊠ C)*`, the ends of the curried side.
pub fn curried_ends(a: &FormalContext, b: &FormalContext, c: &FormalContext) -> Result<(Arc<FormalContext>, Arc<FormalContext>)> {
    Ok((Arc::new(a.clone()), Arc::new(boxed(b, c)?.dual())))
}

/// `hom(A ⊠ B, C*) → hom(A, (B ⊠ C)*)`.
pub fn curry(a: &FormalContext, b: &FormalContext, c: &FormalContext, m: &ContextMorphism) -> Result<ContextMorphism> {
    let (src, tgt) = uncurried_ends(a, b, c)?;
    if m.source_id() != src.id() || m.target_id() != tgt.id() {
        return Err(Error::DomainMismatch("curry expects a morphism A ⊠ B → C*".into()));
    }
    let (nb, nc) = (b.n_objects(), c.n_objects());
    let bond = Relation::from_fn(a.n_objects(), nb * nc, |x, yz| m.bond().contains(x * nb + yz / nc, yz % nc));
    let (src, tgt) = curried_ends(a, b, c)?;
    ContextMorphism::from_bond(src, tgt, bond)
}

/// `hom(A, (B ⊠ C)*) → hom(A ⊠ B, C*)`.
pub fn uncurry(a: &FormalContext, b: &FormalContext, c: &FormalContext, m: &ContextMorphism) -> Result<ContextMorphism> {
    let (src, tgt) = curried_ends(a, b, c)?;
    if m.source_id() != src.id() || m.target_id() != tgt.id() {
        return Err(Error::DomainMismatch("uncurry expects a morphism A → (B ⊠ C)*".into()));
    }
    let (nb, nc) = (b.n_objects(), c.n_objects());
    let bond = Relation::from_fn(a.n_objects() * nb, nc, |xy, z| m.bond().contains(xy / nb, (xy % nb) * nc + z));
    let (src, tgt) = uncurried_ends(a, b, c)?;
    ContextMorphism::from_bond(src, tgt, bond)
}

/// Both hom-sets, enumerated, with `curried[table[i]] == curry(uncurried[i])`.
#[derive(Clone, Debug)]
pub struct StarAutonomyBijection {
    pub uncurried: Vec<ContextMorphism>,
    pub curried: Vec<ContextMorphism>,
    pub table: Vec<usize>,
}

pub fn star_autonomy_bijection(a: &FormalContext, b: &FormalContext, c: &FormalContext, max: usize) -> Result<StarAutonomyBijection> {
    let (s1, t1) = uncurried_ends(a, b, c)?;
    let (s2, t2) = curried_ends(a, b, c)?;
    let uncurried = enumerate_hom(&s1, &t1, max)?;
    let curried = enumerate_hom(&s2, &t2, max)?;
    if uncurried.len() != curried.len() {
        return Err(Error::InvalidMorphism(format!(
            "hom(A⊠B, C*) has {} elements but hom(A, (B⊠C)*) has {}",
            uncurried.len(),
            curried.len()
        )));
    }
    let mut table = Vec::with_capacity(uncurried.len());
    let mut hit = vec![false; curried.len()];
    for m in &uncurried {
        let image = curry(a, b, c, m)?;
        let j = curried
            .iter()
            .position(|n| *n == image)
            .ok_or_else(|| Error::InvalidMorphism("curried bond missing from enumeration".into()))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::InvalidMorphism("currying is not injective".into()));
        }
        table.push(j);
    }
    Ok(StarAutonomyBijection { uncurried, curried, table })
}

/// Naturality in `A`: `curry(m ∘ (f ⊠ id_B)) = curry(m) ∘ f` for `f: A' → A`.
pub fn natural_in_first(b: &Arc<FormalContext>, c: &FormalContext, m: &ContextMorphism, f: &ContextMorphism) -> Result<bool> {
    let a = f.target();
    let lhs = curry(f.source(), b, c, &m.compose(&tensor_morphism(TensorKind::Lattice, f, &identity(b))?)?)?;
    let rhs = curry(a, b, c, m)?.compose(f)?;
    Ok(lhs == rhs)
}

/// Naturality in `B`: `curry(m ∘ (id_A ⊠ h)) = (h ⊠ id_C)* ∘ curry(m)` for `h: B' → B`.
pub fn natural_in_second(a: &Arc<FormalContext>, c: &Arc<FormalContext>, m: &ContextMorphism, h: &ContextMorphism) -> Result<bool> {
    let b = h.target();
    let lhs = curry(a, h.source(), c, &m.compose(&tensor_morphism(TensorKind::Lattice, &identity(a), h)?)?)?;
    let twist = dual_morphism(&tensor_morphism(TensorKind::Lattice, h, &identity(c))?);
    let rhs = twist.compose(&curry(a, b, c, m)?)?;
    Ok(lhs == rhs)
}

/// Naturality in `C`: `curry(g* ∘ m) = (id_B ⊠ g)* ∘ curry(m)` for `g: C' → C`.
pub fn natural_in_third(a: &Arc<FormalContext>, b: &Arc<FormalContext>, m: &ContextMorphism, g: &ContextMorphism) -> Result<bool> {
    let c = g.target();
    let lhs = curry(a, b, g.source(), &dual_morphism(g).compose(m)?)?;
    let twist = dual_morphism(&tensor_morphism(TensorKind::Lattice, &identity(b), g)?);
    let rhs = twist.compose(&curry(a, b, c, m)?)?;
    Ok(lhs == rhs)
}

/// Outcome of looking for `K₁, K₂` with `𝔹(K₁* ⊠ K₂*) ≇ 𝔹((K₁ ⊠ K₂)*)`.
#[derive(Clone, Debug)]
pub enum CompactClosureSearch {
    /// The first pair (smallest total size first) whose lattices differ.
    Witness {
        left: String,
        right: String,
        sizes: (usize, usize),
    },
    Exhausted {
        pairs_checked: usize,
        skipped: usize,
    },
}

/// Tries every ordered pair from `pool`, smallest `|G|+|M|` sums first.
/// Pairs whose tensors exceed `max_hom` are skipped and counted.
pub fn compact_closure_search(pool: &[FormalContext], max_hom: usize) -> CompactClosureSearch {
    let mut pairs: Vec<(usize, usize)> = (0..pool.len()).flat_map(|i| (0..pool.len()).map(move |j| (i, j))).collect();
    let size = |k: &FormalContext| k.n_objects() + k.n_attributes();
    pairs.sort_by_key(|&(i, j)| (size(&pool[i]) + size(&pool[j]), i, j));
    let (mut checked, mut skipped) = (0, 0);
    for (i, j) in pairs {
        let (k1, k2) = (&pool[i], &pool[j]);
        let both = tensor(TensorKind::Lattice, &k1.dual(), &k2.dual(), max_hom)
            .and_then(|l| tensor(TensorKind::Lattice, k1, k2, max_hom).map(|r| (l, r)));
        let Ok((l, r)) = both else {
            skipped += 1;
            continue;
        };
        checked += 1;
        let lhs = concept_functor_obj(&l);
        let rhs = concept_functor_obj(&r.dual());
        if lhs.len() != rhs.len() || find_isomorphism(&lhs, &rhs).is_none() {
            return CompactClosureSearch::Witness {
                left: k1.name().to_string(),
                right: k2.name().to_string(),
                sizes: (lhs.len(), rhs.len()),
            };
        }
    }
    CompactClosureSearch::Exhausted { pairs_checked: checked, skipped }
}
