//! The two tensors on contexts.
//!
//! Both share the object carrier `G₁ × G₂` (row-major, see [`PairIndexMap`])
//! and the unit `I`. The concept tensor `K₁ ⊗ K₂` has attributes `M₁ × M₂`
//! and incidence `(g₁,g₂) ▽ (m₁,m₂) ⟺ g₁ I m₁ or g₂ I m₂`. The lattice
//! tensor `K₁ ⊠ K₂` has one attribute per bond `B: K₁ → K₂*` and incidence
//! `(g₁,g₂) ∈ B`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::context::{ContextId, FormalContext};
use crate::error::{Error, Result};
use crate::hom::enumerate_bonds;
use crate::morphism::{check_bond, ContextMorphism};
use crate::relation::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Concept,
    Lattice,
}

impl TensorKind {
    pub fn symbol(self) -> &'static str {
        match self {
            TensorKind::Concept => "⊗",
            TensorKind::Lattice => "⊠",
        }
    }
}

/// `(i, j) ↔ i·right + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairIndexMap {
    pub left: usize,
    pub right: usize,
}

impl PairIndexMap {
    pub fn new(left: usize, right: usize) -> Self {
        PairIndexMap { left, right }
    }

    pub fn len(&self) -> usize {
        self.left * self.right
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.left && j < self.right);
        i * self.right + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right, k % self.right)
    }

    /// `A × B` as a set of flat indices.
    pub fn product(&self, a: &Bits, b: &Bits) -> Bits {
        let mut out = Bits::empty(self.len());
        for i in a.ones() {
            for j in b.ones() {
                out.insert(self.flat(i, j));
            }
        }
        out
    }
}

fn pair_labels(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().flat_map(|x| b.iter().map(move |y| format!("({x},{y})"))).collect()
}

/// `K₁ ⊗ K₂`, the direct product of contexts.
pub fn concept_tensor(k1: &FormalContext, k2: &FormalContext) -> FormalContext {
    let objs = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    let attrs = PairIndexMap::new(k1.n_attributes(), k2.n_attributes());
    FormalContext::from_fn(
        format!("({} ⊗ {})", k1.name(), k2.name()),
        pair_labels(k1.objects(), k2.objects()),
        pair_labels(k1.attributes(), k2.attributes()),
        |g, m| {
            let (g1, g2) = objs.split(g);
            let (m1, m2) = attrs.split(m);
            k1.incident(g1, m1) || k2.incident(g2, m2)
        },
    )
    .expect("pair labels are distinct")
}

/// `K₁ ⊠ K₂`. Attributes are the bonds `K₁ → K₂*` in sorted order, labelled
/// by their rows, e.g. `[10|01]`.
pub fn lattice_tensor(k1: &FormalContext, k2: &FormalContext, max_hom: usize) -> Result<FormalContext> {
    let bonds = enumerate_bonds(k1, &k2.dual(), max_hom)?;
    let objs = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    let rows = (0..objs.len())
        .map(|g| {
            let (g1, g2) = objs.split(g);
            Bits::from_indices(bonds.len(), (0..bonds.len()).filter(|&b| bonds[b].contains(g1, g2)))
        })
        .collect();
    FormalContext::from_rows(
        format!("({} ⊠ {})", k1.name(), k2.name()),
        pair_labels(k1.objects(), k2.objects()),
        bonds.iter().map(Relation::to_key).collect(),
        rows,
    )
}

type TensorCache = Mutex<HashMap<(TensorKind, ContextId, ContextId), Arc<FormalContext>>>;

fn tensor_cache() -> &'static TensorCache {
    static CACHE: OnceLock<TensorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Either tensor, memoised. Factor names do not affect the cache key.
pub fn tensor(kind: TensorKind, k1: &FormalContext, k2: &FormalContext, max_hom: usize) -> Result<Arc<FormalContext>> {
    let key = (kind, k1.id(), k2.id());
    if let Some(hit) = tensor_cache().lock().expect("tensor cache").get(&key) {
        return Ok(hit.clone());
    }
    let t = Arc::new(match kind {
        TensorKind::Concept => concept_tensor(k1, k2),
        TensorKind::Lattice => lattice_tensor(k1, k2, max_hom)?,
    });
    Ok(tensor_cache().lock().expect("tensor cache").entry(key).or_insert(t).clone())
}

/// Hom-enumeration budget used by the structural maps below.
pub const DEFAULT_MAX_HOM: usize = 200_000;

fn t(kind: TensorKind, k1: &FormalContext, k2: &FormalContext) -> Result<Arc<FormalContext>> {
    tensor(kind, k1, k2, DEFAULT_MAX_HOM)
}

/// `(R₁ ⊗ R₂)(g₁,g₂) = close(R₁(g₁) × R₂(g₂))`, and the same for `⊠`.
pub fn tensor_morphism(kind: TensorKind, r1: &ContextMorphism, r2: &ContextMorphism) -> Result<ContextMorphism> {
    let src = t(kind, r1.source(), r2.source())?;
    let tgt = t(kind, r1.target(), r2.target())?;
    let sp = PairIndexMap::new(r1.source().n_objects(), r2.source().n_objects());
    let tp = PairIndexMap::new(r1.target().n_objects(), r2.target().n_objects());
    let rows = (0..sp.len())
        .map(|g| {
            let (g1, g2) = sp.split(g);
            tgt.close_objects_raw(&tp.product(r1.extent().row(g1), r2.extent().row(g2)))
        })
        .collect();
    ContextMorphism::from_extent(src, tgt, Relation::from_rows(tp.len(), rows))
}

/// The morphism `g ↦ close({π(g)})`, checked.
pub(crate) fn reindex(src: Arc<FormalContext>, tgt: Arc<FormalContext>, pi: impl Fn(usize) -> usize) -> Result<ContextMorphism> {
    let bond = Relation::from_rows(tgt.n_attributes(), (0..src.n_objects()).map(|g| tgt.row(pi(g)).clone()).collect());
    check_bond(&src, &tgt, &bond).map_err(|w| Error::InvalidMorphism(format!("structural map: {w}")))?;
    Ok(ContextMorphism::from_bond_unchecked(src, tgt, bond))
}

/// `α: K₁ ⊗ (K₂ ⊗ K₃) → (K₁ ⊗ K₂) ⊗ K₃`, `(g₁,(g₂,g₃)) ↦ close(((g₁,g₂),g₃))`.
/// Under the row-major layout both sides use the same flat index.
pub fn associator(kind: TensorKind, k1: &FormalContext, k2: &FormalContext, k3: &FormalContext) -> Result<ContextMorphism> {
    let src = t(kind, k1, &*t(kind, k2, k3)?)?;
    let tgt = t(kind, &*t(kind, k1, k2)?, k3)?;
    reindex(src, tgt, |g| g)
}

pub fn associator_inv(kind: TensorKind, k1: &FormalContext, k2: &FormalContext, k3: &FormalContext) -> Result<ContextMorphism> {
    let src = t(kind, &*t(kind, k1, k2)?, k3)?;
    let tgt = t(kind, k1, &*t(kind, k2, k3)?)?;
    reindex(src, tgt, |g| g)
}

/// `σ: K₁ ⊗ K₂ → K₂ ⊗ K₁`, `(g₁,g₂) ↦ close((g₂,g₁))`.
pub fn symmetry(kind: TensorKind, k1: &FormalContext, k2: &FormalContext) -> Result<ContextMorphism> {
    let src = t(kind, k1, k2)?;
    let tgt = t(kind, k2, k1)?;
    let sp = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    let tp = PairIndexMap::new(k2.n_objects(), k1.n_objects());
    reindex(src, tgt, |g| {
        let (a, b) = sp.split(g);
        tp.flat(b, a)
    })
}

fn unit() -> FormalContext {
    FormalContext::trivial()
}

/// `ρ: K ⊗ I → K`, `(g,⋆) ↦ close({g})`.
pub fn unitor_right(kind: TensorKind, k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    reindex(t(kind, k, &unit())?, k.clone(), |g| g)
}

pub fn unitor_right_inv(kind: TensorKind, k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    reindex(k.clone(), t(kind, k, &unit())?, |g| g)
}

/// `λ: I ⊗ K → K`, `(⋆,g) ↦ close({g})`, the mirror image of `ρ`.
pub fn unitor_left(kind: TensorKind, k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    reindex(t(kind, &unit(), k)?, k.clone(), |g| g)
}

pub fn unitor_left_inv(kind: TensorKind, k: &Arc<FormalContext>) -> Result<ContextMorphism> {
    reindex(k.clone(), t(kind, &unit(), k)?, |g| g)
}

/// `⊤_K: K → I`, the effect with intent row `R*(⋆) = M`; its bond column is `M'`.
pub fn discard(k: &Arc<FormalContext>) -> ContextMorphism {
    let col = k.extent_of(&Bits::full(k.n_attributes()));
    let bond = Relation::from_fn(k.n_objects(), 1, |g, _| col.contains(g));
    ContextMorphism::from_bond_unchecked(k.clone(), Arc::new(unit()), bond)
}

/// `S_A → S_B` for a plain relation `R ⊆ A × B`: extent rows are `R(a)`.
pub fn rel_embed<S: AsRef<str>>(a: &[S], b: &[S], r: &Relation) -> Result<ContextMorphism> {
    let sa = Arc::new(FormalContext::from_set(a)?);
    let sb = Arc::new(FormalContext::from_set(b)?);
    ContextMorphism::from_extent(sa, sb, r.clone())
}

/// `(K₁ ⊗ K₂)* = K₁* ⊗ K₂*`, compared bit for bit (labels and incidence).
pub fn dual_of_concept_tensor(k1: &FormalContext, k2: &FormalContext) -> bool {
    concept_tensor(k1, k2).dual() == concept_tensor(&k1.dual(), &k2.dual())
}
