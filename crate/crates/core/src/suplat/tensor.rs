//! The concept tensor of lattices, `V ⊗ W = 𝔹(F(V) ⊗ F(W))`, after Wille.
//!
//! Elements are concepts of the direct product of `(V,V,≤)` and `(W,W,≤)`.
//! The embeddings are `ε₁(x)` with extent `{(w,z) | w ≤ x or z = 0}` and
//! `ε₂(y)` with extent `{(w,z) | z ≤ y or w = 0}`; they are the attribute
//! concepts of `(x,0)` and `(0,y)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bits::Bits;
use crate::concepts::ConceptLattice;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::monoidal::{concept_tensor, PairIndexMap};
use crate::suplat::functor::{concept_functor_obj, concept_lattice, context_functor_obj};
use crate::suplat::lattice::{FiniteLattice, LatticeId};
use crate::suplat::supmap::SupMap;

pub struct WilleTensor {
    left: Arc<FiniteLattice>,
    right: Arc<FiniteLattice>,
    context: Arc<FormalContext>,
    concepts: Arc<ConceptLattice>,
    lattice: Arc<FiniteLattice>,
    eps1: Vec<usize>,
    eps2: Vec<usize>,
}

impl fmt::Debug for WilleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WilleTensor({} ⊗ {} = {} elements)", self.left.len(), self.right.len(), self.lattice.len())
    }
}

type TensorCache = Mutex<HashMap<(LatticeId, LatticeId), Arc<WilleTensor>>>;

fn cache() -> &'static TensorCache {
    static CACHE: OnceLock<TensorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `V ⊗ W` with its embeddings, memoised per pair of lattices.
pub fn suplat_concept_tensor(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> Arc<WilleTensor> {
    let key = (v.id(), w.id());
    if let Some(hit) = cache().lock().expect("tensor cache").get(&key) {
        return hit.clone();
    }
    let t = Arc::new(WilleTensor::build(v, w));
    cache().lock().expect("tensor cache").entry(key).or_insert(t).clone()
}

impl WilleTensor {
    fn build(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> WilleTensor {
        let context = Arc::new(concept_tensor(&context_functor_obj(v), &context_functor_obj(w)));
        let concepts = concept_lattice(&context);
        let lattice = concept_functor_obj(&context);
        let p = PairIndexMap::new(v.len(), w.len());
        let eps1 = (0..v.len())
            .map(|x| {
                let ext = Bits::from_indices(
                    p.len(),
                    (0..p.len()).filter(|&k| {
                        let (a, b) = p.split(k);
                        v.leq(a, x) || b == w.bottom()
                    }),
                );
                concepts.index_of_extent(&ext).expect("embedded element is a concept")
            })
            .collect();
        let eps2 = (0..w.len())
            .map(|y| {
                let ext = Bits::from_indices(
                    p.len(),
                    (0..p.len()).filter(|&k| {
                        let (a, b) = p.split(k);
                        w.leq(b, y) || a == v.bottom()
                    }),
                );
                concepts.index_of_extent(&ext).expect("embedded element is a concept")
            })
            .collect();
        WilleTensor { left: v.clone(), right: w.clone(), context, concepts, lattice, eps1, eps2 }
    }

    pub fn left(&self) -> &Arc<FiniteLattice> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteLattice> {
        &self.right
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    /// `F(V) ⊗ F(W)`.
    pub fn context(&self) -> &Arc<FormalContext> {
        &self.context
    }

    pub fn concepts(&self) -> &ConceptLattice {
        &self.concepts
    }

    pub fn pairs(&self) -> PairIndexMap {
        PairIndexMap::new(self.left.len(), self.right.len())
    }

    pub fn eps1(&self) -> SupMap {
        SupMap::new_unchecked(self.left.clone(), self.lattice.clone(), self.eps1.clone())
    }

    pub fn eps2(&self) -> SupMap {
        SupMap::new_unchecked(self.right.clone(), self.lattice.clone(), self.eps2.clone())
    }

    /// `x ∧̄ y = ε₁(x) ∧ ε₂(y)`.
    pub fn owedge(&self, x: usize, y: usize) -> usize {
        self.lattice.meet(self.eps1[x], self.eps2[y])
    }

    /// `x ∧̄ y` from its explicit extent `{(w,z) | (w ≤ x and z ≤ y) or w = 0 or z = 0}`.
    pub fn owedge_explicit(&self, x: usize, y: usize) -> Option<usize> {
        let (v, w) = (&self.left, &self.right);
        let p = self.pairs();
        let ext = Bits::from_indices(
            p.len(),
            (0..p.len()).filter(|&k| {
                let (a, b) = p.split(k);
                (v.leq(a, x) && w.leq(b, y)) || a == v.bottom() || b == w.bottom()
            }),
        );
        self.concepts.index_of_extent(&ext)
    }

    /// `x ∨̄ y = ε₁(x) ∨ ε₂(y)`.
    pub fn ovee(&self, x: usize, y: usize) -> usize {
        self.lattice.join(self.eps1[x], self.eps2[y])
    }

    /// Pairs `(x, y)` in the extent of element `c`.
    pub fn extent_pairs(&self, c: usize) -> Vec<(usize, usize)> {
        let p = self.pairs();
        self.concepts.concept(c).extent().bits().ones().map(|k| p.split(k)).collect()
    }

    /// Pairs `(w, z)` in the intent of element `c`.
    pub fn intent_pairs(&self, c: usize) -> Vec<(usize, usize)> {
        let p = self.pairs();
        self.concepts.concept(c).intent().bits().ones().map(|k| p.split(k)).collect()
    }
}

// --- mutual distributivity ----------------------------------------------

/// A family `(xᵢ, yᵢ)` violating one of the two distributivity equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityFailure {
    pub family: Vec<(usize, usize)>,
    /// 1: `⋁(xᵢ ∧ yᵢ) = ⋀_J (⋁_J x ∨ ⋁_{I∖J} y)`; 2: its order dual.
    pub equation: u8,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for DistributivityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family {:?} breaks equation {}: {} != {}", self.family, self.equation, self.lhs, self.rhs)
    }
}

/// Largest family size tried by [`is_mutually_distributive`].
pub fn default_family_bound(nx: usize, ny: usize) -> usize {
    6.min(nx * ny + 1)
}

fn check_family(l: &FiniteLattice, fam: &[(usize, usize)]) -> Option<DistributivityFailure> {
    let k = fam.len();
    let lhs1 = l.join_all(fam.iter().map(|&(x, y)| l.meet(x, y)));
    let lhs2 = l.meet_all(fam.iter().map(|&(x, y)| l.join(x, y)));
    let mut rhs1 = l.top();
    let mut rhs2 = l.bottom();
    for mask in 0u32..1 << k {
        let inside = |i: usize| mask >> i & 1 == 1;
        let jx = l.join_all((0..k).filter(|&i| inside(i)).map(|i| fam[i].0));
        let jy = l.join_all((0..k).filter(|&i| !inside(i)).map(|i| fam[i].1));
        rhs1 = l.meet(rhs1, l.join(jx, jy));
        let mx = l.meet_all((0..k).filter(|&i| inside(i)).map(|i| fam[i].0));
        let my = l.meet_all((0..k).filter(|&i| !inside(i)).map(|i| fam[i].1));
        rhs2 = l.join(rhs2, l.meet(mx, my));
    }
    if lhs1 != rhs1 {
        return Some(DistributivityFailure { family: fam.to_vec(), equation: 1, lhs: lhs1, rhs: rhs1 });
    }
    if lhs2 != rhs2 {
        return Some(DistributivityFailure { family: fam.to_vec(), equation: 2, lhs: lhs2, rhs: rhs2 });
    }
    None
}

/// Checks both equations for every family drawn as a multiset of pairs from
/// `X × Y`, each pair used at most twice, of size up to `bound`.
pub fn is_mutually_distributive_bounded(
    l: &FiniteLattice,
    xs: &[usize],
    ys: &[usize],
    bound: usize,
) -> std::result::Result<(), DistributivityFailure> {
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let pairs: Vec<(usize, usize)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();

    fn go(
        l: &FiniteLattice,
        pairs: &[(usize, usize)],
        start: usize,
        fam: &mut Vec<(usize, usize)>,
        bound: usize,
    ) -> std::result::Result<(), DistributivityFailure> {
        if let Some(f) = check_family(l, fam) {
            return Err(f);
        }
        if fam.len() == bound {
            return Ok(());
        }
        for p in start..pairs.len() {
            // a pair may repeat once: the next pick starts at p while the
            // current tail differs, or at p + 1 once it has been used twice
            let used = fam.iter().rev().take_while(|&&q| q == pairs[p]).count();
            if used >= 2 {
                continue;
            }
            fam.push(pairs[p]);
            let twice = used + 1 == 2;
            go(l, pairs, if twice { p + 1 } else { p }, fam, bound)?;
            fam.pop();
        }
        Ok(())
    }

    go(l, &pairs, 0, &mut Vec::new(), bound)
}

pub fn is_mutually_distributive(l: &FiniteLattice, xs: &[usize], ys: &[usize]) -> std::result::Result<(), DistributivityFailure> {
    let mut nx = xs.to_vec();
    nx.sort();
    nx.dedup();
    let mut ny = ys.to_vec();
    ny.sort();
    ny.dedup();
    is_mutually_distributive_bounded(l, &nx, &ny, default_family_bound(nx.len(), ny.len()))
}

// --- the universal map --------------------------------------------------

fn check_into(t: &WilleTensor, f: &SupMap, g: &SupMap) -> Result<()> {
    if f.source().id() != t.left.id() || g.source().id() != t.right.id() {
        return Err(Error::DomainMismatch("maps do not start at the tensor factors".into()));
    }
    if f.target().id() != g.target().id() {
        return Err(Error::DomainMismatch("maps land in different lattices".into()));
    }
    Ok(())
}

/// Join form `h(c) = ⋁_{(x,y) ∈ ext c} f(x) ∧ g(y)` and meet form
/// `h(c) = ⋀_{(w,z) ∈ int c} f(w) ∨ g(z)`, as two tables.
pub fn universal_map_forms(t: &WilleTensor, f: &SupMap, g: &SupMap) -> Result<(Vec<usize>, Vec<usize>)> {
    check_into(t, f, g)?;
    let m = f.target();
    let join_form =
        (0..t.lattice.len()).map(|c| m.join_all(t.extent_pairs(c).into_iter().map(|(x, y)| m.meet(f.apply(x), g.apply(y))))).collect();
    let meet_form =
        (0..t.lattice.len()).map(|c| m.meet_all(t.intent_pairs(c).into_iter().map(|(w, z)| m.join(f.apply(w), g.apply(z))))).collect();
    Ok((join_form, meet_form))
}

/// The unique sup-map `h: V₁ ⊗ V₂ → M` with `h(x ∧̄ y) = f(x) ∧ g(y)`.
///
/// Fails with the offending family if the images of `f` and `g` are not
/// mutually distributive, and also if the join and meet forms disagree
/// (which would mean the family bound was too small).
pub fn universal_map(t: &WilleTensor, f: &SupMap, g: &SupMap) -> Result<SupMap> {
    check_into(t, f, g)?;
    let m = f.target();
    if let Err(fail) = is_mutually_distributive(m, f.table(), g.table()) {
        return Err(Error::NotMutuallyDistributive(fail.to_string()));
    }
    let (join_form, meet_form) = universal_map_forms(t, f, g)?;
    if let Some(c) = (0..join_form.len()).find(|&c| join_form[c] != meet_form[c]) {
        return Err(Error::NotMutuallyDistributive(format!(
            "join form and meet form differ at element {c} ({} vs {})",
            join_form[c], meet_form[c]
        )));
    }
    SupMap::new(t.lattice.clone(), m.clone(), join_form)
}

/// [`universal_map`] without the distributivity search, for maps whose
/// images are known to be mutually distributive (composites of embeddings).
pub(crate) fn universal_map_trusted(t: &WilleTensor, f: &SupMap, g: &SupMap) -> SupMap {
    let m = f.target();
    let table =
        (0..t.lattice.len()).map(|c| m.join_all(t.extent_pairs(c).into_iter().map(|(x, y)| m.meet(f.apply(x), g.apply(y))))).collect();
    SupMap::new_unchecked(t.lattice.clone(), m.clone(), table)
}

/// `f ⊗ g`, the unique map with `(f ⊗ g)(x ∧̄ y) = f(x) ∧̄ g(y)`.
pub fn tensor_of_maps(f: &SupMap, g: &SupMap) -> SupMap {
    let src = suplat_concept_tensor(f.source(), g.source());
    let tgt = suplat_concept_tensor(f.target(), g.target());
    let e1 = f.then(&tgt.eps1()).expect("ε₁ starts at the target of f");
    let e2 = g.then(&tgt.eps2()).expect("ε₂ starts at the target of g");
    universal_map_trusted(&src, &e1, &e2)
}

// --- symmetric monoidal structure ---------------------------------------

fn two() -> Arc<FiniteLattice> {
    static TWO: OnceLock<Arc<FiniteLattice>> = OnceLock::new();
    TWO.get_or_init(|| Arc::new(FiniteLattice::two())).clone()
}

/// The unit `2`.
pub fn unit_lattice() -> Arc<FiniteLattice> {
    two()
}

/// `2 → V`, `0 ↦ 0`, `1 ↦ 1`.
fn point(v: &Arc<FiniteLattice>) -> SupMap {
    SupMap::new_unchecked(two(), v.clone(), vec![v.bottom(), v.top()])
}

/// `α: U ⊗ (V ⊗ W) → (U ⊗ V) ⊗ W`, `x ∧̄ (y ∧̄ z) ↦ (x ∧̄ y) ∧̄ z`.
pub fn associator(u: &Arc<FiniteLattice>, v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> SupMap {
    let uv = suplat_concept_tensor(u, v);
    let vw = suplat_concept_tensor(v, w);
    let tgt = suplat_concept_tensor(uv.lattice(), w);
    let src = suplat_concept_tensor(u, vw.lattice());
    let e1 = tgt.eps1();
    let inner = universal_map_trusted(&vw, &uv.eps2().then(&e1).unwrap(), &tgt.eps2());
    universal_map_trusted(&src, &uv.eps1().then(&e1).unwrap(), &inner)
}

/// `α⁻¹: (U ⊗ V) ⊗ W → U ⊗ (V ⊗ W)`.
pub fn associator_inv(u: &Arc<FiniteLattice>, v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> SupMap {
    let uv = suplat_concept_tensor(u, v);
    let vw = suplat_concept_tensor(v, w);
    let tgt = suplat_concept_tensor(u, vw.lattice());
    let src = suplat_concept_tensor(uv.lattice(), w);
    let e2 = tgt.eps2();
    let inner = universal_map_trusted(&uv, &tgt.eps1(), &vw.eps1().then(&e2).unwrap());
    universal_map_trusted(&src, &inner, &vw.eps2().then(&e2).unwrap())
}

/// `σ: V ⊗ W → W ⊗ V`, `x ∧̄ y ↦ y ∧̄ x`.
pub fn symmetry(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> SupMap {
    let src = suplat_concept_tensor(v, w);
    let tgt = suplat_concept_tensor(w, v);
    universal_map_trusted(&src, &tgt.eps2(), &tgt.eps1())
}

/// `ρ: V ⊗ 2 → V`, `x ∧̄ 1 ↦ x`, `x ∧̄ 0 ↦ 0`.
pub fn unitor_right(v: &Arc<FiniteLattice>) -> SupMap {
    universal_map_trusted(&suplat_concept_tensor(v, &two()), &SupMap::identity(v), &point(v))
}

/// `ρ⁻¹ = ε₁: V → V ⊗ 2`.
pub fn unitor_right_inv(v: &Arc<FiniteLattice>) -> SupMap {
    suplat_concept_tensor(v, &two()).eps1()
}

/// `λ: 2 ⊗ V → V`.
pub fn unitor_left(v: &Arc<FiniteLattice>) -> SupMap {
    universal_map_trusted(&suplat_concept_tensor(&two(), v), &point(v), &SupMap::identity(v))
}

pub fn unitor_left_inv(v: &Arc<FiniteLattice>) -> SupMap {
    suplat_concept_tensor(&two(), v).eps2()
}

/// `V → 2`, `x ↦ 1` iff `x ≠ 0`.
pub fn discard(v: &Arc<FiniteLattice>) -> SupMap {
    SupMap::new_unchecked(v.clone(), two(), (0..v.len()).map(|x| usize::from(x != v.bottom())).collect())
}

/// `φ: 𝔹(K₁) ⊗ 𝔹(K₂) → 𝔹(K₁ ⊗ K₂)`, `φ(C) = close(⋃_{(c₁,c₂) ∈ ext C} ext c₁ × ext c₂)`.
pub fn phi_iso(k1: &FormalContext, k2: &FormalContext) -> SupMap {
    let (c1, c2) = (concept_lattice(k1), concept_lattice(k2));
    let t = suplat_concept_tensor(&concept_functor_obj(k1), &concept_functor_obj(k2));
    let prod = crate::monoidal::tensor(crate::monoidal::TensorKind::Concept, k1, k2, 0).expect("concept tensor never fails");
    let cp = concept_lattice(&prod);
    let p = PairIndexMap::new(k1.n_objects(), k2.n_objects());
    let table = (0..t.lattice().len())
        .map(|c| {
            let mut acc = Bits::empty(p.len());
            for (a, b) in t.extent_pairs(c) {
                acc.union_with(&p.product(c1.concept(a).extent().bits(), c2.concept(b).extent().bits()));
            }
            cp.index_of_extent(&prod.close_objects_raw(&acc)).expect("closed set is an extent")
        })
        .collect();
    SupMap::new_unchecked(t.lattice().clone(), concept_functor_obj(&prod), table)
}

/// `(V ⊗ W)* ≅ V* ⊗ W*`: the context of `V* ⊗ W*` is the transpose of the
/// context of `V ⊗ W`, and a concept `(A, B)` goes to `(B, A)`.
/// Returns the isomorphism as a map out of `(V ⊗ W)*`.
pub fn dual_strong_monoidal_check(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> Result<SupMap> {
    let t = suplat_concept_tensor(v, w);
    let td = suplat_concept_tensor(&Arc::new(v.op()), &Arc::new(w.op()));
    // incidence only: cached tensors keep the labels of the first lattice seen with a given order
    if td.context().incidence() != t.context().dual().incidence() {
        return Err(Error::DomainMismatch("F(V*) ⊗ F(W*) is not the transpose of F(V) ⊗ F(W)".into()));
    }
    let table = (0..t.lattice().len())
        .map(|c| {
            td.concepts()
                .index_of_extent(t.concepts().concept(c).intent().bits())
                .ok_or_else(|| Error::DomainMismatch("intent is not an extent of the dual".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SupMap::new_unchecked(Arc::new(t.lattice().op()), td.lattice().clone(), table);
    if !map.is_isomorphism() {
        return Err(Error::DomainMismatch("(V ⊗ W)* → V* ⊗ W* is not an isomorphism".into()));
    }
    Ok(map)
}
