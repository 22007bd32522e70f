//! The equivalence between contexts and sup-lattices: `𝔹` one way, `F` the other.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bits::Bits;
use crate::concepts::ConceptLattice;
use crate::context::{ContextId, FormalContext};
use crate::error::{Error, Result};
use crate::morphism::{ChuPair, ContextMorphism};
use crate::relation::Relation;
use crate::suplat::lattice::FiniteLattice;
use crate::suplat::supmap::SupMap;

type Cache = Mutex<HashMap<ContextId, (Arc<ConceptLattice>, Arc<FiniteLattice>)>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(k: &FormalContext) -> (Arc<ConceptLattice>, Arc<FiniteLattice>) {
    if let Some(hit) = cache().lock().expect("concept cache").get(&k.id()) {
        return hit.clone();
    }
    let cl = Arc::new(ConceptLattice::of(k));
    let fl = Arc::new(FiniteLattice::from_concepts(k, &cl));
    cache().lock().expect("concept cache").entry(k.id()).or_insert((cl, fl)).clone()
}

/// `𝔹(K)` with its concepts, memoised per context.
pub fn concept_lattice(k: &FormalContext) -> Arc<ConceptLattice> {
    cached(k).0
}

/// `𝔹(K)` as a bare lattice; element `i` is concept `i` of [`concept_lattice`].
pub fn concept_functor_obj(k: &FormalContext) -> Arc<FiniteLattice> {
    cached(k).1
}

/// `𝔹(R)(A, A') = (close(R(A)), R(A)')`.
pub fn concept_functor_mor(r: &ContextMorphism) -> SupMap {
    let (k1, k2) = (r.source(), r.target());
    let (c1, l1) = cached(k1);
    let (c2, l2) = cached(k2);
    let table = c1
        .concepts()
        .iter()
        .map(|c| {
            let img = k2.close_objects_raw(&r.extent().image(c.extent().bits()));
            c2.index_of_extent(&img).expect("closed image is an extent")
        })
        .collect();
    SupMap::new_unchecked(l1, l2, table)
}

/// `F(V) = (V, V, ≤)`.
pub fn context_functor_obj(v: &FiniteLattice) -> FormalContext {
    FormalContext::from_fn(format!("F[{}]", v.id()), v.labels().to_vec(), v.labels().to_vec(), |x, y| v.leq(x, y))
        .expect("lattice labels are distinct")
}

/// `F(f)`: extent rows `v ↦ ↓f(v)`, intent rows `w ↦ ↑f*(w)`; the Chu pair certifies it.
pub fn context_functor_mor(f: &SupMap) -> Result<ContextMorphism> {
    let (v, w) = (f.source(), f.target());
    let adj = f.adjoint();
    let extent = Relation::from_rows(w.len(), (0..v.len()).map(|x| w.down(f.apply(x)).clone()).collect());
    let intent = Relation::from_rows(v.len(), (0..w.len()).map(|y| v.up(adj.apply(y)).clone()).collect());
    ContextMorphism::from_chu(Arc::new(context_functor_obj(v)), Arc::new(context_functor_obj(w)), ChuPair { extent, intent })
}

/// `V ≅ 𝔹(F(V))`, `v ↦ (↓v, ↑v)`.
pub fn unit_iso(v: &Arc<FiniteLattice>) -> SupMap {
    let fv = context_functor_obj(v);
    let (cl, l) = cached(&fv);
    let table = (0..v.len()).map(|x| cl.index_of_extent(v.down(x)).expect("principal down-sets are extents")).collect();
    SupMap::new_unchecked(v.clone(), l, table)
}

/// `K ≅ F(𝔹(K))` in the category of contexts, with its inverse.
///
/// The forward bond relates `g` to every concept whose extent contains `g`;
/// the backward bond relates a concept to every attribute of its intent.
pub fn counit_iso(k: &Arc<FormalContext>) -> (ContextMorphism, ContextMorphism) {
    let (cl, l) = cached(k);
    let fbk = Arc::new(context_functor_obj(&l));
    let n = cl.len();
    let fwd = Relation::from_fn(k.n_objects(), n, |g, c| cl.concept(c).extent().contains(g));
    let bwd = Relation::from_fn(n, k.n_attributes(), |c, m| cl.concept(c).intent().contains(m));
    (
        ContextMorphism::from_bond(k.clone(), fbk.clone(), fwd).expect("counit bond"),
        ContextMorphism::from_bond(fbk, k.clone(), bwd).expect("counit inverse bond"),
    )
}

/// State `I → K` to concept index: `R ↦ (R(⋆), R(⋆)')`.
pub fn state_to_concept(s: &ContextMorphism) -> Result<usize> {
    if s.source().n_objects() != 1 {
        return Err(Error::DomainMismatch("a state has the one-object source I".into()));
    }
    let cl = concept_lattice(s.target());
    cl.index_of_extent(s.extent().row(0)).ok_or_else(|| Error::InvalidMorphism("state row is not an extent".into()))
}

/// Concept index to state; the bond row is the intent.
pub fn concept_to_state(k: &Arc<FormalContext>, c: usize) -> ContextMorphism {
    let cl = concept_lattice(k);
    let intent = cl.concept(c).intent().bits().clone();
    let extent = cl.concept(c).extent().bits().clone();
    ContextMorphism::from_parts_unchecked(
        Arc::new(FormalContext::trivial()),
        k.clone(),
        Relation::from_rows(k.n_attributes(), vec![intent]),
        Relation::from_rows(k.n_objects(), vec![extent]),
    )
}

/// Effect `K → I` to concept index: `S ↦ (S(⋆)', S(⋆))`; the bond column is the extent.
pub fn effect_to_concept(e: &ContextMorphism) -> Result<usize> {
    if e.target().n_attributes() != 1 {
        return Err(Error::DomainMismatch("an effect has the one-attribute target I".into()));
    }
    let cl = concept_lattice(e.source());
    cl.index_of_extent(e.bond().transpose().row(0)).ok_or_else(|| Error::InvalidMorphism("effect column is not an extent".into()))
}

pub fn concept_to_effect(k: &Arc<FormalContext>, c: usize) -> ContextMorphism {
    let cl = concept_lattice(k);
    let col = cl.concept(c).extent().bits();
    let bond = Relation::from_fn(k.n_objects(), 1, |g, _| col.contains(g));
    ContextMorphism::from_bond_unchecked(k.clone(), Arc::new(FormalContext::trivial()), bond)
}

/// States as concepts: `𝔹(K)` sends index `c` to the state; exposed as a pair of tables
/// against a given list of states (typically `enumerate_hom(I, K)`).
pub fn states_iso(k: &Arc<FormalContext>, states: &[ContextMorphism]) -> Result<Vec<usize>> {
    let table = states.iter().map(state_to_concept).collect::<Result<Vec<_>>>()?;
    check_bijective(&table, concept_lattice(k).len())?;
    Ok(table)
}

pub fn effects_iso(k: &Arc<FormalContext>, effects: &[ContextMorphism]) -> Result<Vec<usize>> {
    let table = effects.iter().map(effect_to_concept).collect::<Result<Vec<_>>>()?;
    check_bijective(&table, concept_lattice(k).len())?;
    Ok(table)
}

fn check_bijective(table: &[usize], n: usize) -> Result<()> {
    let mut seen = Bits::empty(n);
    for &c in table {
        if seen.contains(c) {
            return Err(Error::DomainMismatch(format!("concept {c} hit twice")));
        }
        seen.insert(c);
    }
    if !seen.is_full() {
        return Err(Error::DomainMismatch("not every concept is hit".into()));
    }
    Ok(())
}
