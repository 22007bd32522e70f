//! The operations the suites exercise, with optional seeded bugs.
//!
//! Suites call structural operations through a [`Kernel`] so the same laws
//! can be run against deliberately broken variants.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::monoidal::{self, PairIndexMap, TensorKind, DEFAULT_MAX_HOM};
use crate::morphism::{bond_from_extent, ContextMorphism};
use crate::relation::Relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Composite extent rows `S(R(g))`, left unclosed.
    ComposeNoClosure,
    /// Concept tensor incidence `g₁ I m₁ and g₂ I m₂`.
    TensorIncidenceConjunction,
    /// `ρ` with extent rows `{g}`, left unclosed.
    UnitorNoClosure,
    /// `R₁ ⊗ R₂` with extent rows `R₁(g₁) × R₂(g₂)`, left unclosed.
    TensorMorphismNoClosure,
    /// Discard whose bond column is all of `G`.
    DiscardWrongRow,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::ComposeNoClosure,
        Mutation::TensorIncidenceConjunction,
        Mutation::UnitorNoClosure,
        Mutation::TensorMorphismNoClosure,
        Mutation::DiscardWrongRow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::ComposeNoClosure => "compose-no-closure",
            Mutation::TensorIncidenceConjunction => "tensor-incidence-conjunction",
            Mutation::UnitorNoClosure => "unitor-no-closure",
            Mutation::TensorMorphismNoClosure => "tensor-morphism-no-closure",
            Mutation::DiscardWrongRow => "discard-wrong-row",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::Lawcheck(format!("unknown mutation `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Kernel {
    mutation: Option<Mutation>,
}

impl Kernel {
    pub fn sound() -> Kernel {
        Kernel { mutation: None }
    }

    pub fn mutated(m: Mutation) -> Kernel {
        Kernel { mutation: Some(m) }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    /// `s ∘ r`.
    pub fn compose(&self, s: &ContextMorphism, r: &ContextMorphism) -> Result<ContextMorphism> {
        if !self.is(Mutation::ComposeNoClosure) {
            return s.compose(r);
        }
        if r.target_id() != s.source_id() {
            return Err(Error::DomainMismatch("composition across different contexts".into()));
        }
        let k3 = s.target();
        let extent = Relation::from_rows(k3.n_objects(), r.extent().rows().iter().map(|x| s.extent().image(x)).collect());
        let bond = bond_from_extent(k3, &extent);
        Ok(ContextMorphism::from_parts_unchecked(r.source().clone(), k3.clone(), bond, extent))
    }

    pub fn tensor(&self, kind: TensorKind, k1: &FormalContext, k2: &FormalContext) -> Result<Arc<FormalContext>> {
        if kind == TensorKind::Concept && self.is(Mutation::TensorIncidenceConjunction) {
            let sound = monoidal::concept_tensor(k1, k2);
            let objs = PairIndexMap::new(k1.n_objects(), k2.n_objects());
            let attrs = PairIndexMap::new(k1.n_attributes(), k2.n_attributes());
            let k = FormalContext::from_fn(sound.name(), sound.objects().to_vec(), sound.attributes().to_vec(), |g, m| {
                let ((g1, g2), (m1, m2)) = (objs.split(g), attrs.split(m));
                k1.incident(g1, m1) && k2.incident(g2, m2)
            })?;
            return Ok(Arc::new(k));
        }
        monoidal::tensor(kind, k1, k2, DEFAULT_MAX_HOM)
    }

    /// `R₁ ⊗ R₂` between the kernel's own tensor contexts.
    pub fn tensor_morphism(&self, kind: TensorKind, r1: &ContextMorphism, r2: &ContextMorphism) -> Result<ContextMorphism> {
        if self.mutation.is_none() {
            return monoidal::tensor_morphism(kind, r1, r2);
        }
        let src = self.tensor(kind, r1.source(), r2.source())?;
        let tgt = self.tensor(kind, r1.target(), r2.target())?;
        let sp = PairIndexMap::new(r1.source().n_objects(), r2.source().n_objects());
        let tp = PairIndexMap::new(r1.target().n_objects(), r2.target().n_objects());
        let raw = |g: usize| {
            let (g1, g2) = sp.split(g);
            tp.product(r1.extent().row(g1), r2.extent().row(g2))
        };
        if self.is(Mutation::TensorMorphismNoClosure) {
            let extent = Relation::from_rows(tp.len(), (0..sp.len()).map(raw).collect());
            let bond = bond_from_extent(&tgt, &extent);
            return Ok(ContextMorphism::from_parts_unchecked(src, tgt, bond, extent));
        }
        let rows = (0..sp.len()).map(|g| tgt.close_objects_raw(&raw(g))).collect();
        ContextMorphism::from_extent(src, tgt, Relation::from_rows(tp.len(), rows))
    }

    /// `ρ: K ⊗ I → K`.
    pub fn unitor_right(&self, kind: TensorKind, k: &Arc<FormalContext>) -> Result<ContextMorphism> {
        let src = self.tensor(kind, k, &FormalContext::trivial())?;
        if self.is(Mutation::UnitorNoClosure) {
            let n = k.n_objects();
            let extent = Relation::from_rows(n, (0..n).map(|g| Bits::singleton(n, g)).collect());
            let bond = bond_from_extent(k, &extent);
            return Ok(ContextMorphism::from_parts_unchecked(src, k.clone(), bond, extent));
        }
        if self.mutation.is_none() {
            return monoidal::unitor_right(kind, k);
        }
        let rows = (0..k.n_objects()).map(|g| k.close_objects_raw(&Bits::singleton(k.n_objects(), g))).collect();
        ContextMorphism::from_extent(src, k.clone(), Relation::from_rows(k.n_objects(), rows))
    }

    /// `⊤_K: K → I`.
    pub fn discard(&self, k: &Arc<FormalContext>) -> ContextMorphism {
        if self.is(Mutation::DiscardWrongRow) {
            let bond = Relation::full(k.n_objects(), 1);
            return ContextMorphism::from_bond_unchecked(k.clone(), Arc::new(FormalContext::trivial()), bond);
        }
        monoidal::discard(k)
    }
}
