//! States of iterated lattice tensors.
//!
//! The extents of `K₁ ⊠ K₂` are exactly the relations `G₁ × G₂` whose rows
//! and columns are extents (bonds `K₁ → K₂*`), and by induction the extents of
//! `K₁ ⊠ (K₂ ⊠ (… ⊠ Kₙ))` are the `n`-ary relations all of whose
//! one-dimensional fibers are extents. Closure is the least such superset,
//! reached by closing fibers until nothing changes. This lets sentence
//! semantics work on tuples without building the (large) tensor contexts.

use std::sync::Arc;

use crate::bits::Bits;
use crate::concepts::Concept;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::monoidal::{tensor, TensorKind, DEFAULT_MAX_HOM};
use crate::morphism::ContextMorphism;
use crate::relation::Relation;

/// Largest number of tuples a state may range over.
pub const MAX_TUPLES: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorState {
    factors: Vec<Arc<FormalContext>>,
    extent: Bits,
}

pub fn tuple_count(factors: &[Arc<FormalContext>]) -> Result<usize> {
    factors.iter().try_fold(1usize, |acc, k| {
        acc.checked_mul(k.n_objects())
            .filter(|&n| n <= MAX_TUPLES)
            .ok_or_else(|| Error::CapExceeded(format!("tensor state over more than {MAX_TUPLES} tuples")))
    })
}

impl TensorState {
    /// The closure of a set of tuples.
    pub fn close(factors: Vec<Arc<FormalContext>>, tuples: Bits) -> Result<TensorState> {
        let n = tuple_count(&factors)?;
        if tuples.universe() != n {
            return Err(Error::DomainMismatch(format!("tuple set over {} tuples, expected {n}", tuples.universe())));
        }
        let extent = fiber_close(&factors, tuples);
        Ok(TensorState { factors, extent })
    }

    /// An already-closed set of tuples; fails if it is not closed.
    pub fn from_extent(factors: Vec<Arc<FormalContext>>, extent: Bits) -> Result<TensorState> {
        let s = TensorState::close(factors, extent.clone())?;
        if s.extent != extent {
            return Err(Error::DomainMismatch("tuple set is not closed in the tensor".into()));
        }
        Ok(s)
    }

    /// The closure of the given tuples, each listing one object index per factor.
    pub fn from_tuples(factors: Vec<Arc<FormalContext>>, tuples: &[Vec<usize>]) -> Result<TensorState> {
        let n = tuple_count(&factors)?;
        let mut bits = Bits::empty(n);
        for t in tuples {
            if t.len() != factors.len() || t.iter().zip(&factors).any(|(&g, k)| g >= k.n_objects()) {
                return Err(Error::DomainMismatch(format!("tuple {t:?} does not fit the factors")));
            }
            bits.insert(encode(&factors, t));
        }
        TensorState::close(factors, bits)
    }

    pub fn bottom(factors: Vec<Arc<FormalContext>>) -> Result<TensorState> {
        let n = tuple_count(&factors)?;
        TensorState::close(factors, Bits::empty(n))
    }

    pub fn top(factors: Vec<Arc<FormalContext>>) -> Result<TensorState> {
        let n = tuple_count(&factors)?;
        Ok(TensorState { factors, extent: Bits::full(n) })
    }

    pub fn factors(&self) -> &[Arc<FormalContext>] {
        &self.factors
    }

    pub fn extent(&self) -> &Bits {
        &self.extent
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        self.extent.ones().map(|i| decode(&self.factors, i)).collect()
    }

    /// Right-nested tuple label, e.g. `(Alice,(positive,Bob))`.
    pub fn tuple_label(&self, t: &[usize]) -> String {
        tuple_label(&self.factors, t)
    }

    pub fn labels(&self) -> Vec<String> {
        self.tuples().iter().map(|t| self.tuple_label(t)).collect()
    }

    /// Order of states: extent inclusion.
    pub fn leq(&self, other: &TensorState) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.extent.is_subset(&other.extent))
    }

    fn check_same(&self, other: &TensorState) -> Result<()> {
        let ids = |s: &TensorState| s.factors.iter().map(|k| k.id()).collect::<Vec<_>>();
        if ids(self) != ids(other) {
            return Err(Error::DomainMismatch("states of different tensors".into()));
        }
        Ok(())
    }

    /// `s ⊠ t`: the closure of the product of the two tuple sets.
    pub fn tensor(&self, other: &TensorState) -> Result<TensorState> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let n = tuple_count(&factors)?;
        let width = tuple_count(&other.factors)?;
        let mut bits = Bits::empty(n);
        for a in self.extent.ones() {
            for b in other.extent.ones() {
                bits.insert(a * width + b);
            }
        }
        TensorState::close(factors, bits)
    }

    /// Applies the cup at factors `i, i+1`, which must be `K` and `K*` in
    /// either order. A tuple survives (with both entries dropped) iff its two
    /// entries are not incident, read in the left factor.
    pub fn contract(&self, i: usize) -> Result<TensorState> {
        if i + 1 >= self.factors.len() {
            return Err(Error::DomainMismatch(format!("no factors {i},{} to contract", i + 1)));
        }
        let (p, q) = (&self.factors[i], &self.factors[i + 1]);
        if q.id() != p.dual().id() {
            return Err(Error::DomainMismatch(format!("factors {i} and {} are not dual", i + 1)));
        }
        let mut factors = self.factors.clone();
        factors.drain(i..i + 2);
        let n = tuple_count(&factors)?;
        let mut bits = Bits::empty(n);
        for mut t in self.tuples() {
            if !p.incident(t[i], t[i + 1]) {
                t.drain(i..i + 2);
                bits.insert(encode(&factors, &t));
            }
        }
        TensorState::close(factors, bits)
    }

    /// The concept of a single-factor state.
    pub fn to_concept(&self) -> Result<Concept> {
        match self.factors.as_slice() {
            [k] => Ok(Concept::from_closed_raw(k, self.extent.clone())),
            _ => Err(Error::DomainMismatch(format!("a state over {} factors is not a concept of one context", self.factors.len()))),
        }
    }

    /// The right-associated tensor context `K₁ ⊠ (K₂ ⊠ …)`; `I` for no factors.
    pub fn context(&self) -> Result<Arc<FormalContext>> {
        nested_tensor(&self.factors)
    }

    /// The same state as a morphism `I → K₁ ⊠ (K₂ ⊠ …)`. Builds the tensor
    /// context, so only practical for small factors.
    pub fn to_morphism(&self) -> Result<ContextMorphism> {
        let target = self.context()?;
        let unit = Arc::new(FormalContext::trivial());
        ContextMorphism::from_extent(unit, target, Relation::from_rows(self.extent.universe(), vec![self.extent.clone()]))
    }
}

pub fn nested_tensor(factors: &[Arc<FormalContext>]) -> Result<Arc<FormalContext>> {
    match factors {
        [] => Ok(Arc::new(FormalContext::trivial())),
        [k] => Ok(k.clone()),
        [k, rest @ ..] => tensor(TensorKind::Lattice, k, &*nested_tensor(rest)?, DEFAULT_MAX_HOM),
    }
}

/// Row-major, first factor most significant (matches nested pair indexing).
pub fn encode(factors: &[Arc<FormalContext>], t: &[usize]) -> usize {
    factors.iter().zip(t).fold(0, |acc, (k, &g)| acc * k.n_objects() + g)
}

pub fn decode(factors: &[Arc<FormalContext>], mut flat: usize) -> Vec<usize> {
    let mut t = vec![0; factors.len()];
    for (slot, k) in t.iter_mut().zip(factors).rev() {
        *slot = flat % k.n_objects();
        flat /= k.n_objects();
    }
    t
}

pub fn tuple_label(factors: &[Arc<FormalContext>], t: &[usize]) -> String {
    match t {
        [] => "*".to_string(),
        [g] => factors[0].objects()[*g].clone(),
        [g, rest @ ..] => format!("({},{})", factors[0].objects()[*g], tuple_label(&factors[1..], rest)),
    }
}

/// Smallest superset of `tuples` whose axis-parallel fibers are all extents.
pub fn fiber_close(factors: &[Arc<FormalContext>], mut tuples: Bits) -> Bits {
    let dims: Vec<usize> = factors.iter().map(|k| k.n_objects()).collect();
    let n = tuples.universe();
    loop {
        let mut changed = false;
        let mut stride = 1;
        for axis in (0..dims.len()).rev() {
            let d = dims[axis];
            for base in 0..n {
                // first cell of each fiber along this axis
                if (base / stride) % d != 0 {
                    continue;
                }
                let fiber = Bits::from_indices(d, (0..d).filter(|&x| tuples.contains(base + x * stride)));
                let closed = factors[axis].close_objects_raw(&fiber);
                if closed != fiber {
                    changed = true;
                    for x in closed.ones() {
                        tuples.insert(base + x * stride);
                    }
                }
            }
            stride *= d;
        }
        if !changed {
            return tuples;
        }
    }
}
