//! Concept lattices.
//!
//! Concepts are enumerated with NextClosure over object subsets (lectic
//! order, lowest index most significant) and then stored in the canonical
//! order: by extent, read as a binary number with object 0 least significant.
//! That order is a linear extension of the concept order, so index 0 is
//! always the bottom concept and the last index the top.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::context::{AttributeSet, ContextId, FormalContext, ObjectSet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Concept {
    extent: ObjectSet,
    intent: AttributeSet,
}

impl Concept {
    /// Pairs an extent with its derived intent. Fails if `extent` is not closed.
    pub fn from_extent(k: &FormalContext, extent: &ObjectSet) -> Result<Concept> {
        let closed = k.close_objects(extent)?;
        if &closed != extent {
            return Err(Error::DomainMismatch(format!("{:?} is not an extent", extent.labels(k))));
        }
        let intent = k.derive_objects(extent)?;
        Ok(Concept { extent: closed, intent })
    }

    pub(crate) fn from_closed_raw(k: &FormalContext, extent: Bits) -> Concept {
        let intent = k.intent_of(&extent);
        Concept { extent: k.wrap_objects(extent), intent: k.wrap_attributes(intent) }
    }

    pub fn extent(&self) -> &ObjectSet {
        &self.extent
    }

    pub fn intent(&self) -> &AttributeSet {
        &self.intent
    }

    pub fn context(&self) -> ContextId {
        self.extent.context()
    }

    /// Concept order: extent inclusion.
    pub fn leq(&self, other: &Concept) -> Result<bool> {
        self.extent.is_subset(&other.extent)
    }
}

/// `𝔹(K)` with its order, meet and join tables.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    context: ContextId,
    concepts: Vec<Concept>,
    leq: Vec<Bits>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    by_extent: HashMap<Bits, usize>,
}

/// The next closed set after `current` in lectic order, if any.
fn next_closure(k: &FormalContext, current: &Bits) -> Option<Bits> {
    let n = k.n_objects();
    let mut a = current.clone();
    for i in (0..n).rev() {
        if a.contains(i) {
            a.remove(i);
        } else {
            let mut candidate = a.clone();
            candidate.insert(i);
            let closed = k.close_objects_raw(&candidate);
            // accept when the closure adds nothing below i
            if closed.difference(&a).ones().next() == Some(i) {
                return Some(closed);
            }
        }
    }
    None
}

/// All extents of `k` via NextClosure, in lectic order.
pub fn next_closure_extents(k: &FormalContext) -> Vec<Bits> {
    let mut out = Vec::new();
    let mut current = Some(k.close_objects_raw(&Bits::empty(k.n_objects())));
    while let Some(c) = current {
        current = next_closure(k, &c);
        out.push(c);
    }
    out
}

/// Oracle: close every subset of `G` and deduplicate. Sorted canonically.
pub fn brute_force_extents(k: &FormalContext) -> Vec<Bits> {
    let mut all: Vec<Bits> = Bits::all_subsets(k.n_objects()).map(|s| k.close_objects_raw(&s)).collect();
    all.sort();
    all.dedup();
    all
}

impl ConceptLattice {
    /// Enumerates `𝔹(K)`. Never fails: even the empty context has one concept.
    pub fn of(k: &FormalContext) -> ConceptLattice {
        let mut extents = next_closure_extents(k);
        extents.sort();
        Self::from_sorted_extents(k, extents)
    }

    fn from_sorted_extents(k: &FormalContext, extents: Vec<Bits>) -> ConceptLattice {
        let n = extents.len();
        let by_extent: HashMap<Bits, usize> = extents.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut leq = vec![Bits::empty(n); n];
        for i in 0..n {
            for j in i..n {
                if extents[i].is_subset(&extents[j]) {
                    leq[i].insert(j);
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let m = by_extent[&extents[i].intersection(&extents[j])];
                let jn = by_extent[&k.close_objects_raw(&extents[i].union(&extents[j]))];
                meet[i][j] = m;
                meet[j][i] = m;
                join[i][j] = jn;
                join[j][i] = jn;
            }
        }
        let concepts = extents.into_iter().map(|e| Concept::from_closed_raw(k, e)).collect();
        ConceptLattice { context: k.id(), concepts, leq, meet, join, by_extent }
    }

    pub fn context(&self) -> ContextId {
        self.context
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.concepts.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|i| self.leq[i].to_bools()).collect()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    /// Index of the concept with this (raw) extent, if it is one.
    pub fn index_of_extent(&self, extent: &Bits) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        if c.context() != self.context {
            return None;
        }
        self.index_of_extent(c.extent().bits())
    }

    /// Index of the object concept `(g'', g')`.
    pub fn object_concept(&self, k: &FormalContext, g: usize) -> usize {
        self.by_extent[&k.close_objects_raw(&Bits::singleton(k.n_objects(), g))]
    }

    /// Index of the attribute concept `(m', m'')`.
    pub fn attribute_concept(&self, k: &FormalContext, m: usize) -> usize {
        self.by_extent[&k.col(m).clone()]
    }

    /// Infimum of a set of concepts; the empty meet is the top.
    pub fn lattice_meet(&self, s: &[usize]) -> Result<usize> {
        self.check(s)?;
        Ok(s.iter().fold(self.top(), |acc, &i| self.meet(acc, i)))
    }

    /// Supremum of a set of concepts; the empty join is the bottom.
    pub fn lattice_join(&self, s: &[usize]) -> Result<usize> {
        self.check(s)?;
        Ok(s.iter().fold(self.bottom(), |acc, &i| self.join(acc, i)))
    }

    fn check(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::DomainMismatch(format!("concept index {i} out of range ({})", self.len()))),
            None => Ok(()),
        }
    }

    /// Cover relation (Hasse diagram edges `lower -> upper`).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in self.leq[i].ones().filter(|&j| j != i) {
                let between = self.leq[i].ones().any(|k| k != i && k != j && self.leq(k, j));
                if !between {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// `enumerate_concepts` under its operation name.
pub fn enumerate_concepts(k: &FormalContext) -> ConceptLattice {
    ConceptLattice::of(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn next_closure_matches_oracle() {
        for k in fixtures::pool() {
            let mut nc = next_closure_extents(&k);
            nc.sort();
            assert_eq!(nc, brute_force_extents(&k), "{}", k.name());
        }
    }

    #[test]
    fn lectic_order_is_strictly_increasing_in_reversed_bits() {
        // lectic order = numeric order with index 0 *most* significant
        let k = fixtures::animals();
        let ext = next_closure_extents(&k);
        let key = |b: &Bits| b.to_bitstring();
        assert!(ext.windows(2).all(|w| key(&w[0]) < key(&w[1])));
    }

    #[test]
    fn degenerate_contexts() {
        let e = FormalContext::from_set::<&str>(&[]).unwrap();
        let l = ConceptLattice::of(&e);
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), l.top());

        let no_objects = FormalContext::new("x", vec![], vec!["m".into()], &[]).unwrap();
        let l = ConceptLattice::of(&no_objects);
        assert_eq!(l.len(), 1);
        assert_eq!(l.concept(0).intent().len(), 1);
    }

    #[test]
    fn object_and_attribute_concepts() {
        let k = fixtures::animals();
        let l = ConceptLattice::of(&k);
        let cat = l.object_concept(&k, 0);
        assert_eq!(l.concept(cat).extent().labels(&k), vec!["Cat"]);
        let feline = l.attribute_concept(&k, 1);
        assert_eq!(l.concept(feline).extent().labels(&k), vec!["Cat", "Kitten"]);
        assert!(l.leq(cat, feline));
    }

    #[test]
    fn covers_of_powerset() {
        let k = FormalContext::from_set(&["a", "b", "c"]).unwrap();
        let l = ConceptLattice::of(&k);
        // 3-cube has 12 edges
        assert_eq!(l.covers().len(), 12);
    }

    #[test]
    fn out_of_range_indices() {
        let l = ConceptLattice::of(&FormalContext::trivial());
        assert!(l.lattice_join(&[5]).is_err());
    }
}
