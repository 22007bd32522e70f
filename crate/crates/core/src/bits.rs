//! Dense index sets.
//!
//! [`Bits`] is a thin wrapper over [`FixedBitSet`] with a fixed universe size
//! and a *numeric* total order: a set is read as a binary number whose bit 0
//! is index 0. Subsets therefore always compare below their supersets, which
//! makes the order a linear extension of inclusion.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits(FixedBitSet);

impl Bits {
    /// The empty subset of `0..len`.
    pub fn empty(len: usize) -> Self {
        Bits(FixedBitSet::with_capacity(len))
    }

    /// The whole universe `0..len`.
    pub fn full(len: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(len);
        b.insert_range(..);
        Bits(b)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut b = Self::empty(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        Self::from_indices(bools.len(), bools.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    /// Size of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.universe()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.set(i, false);
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0.set(i, value);
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.ones().collect()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &Bits) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> Bits {
        let mut r = Bits::full(self.universe());
        r.difference_with(self);
        r
    }

    /// Members strictly below `i`.
    pub fn prefix(&self, i: usize) -> Bits {
        Bits::from_indices(self.universe(), self.ones().take_while(|&j| j < i))
    }

    /// `'1'`/`'0'` per index, index 0 first.
    pub fn to_bitstring(&self) -> String {
        (0..self.universe()).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.universe()).map(|i| self.contains(i)).collect()
    }

    /// Every subset of `0..len`, in numeric order. Only sensible for small `len`.
    pub fn all_subsets(len: usize) -> impl Iterator<Item = Bits> {
        assert!(len < 32, "subset enumeration over {len} elements");
        (0u64..(1u64 << len)).map(move |mask| Bits::from_indices(len, (0..len).filter(|&i| mask >> i & 1 == 1)))
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.0.as_slice();
        let b = other.0.as_slice();
        let n = a.len().max(b.len());
        for k in (0..n).rev() {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.universe().cmp(&other.universe())
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}
