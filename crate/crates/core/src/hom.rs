//! Hom-sets of the category of contexts.

use std::collections::HashSet;
use std::sync::Arc;

use crate::bits::Bits;
use crate::concepts::next_closure_extents;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::morphism::{check_bond, ContextMorphism};
use crate::relation::Relation;
use crate::suplat::FiniteLattice;

/// All bonds `k1 → k2`, sorted, or `CapExceeded` once more than `max` are found.
///
/// Rows are drawn from the intents of `k2`; after each row the partial columns
/// must still be prefixes of extents of `k1`, which prunes most of the tree.
pub fn enumerate_bonds(k1: &FormalContext, k2: &FormalContext, max: usize) -> Result<Vec<Relation>> {
    let n = k1.n_objects();
    let m = k2.n_attributes();
    let intents: Vec<Bits> = next_closure_extents(k2).iter().map(|e| k2.intent_of(e)).collect();
    let extents = next_closure_extents(k1);
    let prefixes: Vec<HashSet<Bits>> = (0..=n).map(|k| extents.iter().map(|e| e.prefix(k)).collect()).collect();

    struct Search<'a> {
        intents: &'a [Bits],
        prefixes: &'a [HashSet<Bits>],
        n: usize,
        m: usize,
        max: usize,
        rows: Vec<Bits>,
        out: Vec<Relation>,
    }

    impl Search<'_> {
        fn go(&mut self, cols: &[Bits]) -> Result<()> {
            let k = self.rows.len();
            if k == self.n {
                if self.out.len() == self.max {
                    return Err(Error::CapExceeded(format!("hom-set has more than {} morphisms", self.max)));
                }
                self.out.push(Relation::from_rows(self.m, self.rows.clone()));
                return Ok(());
            }
            for row in self.intents {
                let mut next = cols.to_vec();
                for (c, col) in next.iter_mut().enumerate() {
                    if row.contains(c) {
                        col.insert(k);
                    }
                }
                if next.iter().all(|c| self.prefixes[k + 1].contains(c)) {
                    self.rows.push(row.clone());
                    self.go(&next)?;
                    self.rows.pop();
                }
            }
            Ok(())
        }
    }

    let mut s = Search { intents: &intents, prefixes: &prefixes, n, m, max, rows: Vec::new(), out: Vec::new() };
    s.go(&vec![Bits::empty(n); m])?;
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// Oracle: every `|G₁| × |M₂|` bit-matrix, filtered by the bond invariant.
pub fn enumerate_bonds_naive(k1: &FormalContext, k2: &FormalContext) -> Vec<Relation> {
    let (n, m) = (k1.n_objects(), k2.n_attributes());
    assert!(n * m <= 20, "naive bond enumeration is only for tiny contexts");
    let mut out: Vec<Relation> = (0u64..1 << (n * m))
        .map(|bits| Relation::from_fn(n, m, |g, a| bits >> (g * m + a) & 1 == 1))
        .filter(|b| check_bond(k1, k2, b).is_ok())
        .collect();
    out.sort();
    out
}

/// `hom(k1, k2)` as morphisms, sorted by bond.
pub fn enumerate_hom(k1: &Arc<FormalContext>, k2: &Arc<FormalContext>, max: usize) -> Result<Vec<ContextMorphism>> {
    Ok(enumerate_bonds(k1, k2, max)?.into_iter().map(|b| ContextMorphism::from_bond_unchecked(k1.clone(), k2.clone(), b)).collect())
}

/// The hom-set ordered by inclusion of extent relations (equivalently,
/// reverse inclusion of bonds). Element labels are the bond keys.
pub fn hom_lattice(homs: &[ContextMorphism]) -> Result<FiniteLattice> {
    let labels = homs.iter().map(|h| h.bond().to_key()).collect();
    let leq = homs.iter().map(|a| homs.iter().map(|b| a.leq(b)).collect()).collect();
    FiniteLattice::from_leq(labels, leq)
}
