//! Join-preserving maps between finite lattices.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::suplat::lattice::FiniteLattice;

#[derive(Clone)]
pub struct SupMap {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    table: Vec<usize>,
}

impl fmt::Debug for SupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SupMap{:?}", self.table)
    }
}

impl PartialEq for SupMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.id() == other.source.id() && self.target.id() == other.target.id() && self.table == other.table
    }
}

impl Eq for SupMap {}

/// `{"source":hash,"target":hash,"table":[indices]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupMapJson {
    pub source: String,
    pub target: String,
    pub table: Vec<usize>,
}

/// Checks `f(0) = 0` and `f(x ∨ y) = f(x) ∨ f(y)`.
pub fn check_sup_table(v: &FiniteLattice, w: &FiniteLattice, table: &[usize]) -> std::result::Result<(), String> {
    if table.len() != v.len() || table.iter().any(|&y| y >= w.len()) {
        return Err(format!("table of length {} does not map {} elements into {}", table.len(), v.len(), w.len()));
    }
    if table[v.bottom()] != w.bottom() {
        return Err(format!("f(0) = {} is not 0", w.label(table[v.bottom()])));
    }
    for x in 0..v.len() {
        for y in x + 1..v.len() {
            if table[v.join(x, y)] != w.join(table[x], table[y]) {
                return Err(format!("f({} ∨ {}) != f({}) ∨ f({})", v.label(x), v.label(y), v.label(x), v.label(y)));
            }
        }
    }
    Ok(())
}

/// Checks `f(1) = 1` and `f(x ∧ y) = f(x) ∧ f(y)`.
pub fn check_inf_table(v: &FiniteLattice, w: &FiniteLattice, table: &[usize]) -> std::result::Result<(), String> {
    check_sup_table(&v.op(), &w.op(), table)
}

/// Oracle: `f(⋁S) = ⋁f(S)` for every subset `S`. Exponential; at most 20 elements.
pub fn check_sup_table_exhaustive(v: &FiniteLattice, w: &FiniteLattice, table: &[usize]) -> std::result::Result<(), String> {
    assert!(v.len() <= 20, "exhaustive sup check is only for small lattices");
    for s in Bits::all_subsets(v.len()) {
        if table[v.join_all(s.ones())] != w.join_all(s.ones().map(|x| table[x])) {
            return Err(format!("f(⋁S) != ⋁f(S) at S = {s:?}"));
        }
    }
    Ok(())
}

impl SupMap {
    pub fn new(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, table: Vec<usize>) -> Result<SupMap> {
        check_sup_table(&source, &target, &table).map_err(Error::NotSupMap)?;
        Ok(SupMap { source, target, table })
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, table: Vec<usize>) -> SupMap {
        SupMap { source, target, table }
    }

    pub fn identity(v: &Arc<FiniteLattice>) -> SupMap {
        SupMap { source: v.clone(), target: v.clone(), table: (0..v.len()).collect() }
    }

    /// `x ↦ 0`.
    pub fn zero(source: &Arc<FiniteLattice>, target: &Arc<FiniteLattice>) -> SupMap {
        SupMap { source: source.clone(), target: target.clone(), table: vec![target.bottom(); source.len()] }
    }

    pub fn from_json(json: &SupMapJson, source: Arc<FiniteLattice>, target: Arc<FiniteLattice>) -> Result<SupMap> {
        if json.source != source.id().to_string() || json.target != target.id().to_string() {
            return Err(Error::DomainMismatch("sup-map JSON names different lattices".into()));
        }
        SupMap::new(source, target, json.table.clone())
    }

    pub fn to_json(&self) -> SupMapJson {
        SupMapJson { source: self.source.id().to_string(), target: self.target.id().to_string(), table: self.table.clone() }
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_sup_map(&self) -> bool {
        check_sup_table(&self.source, &self.target, &self.table).is_ok()
    }

    /// Preserves all meets as well.
    pub fn is_complete_hom(&self) -> bool {
        self.is_sup_map() && check_inf_table(&self.source, &self.target, &self.table).is_ok()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Bits::empty(self.target.len());
        self.table.iter().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    /// Bijective with monotone inverse.
    pub fn is_isomorphism(&self) -> bool {
        crate::suplat::lattice::is_order_isomorphism(&self.source, &self.target, &self.table)
    }

    pub fn inverse(&self) -> Option<SupMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(SupMap { source: self.target.clone(), target: self.source.clone(), table: inv })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SupMap) -> Result<SupMap> {
        if self.target.id() != g.source.id() {
            return Err(Error::DomainMismatch("composing sup-maps through different lattices".into()));
        }
        Ok(SupMap { source: self.source.clone(), target: g.target.clone(), table: self.table.iter().map(|&y| g.table[y]).collect() })
    }

    /// `f*: W* → V*`, `f*(w) = ⋁{v | f(v) ≤ w}`, the right adjoint read in the opposite orders.
    pub fn adjoint(&self) -> SupMap {
        let (v, w) = (&self.source, &self.target);
        let table = (0..w.len()).map(|y| v.join_all((0..v.len()).filter(|&x| w.leq(self.table[x], y)))).collect();
        SupMap { source: Arc::new(w.op()), target: Arc::new(v.op()), table }
    }

    /// Pointwise order.
    pub fn leq(&self, other: &SupMap) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| self.target.leq(a, b))
    }
}

/// Every sup-map `v → w`, in lexicographic order of tables, or `CapExceeded`
/// after `max`.
///
/// A sup-map is determined by its values on join-irreducibles; those values are
/// chosen monotonically by backtracking, extended by joins, and kept when the
/// extension preserves binary joins.
pub fn enumerate_sup_maps(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>, max: usize) -> Result<Vec<SupMap>> {
    let ji = v.join_irreducibles();
    let mut values = vec![0usize; ji.len()];
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        ji: &[usize],
        v: &FiniteLattice,
        w: &FiniteLattice,
        values: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        max: usize,
    ) -> Result<()> {
        if k == ji.len() {
            let table: Vec<usize> =
                (0..v.len()).map(|x| w.join_all((0..ji.len()).filter(|&i| v.leq(ji[i], x)).map(|i| values[i]))).collect();
            if check_sup_table(v, w, &table).is_ok() {
                if out.len() == max {
                    return Err(Error::CapExceeded(format!("more than {max} sup-maps")));
                }
                out.push(table);
            }
            return Ok(());
        }
        for y in 0..w.len() {
            let monotone =
                (0..k).all(|i| !v.leq(ji[i], ji[k]) || w.leq(values[i], y)) && (0..k).all(|i| !v.leq(ji[k], ji[i]) || w.leq(y, values[i]));
            if monotone {
                values[k] = y;
                go(k + 1, ji, v, w, values, out, max)?;
            }
        }
        Ok(())
    }

    go(0, &ji, v, w, &mut values, &mut out, max)?;
    out.sort();
    Ok(out.into_iter().map(|t| SupMap::new_unchecked(v.clone(), w.clone(), t)).collect())
}

/// Oracle for [`enumerate_sup_maps`]: all `|W|^|V|` tables, filtered.
pub fn enumerate_sup_maps_naive(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>) -> Vec<SupMap> {
    let (n, m) = (v.len(), w.len());
    assert!((m as f64).powi(n as i32) <= 2e6, "naive sup-map enumeration is only for tiny lattices");
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        if check_sup_table(v, w, &table).is_ok() {
            out.push(SupMap::new_unchecked(v.clone(), w.clone(), table.clone()));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < m {
                break;
            }
            table[i] = 0;
        }
    }
}

/// `V ⊸ W`: all sup-maps under the pointwise order. Labels are the tables.
pub fn hom_lattice(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>, max: usize) -> Result<(FiniteLattice, Vec<SupMap>)> {
    let maps = enumerate_sup_maps(v, w, max)?;
    let labels = maps.iter().map(|f| format!("{:?}", f.table)).collect();
    let leq = maps.iter().map(|f| maps.iter().map(|g| f.leq(g)).collect()).collect();
    Ok((FiniteLattice::from_leq(labels, leq)?, maps))
}

/// `V ⊠ W = (V ⊸ W*)*`.
pub fn suplat_lattice_tensor(v: &Arc<FiniteLattice>, w: &Arc<FiniteLattice>, max: usize) -> Result<FiniteLattice> {
    let (l, _) = hom_lattice(v, &Arc::new(w.op()), max)?;
    Ok(l.op())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(l: FiniteLattice) -> Arc<FiniteLattice> {
        Arc::new(l)
    }

    #[test]
    fn diamond_to_two() {
        let d = arc(FiniteLattice::diamond());
        let two = arc(FiniteLattice::two());
        let f = SupMap::new(d.clone(), two.clone(), vec![0, 1, 1, 1]).unwrap();
        assert!(!f.is_complete_hom());
        let c3 = arc(FiniteLattice::chain(3));
        assert!(SupMap::new(c3.clone(), c3, vec![2, 2, 2]).is_err());
        let a = f.adjoint();
        // f*(0) = ⋁{v | f(v) = 0} = 0; f*(1) = 1
        assert_eq!(a.table(), &[0, 3]);
        assert_eq!(a.adjoint(), f);
    }

    #[test]
    fn pairwise_check_matches_exhaustive() {
        let lats = [FiniteLattice::two(), FiniteLattice::chain(3), FiniteLattice::diamond(), FiniteLattice::m3(), FiniteLattice::n5()];
        for v in &lats {
            for w in &lats {
                let (v, w) = (arc(v.clone()), arc(w.clone()));
                let mut table = vec![0usize; v.len()];
                loop {
                    assert_eq!(check_sup_table(&v, &w, &table).is_ok(), check_sup_table_exhaustive(&v, &w, &table).is_ok());
                    let mut i = v.len();
                    let mut done = true;
                    while i > 0 {
                        i -= 1;
                        table[i] += 1;
                        if table[i] < w.len() {
                            done = false;
                            break;
                        }
                        table[i] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn pruned_enumeration_matches_naive() {
        let lats = [FiniteLattice::two(), FiniteLattice::chain(3), FiniteLattice::diamond(), FiniteLattice::m3(), FiniteLattice::n5()];
        for v in &lats {
            for w in &lats {
                let (v, w) = (arc(v.clone()), arc(w.clone()));
                assert_eq!(enumerate_sup_maps(&v, &w, 10_000).unwrap(), enumerate_sup_maps_naive(&v, &w));
            }
        }
    }

    #[test]
    fn two_hom_is_evaluation() {
        let two = arc(FiniteLattice::two());
        for v in [FiniteLattice::chain(3), FiniteLattice::n5(), FiniteLattice::m3()] {
            let v = arc(v);
            let (l, maps) = hom_lattice(&two, &v, 1000).unwrap();
            let eval: Vec<usize> = maps.iter().map(|f| f.apply(1)).collect();
            assert!(crate::suplat::lattice::is_order_isomorphism(&l, &v, &eval));
        }
    }

    #[test]
    fn two_box_two() {
        let two = arc(FiniteLattice::two());
        let t = suplat_lattice_tensor(&two, &two, 100).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let v = arc(FiniteLattice::chain(3));
        let f = SupMap::identity(&v);
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: SupMapJson = serde_json::from_str(&j).unwrap();
        assert_eq!(SupMap::from_json(&back, v.clone(), v).unwrap(), f);
    }
}
