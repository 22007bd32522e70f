//! Finite complete lattices given by their order matrix.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::bits::Bits;
use crate::concepts::ConceptLattice;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Structural fingerprint of a lattice: size and order matrix, not labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeId(pub u64);

impl fmt::Display for LatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::Debug for LatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeId({self})")
    }
}

#[derive(Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    /// `up[i]` = `{j | i ≤ j}`.
    up: Vec<Bits>,
    /// `down[i]` = `{j | j ≤ i}`.
    down: Vec<Bits>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    id: LatticeId,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLattice({} elements, {})", self.len(), self.id)
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.up == other.up
    }
}

impl Eq for FiniteLattice {}

fn fingerprint(up: &[Bits]) -> LatticeId {
    let mut h = Sha256::new();
    h.update((up.len() as u64).to_le_bytes());
    for r in up {
        h.update(r.to_bitstring().as_bytes());
        h.update(b"|");
    }
    let d = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&d[..8]);
    LatticeId(u64::from_be_bytes(bytes))
}

/// The least element of `set` under `up`, if `set` has one.
fn least(up: &[Bits], set: &Bits) -> Option<usize> {
    set.ones().find(|&u| set.is_subset(&up[u]))
}

impl FiniteLattice {
    /// Validates that `leq` is a partial order with all binary meets and joins
    /// (which, for a finite nonempty poset, makes it a complete lattice).
    pub fn from_leq(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotALattice("the empty poset has no top or bottom".into()));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotALattice(format!("order matrix is not {n}x{n}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::NotALattice(format!("duplicate element label {l:?}")));
        }
        let up: Vec<Bits> = leq.iter().map(|r| Bits::from_bools(r)).collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotALattice(format!("order is not reflexive at {}", labels[i])));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotALattice(format!("{} and {} are mutually below", labels[i], labels[j])));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotALattice(format!("order is not transitive through {}", labels[j])));
                }
            }
        }
        Self::from_order_unchecked(labels, up)
    }

    /// Builds tables from a known partial order; fails only if meets or joins are missing.
    fn from_order_unchecked(labels: Vec<String>, up: Vec<Bits>) -> Result<FiniteLattice> {
        let n = labels.len();
        let mut down = vec![Bits::empty(n); n];
        for (i, u) in up.iter().enumerate() {
            for j in u.ones() {
                down[j].insert(i);
            }
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let jn = least(&up, &up[i].intersection(&up[j]))
                    .ok_or_else(|| Error::NotALattice(format!("{} and {} have no join", labels[i], labels[j])))?;
                let mt = least(&down, &down[i].intersection(&down[j]))
                    .ok_or_else(|| Error::NotALattice(format!("{} and {} have no meet", labels[i], labels[j])))?;
                join[i][j] = jn;
                join[j][i] = jn;
                meet[i][j] = mt;
                meet[j][i] = mt;
            }
        }
        let all = Bits::full(n);
        let bottom = least(&up, &all).ok_or_else(|| Error::NotALattice("no bottom".into()))?;
        let top = least(&down, &all).ok_or_else(|| Error::NotALattice("no top".into()))?;
        let id = fingerprint(&up);
        Ok(FiniteLattice { labels, up, down, meet, join, bottom, top, id })
    }

    /// Subsets of `0..universe` closed under intersection, ordered by inclusion.
    /// The family is closed under intersections first; the full set is added.
    pub fn from_closure_system(universe: usize, family: &[Bits]) -> FiniteLattice {
        let mut sets: Vec<Bits> = vec![Bits::full(universe)];
        for f in family {
            assert_eq!(f.universe(), universe, "closure system member over the wrong universe");
        }
        let mut frontier: Vec<Bits> = family.to_vec();
        while let Some(s) = frontier.pop() {
            if sets.contains(&s) {
                continue;
            }
            let new: Vec<Bits> = sets.iter().map(|t| t.intersection(&s)).collect();
            sets.push(s);
            frontier.extend(new.into_iter().filter(|t| !sets.contains(t)));
        }
        sets.sort();
        let labels = sets.iter().map(|s| format!("{s:?}")).collect();
        let up = sets.iter().map(|a| Bits::from_indices(sets.len(), (0..sets.len()).filter(|&b| a.is_subset(&sets[b])))).collect();
        Self::from_order_unchecked(labels, up).expect("closure systems are lattices")
    }

    /// `𝔹(K)`, with the same element indices as [`ConceptLattice::of`].
    pub fn from_concepts(k: &FormalContext, l: &ConceptLattice) -> FiniteLattice {
        let labels = l.concepts().iter().map(|c| format!("{{{}}}", c.extent().labels(k).join(","))).collect();
        let up: Vec<Bits> = (0..l.len()).map(|i| Bits::from_indices(l.len(), (0..l.len()).filter(|&j| l.leq(i, j)))).collect();
        let n = l.len();
        let mut down = vec![Bits::empty(n); n];
        for (i, u) in up.iter().enumerate() {
            for j in u.ones() {
                down[j].insert(i);
            }
        }
        let meet = (0..n).map(|i| (0..n).map(|j| l.meet(i, j)).collect()).collect();
        let join = (0..n).map(|i| (0..n).map(|j| l.join(i, j)).collect()).collect();
        let id = fingerprint(&up);
        FiniteLattice { labels, up, down, meet, join, bottom: l.bottom(), top: l.top(), id }
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> FiniteLattice {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Self::from_leq(labels, leq).expect("chains are lattices")
    }

    /// The two-element lattice `2`.
    pub fn two() -> FiniteLattice {
        Self::chain(2)
    }

    /// Subsets of an `n`-element set.
    pub fn powerset(n: usize) -> FiniteLattice {
        let size = 1usize << n;
        let labels = (0..size).map(|s| format!("{s:0n$b}").chars().rev().collect()).collect();
        let leq = (0..size).map(|a| (0..size).map(|b| a & b == a).collect()).collect();
        Self::from_leq(labels, leq).expect("powersets are lattices")
    }

    /// `0 < a, b < 1`.
    pub fn diamond() -> FiniteLattice {
        Self::from_named(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    }

    /// `0 < a, b, c < 1`, the smallest modular non-distributive lattice.
    pub fn m3() -> FiniteLattice {
        Self::from_named(&["0", "a", "b", "c", "1"], &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    }

    /// `0 < a < b < 1`, `0 < c < 1`, the smallest non-modular lattice.
    pub fn n5() -> FiniteLattice {
        Self::from_named(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    }

    /// From covering pairs; the order is their reflexive-transitive closure.
    pub fn from_named(labels: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
        let n = labels.len();
        let idx = |s: &str| labels.iter().position(|l| *l == s).expect("cover endpoint is a label");
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            leq[idx(a)][idx(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_leq(labels.iter().map(|s| s.to_string()).collect(), leq).expect("named lattice")
    }

    /// `V*`: the same elements with the order reversed.
    pub fn op(&self) -> FiniteLattice {
        FiniteLattice {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
            id: fingerprint(&self.down),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FiniteLattice {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    pub fn down(&self, i: usize) -> &Bits {
        &self.down[i]
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.up.iter().map(Bits::to_bools).collect()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |a, x| self.join[a][x])
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |a, x| self.meet[a][x])
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != self.bottom && self.lower_covers(i).len() == 1).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != self.top && self.upper_covers(i).len() == 1).collect()
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.down[i].ones().filter(|&j| j != i && !self.down[i].ones().any(|k| k != i && k != j && self.leq(j, k))).collect()
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.up[i].ones().filter(|&j| j != i && !self.up[i].ones().any(|k| k != i && k != j && self.leq(k, j))).collect()
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))))
    }

    /// Elements in a linear extension of the order (by down-set size).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));
        order
    }
}

/// An order isomorphism `a → b` as an index table, if one exists.
///
/// Backtracking over a linear extension of `a`, matching elements only to
/// elements of `b` with the same up/down-set sizes.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let sig = |l: &FiniteLattice, i: usize| (l.down(i).count(), l.up(i).count(), l.lower_covers(i).len(), l.upper_covers(i).len());
    let sa: Vec<_> = (0..a.len()).map(|i| sig(a, i)).collect();
    let sb: Vec<_> = (0..b.len()).map(|i| sig(b, i)).collect();
    let mut ms = sa.clone();
    let mut mt = sb.clone();
    ms.sort();
    mt.sort();
    if ms != mt {
        return None;
    }
    let order = a.linear_extension();
    let mut map = vec![usize::MAX; a.len()];
    let mut used = Bits::empty(b.len());

    fn go(
        k: usize,
        order: &[usize],
        a: &FiniteLattice,
        b: &FiniteLattice,
        sa: &[(usize, usize, usize, usize)],
        sb: &[(usize, usize, usize, usize)],
        map: &mut [usize],
        used: &mut Bits,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..b.len() {
            if used.contains(y) || sa[x] != sb[y] {
                continue;
            }
            let consistent = order[..k].iter().all(|&p| {
                let q = map[p];
                a.leq(p, x) == b.leq(q, y) && a.leq(x, p) == b.leq(y, q)
            });
            if consistent {
                map[x] = y;
                used.insert(y);
                if go(k + 1, order, a, b, sa, sb, map, used) {
                    return true;
                }
                used.remove(y);
                map[x] = usize::MAX;
            }
        }
        false
    }

    if go(0, &order, a, b, &sa, &sb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// True iff `map` is a bijection `a → b` with `x ≤ y ⟺ map(x) ≤ map(y)`.
pub fn is_order_isomorphism(a: &FiniteLattice, b: &FiniteLattice, map: &[usize]) -> bool {
    if a.len() != b.len() || map.len() != a.len() || map.iter().any(|&y| y >= b.len()) {
        return false;
    }
    let mut seen = Bits::empty(b.len());
    for &y in map {
        if seen.contains(y) {
            return false;
        }
        seen.insert(y);
    }
    (0..a.len()).all(|x| (0..a.len()).all(|y| a.leq(x, y) == b.leq(map[x], map[y])))
}

pub fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    find_isomorphism(a, b).is_some()
}
