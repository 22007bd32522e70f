//! Finite binary relations as rows of bitsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;

/// `R ⊆ A × B`, stored as `R(a) ⊆ B` for each `a ∈ A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    target_len: usize,
    rows: Vec<Bits>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rows.iter().map(Bits::to_bitstring).collect::<Vec<_>>().join("|"))
    }
}

impl Relation {
    pub fn empty(source_len: usize, target_len: usize) -> Relation {
        Relation { target_len, rows: vec![Bits::empty(target_len); source_len] }
    }

    pub fn full(source_len: usize, target_len: usize) -> Relation {
        Relation { target_len, rows: vec![Bits::full(target_len); source_len] }
    }

    pub fn identity(n: usize) -> Relation {
        Relation { target_len: n, rows: (0..n).map(|i| Bits::singleton(n, i)).collect() }
    }

    /// Panics if a row is over the wrong universe.
    pub fn from_rows(target_len: usize, rows: Vec<Bits>) -> Relation {
        assert!(rows.iter().all(|r| r.universe() == target_len), "relation row over the wrong universe");
        Relation { target_len, rows }
    }

    /// Calls `f` in row-major order.
    pub fn from_fn(source_len: usize, target_len: usize, mut f: impl FnMut(usize, usize) -> bool) -> Relation {
        let rows =
            (0..source_len).map(|a| Bits::from_indices(target_len, (0..target_len).filter(|&b| f(a, b)).collect::<Vec<_>>())).collect();
        Relation { target_len, rows }
    }

    pub fn from_matrix(m: &[Vec<bool>], target_len: usize) -> Option<Relation> {
        if m.iter().any(|r| r.len() != target_len) {
            return None;
        }
        Some(Relation { target_len, rows: m.iter().map(|r| Bits::from_bools(r)).collect() })
    }

    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(Bits::to_bools).collect()
    }

    pub fn source_len(&self) -> usize {
        self.rows.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn row(&self, a: usize) -> &Bits {
        &self.rows[a]
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// `R(X) = ⋃_{x ∈ X} R(x)`.
    pub fn image(&self, xs: &Bits) -> Bits {
        let mut acc = Bits::empty(self.target_len);
        for x in xs.ones() {
            acc.union_with(&self.rows[x]);
        }
        acc
    }

    /// `R^•(Y) = {a | R(a) ⊆ Y}`, the right adjoint of `X ↦ R(X)`.
    pub fn bullet(&self, ys: &Bits) -> Bits {
        Bits::from_indices(self.rows.len(), (0..self.rows.len()).filter(|&a| self.rows[a].is_subset(ys)))
    }

    /// `R_•(X) = {b | R(x, b) for all x ∈ X}`.
    pub fn lower_bullet(&self, xs: &Bits) -> Bits {
        let mut acc = Bits::full(self.target_len);
        for x in xs.ones() {
            acc.intersect_with(&self.rows[x]);
        }
        acc
    }

    /// `R†`.
    pub fn transpose(&self) -> Relation {
        let mut rows = vec![Bits::empty(self.rows.len()); self.target_len];
        for (a, r) in self.rows.iter().enumerate() {
            for b in r.ones() {
                rows[b].insert(a);
            }
        }
        Relation { target_len: self.rows.len(), rows }
    }

    /// Plain relational composite `S ∘ R` (no closure).
    pub fn then(&self, s: &Relation) -> Relation {
        Relation { target_len: s.target_len, rows: self.rows.iter().map(|r| s.image(r)).collect() }
    }

    /// Rows as `'0'/'1'` strings joined by `|`; the canonical text form.
    pub fn to_key(&self) -> String {
        format!("{self:?}")
    }
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    target_len: usize,
    rows: Vec<String>,
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RelationRepr { target_len: self.target_len, rows: self.rows.iter().map(Bits::to_bitstring).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RelationRepr::deserialize(d)?;
        let mut rows = Vec::new();
        for r in &repr.rows {
            if r.len() != repr.target_len || !r.chars().all(|c| c == '0' || c == '1') {
                return Err(serde::de::Error::custom(format!("bad relation row {r:?}")));
            }
            rows.push(Bits::from_indices(repr.target_len, r.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| i)));
        }
        Ok(Relation { target_len: repr.target_len, rows })
    }
}
