//! Formal contexts and their derivation operators.
//!
//! A [`FormalContext`] is a finite cross-table `(G, M, I)`. Objects and
//! attributes are addressed by index; labels are resolved to indices once,
//! when the context is built or parsed.
//!
//! The derivation operators come in two flavours: raw operators on [`Bits`]
//! (used by everything internal) and typed operators on [`ObjectSet`] /
//! [`AttributeSet`], which remember the context they index into and refuse to
//! be mixed across contexts.

use std::collections::HashSet;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Structural fingerprint of a context: labels and incidence, not the name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextId(pub u64);

impl fmt::Display for ContextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::Debug for ContextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContextId({self})")
    }
}

#[derive(Clone)]
pub struct FormalContext {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    /// Object index -> attributes it has.
    rows: Vec<Bits>,
    /// Attribute index -> objects having it.
    cols: Vec<Bits>,
    id: ContextId,
}

impl PartialEq for FormalContext {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.objects == other.objects && self.attributes == other.attributes && self.rows == other.rows
    }
}

impl Eq for FormalContext {}

impl fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FormalContext {:?} ({}x{})", self.name, self.n_objects(), self.n_attributes())?;
        for (g, row) in self.rows.iter().enumerate() {
            let cells: String = (0..self.n_attributes()).map(|m| if row.contains(m) { 'X' } else { '.' }).collect();
            writeln!(f, "  {:>12} {}", self.objects[g], cells)?;
        }
        Ok(())
    }
}

fn check_distinct(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidContext(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(())
}

fn fingerprint(objects: &[String], attributes: &[String], rows: &[Bits]) -> ContextId {
    let mut h = Sha256::new();
    h.update((objects.len() as u64).to_le_bytes());
    h.update((attributes.len() as u64).to_le_bytes());
    for l in objects.iter().chain(attributes) {
        h.update((l.len() as u64).to_le_bytes());
        h.update(l.as_bytes());
    }
    for r in rows {
        h.update(r.to_bitstring().as_bytes());
    }
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    ContextId(u64::from_be_bytes(bytes))
}

impl FormalContext {
    /// Builds a context from per-object attribute rows.
    pub fn from_rows(name: impl Into<String>, objects: Vec<String>, attributes: Vec<String>, rows: Vec<Bits>) -> Result<Self> {
        check_distinct(&objects, "object")?;
        check_distinct(&attributes, "attribute")?;
        if rows.len() != objects.len() {
            return Err(Error::InvalidContext(format!("{} incidence rows for {} objects", rows.len(), objects.len())));
        }
        if let Some(r) = rows.iter().find(|r| r.universe() != attributes.len()) {
            return Err(Error::InvalidContext(format!("incidence row over {} attributes, expected {}", r.universe(), attributes.len())));
        }
        let mut cols = vec![Bits::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row.ones() {
                cols[m].insert(g);
            }
        }
        let id = fingerprint(&objects, &attributes, &rows);
        Ok(FormalContext { name: name.into(), objects, attributes, rows, cols, id })
    }

    pub fn new(name: impl Into<String>, objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self> {
        if let Some(r) = incidence.iter().find(|r| r.len() != attributes.len()) {
            return Err(Error::InvalidContext(format!("incidence row of length {}, expected {}", r.len(), attributes.len())));
        }
        let rows = incidence.iter().map(|r| Bits::from_bools(r)).collect();
        Self::from_rows(name, objects, attributes, rows)
    }

    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n_m = attributes.len();
        let rows = (0..objects.len()).map(|g| Bits::from_indices(n_m, (0..n_m).filter(|&m| incident(g, m)))).collect();
        Self::from_rows(name, objects, attributes, rows)
    }

    /// `S_A = (A, A, ≠)`. Every subset of `A` is closed in it.
    pub fn from_set<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let name = format!("S{{{}}}", labels.join(","));
        Self::from_fn(name, labels.clone(), labels, |i, j| i != j)
    }

    /// The tensor unit `I = S_{⋆}`: one object, one attribute, no incidence.
    pub fn trivial() -> Self {
        Self::from_set(&["*"]).expect("singleton").with_name("I")
    }

    /// `F(P) = (P, P, ≤)` for a finite poset given by its order matrix.
    ///
    /// The matrix is checked to be reflexive, antisymmetric and transitive.
    pub fn from_poset<S: AsRef<str>>(labels: &[S], leq: &[Vec<bool>]) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidContext("order matrix shape does not match the labels".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidContext(format!("order is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidContext(format!("order is not antisymmetric at ({i},{j})")));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidContext(format!("order is not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_fn("F(P)", labels.clone(), labels, |i, j| leq[i][j])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn id(&self) -> ContextId {
        self.id
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// `g'` as a raw attribute set.
    pub fn row(&self, g: usize) -> &Bits {
        &self.rows[g]
    }

    /// `m'` as a raw object set.
    pub fn col(&self, m: usize) -> &Bits {
        &self.cols[m]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(Bits::to_bools).collect()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn attribute_index(&self, label: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == label)
    }

    // --- raw derivation operators -------------------------------------

    /// `A'`: attributes shared by every object of `A`.
    pub fn intent_of(&self, objects: &Bits) -> Bits {
        let mut acc = Bits::full(self.n_attributes());
        for g in objects.ones() {
            acc.intersect_with(&self.rows[g]);
        }
        acc
    }

    /// `B'`: objects having every attribute of `B`.
    pub fn extent_of(&self, attributes: &Bits) -> Bits {
        let mut acc = Bits::full(self.n_objects());
        for m in attributes.ones() {
            acc.intersect_with(&self.cols[m]);
        }
        acc
    }

    pub fn close_objects_raw(&self, objects: &Bits) -> Bits {
        self.extent_of(&self.intent_of(objects))
    }

    pub fn close_attributes_raw(&self, attributes: &Bits) -> Bits {
        self.intent_of(&self.extent_of(attributes))
    }

    pub fn is_extent(&self, objects: &Bits) -> bool {
        &self.close_objects_raw(objects) == objects
    }

    pub fn is_intent(&self, attributes: &Bits) -> bool {
        &self.close_attributes_raw(attributes) == attributes
    }

    // --- typed sets ----------------------------------------------------

    pub fn object_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<ObjectSet> {
        let bits =
            Bits::from_indices(self.n_objects(), indices.into_iter().map(|i| self.check_index(i, true)).collect::<Result<Vec<_>>>()?);
        Ok(ObjectSet { ctx: self.id, bits })
    }

    pub fn attribute_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<AttributeSet> {
        let bits =
            Bits::from_indices(self.n_attributes(), indices.into_iter().map(|i| self.check_index(i, false)).collect::<Result<Vec<_>>>()?);
        Ok(AttributeSet { ctx: self.id, bits })
    }

    pub fn objects_by_label(&self, labels: &[&str]) -> Result<ObjectSet> {
        let idx = labels
            .iter()
            .map(|l| self.object_index(l).ok_or_else(|| Error::DomainMismatch(format!("no object {l:?} in {:?}", self.name))))
            .collect::<Result<Vec<_>>>()?;
        self.object_set(idx)
    }

    pub fn attributes_by_label(&self, labels: &[&str]) -> Result<AttributeSet> {
        let idx = labels
            .iter()
            .map(|l| self.attribute_index(l).ok_or_else(|| Error::DomainMismatch(format!("no attribute {l:?} in {:?}", self.name))))
            .collect::<Result<Vec<_>>>()?;
        self.attribute_set(idx)
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet { ctx: self.id, bits: Bits::full(self.n_objects()) }
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet { ctx: self.id, bits: Bits::full(self.n_attributes()) }
    }

    pub(crate) fn wrap_objects(&self, bits: Bits) -> ObjectSet {
        debug_assert_eq!(bits.universe(), self.n_objects());
        ObjectSet { ctx: self.id, bits }
    }

    pub(crate) fn wrap_attributes(&self, bits: Bits) -> AttributeSet {
        debug_assert_eq!(bits.universe(), self.n_attributes());
        AttributeSet { ctx: self.id, bits }
    }

    fn check_index(&self, i: usize, object: bool) -> Result<usize> {
        let n = if object { self.n_objects() } else { self.n_attributes() };
        if i >= n {
            return Err(Error::DomainMismatch(format!(
                "{} index {i} out of range for {:?} ({n})",
                if object { "object" } else { "attribute" },
                self.name
            )));
        }
        Ok(i)
    }

    fn own_objects<'a>(&self, a: &'a ObjectSet) -> Result<&'a Bits> {
        if a.ctx != self.id {
            return Err(Error::DomainMismatch(format!("object set of context {} used with {}", a.ctx, self.id)));
        }
        Ok(&a.bits)
    }

    fn own_attributes<'a>(&self, b: &'a AttributeSet) -> Result<&'a Bits> {
        if b.ctx != self.id {
            return Err(Error::DomainMismatch(format!("attribute set of context {} used with {}", b.ctx, self.id)));
        }
        Ok(&b.bits)
    }

    /// `A ↦ A'`. The empty set derives to all of `M`.
    pub fn derive_objects(&self, a: &ObjectSet) -> Result<AttributeSet> {
        Ok(self.wrap_attributes(self.intent_of(self.own_objects(a)?)))
    }

    /// `B ↦ B'`. The empty set derives to all of `G`.
    pub fn derive_attributes(&self, b: &AttributeSet) -> Result<ObjectSet> {
        Ok(self.wrap_objects(self.extent_of(self.own_attributes(b)?)))
    }

    pub fn close_objects(&self, a: &ObjectSet) -> Result<ObjectSet> {
        Ok(self.wrap_objects(self.close_objects_raw(self.own_objects(a)?)))
    }

    pub fn close_attributes(&self, b: &AttributeSet) -> Result<AttributeSet> {
        Ok(self.wrap_attributes(self.close_attributes_raw(self.own_attributes(b)?)))
    }

    /// `K* = (M, G, I†)`. The name is kept so that dualising twice is the identity.
    pub fn dual(&self) -> FormalContext {
        FormalContext::from_rows(self.name.clone(), self.attributes.clone(), self.objects.clone(), self.cols.clone())
            .expect("transpose of a valid context")
    }
}

/// A subset of the objects of one particular context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ObjectSet {
    ctx: ContextId,
    bits: Bits,
}

/// A subset of the attributes of one particular context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AttributeSet {
    ctx: ContextId,
    bits: Bits,
}

macro_rules! set_accessors {
    ($t:ident, $labels:ident) => {
        impl $t {
            pub fn context(&self) -> ContextId {
                self.ctx
            }

            pub fn bits(&self) -> &Bits {
                &self.bits
            }

            pub fn into_bits(self) -> Bits {
                self.bits
            }

            pub fn contains(&self, i: usize) -> bool {
                self.bits.contains(i)
            }

            pub fn len(&self) -> usize {
                self.bits.count()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }

            pub fn indices(&self) -> Vec<usize> {
                self.bits.to_vec()
            }

            pub fn is_subset(&self, other: &$t) -> Result<bool> {
                if self.ctx != other.ctx {
                    return Err(Error::DomainMismatch("comparing sets of different contexts".into()));
                }
                Ok(self.bits.is_subset(&other.bits))
            }

            pub fn labels<'k>(&self, k: &'k FormalContext) -> Vec<&'k str> {
                self.bits.ones().map(|i| k.$labels[i].as_str()).collect()
            }
        }
    };
}

set_accessors!(ObjectSet, objects);
set_accessors!(AttributeSet, attributes);
