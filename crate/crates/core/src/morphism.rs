//! Morphisms of formal contexts.
//!
//! A morphism `K₁ → K₂` has four equivalent descriptions:
//!
//! * extent relation `R: G₁ → P(G₂)` with closed rows, whose preimage
//!   operator `R^•` sends extents to extents;
//! * intent relation `R*: M₂ → P(M₁)`, the same thing for `K₂* → K₁*`;
//! * Chu pair `(R, R*)` with `R(g) I m ⟺ g I R*(m)`;
//! * bond `B ⊆ G₁ × M₂` with closed rows and closed columns.
//!
//! They are related by `B(g) = R(g)'`, `R(g) = B(g)'`, `R*(m) = B†(m)'` and
//! `B†(m) = R*(m)'`. A [`ContextMorphism`] stores the bond and derives the
//! other views on first use.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::concepts::next_closure_extents;
use crate::context::{ContextId, FormalContext};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// Why a relation fails to be a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Shape(String),
    /// Row `row` is not closed in the target.
    RowNotClosed {
        row: usize,
    },
    /// Column `column` of a bond is not closed in the source.
    ColumnNotClosed {
        column: usize,
    },
    /// `extent` is closed in the target but its preimage is not closed.
    PreimageNotClosed {
        extent: Bits,
    },
    /// `close(R(A)) ≠ close(R(close(A)))` for this `A`.
    ClosureMismatch {
        subset: Bits,
    },
    /// The Chu condition fails at this object/attribute pair.
    ChuMismatch {
        object: usize,
        attribute: usize,
    },
    /// `C_•(Y)` is not closed, where `C = B†`.
    CompatibleNotClosed {
        subset: Bits,
    },
    /// `C_•(Y) ≠ C_•(close(Y))`.
    CompatibleNotStable {
        subset: Bits,
    },
    /// A cached view disagrees with the bond.
    ViewMismatch(&'static str),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Shape(s) => write!(f, "shape: {s}"),
            Witness::RowNotClosed { row } => write!(f, "row {row} is not closed"),
            Witness::ColumnNotClosed { column } => write!(f, "column {column} is not closed"),
            Witness::PreimageNotClosed { extent } => write!(f, "preimage of closed set {extent:?} is not closed"),
            Witness::ClosureMismatch { subset } => write!(f, "close(R(A)) != close(R(close(A))) at A = {subset:?}"),
            Witness::ChuMismatch { object, attribute } => write!(f, "Chu condition fails at ({object}, {attribute})"),
            Witness::CompatibleNotClosed { subset } => write!(f, "C_•(Y) not closed at Y = {subset:?}"),
            Witness::CompatibleNotStable { subset } => write!(f, "C_•(Y) != C_•(Y'') at Y = {subset:?}"),
            Witness::ViewMismatch(which) => write!(f, "{which} view disagrees with the bond"),
        }
    }
}

fn invalid(w: Witness) -> Error {
    Error::InvalidMorphism(w.to_string())
}

fn check_shape(r: &Relation, rows: usize, cols: usize, what: &str) -> std::result::Result<(), Witness> {
    if r.source_len() != rows || r.target_len() != cols {
        return Err(Witness::Shape(format!("{what} is {}x{}, expected {rows}x{cols}", r.source_len(), r.target_len())));
    }
    Ok(())
}

// --- validity checks on raw relations ----------------------------------

/// Definitional check that `r: G₁ → P(G₂)` is a closed relation `k1 → k2`:
/// every row is an extent of `k2`, and `r^•` maps extents of `k2` to extents of `k1`.
pub fn check_closed_relation(k1: &FormalContext, k2: &FormalContext, r: &Relation) -> std::result::Result<(), Witness> {
    check_shape(r, k1.n_objects(), k2.n_objects(), "extent relation")?;
    if let Some(row) = (0..r.source_len()).find(|&g| !k2.is_extent(r.row(g))) {
        return Err(Witness::RowNotClosed { row });
    }
    for extent in next_closure_extents(k2) {
        if !k1.is_extent(&r.bullet(&extent)) {
            return Err(Witness::PreimageNotClosed { extent });
        }
    }
    Ok(())
}

/// The same predicate through the closure characterisation: closed rows and
/// `close(R(A)) = close(R(close(A)))` for every `A ⊆ G₁`. Exponential in `|G₁|`.
pub fn check_closed_relation_by_closure(k1: &FormalContext, k2: &FormalContext, r: &Relation) -> std::result::Result<(), Witness> {
    check_shape(r, k1.n_objects(), k2.n_objects(), "extent relation")?;
    if let Some(row) = (0..r.source_len()).find(|&g| !k2.is_extent(r.row(g))) {
        return Err(Witness::RowNotClosed { row });
    }
    for a in Bits::all_subsets(k1.n_objects()) {
        let lhs = k2.close_objects_raw(&r.image(&a));
        let rhs = k2.close_objects_raw(&r.image(&k1.close_objects_raw(&a)));
        if lhs != rhs {
            return Err(Witness::ClosureMismatch { subset: a });
        }
    }
    Ok(())
}

pub fn is_closed_relation(k1: &FormalContext, k2: &FormalContext, r: &Relation) -> std::result::Result<(), Witness> {
    check_closed_relation(k1, k2, r)
}

/// Rows closed in `k2` (as intents), columns closed in `k1` (as extents).
pub fn check_bond(k1: &FormalContext, k2: &FormalContext, b: &Relation) -> std::result::Result<(), Witness> {
    check_shape(b, k1.n_objects(), k2.n_attributes(), "bond")?;
    if let Some(row) = (0..b.source_len()).find(|&g| !k2.is_intent(b.row(g))) {
        return Err(Witness::RowNotClosed { row });
    }
    let t = b.transpose();
    if let Some(column) = (0..t.source_len()).find(|&m| !k1.is_extent(t.row(m))) {
        return Err(Witness::ColumnNotClosed { column });
    }
    Ok(())
}

/// Compatibility in the sense of Moshier: with `C = B†`,
/// `close(C_•(Y)) = C_•(Y) = C_•(close(Y))` for every `Y ⊆ M₂`.
/// Exponential in `|M₂|`; agrees with [`check_bond`].
pub fn is_compatible_relation(k1: &FormalContext, k2: &FormalContext, b: &Relation) -> std::result::Result<(), Witness> {
    check_shape(b, k1.n_objects(), k2.n_attributes(), "bond")?;
    let c = b.transpose();
    for y in Bits::all_subsets(k2.n_attributes()) {
        let lower = c.lower_bullet(&y);
        if !k1.is_extent(&lower) {
            return Err(Witness::CompatibleNotClosed { subset: y });
        }
        if lower != c.lower_bullet(&k2.close_attributes_raw(&y)) {
            return Err(Witness::CompatibleNotStable { subset: y });
        }
    }
    Ok(())
}

// --- conversions on raw relations -------------------------------------

/// `R(g) = B(g)'`.
pub fn extent_from_bond(k2: &FormalContext, b: &Relation) -> Relation {
    Relation::from_rows(k2.n_objects(), b.rows().iter().map(|r| k2.extent_of(r)).collect())
}

/// `B(g) = R(g)'`.
pub fn bond_from_extent(k2: &FormalContext, r: &Relation) -> Relation {
    Relation::from_rows(k2.n_attributes(), r.rows().iter().map(|x| k2.intent_of(x)).collect())
}

/// `R*(m) = B†(m)'`.
pub fn intent_from_bond(k1: &FormalContext, b: &Relation) -> Relation {
    let t = b.transpose();
    Relation::from_rows(k1.n_attributes(), t.rows().iter().map(|c| k1.intent_of(c)).collect())
}

/// `B†(m) = R*(m)'`.
pub fn bond_from_intent(k1: &FormalContext, s: &Relation) -> Relation {
    let cols = Relation::from_rows(k1.n_objects(), s.rows().iter().map(|y| k1.extent_of(y)).collect());
    cols.transpose()
}

/// `R*(m₂) = R^•(m₂')'`, straight from the extent relation.
pub fn extent_to_intent(k1: &FormalContext, k2: &FormalContext, r: &Relation) -> Relation {
    Relation::from_rows(k1.n_attributes(), (0..k2.n_attributes()).map(|m| k1.intent_of(&r.bullet(k2.col(m)))).collect())
}

/// `R(g₁) = (R*)^•(g₁')'`, the mirror image of [`extent_to_intent`].
pub fn intent_to_extent(k1: &FormalContext, k2: &FormalContext, s: &Relation) -> Relation {
    Relation::from_rows(k2.n_objects(), (0..k1.n_objects()).map(|g| k2.extent_of(&s.bullet(k1.row(g)))).collect())
}

/// `(B₂ ∘ B₁)(g) = (B₂)_•(B₁(g)')`, the composite in the category of bonds.
pub fn bond_compose(k2: &FormalContext, b2: &Relation, b1: &Relation) -> Relation {
    Relation::from_rows(b2.target_len(), b1.rows().iter().map(|r| b2.lower_bullet(&k2.extent_of(r))).collect())
}

/// Moshier's composite: `(B₂ • B₁)†(m) = (C₁)_•((C₂)_•({m})')` with `Cᵢ = Bᵢ†`.
pub fn moshier_compose(k2: &FormalContext, b2: &Relation, b1: &Relation) -> Relation {
    let c1 = b1.transpose();
    let c2 = b2.transpose();
    let dagger = Relation::from_rows(
        b1.source_len(),
        (0..b2.target_len()).map(|m| c1.lower_bullet(&k2.intent_of(&c2.lower_bullet(&Bits::singleton(b2.target_len(), m))))).collect(),
    );
    dagger.transpose()
}

// --- the morphism type ------------------------------------------------

/// Extent and intent relations of one morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChuPair {
    pub extent: Relation,
    pub intent: Relation,
}

pub struct ContextMorphism {
    source: Arc<FormalContext>,
    target: Arc<FormalContext>,
    bond: Relation,
    extent: OnceLock<Relation>,
    intent: OnceLock<Relation>,
}

impl Clone for ContextMorphism {
    fn clone(&self) -> Self {
        ContextMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            bond: self.bond.clone(),
            extent: self.extent.clone(),
            intent: self.intent.clone(),
        }
    }
}

impl fmt::Debug for ContextMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} bond {:?}", self.source.name(), self.target.name(), self.bond)
    }
}

/// Equal when source, target, bond and extent view all agree. For valid
/// morphisms the extent view is determined by the bond; comparing it too
/// makes deliberately broken morphisms distinguishable.
impl PartialEq for ContextMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source.id() == other.source.id()
            && self.target.id() == other.target.id()
            && self.bond == other.bond
            && self.extent() == other.extent()
    }
}

impl Eq for ContextMorphism {}

impl Hash for ContextMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.id().hash(state);
        self.target.id().hash(state);
        self.bond.hash(state);
    }
}

/// `{"source":hash,"target":hash,"bond":[[bool]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: String,
    pub target: String,
    pub bond: Vec<Vec<bool>>,
}

impl ContextMorphism {
    pub fn from_bond(source: Arc<FormalContext>, target: Arc<FormalContext>, bond: Relation) -> Result<Self> {
        check_bond(&source, &target, &bond).map_err(invalid)?;
        Ok(Self::from_bond_unchecked(source, target, bond))
    }

    pub fn from_bond_matrix(source: Arc<FormalContext>, target: Arc<FormalContext>, m: &[Vec<bool>]) -> Result<Self> {
        let bond = Relation::from_matrix(m, target.n_attributes())
            .ok_or_else(|| Error::InvalidMorphism("bond rows have the wrong length".into()))?;
        Self::from_bond(source, target, bond)
    }

    pub fn from_extent(source: Arc<FormalContext>, target: Arc<FormalContext>, r: Relation) -> Result<Self> {
        check_closed_relation(&source, &target, &r).map_err(invalid)?;
        let bond = bond_from_extent(&target, &r);
        let m = Self::from_bond_unchecked(source, target, bond);
        let _ = m.extent.set(r);
        Ok(m)
    }

    pub fn from_intent(source: Arc<FormalContext>, target: Arc<FormalContext>, s: Relation) -> Result<Self> {
        check_closed_relation(&target.dual(), &source.dual(), &s).map_err(invalid)?;
        let bond = bond_from_intent(&source, &s);
        let m = Self::from_bond_unchecked(source, target, bond);
        let _ = m.intent.set(s);
        Ok(m)
    }

    pub fn from_chu(source: Arc<FormalContext>, target: Arc<FormalContext>, chu: ChuPair) -> Result<Self> {
        let ChuPair { extent, intent } = chu;
        check_shape(&extent, source.n_objects(), target.n_objects(), "extent relation").map_err(invalid)?;
        check_shape(&intent, target.n_attributes(), source.n_attributes(), "intent relation").map_err(invalid)?;
        if let Some(row) = (0..extent.source_len()).find(|&g| !target.is_extent(extent.row(g))) {
            return Err(invalid(Witness::RowNotClosed { row }));
        }
        if let Some(row) = (0..intent.source_len()).find(|&m| !source.is_intent(intent.row(m))) {
            return Err(invalid(Witness::RowNotClosed { row }));
        }
        for g in 0..source.n_objects() {
            let lhs = target.intent_of(extent.row(g));
            for m in 0..target.n_attributes() {
                if lhs.contains(m) != intent.row(m).is_subset(source.row(g)) {
                    return Err(invalid(Witness::ChuMismatch { object: g, attribute: m }));
                }
            }
        }
        let bond = bond_from_extent(&target, &extent);
        let m = Self::from_bond_unchecked(source, target, bond);
        let _ = m.extent.set(extent);
        let _ = m.intent.set(intent);
        Ok(m)
    }

    pub fn from_json(json: &MorphismJson, source: Arc<FormalContext>, target: Arc<FormalContext>) -> Result<Self> {
        if json.source != source.id().to_string() || json.target != target.id().to_string() {
            return Err(Error::DomainMismatch(format!(
                "morphism {} -> {} does not belong to contexts {} -> {}",
                json.source,
                json.target,
                source.id(),
                target.id()
            )));
        }
        Self::from_bond_matrix(source, target, &json.bond)
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson { source: self.source.id().to_string(), target: self.target.id().to_string(), bond: self.bond.to_matrix() }
    }

    pub(crate) fn from_bond_unchecked(source: Arc<FormalContext>, target: Arc<FormalContext>, bond: Relation) -> Self {
        ContextMorphism { source, target, bond, extent: OnceLock::new(), intent: OnceLock::new() }
    }

    /// A morphism whose extent view is supplied rather than derived. Only
    /// sound when `extent = extent_from_bond(bond)`; used to build
    /// deliberately broken morphisms.
    pub(crate) fn from_parts_unchecked(source: Arc<FormalContext>, target: Arc<FormalContext>, bond: Relation, extent: Relation) -> Self {
        let m = Self::from_bond_unchecked(source, target, bond);
        let _ = m.extent.set(extent);
        m
    }

    /// `g ↦ close({g})`; its bond is the incidence relation.
    pub fn identity(k: Arc<FormalContext>) -> Self {
        let bond = Relation::from_rows(k.n_attributes(), k.rows().to_vec());
        Self::from_bond_unchecked(k.clone(), k, bond)
    }

    pub fn source(&self) -> &Arc<FormalContext> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FormalContext> {
        &self.target
    }

    pub fn bond(&self) -> &Relation {
        &self.bond
    }

    /// `R: G₁ → P(G₂)`.
    pub fn extent(&self) -> &Relation {
        self.extent.get_or_init(|| extent_from_bond(&self.target, &self.bond))
    }

    /// `R*: M₂ → P(M₁)`.
    pub fn intent(&self) -> &Relation {
        self.intent.get_or_init(|| intent_from_bond(&self.source, &self.bond))
    }

    pub fn to_chu(&self) -> ChuPair {
        ChuPair { extent: self.extent().clone(), intent: self.intent().clone() }
    }

    /// Checks the bond and that every view present agrees with it.
    pub fn validate(&self) -> std::result::Result<(), Witness> {
        if let Some(e) = self.extent.get() {
            check_shape(e, self.source.n_objects(), self.target.n_objects(), "extent relation")?;
            if let Some(row) = (0..e.source_len()).find(|&g| !self.target.is_extent(e.row(g))) {
                return Err(Witness::RowNotClosed { row });
            }
            if e != &extent_from_bond(&self.target, &self.bond) {
                return Err(Witness::ViewMismatch("extent"));
            }
        }
        if let Some(i) = self.intent.get() {
            if i != &intent_from_bond(&self.source, &self.bond) {
                return Err(Witness::ViewMismatch("intent"));
            }
        }
        check_bond(&self.source, &self.target, &self.bond)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// `self ∘ r`: extent rows `g ↦ close(S(R(g)))`.
    pub fn compose(&self, r: &ContextMorphism) -> Result<ContextMorphism> {
        if r.target.id() != self.source.id() {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                r.source.name(),
                r.target.name()
            )));
        }
        let k3 = &self.target;
        let s = self.extent();
        let rows: Vec<Bits> = r.extent().rows().iter().map(|x| k3.close_objects_raw(&s.image(x))).collect();
        let extent = Relation::from_rows(k3.n_objects(), rows);
        let bond = bond_from_extent(k3, &extent);
        Ok(Self::from_parts_unchecked(r.source.clone(), k3.clone(), bond, extent))
    }

    /// `R*: K₂* → K₁*`; the bond is transposed and the two views swap.
    pub fn dual(&self) -> ContextMorphism {
        let m = Self::from_bond_unchecked(Arc::new(self.target.dual()), Arc::new(self.source.dual()), self.bond.transpose());
        if let Some(i) = self.intent.get() {
            let _ = m.extent.set(i.clone());
        }
        if let Some(e) = self.extent.get() {
            let _ = m.intent.set(e.clone());
        }
        m
    }

    /// Order of the hom-lattice: inclusion of extent relations.
    pub fn leq(&self, other: &ContextMorphism) -> bool {
        self.extent().is_subset(other.extent())
    }

    pub fn source_id(&self) -> ContextId {
        self.source.id()
    }

    pub fn target_id(&self) -> ContextId {
        self.target.id()
    }
}

pub fn identity(k: &Arc<FormalContext>) -> ContextMorphism {
    ContextMorphism::identity(k.clone())
}

/// `s ∘ r`.
pub fn compose(s: &ContextMorphism, r: &ContextMorphism) -> Result<ContextMorphism> {
    s.compose(r)
}

pub fn dual_morphism(r: &ContextMorphism) -> ContextMorphism {
    r.dual()
}

/// Composite of two morphisms computed purely on bonds.
pub fn compose_bonds(s: &ContextMorphism, r: &ContextMorphism) -> Result<ContextMorphism> {
    if r.target.id() != s.source.id() {
        return Err(Error::DomainMismatch("bond composite of non-composable morphisms".into()));
    }
    let bond = bond_compose(&s.source, &s.bond, &r.bond);
    Ok(ContextMorphism::from_bond_unchecked(r.source.clone(), s.target.clone(), bond))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn arc(k: FormalContext) -> Arc<FormalContext> {
        Arc::new(k)
    }

    #[test]
    fn identity_bonds() {
        let i = arc(FormalContext::trivial());
        assert_eq!(identity(&i).bond().to_matrix(), vec![vec![false]]);
        let s2 = arc(fixtures::s(2));
        assert_eq!(identity(&s2).bond().to_matrix(), vec![vec![false, true], vec![true, false]]);
        let a = arc(fixtures::animals());
        let id = identity(&a);
        assert_eq!(id.bond().to_matrix(), a.incidence());
        assert!(id.is_valid());
        for g in 0..4 {
            assert_eq!(id.extent().row(g), &a.close_objects_raw(&Bits::singleton(4, g)));
        }
    }

    #[test]
    fn empty_row_rejected_when_empty_set_not_closed() {
        // object 0 of the 2-chain has every attribute, so close(∅) = {0}
        let k = arc(fixtures::chain_context(2));
        let r = Relation::empty(k.n_objects(), k.n_objects());
        assert_eq!(check_closed_relation(&k, &k, &r), Err(Witness::RowNotClosed { row: 0 }));
        assert!(ContextMorphism::from_extent(k.clone(), k, r).is_err());
    }

    #[test]
    fn four_views_round_trip() {
        let a = arc(fixtures::animals());
        let c3 = arc(fixtures::chain_context(3));
        let id = identity(&a);
        let back = ContextMorphism::from_intent(a.clone(), a.clone(), id.intent().clone()).unwrap();
        assert_eq!(back, id);
        let chu = ContextMorphism::from_chu(a.clone(), a.clone(), id.to_chu()).unwrap();
        assert_eq!(chu.bond(), id.bond());
        assert_eq!(extent_to_intent(&a, &a, id.extent()), *id.intent());
        assert_eq!(intent_to_extent(&a, &a, id.intent()), *id.extent());
        let d = identity(&c3).dual();
        assert_eq!(d, identity(&arc(c3.dual())));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = arc(fixtures::animals());
        let s2 = arc(fixtures::s(2));
        assert!(matches!(identity(&a).compose(&identity(&s2)), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn broken_view_is_detected() {
        let k = arc(fixtures::s(2));
        let id = identity(&k);
        let wrong = ContextMorphism::from_parts_unchecked(k.clone(), k.clone(), id.bond().clone(), Relation::full(2, 2));
        assert_eq!(wrong.validate(), Err(Witness::ViewMismatch("extent")));
        assert_ne!(wrong, id);
    }

    #[test]
    fn json_round_trip() {
        let k = arc(fixtures::animals());
        let id = identity(&k);
        let j = id.to_json();
        assert_eq!(ContextMorphism::from_json(&j, k.clone(), k.clone()).unwrap(), id);
        let other = arc(fixtures::s(4));
        assert!(ContextMorphism::from_json(&j, other.clone(), other).is_err());
    }
}
