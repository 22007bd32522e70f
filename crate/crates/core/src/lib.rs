//! Formal contexts as a category.
//!
//! Objects are finite formal contexts; morphisms are bonds (equivalently
//! closed relations, or Chu correspondences). On top of that the crate
//! provides the concept tensor and the lattice tensor, the equivalence with
//! finite sup-lattices via the concept-lattice functor, a small
//! compositional-semantics pipeline over protogroup types, and a law-checking
//! harness that certifies all of it against brute-force oracles.

pub mod autonomy;
pub mod bits;
pub mod concepts;
pub mod context;
pub mod disco;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod io;
pub mod lawcheck;
pub mod limits;
pub mod monoidal;
pub mod morphism;
pub mod relation;
pub mod suplat;

pub use bits::Bits;
pub use concepts::{enumerate_concepts, Concept, ConceptLattice};
pub use context::{AttributeSet, ContextId, FormalContext, ObjectSet};
pub use error::{Error, Result};
pub use limits::Limits;
pub use monoidal::TensorKind;
pub use morphism::{ChuPair, ContextMorphism, Witness};
pub use relation::Relation;
pub use suplat::{FiniteLattice, SupMap};
