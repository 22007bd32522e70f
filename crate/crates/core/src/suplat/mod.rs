//! Finite complete lattices and join-preserving maps.

pub mod functor;
pub mod lattice;
pub mod supmap;
pub mod tensor;

pub use functor::{
    concept_functor_mor, concept_functor_obj, concept_lattice, concept_to_effect, concept_to_state, context_functor_mor,
    context_functor_obj, counit_iso, effect_to_concept, effects_iso, state_to_concept, states_iso, unit_iso,
};
pub use lattice::{find_isomorphism, is_order_isomorphism, isomorphic, FiniteLattice, LatticeId};
pub use supmap::{enumerate_sup_maps, hom_lattice, suplat_lattice_tensor, SupMap, SupMapJson};
pub use tensor::{
    is_mutually_distributive, phi_iso, suplat_concept_tensor, tensor_of_maps, universal_map, DistributivityFailure, WilleTensor,
};
