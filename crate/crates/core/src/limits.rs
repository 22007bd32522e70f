//! Desk-scale size caps.
//!
//! Everything in this crate is brute force. The caps keep user-facing entry
//! points (the CLI, lexicon loading) away from inputs whose enumeration would
//! not terminate in reasonable time. Library internals only enforce
//! [`Limits::max_hom`], the budget for hom-set enumeration.

use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_objects`].
pub const MAX_SIZE_ENV: &str = "CXTCAT_MAX_SIZE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest |G| or |M| accepted for concept enumeration.
    pub max_objects: usize,
    /// Largest |G| or |M| per factor of a lattice tensor.
    pub max_box_factor: usize,
    /// Largest |G| or |M| per factor of a concept tensor.
    pub max_concept_factor: usize,
    /// Largest hom-set (or search frontier) enumerated before giving up.
    pub max_hom: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_objects: 20, max_box_factor: 3, max_concept_factor: 6, max_hom: 200_000 }
    }
}

impl Limits {
    /// Defaults, with `max_objects` taken from `CXTCAT_MAX_SIZE` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(MAX_SIZE_ENV) {
            limits.max_objects =
                v.trim().parse().map_err(|_| Error::CapExceeded(format!("{MAX_SIZE_ENV}={v:?} is not a positive integer")))?;
        }
        Ok(limits)
    }

    pub fn check_enumerable(&self, k: &FormalContext) -> Result<()> {
        check_dims(k, self.max_objects, "concept enumeration")
    }

    pub fn check_box_factor(&self, k: &FormalContext) -> Result<()> {
        check_dims(k, self.max_box_factor, "lattice tensor factor")
    }

    pub fn check_concept_factor(&self, k: &FormalContext) -> Result<()> {
        check_dims(k, self.max_concept_factor, "concept tensor factor")
    }
}

fn check_dims(k: &FormalContext, cap: usize, what: &str) -> Result<()> {
    if k.n_objects() > cap || k.n_attributes() > cap {
        return Err(Error::CapExceeded(format!("{what}: context {:?} is {}x{}, cap is {cap}", k.name(), k.n_objects(), k.n_attributes())));
    }
    Ok(())
}
