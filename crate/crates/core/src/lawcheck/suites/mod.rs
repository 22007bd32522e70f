//! The seven suites. Each `build` pushes its cases in a fixed order; all
//! randomness is drawn here, never inside a check.

mod category;
mod context_core;
mod disco;
mod equivalence;
mod monoidal;
mod suplat;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lawcheck::{Case, GenConfig, Kernel, Outcome, SUITES};
use crate::morphism::ContextMorphism;
use crate::suplat::{FiniteLattice, SupMap};

#[derive(Default)]
pub(super) struct Cases(Vec<Case>);

impl Cases {
    fn add(&mut self, law: &'static str, instance: impl Into<String>, check: impl Fn(&Kernel) -> Outcome + Send + Sync + 'static) {
        self.0.push(Case::new(law, instance, check));
    }
}

pub(super) fn build(name: &str, cfg: &GenConfig) -> Result<Vec<Case>> {
    let mut cases = Cases::default();
    match name {
        "context-core" => context_core::build(&mut cases, cfg),
        "category" => category::build(&mut cases, cfg),
        "monoidal-concept" => monoidal::build(&mut cases, cfg, crate::monoidal::TensorKind::Concept),
        "monoidal-lattice" => monoidal::build(&mut cases, cfg, crate::monoidal::TensorKind::Lattice),
        "suplat" => suplat::build(&mut cases, cfg),
        "equivalence" => equivalence::build(&mut cases, cfg),
        "disco" => disco::build(&mut cases, cfg),
        other => return Err(Error::Lawcheck(format!("unknown suite `{other}` (expected one of {})", SUITES.join(", ")))),
    }
    Ok(cases.0)
}

// --- instance serializations --------------------------------------------

fn ckey(k: &FormalContext) -> String {
    let rows: Vec<String> = k.rows().iter().map(|r| r.to_bitstring()).collect();
    format!("{}x{}[{}]", k.n_objects(), k.n_attributes(), rows.join("|"))
}

fn mkey(r: &ContextMorphism) -> String {
    format!("{}->{}:{}", ckey(r.source()), ckey(r.target()), r.bond().to_key())
}

fn lkey(l: &FiniteLattice) -> String {
    let rows: Vec<String> = (0..l.len()).map(|i| l.up(i).to_bitstring()).collect();
    format!("L{}[{}]", l.len(), rows.join("|"))
}

fn fkey(f: &SupMap) -> String {
    format!("{}->{}:{:?}", lkey(f.source()), lkey(f.target()), f.table())
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, lhs: &T, rhs: &T) -> Outcome {
    crate::lawcheck::ensure(lhs == rhs, || format!("{what}: {lhs:?} != {rhs:?}"))
}

fn valid(what: &str, r: &ContextMorphism) -> Outcome {
    r.validate().map_err(|w| crate::lawcheck::Failure::Fail(format!("{what} is not a morphism: {w}")))
}
