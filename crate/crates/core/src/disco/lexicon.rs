//! Word → (type, state) assignments.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::bits::Bits;
use crate::context::FormalContext;
use crate::disco::state::{decode, tuple_count, TensorState};
use crate::disco::types::{ProtoType, Simple};
use crate::error::{Error, Result};
use crate::io::parse_cxt;
use crate::limits::Limits;

/// How a word's state is written down.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateSpec {
    /// A closed set of tuples, by label. Single-factor labels are object labels;
    /// longer tuples use right-nested labels such as `(Alice,(positive,Bob))`.
    Extent(Vec<String>),
    /// Tuples listed componentwise; the state is their closure.
    Generators(Vec<Vec<String>>),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub ty: ProtoType,
    pub state: TensorState,
}

#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    types: BTreeMap<String, Arc<FormalContext>>,
    duals: BTreeMap<String, Arc<FormalContext>>,
    words: BTreeMap<String, Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconJson {
    types: BTreeMap<String, String>,
    words: BTreeMap<String, WordJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WordJson {
    #[serde(rename = "type")]
    ty: ProtoType,
    state: StateSpec,
}

impl Lexicon {
    pub fn new(types: impl IntoIterator<Item = (String, FormalContext)>) -> Result<Lexicon> {
        let limits = Limits::from_env()?;
        let mut lex = Lexicon::default();
        for (name, k) in types {
            Simple::new(name.clone(), 0)?;
            limits.check_enumerable(&k)?;
            lex.duals.insert(name.clone(), Arc::new(k.dual()));
            lex.types.insert(name, Arc::new(k));
        }
        Ok(lex)
    }

    /// Reads the JSON lexicon; context paths are relative to the file.
    pub fn load(path: &Path) -> Result<Lexicon> {
        let text = std::fs::read_to_string(path)?;
        Lexicon::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn from_json(text: &str, base: &Path) -> Result<Lexicon> {
        Lexicon::from_json_with(text, |file| {
            let p = base.join(file);
            std::fs::read_to_string(&p).map_err(|e| Error::Lexicon(format!("cannot read {}: {e}", p.display())))
        })
    }

    /// Like [`Lexicon::from_json`], with `read` supplying the `.cxt` text for each type file.
    pub fn from_json_with(text: &str, read: impl Fn(&str) -> Result<String>) -> Result<Lexicon> {
        let json: LexiconJson = serde_json::from_str(text)?;
        let mut types = Vec::new();
        for (name, file) in &json.types {
            let text = read(file).map_err(|e| Error::Lexicon(format!("type `{name}`: {e}")))?;
            types.push((name.clone(), parse_cxt(&text)?));
        }
        let mut lex = Lexicon::new(types)?;
        for (word, w) in json.words {
            let state = lex.state_from_spec(&w.ty, &w.state).map_err(|e| match e {
                Error::UnboundType(_) | Error::CapExceeded(_) => e,
                e => Error::Lexicon(format!("word `{word}`: {e}")),
            })?;
            lex.insert(word, w.ty, state)?;
        }
        Ok(lex)
    }

    pub fn context(&self, base: &str) -> Result<&Arc<FormalContext>> {
        self.types.get(base).ok_or_else(|| Error::UnboundType(base.to_string()))
    }

    pub fn types(&self) -> impl Iterator<Item = (&str, &Arc<FormalContext>)> {
        self.types.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The tensor factors of a type: `K_a` for `a`, `K_a*` for `a^l` and `a^r`.
    pub fn factors(&self, ty: &ProtoType) -> Result<Vec<Arc<FormalContext>>> {
        ty.simples()
            .iter()
            .map(|s| {
                let table = if s.adjoint == 0 { &self.types } else { &self.duals };
                table.get(&s.base).cloned().ok_or_else(|| Error::UnboundType(s.base.clone()))
            })
            .collect()
    }

    pub fn state_from_spec(&self, ty: &ProtoType, spec: &StateSpec) -> Result<TensorState> {
        if ty.is_empty() {
            return Err(Error::Lexicon("a word needs a nonempty type".into()));
        }
        let factors = self.factors(ty)?;
        match spec {
            StateSpec::Extent(labels) => {
                let n = tuple_count(&factors)?;
                let probe = TensorState::top(factors.clone())?;
                let index: HashMap<String, usize> = probe.extent().ones().map(|i| (probe.tuple_label(&decode(&factors, i)), i)).collect();
                let mut bits = Bits::empty(n);
                for l in labels {
                    bits.insert(*index.get(l).ok_or_else(|| Error::Lexicon(format!("unknown tuple label {l:?}")))?);
                }
                TensorState::from_extent(factors, bits)
            }
            StateSpec::Generators(tuples) => {
                let idx = tuples
                    .iter()
                    .map(|t| {
                        if t.len() != factors.len() {
                            return Err(Error::Lexicon(format!("generator {t:?} has {} entries, type has {}", t.len(), factors.len())));
                        }
                        t.iter()
                            .zip(&factors)
                            .map(|(l, k)| k.object_index(l).ok_or_else(|| Error::Lexicon(format!("unknown object {l:?} in {}", k.name()))))
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                TensorState::from_tuples(factors, &idx)
            }
        }
    }

    /// Adds or replaces a word; the state must live over the type's factors.
    pub fn insert(&mut self, word: String, ty: ProtoType, state: TensorState) -> Result<()> {
        let want: Vec<_> = self.factors(&ty)?.iter().map(|k| k.id()).collect();
        let have: Vec<_> = state.factors().iter().map(|k| k.id()).collect();
        if want != have {
            return Err(Error::Lexicon(format!("state for `{word}` does not match its type {ty}")));
        }
        self.words.insert(word, Entry { ty, state });
        Ok(())
    }

    pub fn entry(&self, word: &str) -> Result<&Entry> {
        self.words.get(word).ok_or_else(|| Error::Lexicon(format!("unknown word `{word}`")))
    }

    pub fn words(&self) -> impl Iterator<Item = (&str, &Entry)> {
        self.words.iter().map(|(k, v)| (k.as_str(), v))
    }
}
