//! Protogroup types and contraction-only reduction.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basic type with an adjoint order: `-1` is `a^l`, `0` is `a`, `+1` is `a^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simple {
    pub base: String,
    pub adjoint: i8,
}

impl Simple {
    pub fn new(base: impl Into<String>, adjoint: i8) -> Result<Simple> {
        let base = base.into();
        if !(-1..=1).contains(&adjoint) {
            return Err(Error::Lexicon(format!("adjoint order {adjoint} of `{base}` is outside -1..=1")));
        }
        if base.is_empty() || base.contains(|c: char| c.is_whitespace() || c == '^') {
            return Err(Error::Lexicon(format!("bad basic type label {base:?}")));
        }
        Ok(Simple { base, adjoint })
    }

    pub fn plain(base: &str) -> Simple {
        Simple::new(base, 0).expect("valid label")
    }

    /// `x y ≤ 1`: `a^l a` or `a a^r`.
    pub fn contracts_with(&self, next: &Simple) -> Option<ContractionKind> {
        if self.base != next.base {
            return None;
        }
        match (self.adjoint, next.adjoint) {
            (-1, 0) => Some(ContractionKind::LeftAdjoint),
            (0, 1) => Some(ContractionKind::RightAdjoint),
            _ => None,
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.adjoint {
            -1 => write!(f, "{}^l", self.base),
            1 => write!(f, "{}^r", self.base),
            _ => f.write_str(&self.base),
        }
    }
}

/// A word of the free protogroup; the empty sequence is the unit `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProtoType(pub Vec<Simple>);

impl ProtoType {
    pub fn unit() -> ProtoType {
        ProtoType(Vec::new())
    }

    pub fn basic(base: &str) -> ProtoType {
        ProtoType(vec![Simple::plain(base)])
    }

    pub fn simples(&self) -> &[Simple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(types: &[ProtoType]) -> ProtoType {
        ProtoType(types.iter().flat_map(|t| t.0.iter().cloned()).collect())
    }
}

impl fmt::Display for ProtoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses `"n^r s n^l"`; `"1"` or `""` is the unit.
impl FromStr for ProtoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<ProtoType> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(ProtoType::unit());
        }
        s.split_whitespace()
            .map(|tok| match tok.split_once('^') {
                None => Simple::new(tok, 0),
                Some((b, "l")) => Simple::new(b, -1),
                Some((b, "r")) => Simple::new(b, 1),
                Some(_) => Err(Error::Lexicon(format!("bad type token {tok:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProtoType)
    }
}

/// JSON form: a list whose items are `"n"` or `["n", -1]`.
impl Serialize for ProtoType {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for s in &self.0 {
            if s.adjoint == 0 {
                seq.serialize_element(&s.base)?;
            } else {
                seq.serialize_element(&(&s.base, s.adjoint))?;
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ProtoType {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<ProtoType, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Item {
            Plain(String),
            Adjoint(String, i8),
        }
        let items = Vec::<Item>::deserialize(de)?;
        items
            .into_iter()
            .map(|it| match it {
                Item::Plain(b) => Simple::new(b, 0),
                Item::Adjoint(b, k) => Simple::new(b, k),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProtoType)
            .map_err(de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionKind {
    /// `a^l · a ≤ 1`
    LeftAdjoint,
    /// `a · a^r ≤ 1`
    RightAdjoint,
}

/// One step: contract positions `position` and `position + 1` of the current
/// sequence. `original` records the same two simples as indices into the
/// concatenated input.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Contraction {
    pub position: usize,
    pub kind: ContractionKind,
    pub original: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub input: ProtoType,
    pub target: ProtoType,
    pub steps: Vec<Contraction>,
}

impl ReductionWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps on the input, checking each one; returns the result.
    pub fn replay(&self) -> Result<ProtoType> {
        replay(&self.input, &self.steps)
    }

    /// Indices into the input of the simples that survive every contraction.
    pub fn survivors(&self) -> Vec<usize> {
        let mut alive: Vec<usize> = (0..self.input.len()).collect();
        for s in &self.steps {
            alive.drain(s.position..s.position + 2);
        }
        alive
    }
}

impl fmt::Display for ReductionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cur: Vec<Simple> = self.input.0.clone();
        write!(f, "{}", ProtoType(cur.clone()))?;
        for s in &self.steps {
            cur.drain(s.position..s.position + 2);
            write!(f, "\n  ≤ {}    [contract {}]", ProtoType(cur.clone()), s.position)?;
        }
        Ok(())
    }
}

pub fn replay(input: &ProtoType, steps: &[Contraction]) -> Result<ProtoType> {
    let mut cur: Vec<(Simple, usize)> = input.0.iter().cloned().zip(0..).collect();
    for (n, s) in steps.iter().enumerate() {
        let bad = || Error::Lexicon(format!("step {n} of the witness does not apply"));
        if s.position + 1 >= cur.len() {
            return Err(bad());
        }
        let (x, y) = (&cur[s.position], &cur[s.position + 1]);
        if x.0.contracts_with(&y.0) != Some(s.kind) || (x.1, y.1) != s.original {
            return Err(bad());
        }
        cur.drain(s.position..s.position + 2);
    }
    Ok(ProtoType(cur.into_iter().map(|(s, _)| s).collect()))
}

type Seq = Vec<(Simple, usize)>;

fn step_at(cur: &Seq, i: usize) -> Option<(Contraction, Seq)> {
    let kind = cur[i].0.contracts_with(&cur[i + 1].0)?;
    let mut next = cur.clone();
    next.drain(i..i + 2);
    Some((Contraction { position: i, kind, original: (cur[i].1, cur[i + 1].1) }, next))
}

fn matches(cur: &Seq, target: &ProtoType) -> bool {
    cur.len() == target.len() && cur.iter().zip(&target.0).all(|((s, _), t)| s == t)
}

fn dfs(cur: &Seq, target: &ProtoType, dead: &mut HashSet<Vec<Simple>>) -> Option<Vec<Contraction>> {
    if matches(cur, target) {
        return Some(Vec::new());
    }
    if cur.len() <= target.len() {
        return None;
    }
    let key: Vec<Simple> = cur.iter().map(|(s, _)| s.clone()).collect();
    if dead.contains(&key) {
        return None;
    }
    for i in 0..cur.len() - 1 {
        if let Some((step, next)) = step_at(cur, i) {
            if let Some(mut rest) = dfs(&next, target, dead) {
                rest.insert(0, step);
                return Some(rest);
            }
        }
    }
    dead.insert(key);
    None
}

/// Reduces the concatenation of `types` to `target` using contractions only.
/// Search is depth-first and tries the leftmost applicable contraction first,
/// so the witness is deterministic; failure means no contraction sequence works.
pub fn reduce(types: &[ProtoType], target: &ProtoType) -> Result<ReductionWitness> {
    let input = ProtoType::concat(types);
    if types.is_empty() {
        return Err(Error::Lexicon("nothing to reduce".into()));
    }
    let start: Seq = input.0.iter().cloned().zip(0..).collect();
    match dfs(&start, target, &mut HashSet::new()) {
        Some(steps) => Ok(ReductionWitness { input, target: target.clone(), steps }),
        None => Err(Error::Irreducible { input: input.to_string(), target: target.to_string() }),
    }
}

/// Every contraction-only witness, up to `max` of them.
pub fn all_reductions(types: &[ProtoType], target: &ProtoType, max: usize) -> Vec<ReductionWitness> {
    fn go(cur: &Seq, target: &ProtoType, path: &mut Vec<Contraction>, out: &mut Vec<Vec<Contraction>>, max: usize) {
        if out.len() >= max {
            return;
        }
        if matches(cur, target) {
            out.push(path.clone());
            return;
        }
        for i in 0..cur.len().saturating_sub(1) {
            if let Some((step, next)) = step_at(cur, i) {
                path.push(step);
                go(&next, target, path, out, max);
                path.pop();
            }
        }
    }
    let input = ProtoType::concat(types);
    let start: Seq = input.0.iter().cloned().zip(0..).collect();
    let mut out = Vec::new();
    go(&start, target, &mut Vec::new(), &mut out, max);
    out.into_iter().map(|steps| ReductionWitness { input: input.clone(), target: target.clone(), steps }).collect()
}
