//! File formats: Burmeister `.cxt`, JSON lattice export, DOT Hasse diagrams.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::concepts::ConceptLattice;
use crate::context::FormalContext;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a Burmeister cross-table.
///
/// ```text
/// B
/// <name>
/// <|G|>
/// <|M|>
///
/// <object>...      (|G| lines)
/// <attribute>...   (|M| lines)
/// <row>...         (|G| lines of 'X' / '.')
/// ```
pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.split('\n').collect();
    let get = |i: usize| lines.get(i).copied().ok_or_else(|| parse_err(i + 1, "unexpected end of file"));
    if get(0)? != "B" {
        return Err(parse_err(1, "expected header line \"B\""));
    }
    let name = get(1)?.to_string();
    let n_g: usize = get(2)?.parse().map_err(|_| parse_err(3, "object count is not a decimal integer"))?;
    let n_m: usize = get(3)?.parse().map_err(|_| parse_err(4, "attribute count is not a decimal integer"))?;
    if !get(4)?.is_empty() {
        return Err(parse_err(5, "expected an empty line"));
    }
    let mut at = 5;
    let mut take = |n: usize| -> Result<Vec<String>> {
        let out = (at..at + n).map(|i| get(i).map(str::to_string)).collect::<Result<Vec<_>>>()?;
        at += n;
        Ok(out)
    };
    let objects = take(n_g)?;
    let attributes = take(n_m)?;
    let raw_rows = take(n_g)?;
    let rows_start = 5 + n_g + n_m;
    let mut rows = Vec::with_capacity(n_g);
    for (i, r) in raw_rows.iter().enumerate() {
        let line = rows_start + i + 1;
        if r.chars().count() != n_m {
            return Err(parse_err(line, format!("row has {} cells, expected {n_m}", r.chars().count())));
        }
        let mut bits = Bits::empty(n_m);
        for (m, c) in r.chars().enumerate() {
            match c {
                'X' => bits.insert(m),
                '.' => {}
                other => return Err(parse_err(line, format!("unexpected cell {other:?}"))),
            }
        }
        rows.push(bits);
    }
    // Only a single trailing newline is allowed after the last row.
    let end = rows_start + n_g;
    let rest = &lines[end.min(lines.len())..];
    if !(rest.is_empty() || rest == [""]) {
        return Err(parse_err(end + 1, "trailing content after the last row"));
    }
    FormalContext::from_rows(name, objects, attributes, rows).map_err(|e| parse_err(0, e.to_string()))
}

/// Serialises in the exact layout read by [`parse_cxt`], LF-terminated.
pub fn write_cxt(k: &FormalContext) -> String {
    let mut out = String::new();
    out.push_str("B\n");
    out.push_str(k.name());
    out.push('\n');
    out.push_str(&format!("{}\n{}\n\n", k.n_objects(), k.n_attributes()));
    for l in k.objects().iter().chain(k.attributes()) {
        out.push_str(l);
        out.push('\n');
    }
    for g in 0..k.n_objects() {
        for m in 0..k.n_attributes() {
            out.push(if k.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

/// `{"concepts":[{"extent":[..],"intent":[..]}..],"leq":[[bool]],"bottom":i,"top":i}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub concepts: Vec<ConceptJson>,
    pub leq: Vec<Vec<bool>>,
    pub bottom: usize,
    pub top: usize,
}

impl LatticeJson {
    pub fn from_lattice(k: &FormalContext, l: &ConceptLattice) -> LatticeJson {
        let concepts = l
            .concepts()
            .iter()
            .map(|c| ConceptJson {
                extent: c.extent().labels(k).into_iter().map(String::from).collect(),
                intent: c.intent().labels(k).into_iter().map(String::from).collect(),
            })
            .collect();
        LatticeJson { concepts, leq: l.leq_matrix(), bottom: l.bottom(), top: l.top() }
    }
}

pub fn lattice_to_json(k: &FormalContext, l: &ConceptLattice) -> String {
    serde_json::to_string(&LatticeJson::from_lattice(k, l)).expect("lattice json")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram of the cover relation, bottom at the bottom.
pub fn lattice_to_dot(k: &FormalContext, l: &ConceptLattice) -> String {
    let mut out = String::from("digraph concepts {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in l.concepts().iter().enumerate() {
        let label = format!("{} | {}", c.extent().labels(k).join(", "), c.intent().labels(k).join(", "));
        out.push_str(&format!("  c{i} [label=\"{}\"];\n", dot_escape(&label)));
    }
    for (a, b) in l.covers() {
        out.push_str(&format!("  c{a} -> c{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Plain-text table: one concept per line.
pub fn lattice_to_table(k: &FormalContext, l: &ConceptLattice) -> String {
    let mut out = format!("{} concepts\n", l.len());
    for (i, c) in l.concepts().iter().enumerate() {
        out.push_str(&format!("{i:>4}  {{{}}}  |  {{{}}}\n", c.extent().labels(k).join(", "), c.intent().labels(k).join(", ")));
    }
    out
}
