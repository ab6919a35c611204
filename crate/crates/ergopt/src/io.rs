//! Input documents.
//!
//! Two JSON shapes are accepted, distinguished by their fields:
//!
//! * a **graph document** — `{"vertex_count": n, "edges": [[source, target,
//!   weight], ...]}` with weights given as decimal integers or `"num/den"`
//!   strings, parsed exactly;
//! * a **system document** — `{"alphabet": ["a", ...], "forbidden_words":
//!   [...] | "transitions": [[0|1, ...], ...], "potentials": {name:
//!   {"window": k, "values": {word: weight, ...}}, ...}}`, optionally with
//!   an `"expect"` block declaring the exact maximum of named potentials
//!   (`{"beta": {name: "num/den"}}`) that verification runs re-check.
//!
//! Omitting both `forbidden_words` and `transitions` yields the full shift.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::symbolic::{Potential, SftSystem};
use crate::weight::parse_rational;
use crate::Rational;

/// Weight literal: a JSON integer or an exact `"num/den"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum WeightRepr {
    Int(i64),
    Text(String),
}

impl WeightRepr {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            WeightRepr::Int(n) => Ok(Rational::from_integer((*n).into())),
            WeightRepr::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertex_count: usize,
    edges: Vec<(usize, usize, WeightRepr)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    alphabet: Vec<String>,
    #[serde(default)]
    transitions: Option<Vec<Vec<u8>>>,
    #[serde(default)]
    forbidden_words: Option<Vec<String>>,
    potentials: BTreeMap<String, PotentialFile>,
    #[serde(default)]
    expect: Option<ExpectFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PotentialFile {
    window: usize,
    values: BTreeMap<String, WeightRepr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectFile {
    #[serde(default)]
    beta: BTreeMap<String, String>,
}

/// A parsed system document: the system, its named potentials, and any
/// declared expectations.
#[derive(Debug, Clone)]
pub struct SystemDocument {
    pub system: SftSystem,
    pub potentials: BTreeMap<String, Potential>,
    /// declared exact maxima, re-checked by `verify`
    pub expected_beta: BTreeMap<String, Rational>,
}

impl SystemDocument {
    pub fn potential(&self, name: &str) -> Result<&Potential> {
        self.potentials
            .get(name)
            .ok_or_else(|| Error::Format(format!("no potential named {name:?} in document")))
    }
}

/// Either input shape.
#[derive(Debug, Clone)]
pub enum InputDocument {
    Graph(TransitionGraph<Rational>),
    System(SystemDocument),
}

pub fn parse_graph_json(text: &str) -> Result<TransitionGraph<Rational>> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("graph document: {e}")))?;
    let edges = file
        .edges
        .into_iter()
        .map(|(s, t, w)| Ok((s, t, w.to_rational()?)))
        .collect::<Result<Vec<_>>>()?;
    TransitionGraph::new(file.vertex_count, edges)
}

pub fn parse_system_json(text: &str) -> Result<SystemDocument> {
    let file: SystemFile =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("system document: {e}")))?;
    let alphabet = file
        .alphabet
        .iter()
        .map(|s| {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::Format(format!(
                    "alphabet entries must be single characters, got {s:?}"
                ))),
            }
        })
        .collect::<Result<Vec<char>>>()?;
    let system = match (&file.transitions, &file.forbidden_words) {
        (Some(_), Some(_)) => {
            return Err(Error::Format(
                "give either transitions or forbidden_words, not both".into(),
            ))
        }
        (Some(matrix), None) => {
            let allowed = matrix
                .iter()
                .map(|row| row.iter().map(|&x| x != 0).collect())
                .collect();
            SftSystem::new(alphabet, allowed)?
        }
        (None, Some(words)) => SftSystem::from_forbidden_words(alphabet, words)?,
        (None, None) => SftSystem::full_shift(alphabet)?,
    };
    let mut potentials = BTreeMap::new();
    for (name, p) in file.potentials {
        let values = p
            .values
            .into_iter()
            .map(|(word, w)| Ok((word, w.to_rational()?)))
            .collect::<Result<BTreeMap<String, Rational>>>()?;
        potentials.insert(name, Potential::new(&system, p.window, values)?);
    }
    let mut expected_beta = BTreeMap::new();
    if let Some(expect) = file.expect {
        for (name, value) in expect.beta {
            if !potentials.contains_key(&name) {
                return Err(Error::Format(format!(
                    "expect.beta names unknown potential {name:?}"
                )));
            }
            expected_beta.insert(name, parse_rational(&value)?);
        }
    }
    Ok(SystemDocument { system, potentials, expected_beta })
}

/// Parses a document of either shape, dispatching on its fields.
pub fn parse_input_json(text: &str) -> Result<InputDocument> {
    let probe: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("not valid JSON: {e}")))?;
    let object = probe
        .as_object()
        .ok_or_else(|| Error::Format("top level must be a JSON object".into()))?;
    if object.contains_key("vertex_count") {
        Ok(InputDocument::Graph(parse_graph_json(text)?))
    } else if object.contains_key("alphabet") {
        Ok(InputDocument::System(parse_system_json(text)?))
    } else {
        Err(Error::Format(
            "document is neither a graph (vertex_count) nor a system (alphabet)".into(),
        ))
    }
}

pub fn load_input(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    parse_input_json(&text)
}
