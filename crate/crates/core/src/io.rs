//! Text formats.
//!
//! Complexes use a facet list: one facet per line, vertex labels separated by
//! whitespace, `#` starting a comment. A balanced complex adds one header line
//! `colors: v=c v=c …`. Posets are JSON objects
//! `{"elements": [...], "covers": [[lower, upper], ...]}`.
//!
//! Every writer is canonical, so `write(parse(write(x))) == write(x)`.

use serde::{Deserialize, Serialize};

use crate::balanced::BalancedComplex;
use crate::complex::{build_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::generators::Generated;
use crate::label::Label;
use crate::poset::{build_poset, GradedPoset};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
}

fn parse_color_pairs(line: usize, body: &str) -> Result<Vec<(Label, Label)>> {
    body.split_whitespace()
        .map(|pair| match pair.rsplit_once('=') {
            Some((v, c)) if !v.is_empty() && !c.is_empty() => Ok((Label::from(v), Label::from(c))),
            _ => Err(parse_error(line, format!("expected `vertex=color`, got `{pair}`"))),
        })
        .collect()
}

/// Parses a facet list, returning a balanced complex when a `colors:` line
/// is present.
pub fn parse_complex_text(text: &str) -> Result<Generated> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    let mut colors: Option<Vec<(Label, Label)>> = None;
    for (line, content) in content_lines(text) {
        if let Some(body) = content.strip_prefix("colors:") {
            if colors.is_some() {
                return Err(parse_error(line, "second `colors:` line"));
            }
            colors = Some(parse_color_pairs(line, body)?);
        } else {
            facets.push(content.split_whitespace().collect());
        }
    }
    let complex = build_complex(facets)?;
    match colors {
        Some(kappa) => Ok(Generated::Balanced(BalancedComplex::new(complex, kappa)?)),
        None => Ok(Generated::Complex(complex)),
    }
}

pub fn parse_facet_list(text: &str) -> Result<SimplicialComplex> {
    match parse_complex_text(text)? {
        Generated::Complex(c) => Ok(c),
        Generated::Balanced(b) => Ok(b.complex().clone()),
        Generated::Poset(_) => unreachable!("facet lists never describe posets"),
    }
}

pub fn parse_balanced(text: &str) -> Result<BalancedComplex> {
    match parse_complex_text(text)? {
        Generated::Balanced(b) => Ok(b),
        _ => Err(parse_error(1, "missing `colors:` line")),
    }
}

/// A color map file: one `vertex color` or `vertex=color` pair per line.
pub fn parse_color_map(text: &str) -> Result<Vec<(Label, Label)>> {
    let mut pairs = Vec::new();
    for (line, content) in content_lines(text) {
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            [v, c] if !content.contains('=') => pairs.push((Label::from(*v), Label::from(*c))),
            _ => pairs.extend(parse_color_pairs(line, content)?),
        }
    }
    Ok(pairs)
}

fn facet_lines(c: &SimplicialComplex) -> String {
    c.canonical_facets()
        .iter()
        .map(|facet| {
            let words: Vec<&str> = facet.iter().map(Label::as_str).collect();
            words.join(" ") + "\n"
        })
        .collect()
}

pub fn write_facet_list(c: &SimplicialComplex) -> String {
    facet_lines(c)
}

pub fn write_balanced(b: &BalancedComplex) -> String {
    let pairs: Vec<String> = b.coloring().map(|(v, c)| format!("{v}={c}")).collect();
    format!("colors: {}\n{}", pairs.join(" "), facet_lines(b.complex()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<Label>,
    covers: Vec<(Label, Label)>,
}

pub fn parse_poset_json(text: &str) -> Result<GradedPoset> {
    let file: PosetFile = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    build_poset(file.elements, file.covers)
}

/// Elements in `(rank, label)` order, covers sorted by that order.
pub fn write_poset_json(p: &GradedPoset) -> String {
    let mut covers: Vec<(usize, usize)> = p.covers().collect();
    covers.sort_unstable();
    let file = PosetFile {
        elements: p.labels().to_vec(),
        covers: covers
            .into_iter()
            .map(|(a, b)| (p.label(a).clone(), p.label(b).clone()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("labels serialize") + "\n"
}

/// Reads any supported file, choosing the format from its content: a
/// leading `{` means a poset.
pub fn parse_any(text: &str) -> Result<Generated> {
    if text.trim_start().starts_with('{') {
        parse_poset_json(text).map(Generated::Poset)
    } else {
        parse_complex_text(text)
    }
}

impl Generated {
    /// The canonical file contents for this object.
    pub fn to_text(&self) -> String {
        match self {
            Generated::Complex(c) => write_facet_list(c),
            Generated::Balanced(b) => write_balanced(b),
            Generated::Poset(p) => write_poset_json(p),
        }
    }
}
