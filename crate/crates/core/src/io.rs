//! JSON encodings of hypergraphs, formal sums and word vectors.
//!
//! Validation happens during deserialization, so every rejected document
//! reports the line and column where reading stopped.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::flag::{WordVector, LETTERS};
use crate::hypergraph::{FormalSum, Hypergraph};
use crate::rational::{format_rational, parse_rational, Q};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDto {
    arity: usize,
    vertices: usize,
    cells: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(try_from = "GraphDto")]
struct GraphIn(Hypergraph);

impl TryFrom<GraphDto> for GraphIn {
    type Error = Error;
    fn try_from(d: GraphDto) -> Result<GraphIn> {
        Hypergraph::new(d.arity, d.vertices, d.cells).map(GraphIn)
    }
}

fn graph_dto(g: &Hypergraph) -> GraphDto {
    GraphDto {
        arity: g.arity(),
        vertices: g.nvertices(),
        cells: g.cell_lists(),
    }
}

#[derive(Deserialize)]
#[serde(try_from = "String")]
struct Coeff(Q);

impl TryFrom<String> for Coeff {
    type Error = Error;
    fn try_from(s: String) -> Result<Coeff> {
        parse_rational(&s).map(Coeff)
    }
}

#[derive(Serialize)]
struct SumTermOut {
    coeff: String,
    graph: GraphDto,
}

#[derive(Serialize)]
struct SumOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    arity: Option<usize>,
    terms: Vec<SumTermOut>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SumTermIn {
    coeff: Coeff,
    graph: GraphIn,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SumDto {
    #[serde(default)]
    arity: Option<usize>,
    terms: Vec<SumTermIn>,
}

#[derive(Deserialize)]
#[serde(try_from = "SumDto")]
struct SumIn(FormalSum);

impl TryFrom<SumDto> for SumIn {
    type Error = Error;
    fn try_from(d: SumDto) -> Result<SumIn> {
        let arity = match (d.arity, d.terms.first()) {
            (Some(a), _) => a,
            (None, Some(t)) => t.graph.0.arity(),
            (None, None) => return Err(Error::EmptyInput("a formal sum without terms needs an arity")),
        };
        let mut s = FormalSum::zero(arity);
        for t in &d.terms {
            s.add_term(&t.graph.0, t.coeff.0.clone())?;
        }
        Ok(SumIn(s))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordTermDto {
    word: String,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordsDto {
    length: usize,
    alphabet: Vec<String>,
    terms: Vec<WordTermDto>,
}

#[derive(Deserialize)]
#[serde(try_from = "WordsDto")]
struct WordsIn(WordVector);

impl TryFrom<WordsDto> for WordsIn {
    type Error = Error;
    fn try_from(d: WordsDto) -> Result<WordsIn> {
        let letters = d.alphabet.len();
        let expected = LETTERS.iter().take(letters).map(|&b| (b as char).to_string());
        if letters > LETTERS.len() || !d.alphabet.iter().cloned().eq(expected) {
            return Err(Error::DimensionMismatch(format!(
                "alphabet must be the first {letters} letters a, b, c, ..."
            )));
        }
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(d.terms.len());
        for t in d.terms {
            let w = WordVector::parse_word(&t.word)
                .ok_or_else(|| Error::DimensionMismatch(format!("bad word {:?}", t.word)))?;
            if !seen.insert(w.clone()) {
                return Err(Error::DimensionMismatch(format!("repeated word {:?}", t.word)));
            }
            terms.push((w, parse_rational(&t.coeff)?));
        }
        WordVector::from_terms(d.length, letters, terms).map(WordsIn)
    }
}

fn words_dto(v: &WordVector) -> WordsDto {
    WordsDto {
        length: v.length(),
        alphabet: v.alphabet().iter().map(char::to_string).collect(),
        terms: v
            .terms()
            .map(|(w, c)| WordTermDto {
                word: WordVector::format_word(w),
                coeff: format_rational(c),
            })
            .collect(),
    }
}

fn read<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let (line, column) = match e.line() {
            // Raised after the whole value was read: point at its last character.
            0 => end_position(text),
            l => (l, e.column()),
        };
        Error::Parse {
            line,
            column,
            message: strip_position(&e.to_string()),
        }
    })
}

fn end_position(text: &str) -> (usize, usize) {
    let body = text.trim_end();
    let line = body.matches('\n').count() + 1;
    let column = body.rsplit('\n').next().map_or(0, |l| l.chars().count());
    (line, column)
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

pub fn hypergraph_to_json(g: &Hypergraph) -> Value {
    to_value(&graph_dto(g))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    read::<GraphIn>(text).map(|g| g.0)
}

/// An `"arity"` key is written only when there are no terms to carry it.
pub fn formal_sum_to_json(s: &FormalSum) -> Value {
    to_value(&SumOut {
        arity: s.is_empty().then_some(s.arity()),
        terms: s
            .terms()
            .map(|(g, c)| SumTermOut {
                coeff: format_rational(c),
                graph: graph_dto(g),
            })
            .collect(),
    })
}

pub fn parse_formal_sum(text: &str) -> Result<FormalSum> {
    read::<SumIn>(text).map(|s| s.0)
}

pub fn word_vector_to_json(v: &WordVector) -> Value {
    to_value(&words_dto(v))
}

pub fn parse_word_vector(text: &str) -> Result<WordVector> {
    read::<WordsIn>(text).map(|w| w.0)
}

pub fn family_to_json(graphs: &[Hypergraph]) -> Value {
    Value::Array(graphs.iter().map(hypergraph_to_json).collect())
}

pub fn parse_family(text: &str) -> Result<Vec<Hypergraph>> {
    read::<Vec<GraphIn>>(text).map(|v| v.into_iter().map(|g| g.0).collect())
}

/// Reads either a single hypergraph or a formal sum, by shape.
pub fn parse_graph_or_sum(text: &str) -> Result<FormalSum> {
    let v: Value = read(text)?;
    if v.get("terms").is_some() {
        parse_formal_sum(text)
    } else {
        FormalSum::from_graph(&parse_hypergraph(text)?)
    }
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
