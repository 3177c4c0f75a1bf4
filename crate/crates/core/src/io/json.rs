//! Certificate and representation files. Rationals are strings `"p/q"`.
//!
//! Certificate:
//! ```json
//! {"claim": "...", "generators": [{"id": "f1", "poly": "..."}],
//!  "terms": [{"coeff": "-1", "left": "d", "gen": "f2", "right": "i*th1"}],
//!  "witnesses": {"f2": "h2*d"}, "mode": "definition"}
//! ```
//! Representation:
//! ```json
//! {"dims": {"w1": 3, "w2": 2},
//!  "edges": [{"src": "w1", "tgt": "w2", "label": "p", "matrix": [["1", "0", "0"], ["0", "1", "0"]]}]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::consequence::{CertMode, CertTerm};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quiver::LabelledQuiver;
use crate::realization::Representation;
use crate::{RatCertificate, RatMatrix, RatRepresentation, Rational};

use super::problem::from_json;
use super::text::{
    format_monomial, format_poly, format_rational, parse_monomial, parse_poly, parse_rational,
};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub claim: String,
    pub generators: Vec<GeneratorFile>,
    pub terms: Vec<TermFile>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, String>,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mode() -> String {
    "definition".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub id: String,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coeff: String,
    pub left: String,
    pub gen: String,
    pub right: String,
}

fn mode_name(m: CertMode) -> &'static str {
    match m {
        CertMode::Definition => "definition",
        CertMode::Criterion => "criterion",
    }
}

pub fn certificate_to_file(cert: &RatCertificate, alphabet: &Alphabet) -> CertificateFile {
    CertificateFile {
        claim: format_poly(&cert.claim, alphabet),
        generators: cert
            .generators
            .iter()
            .map(|(id, g)| GeneratorFile {
                id: id.clone(),
                poly: format_poly(g, alphabet),
            })
            .collect(),
        terms: cert
            .terms
            .iter()
            .map(|t| TermFile {
                coeff: format_rational(&t.coeff),
                left: format_poly(&t.left, alphabet),
                gen: t.generator.clone(),
                right: format_poly(&t.right, alphabet),
            })
            .collect(),
        witnesses: cert
            .witnesses
            .iter()
            .map(|(k, m)| (k.clone(), format_monomial(m, alphabet)))
            .collect(),
        mode: mode_name(cert.mode).into(),
    }
}

pub fn certificate_to_json(cert: &RatCertificate, alphabet: &Alphabet) -> String {
    let mut s =
        serde_json::to_string_pretty(&certificate_to_file(cert, alphabet)).expect("serializable");
    s.push('\n');
    s
}

fn at<T>(pointer: impl Into<String>, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::input(pointer, e.to_string()))
}

pub fn certificate_from_file(
    file: &CertificateFile,
    alphabet: &Alphabet,
) -> Result<RatCertificate> {
    let claim = at("/claim", parse_poly(&file.claim, alphabet))?;
    let mut generators = Vec::with_capacity(file.generators.len());
    for (k, g) in file.generators.iter().enumerate() {
        if generators.iter().any(|(id, _)| *id == g.id) {
            return Err(Error::input(
                format!("/generators/{k}/id"),
                format!("duplicate id `{}`", g.id),
            ));
        }
        generators.push((
            g.id.clone(),
            at(
                format!("/generators/{k}/poly"),
                parse_poly(&g.poly, alphabet),
            )?,
        ));
    }
    let mut terms = Vec::with_capacity(file.terms.len());
    for (k, t) in file.terms.iter().enumerate() {
        if !generators.iter().any(|(id, _)| *id == t.gen) {
            return Err(Error::input(
                format!("/terms/{k}/gen"),
                format!("unknown generator `{}`", t.gen),
            ));
        }
        terms.push(CertTerm {
            coeff: at(format!("/terms/{k}/coeff"), parse_rational(&t.coeff))?,
            left: at(format!("/terms/{k}/left"), parse_poly(&t.left, alphabet))?,
            generator: t.gen.clone(),
            right: at(format!("/terms/{k}/right"), parse_poly(&t.right, alphabet))?,
        });
    }
    let mut witnesses = BTreeMap::new();
    for (id, m) in &file.witnesses {
        witnesses.insert(
            id.clone(),
            at(format!("/witnesses/{id}"), parse_monomial(m, alphabet))?,
        );
    }
    let mode = match file.mode.as_str() {
        "definition" => CertMode::Definition,
        "criterion" => CertMode::Criterion,
        other => return Err(Error::input("/mode", format!("unknown mode `{other}`"))),
    };
    Ok(RatCertificate {
        claim,
        generators,
        terms,
        witnesses,
        mode,
    })
}

pub fn certificate_from_json(text: &str, alphabet: &Alphabet) -> Result<RatCertificate> {
    certificate_from_file(&from_json(text)?, alphabet)
}

/// A matrix entry: a rational string or a JSON integer.
#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RepEdgeFile {
    pub src: String,
    pub tgt: String,
    pub label: String,
    pub matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub dims: BTreeMap<String, usize>,
    pub edges: Vec<RepEdgeFile>,
}

fn parse_matrix(rows: &[Vec<Entry>], ptr: &str) -> Result<RatMatrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut vals = Vec::with_capacity(row.len());
        for (c, e) in row.iter().enumerate() {
            vals.push(match e {
                Entry::Int(n) => Rational::from_integer((*n).into()),
                Entry::Text(s) => at(format!("{ptr}/{r}/{c}"), parse_rational(s))?,
            });
        }
        out.push(vals);
    }
    Matrix::from_rows(out).ok_or_else(|| Error::input(ptr, "rows have different lengths"))
}

/// Matches every entry to exactly one quiver edge by `(src, tgt, label)`.
pub fn representation_from_file(
    file: &RepresentationFile,
    q: &LabelledQuiver,
) -> Result<RatRepresentation> {
    let mut dims = vec![0usize; q.vertex_count()];
    for (name, &d) in &file.dims {
        let v = q.vertex(name).ok_or_else(|| {
            Error::input(format!("/dims/{name}"), format!("unknown vertex `{name}`"))
        })?;
        if d == 0 {
            return Err(Error::input(
                format!("/dims/{name}"),
                "dimension must be positive",
            ));
        }
        dims[v.0] = d;
    }
    if let Some(v) = dims.iter().position(|&d| d == 0) {
        return Err(Error::input(
            "/dims",
            format!("missing dimension for vertex `{}`", q.vertex_names()[v]),
        ));
    }
    let mut mats: Vec<Option<RatMatrix>> = vec![None; q.edges().len()];
    for (k, e) in file.edges.iter().enumerate() {
        let ptr = format!("/edges/{k}");
        let idx = q
            .edges()
            .iter()
            .position(|qe| {
                q.vertex_name(qe.src) == e.src
                    && q.vertex_name(qe.tgt) == e.tgt
                    && q.alphabet().name(qe.label) == e.label
            })
            .ok_or_else(|| {
                Error::input(
                    &ptr,
                    format!("no edge {} -> {} labelled `{}`", e.src, e.tgt, e.label),
                )
            })?;
        if mats[idx].is_some() {
            return Err(Error::input(&ptr, "edge given twice"));
        }
        mats[idx] = Some(parse_matrix(&e.matrix, &format!("{ptr}/matrix"))?);
    }
    let mut out = Vec::with_capacity(mats.len());
    for (k, m) in mats.into_iter().enumerate() {
        let e = &q.edges()[k];
        out.push(m.ok_or_else(|| {
            Error::input(
                "/edges",
                format!(
                    "no matrix for edge {} -> {} labelled `{}`",
                    q.vertex_name(e.src),
                    q.vertex_name(e.tgt),
                    q.alphabet().name(e.label)
                ),
            )
        })?);
    }
    at("/edges", Representation::new(q, dims, out))
}

pub fn representation_from_json(text: &str, q: &LabelledQuiver) -> Result<RatRepresentation> {
    representation_from_file(&from_json(text)?, q)
}

pub fn matrix_to_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect())
        .collect()
}
