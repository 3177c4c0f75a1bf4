//! Problem files.
//!
//! ```json
//! {
//!   "alphabet": ["d", "i"],
//!   "quiver": {"vertices": ["u", "v"], "edges": [{"src": "u", "tgt": "v", "label": "d"}]},
//!   "order": {"type": "deglex", "precedence": ["d", "i"]},
//!   "assumptions": [{"name": "f", "poly": "d*i - 1"}],
//!   "claim": "d*i*d*i - 1",
//!   "options": {"divisor_map": {"f": ["d*i"]}, "max_new": 64, "max_ambiguities": 5000,
//!               "max_source_degree": 6, "mode": "criterion", "representation": "rep.json",
//!               "assume_consistent": false, "max_path_len": 6}
//! }
//! ```
//! Every field of `options` is optional. Errors name the offending location as
//! a JSON pointer.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use crate::alphabet::Alphabet;
use crate::completion::CompletionConfig;
use crate::consequence::CertMode;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{DegLex, MonomialOrdering};
use crate::quiver::LabelledQuiver;
use crate::realization::DEFAULT_MAX_PATH_LEN;
use crate::rewrite::DivisorMap;
use crate::RatPolynomial;

use super::text::{parse_monomial, parse_poly};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub alphabet: Vec<String>,
    pub quiver: QuiverFile,
    pub order: OrderFile,
    pub assumptions: Vec<NamedPoly>,
    pub claim: String,
    #[serde(default)]
    pub options: OptionsFile,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub src: String,
    pub tgt: String,
    pub label: String,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OrderFile {
    #[serde(rename = "type")]
    pub kind: String,
    pub precedence: Vec<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPoly {
    pub name: String,
    pub poly: String,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsFile {
    #[serde(default)]
    pub divisor_map: BTreeMap<String, Vec<String>>,
    pub max_new: Option<usize>,
    pub max_ambiguities: Option<usize>,
    pub max_source_degree: Option<usize>,
    pub mode: Option<String>,
    pub representation: Option<String>,
    pub assume_consistent: Option<bool>,
    pub max_path_len: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemOptions {
    /// Divisor monomials replacing the leading monomial of named assumptions.
    pub divisor_map: Vec<(String, Vec<Monomial>)>,
    pub completion: CompletionConfig,
    pub mode: CertMode,
    /// Resolved against the problem file's directory.
    pub representation: Option<PathBuf>,
    pub assume_consistent: bool,
    pub max_path_len: usize,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions {
            divisor_map: Vec::new(),
            completion: CompletionConfig::default(),
            mode: CertMode::Definition,
            representation: None,
            assume_consistent: false,
            max_path_len: DEFAULT_MAX_PATH_LEN,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub quiver: LabelledQuiver,
    pub order: DegLex,
    pub assumptions: Vec<(String, RatPolynomial)>,
    pub claim: RatPolynomial,
    pub options: ProblemOptions,
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                out.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Deserializes JSON, reporting failures with a JSON pointer.
pub fn from_json<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        Error::input(pointer, e.into_inner().to_string())
    })
}

fn at<T>(pointer: impl Into<String>, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::input(pointer, e.to_string()))
}

impl Problem {
    pub fn from_file(file: ProblemFile, base_dir: Option<&Path>) -> Result<Self> {
        let alphabet = at("/alphabet", Alphabet::new(file.alphabet.iter().cloned()))?;
        let mut edges = Vec::with_capacity(file.quiver.edges.len());
        for (k, e) in file.quiver.edges.iter().enumerate() {
            for (field, name) in [("src", &e.src), ("tgt", &e.tgt)] {
                if !file.quiver.vertices.contains(name) {
                    return Err(Error::input(
                        format!("/quiver/edges/{k}/{field}"),
                        format!("unknown vertex `{name}`"),
                    ));
                }
            }
            if alphabet.symbol(&e.label).is_none() {
                return Err(Error::input(
                    format!("/quiver/edges/{k}/label"),
                    format!("unknown symbol `{}`", e.label),
                ));
            }
            edges.push((e.src.as_str(), e.tgt.as_str(), e.label.as_str()));
        }
        let vertices: Vec<&str> = file.quiver.vertices.iter().map(String::as_str).collect();
        let quiver = at(
            "/quiver/vertices",
            LabelledQuiver::from_names(alphabet, &vertices, &edges),
        )?;
        let alphabet = quiver.alphabet();

        if file.order.kind != "deglex" {
            return Err(Error::input(
                "/order/type",
                format!(
                    "unsupported order `{}` (expected `deglex`)",
                    file.order.kind
                ),
            ));
        }
        let prec: Vec<&str> = file.order.precedence.iter().map(String::as_str).collect();
        let order = at("/order/precedence", DegLex::new(alphabet, &prec))?;

        let mut assumptions: Vec<(String, RatPolynomial)> = Vec::new();
        for (k, a) in file.assumptions.iter().enumerate() {
            if a.name.is_empty() || assumptions.iter().any(|(n, _)| *n == a.name) {
                return Err(Error::input(
                    format!("/assumptions/{k}/name"),
                    format!("assumption name `{}` is empty or repeated", a.name),
                ));
            }
            let f = at(
                format!("/assumptions/{k}/poly"),
                parse_poly(&a.poly, alphabet),
            )?;
            if f.is_zero() {
                return Err(Error::input(
                    format!("/assumptions/{k}/poly"),
                    "assumption is the zero polynomial",
                ));
            }
            assumptions.push((a.name.clone(), f));
        }
        let claim = at("/claim", parse_poly(&file.claim, alphabet))?;

        let o = &file.options;
        let mut options = ProblemOptions::default();
        for (name, monos) in &o.divisor_map {
            let ptr = format!("/options/divisor_map/{name}");
            options.divisor_map.push((
                name.clone(),
                resolve_dm_entry(&assumptions, alphabet, name, monos, &ptr)?,
            ));
        }
        if let Some(n) = o.max_new {
            options.completion.max_new_elements = n;
        }
        if let Some(n) = o.max_ambiguities {
            options.completion.max_ambiguities = n;
        }
        options.completion.max_source_degree = o.max_source_degree;
        options.mode = match o.mode.as_deref() {
            None | Some("definition") => CertMode::Definition,
            Some("criterion") => CertMode::Criterion,
            Some(other) => {
                return Err(Error::input(
                    "/options/mode",
                    format!("unknown mode `{other}` (expected `definition` or `criterion`)"),
                ))
            }
        };
        options.representation = o.representation.as_ref().map(|r| match base_dir {
            Some(d) => d.join(r),
            None => PathBuf::from(r),
        });
        options.assume_consistent = o.assume_consistent.unwrap_or(false);
        if let Some(n) = o.max_path_len {
            if n == 0 {
                return Err(Error::input("/options/max_path_len", "must be at least 1"));
            }
            options.max_path_len = n;
        }

        Ok(Problem {
            quiver,
            order,
            assumptions,
            claim,
            options,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.quiver.alphabet()
    }

    pub fn assumption_polys(&self) -> Vec<RatPolynomial> {
        self.assumptions.iter().map(|(_, f)| f.clone()).collect()
    }

    /// Replaces the letter precedence.
    pub fn set_precedence(&mut self, precedence: &[String]) -> Result<()> {
        let prec: Vec<&str> = precedence.iter().map(String::as_str).collect();
        self.order = at("--order", DegLex::new(self.quiver.alphabet(), &prec))?;
        Ok(())
    }

    /// Leading monomials, overridden by `options.divisor_map`.
    pub fn divisor_map(&self) -> Result<DivisorMap> {
        let gens = self.assumption_polys();
        let mut dm = DivisorMap::leading(&gens, &self.order)?;
        for (name, monos) in &self.options.divisor_map {
            let k = self
                .assumptions
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            dm.set(&gens, k, monos.clone())?;
        }
        Ok(dm)
    }

    pub fn leading_monomial(&self, f: &RatPolynomial) -> Result<Monomial> {
        self.order.leading_monomial(f).cloned()
    }
}

fn resolve_dm_entry(
    assumptions: &[(String, RatPolynomial)],
    alphabet: &Alphabet,
    name: &str,
    monos: &[String],
    ptr: &str,
) -> Result<Vec<Monomial>> {
    let (_, g) = assumptions
        .iter()
        .find(|(n, _)| n == name)
        .ok_or_else(|| Error::input(ptr, format!("unknown assumption `{name}`")))?;
    if monos.is_empty() {
        return Err(Error::input(ptr, "empty divisor monomial list"));
    }
    let mut out = Vec::with_capacity(monos.len());
    for (j, text) in monos.iter().enumerate() {
        let m = at(format!("{ptr}/{j}"), parse_monomial(text, alphabet))?;
        if !g.contains(&m) {
            return Err(Error::input(
                format!("{ptr}/{j}"),
                format!("`{text}` is not in the support of `{name}`"),
            ));
        }
        out.push(m);
    }
    Ok(out)
}

/// A divisor-map file: `{"f2": ["h2*d"], ...}`.
pub fn parse_dm(text: &str, problem: &Problem) -> Result<Vec<(String, Vec<Monomial>)>> {
    let raw: BTreeMap<String, Vec<String>> = from_json(text)?;
    raw.iter()
        .map(|(name, monos)| {
            let ptr = format!("/{name}");
            resolve_dm_entry(&problem.assumptions, problem.alphabet(), name, monos, &ptr)
                .map(|m| (name.clone(), m))
        })
        .collect()
}

pub fn parse_problem(text: &str, base_dir: Option<&Path>) -> Result<Problem> {
    Problem::from_file(from_json(text)?, base_dir)
}

pub fn load_problem(path: &Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input("/", format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    pub(crate) const RUNNING: &str = r#"{
      "alphabet": ["h1", "h2", "b1", "b2", "th1", "th2", "i", "d"],
      "quiver": {
        "vertices": ["v1", "v2", "v3"],
        "edges": [
          {"src": "v1", "tgt": "v2", "label": "d"},
          {"src": "v2", "tgt": "v3", "label": "d"},
          {"src": "v2", "tgt": "v3", "label": "b1"},
          {"src": "v1", "tgt": "v2", "label": "b2"},
          {"src": "v2", "tgt": "v1", "label": "i"},
          {"src": "v3", "tgt": "v2", "label": "i"},
          {"src": "v2", "tgt": "v2", "label": "h1"},
          {"src": "v3", "tgt": "v3", "label": "h1"},
          {"src": "v1", "tgt": "v1", "label": "h2"},
          {"src": "v2", "tgt": "v2", "label": "h2"},
          {"src": "v3", "tgt": "v3", "label": "th1"},
          {"src": "v2", "tgt": "v2", "label": "th2"}
        ]
      },
      "order": {"type": "deglex", "precedence": ["h2", "b2", "d", "i", "th2", "th1", "h1", "b1"]},
      "assumptions": [
        {"name": "f1", "poly": "d*h1 - h1*d - b1*h1"},
        {"name": "f2", "poly": "d*h2 - h2*d - b2*h2"},
        {"name": "f3", "poly": "h1*th1 - 1"},
        {"name": "f4", "poly": "h2*th2 - 1"},
        {"name": "f5", "poly": "d*i - 1"}
      ],
      "claim": "(d - b1)*(d - b2)*h2*i*th2*h1*i*th1 - 1"
    }"#;

    fn pointer(r: Result<Problem>) -> String {
        match r {
            Err(Error::Input { pointer, .. }) => pointer,
            other => panic!("expected an input error, got {other:?}"),
        }
    }

    #[test]
    fn loads_running_example() {
        let p = parse_problem(RUNNING, None).unwrap();
        let (_, s) = running();
        let f = running_polys(&s);
        assert_eq!(p.assumptions.len(), 5);
        assert_eq!(p.quiver.vertex_count(), 3);
        assert_eq!(p.assumption_polys(), f.assumptions());
        assert_eq!(p.claim, f.claim);
        assert_eq!(p.order, h2_b2_d(&s));
    }

    #[test]
    fn rejects_bad_files_with_pointers() {
        let missing = RUNNING.replace(r#""th1", "h1", "b1"]}"#, r#""th1", "h1"]}"#);
        assert_eq!(pointer(parse_problem(&missing, None)), "/order/precedence");
        let bad_vertex = RUNNING.replace(
            r#"{"src": "v3", "tgt": "v2", "label": "i"}"#,
            r#"{"src": "v9", "tgt": "v2", "label": "i"}"#,
        );
        assert_eq!(
            pointer(parse_problem(&bad_vertex, None)),
            "/quiver/edges/5/src"
        );
        let bad_poly = RUNNING.replace("h2*th2 - 1", "h2*zz - 1");
        assert_eq!(
            pointer(parse_problem(&bad_poly, None)),
            "/assumptions/3/poly"
        );
        let bad_type = RUNNING.replace(r#""claim": "(d"#, r#""claim": 3, "x": "(d"#);
        assert_eq!(pointer(parse_problem(&bad_type, None)), "/claim");
        let unknown_field = RUNNING.replace(
            r#""src": "v1", "tgt": "v2", "label": "d"}"#,
            r#""src": "v1", "tgt": "v2", "label": "d", "w": 1}"#,
        );
        assert_eq!(
            pointer(parse_problem(&unknown_field, None)),
            "/quiver/edges/0/w"
        );
    }

    #[test]
    fn divisor_map_options() {
        let with_dm = RUNNING.replace(
            r#""claim""#,
            r#""options": {"divisor_map": {"f2": ["b2*h2"]}, "mode": "criterion"}, "claim""#,
        );
        let p = parse_problem(&with_dm, None).unwrap();
        let (_, s) = running();
        assert_eq!(p.divisor_map().unwrap().get(1), &[mono(&[s.b2, s.h2])]);
        assert_eq!(p.options.mode, CertMode::Criterion);
        let bad = with_dm.replace(r#"["b2*h2"]"#, r#"["h1*d"]"#);
        assert_eq!(
            pointer(parse_problem(&bad, None)),
            "/options/divisor_map/f2/0"
        );
        let dm = parse_dm(r#"{"f2": ["h2*d"]}"#, &p).unwrap();
        assert_eq!(dm, vec![("f2".to_string(), vec![mono(&[s.h2, s.d])])]);
        assert!(parse_dm(r#"{"f9": ["h2*d"]}"#, &p).is_err());
    }
}
