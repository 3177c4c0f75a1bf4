//! The end-to-end check: signatures, reduction or completion, a certificate
//! verified by the requested checker, and an optional evaluation on a
//! representation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::completion::{buchberger, q_complete, CompletionResult};
use crate::consequence::{
    certificate_from_trace, compose_certificates, verify_criterion, verify_definition, CertMode,
};
use crate::error::{Error, Result};
use crate::order::is_q_order_compatible;
use crate::quiver::{LabelledQuiver, Signature};
use crate::realization::{ConsistencyVerdict, Realizer};
use crate::rewrite::{dm_compatible, DivisorMap, Reducer};
use crate::{RatCertificate, RatPolynomial, RatRepresentation, Rational};

use super::json::{certificate_to_file, CertificateFile};
use super::problem::Problem;
use super::text::{format_monomial, format_poly_ordered};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proved,
    NotProved,
    InputError,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Proved => 0,
            Verdict::NotProved => 1,
            Verdict::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyReport {
    pub name: String,
    pub poly: String,
    pub signature: Vec<[String; 2]>,
    pub compatible: bool,
    pub uniform: bool,
    pub leading_monomial: Option<String>,
    pub q_order_compatible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedText {
    pub name: String,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletionSummary {
    pub engine: &'static str,
    pub added: Vec<NamedText>,
    pub processed: usize,
    pub discarded: usize,
    pub pending: usize,
    pub interrupted: usize,
    pub lemma_checks: usize,
    pub lemma_violations: usize,
    pub constant_found: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub definition: String,
    pub criterion: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationSummary {
    pub consistency: String,
    pub error: Option<String>,
    pub assumptions_zero: BTreeMap<String, bool>,
    pub claim_zero: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub reason: Option<String>,
    /// `none`, `reduction`, `completion` or `buchberger`.
    pub route: &'static str,
    pub unique_labels: bool,
    pub claim: PolyReport,
    pub assumptions: Vec<PolyReport>,
    pub divisor_map_compatible: Option<bool>,
    pub normal_form: Option<String>,
    pub completion: Option<CompletionSummary>,
    pub checks: Option<CheckOutcome>,
    pub certificate: Option<CertificateFile>,
    pub realization: Option<RealizationSummary>,
    #[serde(skip)]
    pub cert: Option<RatCertificate>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn signature_names(q: &LabelledQuiver, s: &Signature) -> Vec<[String; 2]> {
    s.pairs()
        .map(|(u, v)| [q.vertex_name(u).to_string(), q.vertex_name(v).to_string()])
        .collect()
}

pub fn poly_report(p: &Problem, name: &str, f: &RatPolynomial) -> PolyReport {
    let q = &p.quiver;
    let c = q.compatibility(f);
    let lm = p.leading_monomial(f).ok();
    PolyReport {
        name: name.to_string(),
        poly: format_poly_ordered(f, p.alphabet(), &p.order),
        signature: signature_names(q, &q.sigma(f)),
        compatible: c.compatible,
        uniform: c.uniform,
        leading_monomial: lm.as_ref().map(|m| format_monomial(m, p.alphabet())),
        q_order_compatible: is_q_order_compatible(q, &p.order, f).ok(),
    }
}

pub fn completion_summary(
    engine: &'static str,
    r: &CompletionResult<Rational>,
    p: &Problem,
) -> CompletionSummary {
    CompletionSummary {
        engine,
        added: r
            .added()
            .iter()
            .map(|(n, g)| NamedText {
                name: n.clone(),
                poly: format_poly_ordered(g, p.alphabet(), &p.order),
            })
            .collect(),
        processed: r.processed,
        discarded: r.discarded.len(),
        pending: r.pending.len(),
        interrupted: r.interruptions.len(),
        lemma_checks: r.lemma_checks,
        lemma_violations: r.lemma_violations,
        constant_found: r.constant_found,
    }
}

/// Reduces `claim` by the basis of `r` and composes down to the inputs.
fn certificate_via(
    p: &Problem,
    r: &CompletionResult<Rational>,
    quiver: Option<&LabelledQuiver>,
) -> Result<(RatPolynomial, Option<RatCertificate>)> {
    let gens = r.polynomials();
    let dm = DivisorMap::leading(&gens, &p.order)?;
    let mut red = Reducer::new(&gens, &dm, &p.order);
    if let Some(q) = quiver {
        red = red.with_quiver(q);
    }
    let (nf, trace) = red.reduce(&p.claim)?;
    if !nf.is_zero() {
        return Ok((nf, None));
    }
    let outer = certificate_from_trace(&p.claim, &trace, &r.basis)?;
    Ok((nf, Some(compose_certificates(&outer, &r.certificates)?)))
}

/// Runs the pipeline. Only malformed input is an error; an unproved claim is
/// a verdict.
pub fn run_check(p: &Problem, rep: Option<&RatRepresentation>) -> Result<Report> {
    let q = &p.quiver;
    let mut report = Report {
        verdict: Verdict::NotProved,
        reason: None,
        route: "none",
        unique_labels: q.has_unique_edge_labels(),
        claim: poly_report(p, "claim", &p.claim),
        assumptions: p
            .assumptions
            .iter()
            .map(|(n, f)| poly_report(p, n, f))
            .collect(),
        divisor_map_compatible: None,
        normal_form: None,
        completion: None,
        checks: None,
        certificate: None,
        realization: None,
        cert: None,
    };
    if let Some(rep) = rep {
        report.realization = Some(realization(p, rep));
    }
    if !report.claim.compatible {
        report.reason = Some("claim not compatible with quiver".into());
        return Ok(report);
    }

    let cfg = &p.options.completion;
    let mut dm_used: Option<DivisorMap> = None;
    let cert = if report.unique_labels {
        report.route = "buchberger";
        let r = buchberger(&p.assumptions, &p.order, cfg)?;
        report.completion = Some(completion_summary("buchberger", &r, p));
        if r.constant_found {
            report.reason = Some(
                "completion produced a nonzero constant; the unique-label criterion does not apply"
                    .into(),
            );
            return Ok(report);
        }
        let (nf, cert) = certificate_via(p, &r, None)?;
        report.normal_form = Some(format_poly_ordered(&nf, p.alphabet(), &p.order));
        cert
    } else {
        report.route = "reduction";
        let gens = p.assumption_polys();
        let dm = p.divisor_map()?;
        report.divisor_map_compatible = Some(dm_compatible(q, &gens, &dm)?);
        let mut red = Reducer::new(&gens, &dm, &p.order);
        if report.divisor_map_compatible == Some(true) {
            red = red.with_quiver(q);
        }
        let (nf, trace) = red.reduce(&p.claim)?;
        report.normal_form = Some(format_poly_ordered(&nf, p.alphabet(), &p.order));
        if nf.is_zero() {
            dm_used = Some(dm);
            Some(certificate_from_trace(&p.claim, &trace, &p.assumptions)?)
        } else if report
            .assumptions
            .iter()
            .all(|a| a.q_order_compatible == Some(true))
        {
            report.route = "completion";
            let r = q_complete(q, &p.assumptions, &p.order, cfg)?;
            report.completion = Some(completion_summary("q_complete", &r, p));
            let (nf, cert) = certificate_via(p, &r, Some(q))?;
            report.normal_form = Some(format_poly_ordered(&nf, p.alphabet(), &p.order));
            cert
        } else {
            let bad: Vec<&str> = report
                .assumptions
                .iter()
                .filter(|a| a.q_order_compatible != Some(true))
                .map(|a| a.name.as_str())
                .collect();
            report.reason = Some(format!(
                "normal form is nonzero and completion needs order-compatible assumptions (not: {})",
                bad.join(", ")
            ));
            return Ok(report);
        }
    };

    let Some(mut cert) = cert else {
        let pending = report.completion.as_ref().map_or(0, |c| c.pending);
        report.reason = Some(if pending > 0 {
            format!("normal form is nonzero; completion stopped with {pending} pending ambiguities")
        } else {
            "normal form is nonzero".into()
        });
        return Ok(report);
    };

    if let (Some(dm), Some(true)) = (&dm_used, report.divisor_map_compatible) {
        for (k, (id, _)) in p.assumptions.iter().enumerate() {
            if cert.used_generators().contains(&id.as_str()) {
                cert.witnesses.insert(id.clone(), dm.get(k)[0].clone());
            }
        }
    }
    cert.attach_witnesses(q, Some(&p.order));
    cert.mode = p.options.mode;

    let definition = verify_definition(q, &cert);
    let criterion = verify_criterion(q, &cert);
    report.checks = Some(CheckOutcome {
        definition: match &definition {
            Ok(_) => "accepted".into(),
            Err(r) => format!("rejected: {r}"),
        },
        criterion: match &criterion {
            Ok(Ok(_)) => "accepted".into(),
            Ok(Err(r)) => format!("rejected: {r}"),
            Err(e) => format!("not applicable: {e}"),
        },
    });
    let accepted = match p.options.mode {
        CertMode::Definition => definition.is_ok(),
        CertMode::Criterion => matches!(criterion, Ok(Ok(_))),
    };
    report.certificate = Some(certificate_to_file(&cert, p.alphabet()));
    if accepted {
        report.verdict = Verdict::Proved;
    } else {
        report.reason = Some("certificate rejected by the requested checker".into());
    }
    report.cert = Some(cert);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub mode: &'static str,
    pub message: String,
}

/// Checks a stored certificate against a problem: the claim and every
/// generator must match the problem, then the checker for `mode` runs.
pub fn verify_certificate(p: &Problem, cert: &RatCertificate, mode: CertMode) -> VerifyReport {
    let mode_name = match mode {
        CertMode::Definition => "definition",
        CertMode::Criterion => "criterion",
    };
    let reject = |message: String| VerifyReport {
        verdict: Verdict::NotProved,
        mode: mode_name,
        message,
    };
    if cert.claim != p.claim {
        return reject("certificate claim differs from the problem claim".into());
    }
    for (id, g) in &cert.generators {
        match p.assumptions.iter().find(|(n, _)| n == id) {
            Some((_, f)) if f == g => {}
            Some(_) => {
                return reject(format!(
                    "generator `{id}` differs from the problem assumption"
                ))
            }
            None => {
                return reject(format!(
                    "generator `{id}` is not an assumption of the problem"
                ))
            }
        }
    }
    let outcome = match mode {
        CertMode::Definition => verify_definition(&p.quiver, cert)
            .map(|_| ())
            .map_err(|r| r.to_string()),
        CertMode::Criterion => match verify_criterion(&p.quiver, cert) {
            Ok(Ok(_)) => Ok(()),
            Ok(Err(r)) => Err(r.to_string()),
            Err(e) => Err(e.to_string()),
        },
    };
    match outcome {
        Ok(()) => VerifyReport {
            verdict: Verdict::Proved,
            mode: mode_name,
            message: "accepted".into(),
        },
        Err(m) => reject(format!("rejected: {m}")),
    }
}

fn verdict_name(v: &ConsistencyVerdict) -> String {
    match v {
        ConsistencyVerdict::BySufficientCondition => "consistent (distinct labels)".into(),
        ConsistencyVerdict::UpToLength(n) => format!("consistent up to path length {n}"),
        ConsistencyVerdict::Inconsistent { .. } => "inconsistent".into(),
        ConsistencyVerdict::Unknown => "unknown".into(),
    }
}

pub fn realization(p: &Problem, rep: &RatRepresentation) -> RealizationSummary {
    let mut out = RealizationSummary {
        consistency: String::new(),
        error: None,
        assumptions_zero: BTreeMap::new(),
        claim_zero: None,
    };
    let r = match Realizer::new(
        &p.quiver,
        rep,
        p.options.max_path_len,
        p.options.assume_consistent,
    ) {
        Ok(r) => r,
        Err(e) => {
            out.consistency = match e {
                Error::InconsistentRepresentation => "inconsistent".into(),
                _ => "unknown".into(),
            };
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.consistency = verdict_name(r.verdict());
    for (n, f) in &p.assumptions {
        match r.verify_zero(f) {
            Ok(z) => {
                out.assumptions_zero.insert(n.clone(), z);
            }
            Err(e) => out.error = Some(e.to_string()),
        }
    }
    match r.verify_zero(&p.claim) {
        Ok(z) => out.claim_zero = Some(z),
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}
