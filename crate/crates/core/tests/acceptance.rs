mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiver_gb::completion::{buchberger, q_complete, CompletionConfig};
use quiver_gb::consequence::{
    certificate_from_trace, compose_certificates, verify_criterion, verify_definition, CertMode,
    CertTerm, Certificate,
};
use quiver_gb::io::json::{certificate_from_json, certificate_to_json, representation_from_json};
use quiver_gb::io::problem::load_problem;
use quiver_gb::matrix::Matrix;
use quiver_gb::realization::Realizer;
use quiver_gb::rewrite::{dm_compatible, trace_expand, Canonical, DivisorMap, Reducer};
use quiver_gb::testing::*;
use quiver_gb::{DegLex, Monomial, RatPolynomial, Signature, Symbol, Vertex};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn c1_signatures() -> Outcome {
    let (q, s) = running();
    let f = running_polys(&s);
    let expected = [
        ("f1", &f.f1, vec![(1, 2)]),
        ("f2", &f.f2, vec![(0, 1)]),
        ("f3", &f.f3, vec![(2, 2)]),
        ("f4", &f.f4, vec![(1, 1)]),
        ("f5", &f.f5, vec![(1, 1), (2, 2)]),
        ("f", &f.claim, vec![(2, 2)]),
    ];
    for (name, p, pairs) in expected {
        let got = q.sigma(p);
        ensure(
            got == Signature::from_pairs(3, pairs.clone()),
            format!("sigma({name}) = {got:?}"),
        )?;
    }
    Ok("six exact signatures".into())
}

fn c2_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    for k in 0..500 {
        let q = random_quiver(&mut rng, 5, 10, 3);
        let m = random_word(&mut rng, 3, 6);
        ensure(
            q.sigma_monomial(&m) == brute_force_sigma(&q, &m),
            format!("instance {k}: {q:?} {m:?}"),
        )?;
    }
    let t = start.elapsed();
    ensure(t.as_secs_f64() < 10.0, format!("took {t:?}"))?;
    Ok(format!("500 instances agree in {:.3}s", t.as_secs_f64()))
}

fn c3_reduction() -> Outcome {
    let (q, s) = running();
    let f = running_polys(&s);
    let gens = f.assumptions();
    let ord = d_greatest(&s);
    let dm = DivisorMap::leading(&gens, &ord).map_err(|e| e.to_string())?;
    let (nf, trace) = Reducer::new(&gens, &dm, &ord)
        .reduce(&f.claim)
        .map_err(|e| e.to_string())?;
    ensure(nf.is_zero(), "normal form is nonzero")?;
    ensure(
        trace_expand(&gens, &trace).map_err(|e| e.to_string())? == f.claim,
        "trace does not expand to f",
    )?;
    let mut cert =
        certificate_from_trace(&f.claim, &trace, &f.named()).map_err(|e| e.to_string())?;
    cert.witnesses = [
        ("f1", mono(&[s.d, s.h1])),
        ("f2", mono(&[s.h2, s.d])),
        ("f3", mono(&[s.h1, s.th1])),
        ("f4", mono(&[s.h2, s.th2])),
        ("f5", mono(&[s.d, s.i])),
    ]
    .into_iter()
    .map(|(k, m)| (k.to_string(), m))
    .collect();
    let sigs = verify_criterion(&q, &cert)
        .map_err(|e| e.to_string())?
        .map_err(|r| format!("criterion rejected: {r}"))?;
    ensure(
        sigs.iter().all(|x| *x == sig(&[(2, 2)])),
        format!("{sigs:?}"),
    )?;
    // the displayed grouped representation, expanded again
    let regrouped = cert.grouped().expanded();
    let sigs2 = verify_criterion(&q, &regrouped)
        .map_err(|e| e.to_string())?
        .map_err(|r| r.to_string())?;
    ensure(sigs2.iter().all(|x| *x == sig(&[(2, 2)])), "regrouped form")?;
    Ok(format!(
        "reduces to 0; {} expanded terms (the displayed representation expands to {}), all with signature {{(v3,v3)}}",
        sigs.len(),
        sigs2.len()
    ))
}

fn c4_divisor_maps() -> Outcome {
    let (q, s) = running();
    let f = running_polys(&s);
    let gens = f.assumptions();
    let err = |e: quiver_gb::Error| e.to_string();
    let lead = DivisorMap::leading(&gens, &d_greatest(&s)).map_err(err)?;
    ensure(lead.get(1) == [mono(&[s.d, s.h2])], "LM(f2) is not d*h2")?;
    ensure(
        q.sigma_monomial(&mono(&[s.d, s.h2])) != q.sigma(&f.f2),
        "sigma(d*h2) = sigma(f2)",
    )?;
    ensure(
        !dm_compatible(&q, &gens, &lead).map_err(err)?,
        "leading map accepted",
    )?;

    let mut b2h2 = lead.clone();
    b2h2.set(&gens, 1, vec![mono(&[s.b2, s.h2])]).map_err(err)?;
    ensure(
        dm_compatible(&q, &gens, &b2h2).map_err(err)?,
        "b2*h2 map rejected",
    )?;
    let (nf, _) = Reducer::new(&gens, &b2h2, &Canonical)
        .with_quiver(&q)
        .reduce(&f.claim)
        .map_err(err)?;
    ensure(nf.is_zero(), "b2*h2 variant leaves a remainder")?;

    let mut h2d = lead;
    h2d.set(&gens, 1, vec![mono(&[s.h2, s.d])]).map_err(err)?;
    let (nf, _) = Reducer::new(&gens, &h2d, &h2_b2_d(&s))
        .with_quiver(&q)
        .reduce(&f.claim)
        .map_err(err)?;
    ensure(!nf.is_zero(), "h2*d variant reached 0")?;
    Ok(format!(
        "leading map rejected; b2*h2 -> 0; h2*d -> {} terms",
        nf.len()
    ))
}

fn c5_c6_completion() -> (Outcome, Outcome) {
    let (q, s) = running();
    let f = running_polys(&s);
    let ord = h2_b2_d(&s);
    let res = match q_complete(&q, &f.named(), &ord, &CompletionConfig::default()) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let c5 = (|| {
        let expected = poly(&[
            (1, &[s.b2, s.h2, s.i]),
            (-1, &[s.d, s.h2, s.i]),
            (1, &[s.h2]),
        ]);
        ensure(
            res.added().len() == 1,
            format!("{} elements adjoined", res.added().len()),
        )?;
        let (id, g) = &res.added()[0];
        ensure(*g == expected, "adjoined element differs")?;
        let (_, amb) = &res.origins[id];
        let origin = (
            1usize,
            Monomial::one(),
            mono(&[s.i]),
            4usize,
            mono(&[s.h2]),
            Monomial::one(),
        );
        let ours = (
            amb.g,
            amb.a.clone(),
            amb.b.clone(),
            amb.g2,
            amb.a2.clone(),
            amb.b2.clone(),
        );
        let swapped = (
            amb.g2,
            amb.a2.clone(),
            amb.b2.clone(),
            amb.g,
            amb.a.clone(),
            amb.b.clone(),
        );
        ensure(
            ours == origin || swapped == origin,
            format!("origin {amb:?}"),
        )?;
        let gens = res.polynomials();
        let dm = DivisorMap::leading(&gens, &ord).map_err(|e| e.to_string())?;
        let (nf, trace) = Reducer::new(&gens, &dm, &ord)
            .with_quiver(&q)
            .reduce(&f.claim)
            .map_err(|e| e.to_string())?;
        ensure(nf.is_zero(), "claim does not reduce to 0 by G")?;
        let outer =
            certificate_from_trace(&f.claim, &trace, &res.basis).map_err(|e| e.to_string())?;
        let cert = compose_certificates(&outer, &res.certificates).map_err(|e| e.to_string())?;
        ensure(
            cert.generators.iter().all(|(id, _)| id.starts_with('f')),
            "certificate not over F",
        )?;
        verify_definition(&q, &cert).map_err(|r| format!("definition rejected: {r}"))?;
        Ok(format!(
            "adjoined b2*h2*i - d*h2*i + h2 from (f2,f5,1,i,h2,1); F-certificate with {} terms verifies",
            cert.terms.len()
        ))
    })();
    let c6 = if res.lemma_checks > 0 && res.lemma_violations == 0 {
        Ok(format!(
            "{} S-polynomials with compatible source, 0 violations",
            res.lemma_checks
        ))
    } else {
        Err(format!(
            "{} checks, {} violations",
            res.lemma_checks, res.lemma_violations
        ))
    };
    (c5, c6)
}

fn random_order<R: Rng>(rng: &mut R, n: usize) -> DegLex {
    let mut prec: Vec<Symbol> = (0..n as u32).map(Symbol).collect();
    prec.shuffle(rng);
    DegLex::from_precedence(prec, n).unwrap()
}

/// A random `sum c * a * g * b` whose monomials are all paths `x -> y`.
fn random_consequence<R: Rng>(
    rng: &mut R,
    q: &quiver_gb::LabelledQuiver,
    gens: &[(String, RatPolynomial)],
) -> Option<(RatPolynomial, Vec<CertTerm<quiver_gb::Rational>>)> {
    let n = q.vertex_count();
    let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let (id, g) = gens.choose(rng)?;
        let pairs: Vec<(Vertex, Vertex)> = q.sigma(g).pairs().collect();
        let (v, w) = *pairs.choose(rng)?;
        let bs = path_words(q, x, v.0, 2);
        let as_ = path_words(q, w.0, y, 2);
        let (Some(b), Some(a)) = (bs.choose(rng), as_.choose(rng)) else {
            continue;
        };
        terms.push(CertTerm::monomial(
            small_rational(rng),
            a.clone(),
            id.clone(),
            b.clone(),
        ));
    }
    let mut f = RatPolynomial::zero();
    for t in &terms {
        let g = &gens.iter().find(|(id, _)| *id == t.generator)?.1;
        f = &f + &(&(&t.left * g) * &t.right).scale(&t.coeff);
    }
    (!f.is_zero()).then_some((f, terms))
}

fn random_gens<R: Rng>(rng: &mut R, q: &quiver_gb::LabelledQuiver) -> Vec<(String, RatPolynomial)> {
    let n = q.vertex_count();
    let mut out = Vec::new();
    for k in 0..rng.gen_range(1..=3) {
        let (v, w) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if let Some(g) = random_path_poly(rng, q, v, w, 3, 3) {
            out.push((format!("g{}", k + 1), g));
        }
    }
    out
}

fn c7_unique_labels() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = CompletionConfig {
        max_new_elements: 6,
        max_ambiguities: 60,
        max_source_degree: Some(6),
        step_cap: 2_000,
        ..CompletionConfig::default()
    };
    let (mut instances, mut constant, mut verified, mut unreduced) = (0, 0, 0, 0);
    let mut attempts = 0;
    while instances < 100 {
        attempts += 1;
        ensure(attempts < 10_000, "could not generate instances")?;
        let q = random_unique_label_quiver(&mut rng, 4, 4);
        let gens = random_gens(&mut rng, &q);
        if gens.is_empty() {
            continue;
        }
        let Some((f, _)) = random_consequence(&mut rng, &q, &gens) else {
            continue;
        };
        ensure(q.is_compatible(&f), "generated claim is incompatible")?;
        instances += 1;
        let ord = random_order(&mut rng, 4);
        let res = match buchberger(&gens, &ord, &cfg) {
            Ok(r) => r,
            Err(quiver_gb::Error::StepLimit(_)) => {
                unreduced += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        if res.constant_found {
            constant += 1;
            continue;
        }
        let basis = res.polynomials();
        let dm = DivisorMap::leading(&basis, &ord).map_err(|e| e.to_string())?;
        let (nf, trace) = Reducer::new(&basis, &dm, &ord)
            .with_cap(2_000)
            .reduce(&f)
            .map_err(|e| e.to_string())?;
        if !nf.is_zero() {
            unreduced += 1;
            continue;
        }
        let outer = certificate_from_trace(&f, &trace, &res.basis).map_err(|e| e.to_string())?;
        let cert = compose_certificates(&outer, &res.certificates).map_err(|e| e.to_string())?;
        ensure(
            cert.expansion().map_err(|e| e.to_string())? == f,
            "composed certificate does not expand to f",
        )?;
        verify_definition(&q, &cert).map_err(|r| format!("counterexample on {q:?}: {r}"))?;
        verified += 1;
    }
    ensure(verified > 0, "no instance reached the certificate check")?;
    Ok(format!(
        "{instances} instances: {verified} certificates verified, {unreduced} not reduced within bounds, {constant} with a constant, 0 counterexamples"
    ))
}

fn c8_realization() -> Outcome {
    let err = |e: quiver_gb::Error| e.to_string();
    let p = load_problem(&example("split_idempotent.json")).map_err(err)?;
    let text =
        std::fs::read_to_string(example("split_idempotent_rep.json")).map_err(|e| e.to_string())?;
    let rep = representation_from_json(&text, &p.quiver).map_err(err)?;
    let r = Realizer::new(&p.quiver, &rep, 4, false).map_err(err)?;
    let a = p.alphabet();
    let parse = |t: &str| quiver_gb::io::parse_poly(t, a);
    ensure(
        r.verify_zero(&parse("p*q - 1").map_err(err)?)
            .map_err(err)?,
        "p*q - 1 is not zero",
    )?;
    ensure(
        r.verify_zero(&parse("p*q*p*q - 1").map_err(err)?)
            .map_err(err)?,
        "p*q*p*q - 1 is not zero",
    )?;
    for (v, &d) in rep.dims().iter().enumerate() {
        let one = r
            .realize(&RatPolynomial::one(), (Vertex(v), Vertex(v)))
            .map_err(err)?;
        ensure(
            one == Matrix::identity(d),
            format!("realize(1) at vertex {v}"),
        )?;
    }
    let qp = r
        .realize(&parse("q*p - 1").map_err(err)?, (Vertex(0), Vertex(0)))
        .map_err(err)?;
    ensure(!qp.is_zero(), "q*p - 1 vanished")?;
    Ok(format!(
        "dims {:?}; both identities realize to exact zero matrices; 1 -> identity",
        rep.dims()
    ))
}

fn c9_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut attempts = 0;
    let mut modes = BTreeMap::new();
    while done < 100 {
        attempts += 1;
        ensure(
            attempts < 20_000,
            "could not generate verifying certificates",
        )?;
        let q = random_quiver(&mut rng, 4, 8, 3);
        let gens = random_gens(&mut rng, &q);
        if gens.is_empty() {
            continue;
        }
        let Some((f, terms)) = random_consequence(&mut rng, &q, &gens) else {
            continue;
        };
        let mut cert = Certificate {
            claim: f,
            generators: gens,
            terms,
            witnesses: BTreeMap::new(),
            mode: if rng.gen_bool(0.5) {
                CertMode::Criterion
            } else {
                CertMode::Definition
            },
        };
        cert.attach_witnesses(&q, None::<&DegLex>);
        let verdict = |c: &Certificate<quiver_gb::Rational>| match c.mode {
            CertMode::Definition => verify_definition(&q, c)
                .map(|_| ())
                .map_err(|r| r.to_string()),
            CertMode::Criterion => match verify_criterion(&q, c) {
                Ok(Ok(_)) => Ok(()),
                Ok(Err(r)) => Err(r.to_string()),
                Err(e) => Err(e.to_string()),
            },
        };
        let before = verdict(&cert);
        if before.is_err() {
            continue;
        }
        let json = certificate_to_json(&cert, q.alphabet());
        let back =
            certificate_from_json(&json, q.alphabet()).map_err(|e| format!("{e}\n{json}"))?;
        ensure(
            back == cert,
            format!("round trip changed the certificate:\n{json}"),
        )?;
        ensure(verdict(&back) == before, "verdict changed")?;
        ensure(
            certificate_to_json(&back, q.alphabet()) == json,
            "serialization is not stable",
        )?;
        *modes.entry(format!("{:?}", cert.mode)).or_insert(0) += 1;
        done += 1;
    }
    Ok(format!("100 verifying certificates round-trip ({modes:?})"))
}

fn c10_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_quiver-gb");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let problem = example("ode_factorization.json");
    let mut outputs = Vec::new();
    for run in 0..2 {
        let report = dir.path().join(format!("report{run}.json"));
        let cert = dir.path().join(format!("cert{run}.json"));
        for (cmd, out) in [("check", &report), ("certify", &cert)] {
            let status = Command::new(bin)
                .arg(cmd)
                .arg(&problem)
                .arg("-o")
                .arg(out)
                .status()
                .map_err(|e| e.to_string())?;
            ensure(
                status.code() == Some(0),
                format!("{cmd} exited with {status}"),
            )?;
        }
        outputs.push((
            std::fs::read(&report).unwrap(),
            std::fs::read(&cert).unwrap(),
        ));
    }
    ensure(outputs[0].0 == outputs[1].0, "reports differ")?;
    ensure(outputs[0].1 == outputs[1].1, "certificates differ")?;
    Ok(format!(
        "report {} bytes and certificate {} bytes identical",
        outputs[0].0.len(),
        outputs[0].1.len()
    ))
}

/// Written straight to stderr so the lines show up without `--nocapture`.
fn report(line: String) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

#[test]
fn acceptance() {
    let guarded = |f: fn() -> Outcome| {
        catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()))
    };
    let (c5, c6) = catch_unwind(c5_c6_completion)
        .unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "running-example signatures", guarded(c1_signatures)),
        (2, "sigma oracle equivalence", guarded(c2_oracle)),
        (3, "consequence via reduction", guarded(c3_reduction)),
        (
            4,
            "incompatible divisor map detection",
            guarded(c4_divisor_maps),
        ),
        (5, "completion of the running example", c5),
        (6, "S-polynomial signature lemma", c6),
        (7, "unique-label theorem", guarded(c7_unique_labels)),
        (8, "realization soundness", guarded(c8_realization)),
        (9, "certificate round trip", guarded(c9_round_trip)),
        (10, "CLI determinism", guarded(c10_determinism)),
    ];
    let mut failed = 0;
    for (k, name, r) in &results {
        match r {
            Ok(detail) => report(format!("PASS {k:>2} {name}: {detail}")),
            Err(why) => {
                failed += 1;
                report(format!("FAIL {k:>2} {name}: {why}"));
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
