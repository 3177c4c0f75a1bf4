use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use quiver_gb::completion::{buchberger, q_complete};
use quiver_gb::consequence::CertMode;
use quiver_gb::io::json::{certificate_from_json, certificate_to_json, representation_from_json};
use quiver_gb::io::pipeline::{
    completion_summary, poly_report, realization, run_check, verify_certificate, Verdict,
};
use quiver_gb::io::problem::{load_problem, parse_dm, Problem};
use quiver_gb::io::text::format_rational;
use quiver_gb::io::{format_monomial, format_poly_ordered, write_atomic};
use quiver_gb::rewrite::{dm_compatible, Reducer};
use quiver_gb::{Error, RatRepresentation};

#[derive(Parser)]
#[command(
    name = "quiver-gb",
    version,
    about = "Prove operator identities with quiver-constrained noncommutative polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the claim: reduce, complete if needed, and verify a certificate.
    Check(Common),
    /// Signatures and compatibility of every assumption and the claim.
    Signatures(Common),
    /// Reduce the claim by the assumptions under the divisor map.
    Reduce(Common),
    /// Run the completion on the assumptions.
    Complete {
        #[command(flatten)]
        common: Common,
        /// Plain completion without quiver checks.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Produce a certificate for the claim.
    Certify(Common),
    /// Verify a stored certificate against the problem.
    Verify {
        #[command(flatten)]
        common: Common,
        certificate: PathBuf,
    },
    /// Evaluate the assumptions and the claim on a representation.
    Realize(Common),
}

#[derive(Args)]
struct Common {
    problem: PathBuf,
    /// Letter precedence, greatest first, comma separated.
    #[arg(long)]
    order: Option<String>,
    /// Divisor-map file: {"f2": ["h2*d"]}.
    #[arg(long)]
    dm: Option<PathBuf>,
    #[arg(long)]
    max_new: Option<usize>,
    #[arg(long)]
    max_amb: Option<usize>,
    /// Check with the signature criterion.
    #[arg(long, conflicts_with = "definition")]
    criterion: bool,
    /// Check with the definition.
    #[arg(long)]
    definition: bool,
    /// Representation file.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Accept a representation whose consistency could not be decided.
    #[arg(long)]
    assume_consistent: bool,
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::input("/", format!("cannot read {}: {e}", path.display())))
}

impl Common {
    fn load(&self) -> Result<Problem, Error> {
        let mut p = load_problem(&self.problem)?;
        if let Some(o) = &self.order {
            let prec: Vec<String> = o.split(',').map(|s| s.trim().to_string()).collect();
            p.set_precedence(&prec)?;
        }
        if let Some(path) = &self.dm {
            for (name, monos) in parse_dm(&read(path)?, &p)? {
                p.options.divisor_map.retain(|(n, _)| *n != name);
                p.options.divisor_map.push((name, monos));
            }
        }
        if let Some(n) = self.max_new {
            p.options.completion.max_new_elements = n;
        }
        if let Some(n) = self.max_amb {
            p.options.completion.max_ambiguities = n;
        }
        if self.criterion {
            p.options.mode = CertMode::Criterion;
        }
        if self.definition {
            p.options.mode = CertMode::Definition;
        }
        if let Some(r) = &self.rep {
            p.options.representation = Some(r.clone());
        }
        p.options.assume_consistent |= self.assume_consistent;
        Ok(p)
    }

    fn representation(&self, p: &Problem) -> Result<Option<RatRepresentation>, Error> {
        match &p.options.representation {
            Some(path) => Ok(Some(representation_from_json(&read(path)?, &p.quiver)?)),
            None => Ok(None),
        }
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.output {
            Some(path) => write_atomic(path, text.as_bytes())
                .map_err(|e| Error::input("/", format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct StepOut {
    coeff: String,
    left: String,
    generator: String,
    right: String,
    divisor: String,
}

#[derive(Serialize)]
struct ReduceOut {
    divisor_map_compatible: bool,
    normal_form: String,
    steps: Vec<StepOut>,
}

fn run(cli: Cli) -> Result<Verdict, Error> {
    match cli.command {
        Command::Check(c) => {
            let p = c.load()?;
            let rep = c.representation(&p)?;
            let report = run_check(&p, rep.as_ref())?;
            c.emit(&report.to_json())?;
            Ok(report.verdict)
        }
        Command::Signatures(c) => {
            let p = c.load()?;
            let mut out: Vec<_> = p
                .assumptions
                .iter()
                .map(|(n, f)| poly_report(&p, n, f))
                .collect();
            out.push(poly_report(&p, "claim", &p.claim));
            c.emit(&to_json(&out))?;
            Ok(Verdict::Proved)
        }
        Command::Reduce(c) => {
            let p = c.load()?;
            let gens = p.assumption_polys();
            let dm = p.divisor_map()?;
            let compatible = dm_compatible(&p.quiver, &gens, &dm)?;
            let mut red = Reducer::new(&gens, &dm, &p.order);
            if compatible {
                red = red.with_quiver(&p.quiver);
            }
            let (nf, trace) = red.reduce(&p.claim)?;
            let a = p.alphabet();
            let out = ReduceOut {
                divisor_map_compatible: compatible,
                normal_form: format_poly_ordered(&nf, a, &p.order),
                steps: trace
                    .steps
                    .iter()
                    .map(|s| StepOut {
                        coeff: format_rational(&s.coeff),
                        left: format_monomial(&s.left, a),
                        generator: p.assumptions[s.generator].0.clone(),
                        right: format_monomial(&s.right, a),
                        divisor: format_monomial(&s.divisor, a),
                    })
                    .collect(),
            };
            c.emit(&to_json(&out))?;
            Ok(if nf.is_zero() {
                Verdict::Proved
            } else {
                Verdict::NotProved
            })
        }
        Command::Complete {
            common: c,
            unrestricted,
        } => {
            let p = c.load()?;
            let cfg = &p.options.completion;
            let s = if unrestricted {
                completion_summary(
                    "buchberger",
                    &buchberger(&p.assumptions, &p.order, cfg)?,
                    &p,
                )
            } else {
                completion_summary(
                    "q_complete",
                    &q_complete(&p.quiver, &p.assumptions, &p.order, cfg)?,
                    &p,
                )
            };
            c.emit(&to_json(&s))?;
            Ok(if s.pending == 0 {
                Verdict::Proved
            } else {
                Verdict::NotProved
            })
        }
        Command::Certify(c) => {
            let p = c.load()?;
            let report = run_check(&p, None)?;
            match &report.cert {
                Some(cert) => {
                    c.emit(&certificate_to_json(cert, p.alphabet()))?;
                    Ok(report.verdict)
                }
                None => {
                    eprintln!("no certificate: {}", report.reason.unwrap_or_default());
                    Ok(Verdict::NotProved)
                }
            }
        }
        Command::Verify {
            common: c,
            certificate,
        } => {
            let p = c.load()?;
            let cert = certificate_from_json(&read(&certificate)?, p.alphabet())?;
            let mode = if c.criterion {
                CertMode::Criterion
            } else if c.definition {
                CertMode::Definition
            } else {
                cert.mode
            };
            let r = verify_certificate(&p, &cert, mode);
            c.emit(&to_json(&r))?;
            Ok(r.verdict)
        }
        Command::Realize(c) => {
            let p = c.load()?;
            let rep = c.representation(&p)?.ok_or_else(|| {
                Error::input(
                    "/options/representation",
                    "no representation given (use --rep)",
                )
            })?;
            let s = realization(&p, &rep);
            c.emit(&to_json(&s))?;
            let all_zero = s.error.is_none()
                && s.claim_zero == Some(true)
                && s.assumptions_zero.values().all(|&z| z);
            Ok(if all_zero {
                Verdict::Proved
            } else {
                Verdict::NotProved
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Verdict::InputError.exit_code() as u8)
        }
    }
}
