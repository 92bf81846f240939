//! Subcommand implementations. Each writes its report to `out` and returns
//! the process exit code, or a [`CliError`] for exit code 1.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cliffinv::{
    compose_inverse, default_chain, delta_solutions, discriminant_closed_form, parse_multivector, GradeSet,
    LengthDeltaMap, Multivector, NamedMap, ParseError, Signature,
};
use serde::Serialize;

use crate::args::{BatchArgs, InputArgs, SigArgs};
use crate::bench::bench;
use crate::json::{multivector_from_str, JsonError, MultivectorJson};
use crate::verify::{verify_signature, SignatureReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_INVERTIBLE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const VERIFY_SAMPLES: usize = 200;
pub const BENCH_SAMPLES: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}", render_parse_error(input, error))]
    Parse { input: String, error: ParseError },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: JsonError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Algebra(#[from] cliffinv::Error),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

/// The message followed by the input with a caret under the offending byte.
fn render_parse_error(input: &str, error: &ParseError) -> String {
    match error.offset() {
        Some(offset) => {
            let column = input[..offset.min(input.len())].chars().count();
            format!("{error}\n  {input}\n  {}^", " ".repeat(column))
        }
        None => error.to_string(),
    }
}

type Outcome = Result<i32, CliError>;

fn signature(sig: &SigArgs) -> Result<Option<Signature>, CliError> {
    match (sig.p, sig.q) {
        (None, None) => Ok(None),
        (p, q) => Ok(Some(Signature::new(p.unwrap_or(0) as usize, q.unwrap_or(0) as usize)?)),
    }
}

fn required_signature(sig: &SigArgs) -> Result<Signature, CliError> {
    if sig.p.is_none() || sig.q.is_none() {
        return Err(CliError::Usage("the signature is required: pass both -p and -q".into()));
    }
    Ok(signature(sig)?.expect("both flags present"))
}

fn read_element(sig: &SigArgs, input: &InputArgs) -> Result<Multivector, CliError> {
    match (&input.expr, &input.file) {
        (Some(expr), _) => {
            let sig = required_signature(sig)?;
            parse_multivector(expr, sig).map_err(|error| CliError::Parse {
                input: expr.clone(),
                error,
            })
        }
        (None, Some(path)) => {
            let m = read_json(path)?;
            if let Some(given) = signature(sig)? {
                if given != m.sig() {
                    return Err(CliError::Usage(format!(
                        "{} holds an element of {}, but {given} was requested",
                        path.display(),
                        m.sig()
                    )));
                }
            }
            Ok(m)
        }
        (None, None) => Err(CliError::Usage("an expression or --file is required".into())),
    }
}

fn read_json(path: &Path) -> Result<Multivector, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    multivector_from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)
}

#[derive(Serialize)]
struct InverseJson {
    p: usize,
    q: usize,
    discriminant: String,
    invertible: bool,
    factors: Vec<MultivectorJson>,
    inverse: Option<MultivectorJson>,
}

pub fn inv(out: &mut dyn Write, sig: &SigArgs, input: &InputArgs, json: bool) -> Outcome {
    let a = read_element(sig, input)?;
    let result = compose_inverse(&a, &default_chain(a.sig().n())?)?;
    if json {
        print_json(
            out,
            &InverseJson {
                p: a.sig().p(),
                q: a.sig().q(),
                discriminant: result.discriminant.to_string(),
                invertible: result.inverse.is_some(),
                factors: result.factors.iter().map(MultivectorJson::from).collect(),
                inverse: result.inverse.as_ref().map(MultivectorJson::from),
            },
        )?;
    } else if result.inverse.is_none() {
        writeln!(out, "not invertible, D = {}", result.discriminant)?;
    } else {
        writeln!(out, "D = {}", result.discriminant)?;
        for (i, f) in result.factors.iter().enumerate() {
            writeln!(out, "f{0}(a{0}) = {f}", i + 1)?;
        }
        writeln!(out, "inverse = {}", result.inverse.as_ref().unwrap())?;
    }
    Ok(if result.inverse.is_some() {
        EXIT_OK
    } else {
        EXIT_NOT_INVERTIBLE
    })
}

#[derive(Serialize)]
struct DiscJson {
    p: usize,
    q: usize,
    discriminant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

pub fn disc(out: &mut dyn Write, sig: &SigArgs, input: &InputArgs, closed_form: bool, json: bool) -> Outcome {
    let a = read_element(sig, input)?;
    let n = a.sig().n();
    if closed_form && !(1..=4).contains(&n) {
        return Err(CliError::Usage(format!(
            "--closed-form needs 1 <= p + q <= 4, got p + q = {n}"
        )));
    }
    let d = a.discriminant();
    let closed = if closed_form {
        Some(discriminant_closed_form(&a)?)
    } else {
        None
    };
    let matches = closed.as_ref().map(|c| *c == d);
    if json {
        print_json(
            out,
            &DiscJson {
                p: a.sig().p(),
                q: a.sig().q(),
                discriminant: d.to_string(),
                closed_form: closed.as_ref().map(ToString::to_string),
                matches,
            },
        )?;
    } else {
        writeln!(out, "D = {d}")?;
        if let Some(c) = &closed {
            writeln!(out, "closed form = {c}")?;
            writeln!(out, "{}", if matches == Some(true) { "match" } else { "MISMATCH" })?;
        }
    }
    Ok(if matches == Some(false) {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

pub fn map(out: &mut dyn Write, sig: &SigArgs, name: NamedMap, input: &InputArgs, json: bool) -> Outcome {
    let a = read_element(sig, input)?;
    let image = a.apply_named(name);
    if json {
        print_json(out, &MultivectorJson::from(&image))?;
    } else {
        writeln!(out, "{image}")?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DeltaSolutionJson {
    delta: Vec<i8>,
    names: Vec<&'static str>,
}

#[derive(Serialize)]
struct DeltaSearchJson {
    n: usize,
    grades: Vec<usize>,
    solutions: Vec<DeltaSolutionJson>,
}

pub fn delta_search(out: &mut dyn Write, n: usize, grades: GradeSet, json: bool) -> Outcome {
    let solutions = delta_solutions(grades, n)?;
    let names = |f: LengthDeltaMap| f.names().map(NamedMap::as_str).collect::<Vec<_>>();
    if json {
        print_json(
            out,
            &DeltaSearchJson {
                n,
                grades: grades.iter().collect(),
                solutions: solutions
                    .iter()
                    .map(|&f| DeltaSolutionJson {
                        delta: f.table(),
                        names: names(f),
                    })
                    .collect(),
            },
        )?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "n = {n}, I = {grades}: {} solutions", solutions.len())?;
    for &f in &solutions {
        let named = names(f);
        if named.is_empty() {
            writeln!(out, "{f}")?;
        } else {
            writeln!(out, "{f}  {}", named.join(" "))?;
        }
    }
    let flagged: Vec<&str> = NamedMap::ALL
        .into_iter()
        .filter(|m| solutions.contains(&m.delta_map(n)))
        .map(NamedMap::as_str)
        .collect();
    let flagged = if flagged.is_empty() {
        "none".to_string()
    } else {
        flagged.join(", ")
    };
    writeln!(out, "named maps among them: {flagged}")?;
    Ok(EXIT_OK)
}

pub fn verify(out: &mut dyn Write, sig: &SigArgs, batch: &BatchArgs, inject_fault: bool, json: bool) -> Outcome {
    let sigs: Vec<Signature> = match signature(sig)? {
        Some(s) => vec![s],
        None => Signature::all().collect(),
    };
    let config = VerifyConfig {
        samples: batch.samples.unwrap_or(VERIFY_SAMPLES),
        seed: batch.seed,
        bound: batch.bound,
        inject_fault,
    };
    let mut reports: Vec<SignatureReport> = Vec::with_capacity(sigs.len());
    for s in sigs {
        let report = verify_signature(s, &config)?;
        if !json {
            writeln!(out, "{report}")?;
        }
        reports.push(report);
    }
    let passed = reports.iter().all(SignatureReport::passed);
    if json {
        print_json(out, &reports)?;
    } else if passed {
        writeln!(out, "all properties passed")?;
    } else {
        writeln!(out, "verification FAILED")?;
        for r in reports.iter().filter(|r| !r.passed()) {
            for t in r.properties.iter().filter(|t| t.failed > 0) {
                let sample = serde_json::to_string(&t.first_failure).map_err(io::Error::from)?;
                writeln!(
                    out,
                    "  Cl({},{}) {}: first failing sample {sample}",
                    r.p,
                    r.q,
                    t.property.label()
                )?;
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn bench_cmd(out: &mut dyn Write, sig: &SigArgs, batch: &BatchArgs, json: bool) -> Outcome {
    let sig = required_signature(sig)?;
    let report = bench(sig, batch.samples.unwrap_or(BENCH_SAMPLES), batch.seed, batch.bound)?;
    if json {
        print_json(out, &report)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(EXIT_OK)
}
