use std::path::{Path, PathBuf};

use super::input::{self, Expectation, InputFile, Loaded};
use super::report::{Analysis, CorpusEntry};
use super::{run_li, stalk_at, units_analysis, CliError, MethodArg, Options};
use crate::cartier::{li_five_term, ni_verdict, LIResult, NIStatus};
use crate::extensions::{find_witness, ExtensionPresentation, WitnessKind};

pub fn default_corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

/// Description files of a directory, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let rd = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", dir.display(), e)))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_corpus(dir: &Path, opts: &Options) -> Result<Analysis, CliError> {
    let mut entries = Vec::new();
    for path in corpus_files(dir)? {
        let loaded = input::load(&path)?;
        let ext = match &loaded.file {
            InputFile::Extension(f) => Some(input::build_extension(f, opts.pair_budget, opts.assume_injective)),
            _ => None,
        };
        for exp in loaded.file.expectations() {
            let expected = describe(exp);
            let (actual, pass) = match evaluate(&loaded, ext.as_ref(), exp, opts) {
                Ok(found) => {
                    let text = describe(&found);
                    let pass = text == expected;
                    (text, pass)
                }
                Err(e) => (format!("error: {}", e), false),
            };
            entries.push(CorpusEntry {
                file: loaded.name.clone(),
                analysis: exp.analysis.clone(),
                expected,
                actual,
                pass,
            });
        }
    }
    let passed = entries.iter().filter(|e| e.pass).count();
    Ok(Analysis::Corpus {
        passed,
        failed: entries.len() - passed,
        entries,
    })
}

/// Canonical text of the fields an expectation sets.
pub fn describe(exp: &Expectation) -> String {
    let mut parts = Vec::new();
    if let Some(p) = &exp.prime {
        parts.push(format!("at ({})", if p.is_empty() { "0".into() } else { p.join(", ") }));
    }
    if let Some(ok) = exp.ok {
        parts.push(format!("ok={}", ok));
    }
    if let Some(r) = exp.rank {
        parts.push(format!("rank={}", r));
    }
    if exp.unknown == Some(true) {
        parts.push("rank=unknown".into());
    }
    if let Some(m) = &exp.via {
        parts.push(format!("via={}", m));
    }
    if let Some(c) = exp.components {
        parts.push(format!("components={}", c));
    }
    if let Some(s) = exp.stalk {
        parts.push(format!("stalk={}", s));
    }
    if let Some(w) = &exp.witness {
        parts.push(format!("witness={}", w));
    }
    if let Some(h) = exp.has_witness {
        parts.push(format!("has_witness={}", h));
    }
    if let Some(s) = &exp.status {
        parts.push(format!("status={}", s));
    }
    if let Some(e) = &exp.exponents {
        parts.push(format!("exponents={:?}", e));
    }
    if parts.is_empty() {
        "nothing".into()
    } else {
        parts.join(" ")
    }
}

fn method_arg(name: Option<&str>) -> Result<MethodArg, CliError> {
    Ok(match name.unwrap_or("auto") {
        "auto" => MethodArg::Auto,
        "hensel" => MethodArg::Hensel,
        "connected" => MethodArg::Connected,
        "conductor" => MethodArg::Conductor,
        "fiveterm" => MethodArg::Fiveterm,
        "reduced" => MethodArg::Reduced,
        other => return Err(CliError::Input(format!("unknown method `{}`", other))),
    })
}

fn need_ext(
    ext: Option<&Result<ExtensionPresentation, CliError>>,
) -> Result<&ExtensionPresentation, CliError> {
    match ext {
        Some(Ok(e)) => Ok(e),
        Some(Err(e)) => Err(e.clone()),
        None => Err(CliError::Input("expectation needs an extension description".into())),
    }
}

fn li_found(exp: &Expectation, r: &LIResult) -> Expectation {
    Expectation {
        rank: r.rank.known(),
        unknown: exp.unknown.map(|_| r.rank.known().is_none()),
        via: exp
            .via
            .as_ref()
            .map(|_| r.method.map(|m| m.name()).unwrap_or("none").to_string()),
        ..Expectation::default()
    }
}

/// Runs one expectation and reports the same fields as found.
fn evaluate(
    loaded: &Loaded,
    ext: Option<&Result<ExtensionPresentation, CliError>>,
    exp: &Expectation,
    opts: &Options,
) -> Result<Expectation, CliError> {
    let bound = exp.bound.unwrap_or(opts.bound);
    match exp.analysis.as_str() {
        "check" => match ext {
            Some(Ok(_)) => Ok(Expectation {
                ok: Some(true),
                ..Expectation::default()
            }),
            Some(Err(e @ CliError::Input(_))) => {
                if exp.ok == Some(false) {
                    Ok(Expectation {
                        ok: Some(false),
                        ..Expectation::default()
                    })
                } else {
                    Err(e.clone())
                }
            }
            _ => need_ext(ext).map(|_| Expectation::default()),
        },
        "li" => {
            let r = match &loaded.file {
                InputFile::RankData(f) => li_five_term(&input::rank_data(f)).map_err(CliError::from_cartier)?,
                _ => {
                    let e = need_ext(ext)?;
                    let primes = loaded
                        .file
                        .meta()
                        .primes
                        .unwrap_or_default()
                        .iter()
                        .map(|g| input::prime_ideal(e, g))
                        .collect::<Result<Vec<_>, _>>()?;
                    run_li(e, method_arg(exp.method.as_deref())?, &primes)?
                }
            };
            Ok(li_found(exp, &r))
        }
        "stalk" => {
            let e = need_ext(ext)?;
            let prime = exp
                .prime
                .clone()
                .ok_or_else(|| CliError::Input("stalk expectation needs `prime`".into()))?;
            let s = stalk_at(e, &prime)?;
            Ok(Expectation {
                prime: Some(prime),
                components: exp.components.and(s.fiber_components.known()),
                stalk: exp.stalk.and(s.stalk_rank),
                ..Expectation::default()
            })
        }
        "seminormal" | "anodal" => {
            let kind = if exp.analysis == "seminormal" {
                WitnessKind::Seminormal
            } else {
                WitnessKind::Anodal
            };
            let w = find_witness(need_ext(ext)?, kind, bound).map_err(CliError::from_extension)?;
            Ok(Expectation {
                witness: exp.witness.as_ref().and(w.as_ref().map(|w| w.to_string())),
                has_witness: exp.has_witness.map(|_| w.is_some()),
                ..Expectation::default()
            })
        }
        "ni" => {
            let v = ni_verdict(need_ext(ext)?, bound).map_err(CliError::from_cartier)?;
            let status = match v.status {
                NIStatus::Zero => "zero",
                NIStatus::NonZero => "nonzero",
                NIStatus::UnknownUpToBound(_) => "unknown",
            };
            Ok(Expectation {
                status: Some(status.into()),
                ..Expectation::default()
            })
        }
        "units" => {
            let InputFile::Base(f) = &loaded.file else {
                return Err(CliError::Input("units expectation needs a [base] description".into()));
            };
            let text = exp
                .laurent
                .as_deref()
                .ok_or_else(|| CliError::Input("units expectation needs `laurent`".into()))?;
            let base = input::build_base(f, opts.pair_budget)?;
            let Analysis::Units { unit, decomposition, .. } = units_analysis(&base, "t", text)? else {
                unreachable!("units analysis");
            };
            Ok(Expectation {
                ok: exp.ok.map(|_| unit),
                exponents: exp
                    .exponents
                    .as_ref()
                    .and(decomposition.map(|d| d.exponents)),
                ..Expectation::default()
            })
        }
        other => Err(CliError::Input(format!("unknown analysis `{}`", other))),
    }
}
