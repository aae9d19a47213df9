use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartier::{DecompositionTerms, LIResult, NIVerdict, Rank, StalkReport};
use crate::extensions::WitnessKind;

pub const TOOL: &str = "cartierlab";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    /// `input`, `resource_limit` or `analysis`.
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub witnesses: Vec<String>,
    /// True unless the closure reached B: further witnesses are only ruled
    /// out up to the bound.
    pub exhausted: bool,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDecompositionReport {
    pub u0: String,
    pub idempotents: Vec<String>,
    pub exponents: Vec<i64>,
    pub p_part: String,
    pub q_part: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub file: String,
    pub analysis: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "analysis", rename_all = "snake_case")]
pub enum Analysis {
    Check {
        well_defined: bool,
        injective: bool,
        injectivity: String,
    },
    Stalks {
        stalks: Vec<StalkReport>,
    },
    Li {
        result: LIResult,
        recorded_expectation: Option<u64>,
        note: Option<String>,
    },
    Witness {
        kind: WitnessKind,
        bound: u32,
        witness: Option<String>,
        closure: ClosureReport,
    },
    Ni {
        bound: u32,
        verdict: NIVerdict,
    },
    Terms {
        terms: DecompositionTerms,
    },
    Units {
        base: String,
        element: String,
        unit: bool,
        lu_rank: usize,
        decomposition: Option<UnitDecompositionReport>,
    },
    Corpus {
        passed: usize,
        failed: usize,
        entries: Vec<CorpusEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Option<String>,
    pub input_digest: Option<String>,
    pub pair_budget: usize,
    pub degree_bound: Option<u32>,
    pub results: Vec<Analysis>,
    pub warnings: Vec<String>,
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: &str, pair_budget: usize) -> Self {
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input: None,
            input_digest: None,
            pair_budget,
            degree_bound: None,
            results: Vec::new(),
            warnings: Vec::new(),
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{} {} {}", self.tool, self.version, self.command);
        if let Some(i) = &self.input {
            let _ = write!(out, " {}", i);
        }
        out.push('\n');
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {}", d);
        }
        for r in &self.results {
            render(&mut out, r);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {}", w);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        out
    }
}

fn rank_text(r: &Rank) -> String {
    match r {
        Rank::Known(k) => k.to_string(),
        Rank::Unknown(why) => format!("unknown ({})", why),
    }
}

fn render(out: &mut String, a: &Analysis) {
    match a {
        Analysis::Check {
            well_defined,
            injective,
            injectivity,
        } => {
            let _ = writeln!(out, "well defined: {}", well_defined);
            let _ = writeln!(out, "injective: {} ({})", injective, injectivity);
        }
        Analysis::Stalks { stalks } => {
            let _ = writeln!(out, "{:<24} {:<28} {:<12} stalk", "prime", "residue field", "components");
            for s in stalks {
                let stalk = s.stalk_rank.map(|r| r.to_string()).unwrap_or_else(|| "?".into());
                let _ = writeln!(
                    out,
                    "{:<24} {:<28} {:<12} {}{}",
                    s.prime,
                    s.residue_field,
                    s.fiber_components.to_string(),
                    stalk,
                    if s.henselized { "" } else { " (fiber components only)" }
                );
            }
        }
        Analysis::Li {
            result,
            recorded_expectation,
            note,
        } => {
            let method = result.method.map(|m| m.name()).unwrap_or("none");
            let _ = writeln!(out, "LI rank: {} via {}", rank_text(&result.rank), method);
            if !result.certified && result.rank.known().is_some() {
                let _ = writeln!(out, "  not fully certified");
            }
            if !result.hints_consumed.is_empty() {
                let _ = writeln!(out, "  hints: {}", result.hints_consumed.join(", "));
            }
            for n in &result.notes {
                let _ = writeln!(out, "  note: {}", n);
            }
            if let Some(e) = recorded_expectation {
                let _ = writeln!(out, "  recorded expectation (not computed): {}", e);
            }
            if let Some(n) = note {
                let _ = writeln!(out, "  {}", n);
            }
        }
        Analysis::Witness {
            kind,
            bound,
            witness,
            closure,
        } => {
            let k = match kind {
                WitnessKind::Seminormal => "seminormality",
                WitnessKind::Anodal => "anodality",
            };
            match witness {
                Some(w) => {
                    let _ = writeln!(out, "{} witness: {}", k, w);
                }
                None => {
                    let _ = writeln!(out, "no {} witness of degree at most {}", k, bound);
                }
            }
            let _ = writeln!(
                out,
                "closure up to degree {}: {} witness(es), {}",
                bound,
                closure.witnesses.len(),
                if closure.exhausted { "bound-limited" } else { "reaches B" }
            );
            let _ = writeln!(out, "  vars: {}", closure.vars.join(", "));
            let _ = writeln!(out, "  relations: {}", closure.relations.join(", "));
            let _ = writeln!(out, "  images: {}", closure.images.join(", "));
        }
        Analysis::Ni { bound, verdict } => {
            let _ = writeln!(out, "NI: {:?} (bound {})", verdict.status, bound);
            if let Some(w) = &verdict.witness {
                let _ = writeln!(out, "  witness: {}", w);
            }
            if let Some(r) = &verdict.nil_reason {
                let _ = writeln!(out, "  {}", r);
            }
        }
        Analysis::Terms { terms } => {
            let _ = writeln!(out, "n = {}", terms.n);
            let _ = writeln!(out, "I: {}", terms.i_terms);
            let _ = writeln!(out, "L: {}", terms.l_terms);
            for (i, c) in &terms.n_terms {
                let _ = writeln!(out, "N^{}: {}", i, c);
            }
        }
        Analysis::Units {
            base,
            element,
            unit,
            lu_rank,
            decomposition,
        } => {
            let _ = writeln!(out, "base: {} (LU rank {})", base, lu_rank);
            let _ = writeln!(out, "element: {}", element);
            let _ = writeln!(out, "unit: {}", unit);
            if let Some(d) = decomposition {
                let _ = writeln!(out, "  u0 = {}", d.u0);
                let _ = writeln!(out, "  exponents = {:?}", d.exponents);
                let _ = writeln!(out, "  idempotents = {}", d.idempotents.join(", "));
                let _ = writeln!(out, "  p = {}", d.p_part);
                let _ = writeln!(out, "  q = {}", d.q_part);
            }
        }
        Analysis::Corpus {
            passed,
            failed,
            entries,
        } => {
            for e in entries {
                let _ = writeln!(
                    out,
                    "{} {} {}: expected {}, got {}",
                    if e.pass { "PASS" } else { "FAIL" },
                    e.file,
                    e.analysis,
                    e.expected,
                    e.actual
                );
            }
            let _ = writeln!(out, "{} passed, {} failed", passed, failed);
        }
    }
}
