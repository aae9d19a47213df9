use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;
use crate::artinian::{quotient_algebra, FiniteAlgebra};
use crate::cartier::RankData;
use crate::extensions::{ExtensionPresentation, Hints, RingPresentation};
use crate::polycore::{parse_polynomial, Field, Ideal, MonomialOrder, PolyRing, Polynomial};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rings {
    #[serde(rename = "A")]
    pub a: RingSection,
    #[serde(rename = "B")]
    pub b: RingSection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub images: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HintsSection {
    pub finite: Option<bool>,
    pub birational: Option<bool>,
    pub module_generators: Option<Vec<String>>,
    pub fractions: Option<Vec<[String; 2]>>,
    #[serde(rename = "lpic_A_rank")]
    pub lpic_a_rank: Option<u64>,
    #[serde(rename = "lpic_B_rank")]
    pub lpic_b_rank: Option<u64>,
    pub lpic_kernel_rank: Option<u64>,
}

/// Descriptive data that never enters a computation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetaSection {
    pub name: Option<String>,
    /// A value recorded for comparison only.
    pub expected_li_rank: Option<u64>,
    pub note: Option<String>,
    /// Default primes for `stalks`, each a list of generators.
    pub primes: Option<Vec<Vec<String>>>,
    pub generic: Option<bool>,
}

/// One regression expectation checked by the `corpus` command.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// `check`, `li`, `stalk`, `seminormal`, `anodal`, `ni` or `units`.
    pub analysis: String,
    /// Route to run for `li`; defaults to `auto`.
    pub method: Option<String>,
    /// Route expected to produce the rank.
    pub via: Option<String>,
    pub rank: Option<u64>,
    pub unknown: Option<bool>,
    /// Generators of the prime; an empty list is the generic point.
    pub prime: Option<Vec<String>>,
    pub components: Option<usize>,
    pub stalk: Option<u64>,
    pub bound: Option<u32>,
    pub witness: Option<String>,
    pub has_witness: Option<bool>,
    pub status: Option<String>,
    pub ok: Option<bool>,
    pub laurent: Option<String>,
    pub exponents: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub ring: Rings,
    pub map: MapSection,
    pub hints: Option<HintsSection>,
    pub meta: Option<MetaSection>,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankDataSection {
    #[serde(rename = "c_A")]
    pub c_a: u64,
    #[serde(rename = "c_B")]
    pub c_b: u64,
    #[serde(rename = "lpic_A")]
    pub lpic_a: u64,
    #[serde(rename = "lpic_B")]
    pub lpic_b: u64,
    pub lpic_kernel: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankDataFile {
    pub rankdata: RankDataSection,
    pub meta: Option<MetaSection>,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseFile {
    pub base: RingSection,
    pub meta: Option<MetaSection>,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug)]
pub enum InputFile {
    Extension(ExtensionFile),
    RankData(RankDataFile),
    Base(BaseFile),
}

impl InputFile {
    pub fn meta(&self) -> MetaSection {
        match self {
            InputFile::Extension(f) => f.meta.clone(),
            InputFile::RankData(f) => f.meta.clone(),
            InputFile::Base(f) => f.meta.clone(),
        }
        .unwrap_or_default()
    }

    pub fn expectations(&self) -> &[Expectation] {
        match self {
            InputFile::Extension(f) => &f.expect,
            InputFile::RankData(f) => &f.expect,
            InputFile::Base(f) => &f.expect,
        }
    }
}

/// Raw text and its SHA-256 digest.
pub struct Loaded {
    pub file: InputFile,
    pub digest: String,
    pub name: String,
}

pub fn parse_input(text: &str) -> Result<InputFile, CliError> {
    let value: toml::Table = toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    let schema = |e: toml::de::Error| CliError::Input(e.to_string());
    if value.contains_key("ring") || value.contains_key("map") {
        Ok(InputFile::Extension(toml::from_str(text).map_err(schema)?))
    } else if value.contains_key("rankdata") {
        Ok(InputFile::RankData(toml::from_str(text).map_err(schema)?))
    } else if value.contains_key("base") {
        Ok(InputFile::Base(toml::from_str(text).map_err(schema)?))
    } else {
        Err(CliError::Input(
            "expected a [ring.A]/[ring.B]/[map], [rankdata] or [base] description".into(),
        ))
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", path.display(), e)))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))?;
    let file = parse_input(&text)?;
    Ok(Loaded {
        file,
        digest: hex::encode(Sha256::digest(&bytes)),
        name: path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
    })
}

pub fn build_ring(section: &RingSection, budget: usize, what: &str) -> Result<Ideal, CliError> {
    let field = Field::parse(&section.field)
        .map_err(|e| CliError::Input(format!("ring {}: {}", what, e)))?;
    let ring = PolyRing::with_budget(field, &section.vars, MonomialOrder::Grevlex, budget)
        .map_err(|e| CliError::Input(format!("ring {}: {}", what, e)))?;
    Ideal::parse(&ring, &section.relations)
        .map_err(|e| CliError::Input(format!("ring {} relations: {}", what, e)))
}

fn parse_in(ring: &Arc<PolyRing>, s: &str, what: &str) -> Result<Polynomial, CliError> {
    parse_polynomial(s, ring).map_err(|e| CliError::Input(format!("{} `{}`: {}", what, s, e)))
}

/// Builds the extension, running the construction checks.
pub fn build_extension(
    file: &ExtensionFile,
    budget: usize,
    assume_injective: bool,
) -> Result<ExtensionPresentation, CliError> {
    let a = build_ring(&file.ring.a, budget, "A")?;
    let b = build_ring(&file.ring.b, budget, "B")?;
    let images = file
        .map
        .images
        .iter()
        .map(|s| parse_in(b.ring(), s, "image"))
        .collect::<Result<Vec<_>, _>>()?;
    let h = file.hints.clone().unwrap_or_default();
    let module_generators = h
        .module_generators
        .as_ref()
        .map(|gs| gs.iter().map(|s| parse_in(b.ring(), s, "module generator")).collect())
        .transpose()?;
    let fractions = h
        .fractions
        .as_ref()
        .map(|fs| {
            fs.iter()
                .map(|[p, q]| Ok((parse_in(a.ring(), p, "fraction")?, parse_in(a.ring(), q, "fraction")?)))
                .collect::<Result<Vec<_>, CliError>>()
        })
        .transpose()?;
    let hints = Hints {
        finite: h.finite,
        birational: h.birational,
        module_generators,
        fractions,
        lpic_a_rank: h.lpic_a_rank,
        lpic_b_rank: h.lpic_b_rank,
        lpic_kernel_rank: h.lpic_kernel_rank,
    };
    ExtensionPresentation::new(
        RingPresentation::new(a),
        RingPresentation::new(b),
        images,
        hints,
        assume_injective,
    )
    .map_err(CliError::from_extension)
}

pub fn build_base(file: &BaseFile, budget: usize) -> Result<Arc<FiniteAlgebra>, CliError> {
    let ideal = build_ring(&file.base, budget, "base")?;
    quotient_algebra(&ideal)
        .map(Arc::new)
        .map_err(|e| CliError::Input(format!("base: {}", e)))
}

pub fn rank_data(file: &RankDataFile) -> RankData {
    let r = &file.rankdata;
    RankData {
        c_a: r.c_a,
        c_b: r.c_b,
        lpic_a: r.lpic_a,
        lpic_b: r.lpic_b,
        lpic_kernel: r.lpic_kernel,
    }
}

/// `"x,y;x-1,y-1"` as generator lists; an empty or `0` entry is the generic
/// point.
pub fn parse_prime_list(text: &str) -> Vec<Vec<String>> {
    text.split(';')
        .map(|ideal| {
            ideal
                .split(',')
                .map(|g| g.trim().to_string())
                .filter(|g| !g.is_empty() && g != "0")
                .collect()
        })
        .collect()
}

pub fn prime_ideal(ext: &ExtensionPresentation, gens: &[String]) -> Result<Ideal, CliError> {
    Ideal::parse(ext.a_ring(), gens).map_err(|e| CliError::Input(format!("prime: {}", e)))
}
