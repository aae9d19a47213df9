//! Command-line front end: description files in, text or JSON reports out.

mod corpus;
pub mod input;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::artinian::FiniteAlgebra;
use crate::cartier::{
    decomposition_terms, generic_stalk, li_auto, li_conductor_square, li_finite_connected,
    li_five_term, li_hensel_local, li_via_reduction, ni_verdict, rank_data_from_hints, stalk_rank,
    CartierError, Certificate, LIMethod, LIResult, StalkReport,
};
use crate::extensions::{closure_search, ExtensionError, ExtensionPresentation, Injectivity, WitnessKind};
use crate::laurent::{bass_decompose, is_laurent_unit, lu_rank, LaurentElement, LaurentError};
use crate::polycore::{Ideal, DEFAULT_PAIR_BUDGET};
use input::{InputFile, Loaded};
use report::{Analysis, ClosureReport, ErrorInfo, Report, UnitDecompositionReport};

pub use corpus::default_corpus_dir;

pub const BUDGET_ENV: &str = "CARTIERLAB_BUDGET";
pub const DEFAULT_BOUND: u32 = 6;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("analysis error: {0}")]
    Analysis(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::ResourceLimit(_) => 3,
            CliError::Analysis(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::ResourceLimit(_) => "resource_limit",
            CliError::Analysis(_) => "analysis",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(m) | CliError::ResourceLimit(m) | CliError::Analysis(m) => m.clone(),
        }
    }

    pub(crate) fn from_extension(e: ExtensionError) -> Self {
        if e.is_resource_limit() {
            return CliError::ResourceLimit(e.to_string());
        }
        match e {
            ExtensionError::FieldMismatch { .. }
            | ExtensionError::ImageCount { .. }
            | ExtensionError::NotWellDefined { .. }
            | ExtensionError::NotInjective { .. }
            | ExtensionError::Poly(_) => CliError::Input(e.to_string()),
            _ => CliError::Analysis(e.to_string()),
        }
    }

    pub(crate) fn from_cartier(e: CartierError) -> Self {
        if e.is_resource_limit() {
            return CliError::ResourceLimit(e.to_string());
        }
        match e {
            CartierError::NotPrime(_) => CliError::Input(e.to_string()),
            _ => CliError::Analysis(e.to_string()),
        }
    }

    fn from_laurent(e: LaurentError) -> Self {
        match e {
            LaurentError::Parse(_) | LaurentError::VariableClash(_) => CliError::Input(e.to_string()),
            LaurentError::Artinian(crate::artinian::ArtinianError::Poly(p)) if p.is_resource_limit() => {
                CliError::ResourceLimit(p.to_string())
            }
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Hensel,
    Connected,
    Conductor,
    Fiveterm,
    Reduced,
}

#[derive(Debug, Parser)]
#[command(name = "cartierlab", version, about = "Laurent Cartier divisor ranks of ring extensions")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Buchberger pair budget (the CARTIERLAB_BUDGET variable applies when
    /// the flag is absent).
    #[arg(long, global = true)]
    pub pair_budget: Option<usize>,
    /// Degree bound for witness searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u32,
    /// Accept an extension whose injectivity check ran out of budget.
    #[arg(long, global = true)]
    pub assume_injective: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construction checks: well defined and injective.
    Check { file: PathBuf },
    /// Fiber components and stalk ranks at primes of A.
    Stalks {
        file: PathBuf,
        /// Maximal ideals of A, `;`-separated, generators `,`-separated.
        #[arg(long)]
        primes: Option<String>,
        /// Include the generic point.
        #[arg(long)]
        generic: bool,
    },
    /// Rank of LI(A, B).
    Li {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Seminormality witness search and bounded closure.
    Seminormal { file: PathBuf },
    /// Anodality witness search and bounded closure.
    Anodal { file: PathBuf },
    /// Summand counts for n Laurent variables.
    Terms {
        #[arg(long)]
        n: u32,
    },
    /// Unit test and split decomposition in base[t, 1/t].
    Units {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        laurent: String,
        #[arg(long, default_value = "t")]
        var: String,
    },
    /// Runs every expectation in the corpus directory.
    Corpus { dir: Option<PathBuf> },
}

/// Flag over environment over default.
pub fn resolve_budget(flag: Option<usize>, env: Option<&str>) -> Result<usize, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{} must be a nonnegative integer, got `{}`", BUDGET_ENV, v))),
        None => Ok(DEFAULT_PAIR_BUDGET),
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub pair_budget: usize,
    pub bound: u32,
    pub assume_injective: bool,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Stalks { .. } => "stalks",
        Command::Li { .. } => "li",
        Command::Seminormal { .. } => "seminormal",
        Command::Anodal { .. } => "anodal",
        Command::Terms { .. } => "terms",
        Command::Units { .. } => "units",
        Command::Corpus { .. } => "corpus",
    }
}

/// Runs a parsed command line; returns the report and the exit code.
pub fn run(cli: &Cli, env_budget: Option<&str>) -> (Report, i32) {
    let budget = resolve_budget(cli.pair_budget, env_budget);
    let mut report = Report::new(command_name(&cli.command), budget.clone().unwrap_or(DEFAULT_PAIR_BUDGET));
    let outcome = budget.and_then(|pair_budget| {
        let opts = Options {
            pair_budget,
            bound: cli.bound,
            assume_injective: cli.assume_injective,
        };
        execute(&cli.command, &opts, &mut report)
    });
    match outcome {
        Ok(code) => (report, code),
        Err(e) => {
            let code = e.exit_code();
            report.error = Some(ErrorInfo {
                kind: e.kind().into(),
                message: e.message(),
            });
            (report, code)
        }
    }
}

fn load_into(path: &Path, report: &mut Report) -> Result<Loaded, CliError> {
    let loaded = input::load(path)?;
    report.input = Some(loaded.name.clone());
    report.input_digest = Some(loaded.digest.clone());
    Ok(loaded)
}

fn extension_of(loaded: &Loaded, opts: &Options, report: &mut Report) -> Result<ExtensionPresentation, CliError> {
    let InputFile::Extension(f) = &loaded.file else {
        return Err(CliError::Input("this command needs an extension description".into()));
    };
    let ext = input::build_extension(f, opts.pair_budget, opts.assume_injective)?;
    if ext.injectivity == Injectivity::Assumed {
        report
            .warnings
            .push("injectivity assumed: the kernel computation ran out of budget".into());
    }
    Ok(ext)
}

fn primes_of(
    ext: &ExtensionPresentation,
    flag: Option<&str>,
    meta: &input::MetaSection,
) -> Result<Vec<Vec<String>>, CliError> {
    let _ = ext;
    Ok(match flag {
        Some(text) => input::parse_prime_list(text),
        None => meta.primes.clone().unwrap_or_default(),
    })
}

pub(crate) fn stalk_at(ext: &ExtensionPresentation, gens: &[String]) -> Result<StalkReport, CliError> {
    if gens.is_empty() {
        generic_stalk(ext).map_err(CliError::from_cartier)
    } else {
        let p = input::prime_ideal(ext, gens)?;
        stalk_rank(ext, &p).map_err(CliError::from_cartier)
    }
}

pub(crate) fn run_li(
    ext: &ExtensionPresentation,
    method: MethodArg,
    primes: &[Ideal],
) -> Result<LIResult, CliError> {
    let (m, r) = match method {
        MethodArg::Auto => return li_auto(ext, primes).map_err(CliError::from_cartier),
        MethodArg::Hensel => (LIMethod::HenselLocalFormula, li_hensel_local(ext)),
        MethodArg::Connected => (LIMethod::FiniteConnected, li_finite_connected(ext, primes)),
        MethodArg::Conductor => (LIMethod::ConductorSquare, li_conductor_square(ext)),
        MethodArg::Fiveterm => (
            LIMethod::FiveTermSequence,
            rank_data_from_hints(ext).and_then(|d| {
                let mut r = li_five_term(&d)?;
                r.hints_consumed
                    .extend(["lpic_A_rank", "lpic_B_rank", "lpic_kernel_rank"].map(String::from));
                Ok(r)
            }),
        ),
        MethodArg::Reduced => (LIMethod::ReductionToReduced, li_via_reduction(ext, primes)),
    };
    match r {
        Ok(r) => Ok(r),
        Err(e) if e.is_inapplicable() => Ok(LIResult {
            rank: crate::cartier::Rank::Unknown(e.to_string()),
            method: Some(m),
            certified: false,
            certificate: Certificate::None,
            hints_consumed: Vec::new(),
            notes: Vec::new(),
        }),
        Err(e) => Err(CliError::from_cartier(e)),
    }
}

fn li_warnings(r: &LIResult, report: &mut Report) {
    if r.rank.known().is_some() && !r.certified {
        report
            .warnings
            .push("rank certified over the supplied primes only".into());
    }
}

fn closure_report(ext: &ExtensionPresentation, witnesses: &[String], exhausted: bool) -> ClosureReport {
    ClosureReport {
        witnesses: witnesses.to_vec(),
        exhausted,
        vars: ext.a_ring().vars().to_vec(),
        relations: ext.a.ideal.generators().iter().map(|g| g.to_string()).collect(),
        images: ext.images.iter().map(|g| g.to_string()).collect(),
    }
}

pub(crate) fn base_name(base: &FiniteAlgebra) -> String {
    format!("{}/{}", base.ring(), base.ideal())
}

pub(crate) fn units_analysis(base: &Arc<FiniteAlgebra>, var: &str, text: &str) -> Result<Analysis, CliError> {
    let x = LaurentElement::parse(base, var, text).map_err(CliError::from_laurent)?;
    let unit = is_laurent_unit(&x).map_err(CliError::from_laurent)?;
    let decomposition = if unit {
        let d = bass_decompose(&x).map_err(CliError::from_laurent)?;
        if d.recompose() != x {
            return Err(CliError::Analysis("decomposition does not recompose".into()));
        }
        Some(UnitDecompositionReport {
            u0: base.format(&d.u0),
            idempotents: d.idempotents.iter().map(|e| base.format(e)).collect(),
            exponents: d.exponents.clone(),
            p_part: d.p_part.to_string(),
            q_part: d.q_part.to_string(),
        })
    } else {
        None
    };
    Ok(Analysis::Units {
        base: base_name(base),
        element: x.to_string(),
        unit,
        lu_rank: lu_rank(base).map_err(CliError::from_laurent)?,
        decomposition,
    })
}

fn execute(cmd: &Command, opts: &Options, report: &mut Report) -> Result<i32, CliError> {
    match cmd {
        Command::Check { file } => {
            let loaded = load_into(file, report)?;
            let ext = extension_of(&loaded, opts, report)?;
            report.results.push(Analysis::Check {
                well_defined: true,
                injective: true,
                injectivity: match ext.injectivity {
                    Injectivity::Verified => "verified".into(),
                    Injectivity::Assumed => "assumed".into(),
                },
            });
        }
        Command::Stalks {
            file,
            primes,
            generic,
        } => {
            let loaded = load_into(file, report)?;
            let ext = extension_of(&loaded, opts, report)?;
            let meta = loaded.file.meta();
            let mut list = primes_of(&ext, primes.as_deref(), &meta)?;
            let want_generic = *generic || (primes.is_none() && meta.generic.unwrap_or(list.is_empty()));
            if want_generic && !list.iter().any(|p| p.is_empty()) {
                list.push(Vec::new());
            }
            let mut stalks = Vec::new();
            for gens in &list {
                stalks.push(stalk_at(&ext, gens)?);
            }
            if ext.hints.finite != Some(true) {
                report
                    .warnings
                    .push("extension not marked finite: fiber components only, not henselized stalks".into());
            }
            report.results.push(Analysis::Stalks { stalks });
        }
        Command::Li {
            file,
            method,
            primes,
        } => {
            let loaded = load_into(file, report)?;
            let meta = loaded.file.meta();
            let result = match &loaded.file {
                InputFile::RankData(f) => {
                    if !matches!(method, MethodArg::Auto | MethodArg::Fiveterm) {
                        return Err(CliError::Input(
                            "rank data files support only the five-term route".into(),
                        ));
                    }
                    li_five_term(&input::rank_data(f)).map_err(CliError::from_cartier)?
                }
                _ => {
                    let ext = extension_of(&loaded, opts, report)?;
                    let lists = primes_of(&ext, primes.as_deref(), &meta)?;
                    let ideals = lists
                        .iter()
                        .map(|g| input::prime_ideal(&ext, g))
                        .collect::<Result<Vec<_>, _>>()?;
                    run_li(&ext, *method, &ideals)?
                }
            };
            li_warnings(&result, report);
            report.results.push(Analysis::Li {
                result,
                recorded_expectation: meta.expected_li_rank,
                note: meta.note.clone(),
            });
        }
        Command::Seminormal { file } | Command::Anodal { file } => {
            let kind = if matches!(cmd, Command::Seminormal { .. }) {
                WitnessKind::Seminormal
            } else {
                WitnessKind::Anodal
            };
            if opts.bound == 0 {
                return Err(CliError::Input("--bound must be at least 1".into()));
            }
            report.degree_bound = Some(opts.bound);
            let loaded = load_into(file, report)?;
            let ext = extension_of(&loaded, opts, report)?;
            let res = closure_search(&ext, kind, opts.bound).map_err(CliError::from_extension)?;
            let ws: Vec<String> = res.witnesses.iter().map(|w| w.to_string()).collect();
            if res.exhausted {
                report.warnings.push(format!(
                    "closure is complete only up to degree {}",
                    opts.bound
                ));
            }
            report.results.push(Analysis::Witness {
                kind,
                bound: opts.bound,
                witness: ws.first().cloned(),
                closure: closure_report(&res.extension, &ws, res.exhausted),
            });
            if kind == WitnessKind::Seminormal {
                let verdict = ni_verdict(&ext, opts.bound).map_err(CliError::from_cartier)?;
                report.results.push(Analysis::Ni {
                    bound: opts.bound,
                    verdict,
                });
            }
        }
        Command::Terms { n } => {
            let terms = decomposition_terms(*n).map_err(|e| CliError::Input(e.to_string()))?;
            report.results.push(Analysis::Terms { terms });
        }
        Command::Units { base, laurent, var } => {
            let loaded = load_into(base, report)?;
            let InputFile::Base(f) = &loaded.file else {
                return Err(CliError::Input("--base needs a [base] description".into()));
            };
            let alg = input::build_base(f, opts.pair_budget)?;
            report.results.push(units_analysis(&alg, var, laurent)?);
        }
        Command::Corpus { dir } => {
            let dir = dir.clone().unwrap_or_else(default_corpus_dir);
            report.input = Some(dir.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default());
            let analysis = corpus::run_corpus(&dir, opts)?;
            let failed = matches!(&analysis, Analysis::Corpus { failed, .. } if *failed > 0);
            report.results.push(analysis);
            if failed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Entry point shared by the binary: parses arguments, prints the report
/// and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let env = std::env::var(BUDGET_ENV).ok();
    let (report, code) = run(&cli, env.as_deref());
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    code
}
