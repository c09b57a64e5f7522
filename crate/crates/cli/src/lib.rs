//! Front end for the `symnorm` binary: job configuration, the three
//! subcommands and their YAML reports.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use symnorm::chain::ChainTerm;
use symnorm::homology::{Homologous, HomologyEngine};
use symnorm::l1opt::{NormReportDoc, NormSolver};
use symnorm::rational::format_q;
use symnorm::symm::Symmetriser;
use symnorm::{corpus, Chain, Error, SimplicialComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Prefix selecting a bundled complex instead of a file, e.g. `corpus:torus`.
pub const CORPUS_PREFIX: &str = "corpus:";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Norm,
    Symmetrise,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    /// A chain read from a JSON file.
    Chain(PathBuf),
    /// The k-th homology generator.
    Generator(usize),
    /// Every generator in turn; the zero class when there are none.
    AllGenerators,
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Chain(p) => write!(f, "chain {}", p.display()),
            ClassSpec::Generator(k) => write!(f, "generator {k}"),
            ClassSpec::AllGenerators => write!(f, "all generators"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub command: Command,
    pub complex: String,
    pub dim: usize,
    pub class: ClassSpec,
    pub out: Option<PathBuf>,
    pub cap: usize,
}

impl JobConfig {
    pub fn new(command: Command, complex: impl Into<String>, dim: usize) -> Self {
        Self {
            command,
            complex: complex.into(),
            dim,
            class: ClassSpec::AllGenerators,
            out: None,
            cap: symnorm::DEFAULT_DIM_CAP,
        }
    }

    pub fn with_class(mut self, class: ClassSpec) -> Self {
        self.class = class;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_out(mut self, out: impl Into<PathBuf>) -> Self {
        self.out = Some(out.into());
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !self.complex.starts_with(CORPUS_PREFIX) && !Path::new(&self.complex).is_file() {
            return Err(CliError::Input(format!(
                "complex file not found: {}",
                self.complex
            )));
        }
        if let ClassSpec::Chain(p) = &self.class {
            if !p.is_file() {
                return Err(CliError::Input(format!(
                    "class file not found: {}",
                    p.display()
                )));
            }
        }
        // the class programs need boundaries one dimension up
        let needed = match self.command {
            Command::Symmetrise => self.dim,
            _ => self.dim + 1,
        };
        if needed > self.cap {
            return Err(CliError::Input(
                Error::DimensionCap {
                    dim: needed,
                    cap: self.cap,
                }
                .to_string(),
            ));
        }
        if self.command == Command::Symmetrise && !matches!(self.class, ClassSpec::Chain(_)) {
            return Err(CliError::Input(
                "symmetrise needs an explicit chain (--class)".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input. Exit code 2.
    Input(String),
    /// A check failed; carries the rendered report. Exit code 1.
    Verification { check: String, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Verification { .. } => EXIT_VERIFICATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Verification { check, .. } => write!(f, "verification failed: {check}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn load_complex(spec: &str) -> Result<SimplicialComplex, CliError> {
    if let Some(stem) = spec.strip_prefix(CORPUS_PREFIX) {
        return match corpus::load(stem) {
            Some(k) => Ok(k?),
            None => Err(CliError::Input(format!("no bundled complex named {stem}"))),
        };
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| CliError::Input(format!("cannot read {spec}: {e}")))?;
    Ok(SimplicialComplex::load(&text)?)
}

fn load_chain(path: &Path, dim: usize) -> Result<Chain, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Chain::from_json(&text, Some(dim))?)
}

/// Resolves the class specification to labelled representatives.
pub fn classes(
    config: &JobConfig,
    complex: &SimplicialComplex,
    homology: &HomologyEngine<'_>,
) -> Result<Vec<(String, Chain)>, CliError> {
    let n = config.dim;
    let out = match &config.class {
        ClassSpec::Chain(p) => {
            let c = load_chain(p, n)?;
            c.validate(complex)?;
            vec![(format!("chain {}", p.display()), c)]
        }
        ClassSpec::Generator(k) => {
            let gens = homology.generators(n)?;
            let g = gens.get(*k).cloned().ok_or_else(|| {
                CliError::Input(format!(
                    "generator {k} requested but H_{n} has rank {}",
                    gens.len()
                ))
            })?;
            vec![(format!("generator {k}"), g)]
        }
        ClassSpec::AllGenerators => {
            let gens = homology.generators(n)?;
            if gens.is_empty() {
                vec![("zero class".to_string(), Chain::zero(n))]
            } else {
                gens.into_iter()
                    .enumerate()
                    .map(|(k, g)| (format!("generator {k}"), g))
                    .collect()
            }
        }
    };
    if config.command != Command::Symmetrise {
        for (label, c) in &out {
            if !c.is_cycle() {
                return Err(CliError::Input(format!("{label} is not a cycle")));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool) -> Self {
        Self {
            name,
            passed,
            detail: None,
        }
    }

    fn failed(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

/// The chain-level symmetrisation checks on one cycle `c`.
pub fn symmetrisation_checks(
    homology: &HomologyEngine<'_>,
    sym: &Symmetriser,
    c: &Chain,
) -> Result<Vec<CheckResult>, Error> {
    let n = c.dim();
    let s = sym.symmetrise(c)?;
    let mut out = Vec::new();

    let chain_map = if n == 0 {
        true
    } else {
        s.boundary()? == sym.symmetrise(&c.boundary()?)?
    };
    out.push(CheckResult::new("chain_map", chain_map));

    out.push(CheckResult::new("norm_non_increase", s.l1_norm() <= c.l1_norm()));

    let face_identity = if n == 0 {
        true
    } else {
        let d0 = s.face_map(0)?;
        (1..=n).try_fold(true, |ok, j| -> Result<bool, Error> {
            let sign = if j % 2 == 0 { d0.clone() } else { d0.neg() };
            Ok(ok && s.face_map(j)? == sign)
        })?
    };
    out.push(CheckResult::new("face_identity", face_identity));

    let normalised = s.is_normalised();
    out.push(CheckResult::new("cycle_normalisation", normalised));

    let boundary_argument = if n == 0 {
        true
    } else {
        let expanded = s.face_map(0)?.scale(&symnorm::Q::from((n + 1) as i64));
        let full = s.boundary()?;
        full == expanded && full.is_zero()
    };
    out.push(CheckResult::new("boundary_argument", boundary_argument));

    match homology.homologous(&s, c)? {
        Homologous::Witness(w) => {
            let ok = w.boundary()? == s.sub(c)?;
            out.push(CheckResult::new("homotopy_witness", ok));
        }
        Homologous::Refusal { pairing, .. } => out.push(CheckResult::failed(
            "homotopy_witness",
            format!("cocycle pairs to {} with sym(c) - c", format_q(&pairing)),
        )),
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct ClassVerification {
    pub class: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Observed, not required.
    pub symmetrisation_idempotent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norms: Option<NormReportDoc>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub complex: String,
    pub dim: usize,
    pub cap: usize,
    pub betti: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub classes: Vec<ClassVerification>,
}

fn verify_class(
    solver: &NormSolver<'_>,
    label: String,
    c: &Chain,
) -> Result<ClassVerification, CliError> {
    let homology = solver.homology();
    let sym = solver.symmetriser();
    let mut checks = symmetrisation_checks(homology, sym, c)?;
    let s = sym.symmetrise(c)?;
    let idempotent = sym.symmetrise(&s)? == s;

    let norms = match solver.verify_equality(c) {
        Ok(report) => {
            checks.push(CheckResult::new("seminorm_equality", true));
            checks.push(CheckResult::new("constructive_route", true));
            Some(report.to_doc())
        }
        Err(Error::SeminormMismatch(report)) => {
            checks.push(CheckResult::failed(
                "seminorm_equality",
                format!(
                    "{} != {}",
                    format_q(&report.seminorm),
                    format_q(&report.normalised_seminorm)
                ),
            ));
            Some(report.to_doc())
        }
        Err(Error::CheckFailed(what)) => {
            checks.push(CheckResult::new("seminorm_equality", true));
            checks.push(CheckResult::failed("constructive_route", what));
            None
        }
        Err(Error::Lp(e)) => {
            checks.push(CheckResult::failed("seminorm_equality", e.to_string()));
            None
        }
        Err(e) => return Err(e.into()),
    };
    Ok(ClassVerification {
        class: label,
        passed: checks.iter().all(|c| c.passed),
        checks,
        symmetrisation_idempotent: idempotent,
        norms,
    })
}

/// Builds the verification report; the boolean is the overall verdict.
pub fn verify_report(config: &JobConfig) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let complex = load_complex(&config.complex)?;
    let solver = NormSolver::with_cap(&complex, config.cap);
    let list = classes(config, &complex, solver.homology())?;
    let mut results = Vec::new();
    for (label, c) in list {
        results.push(verify_class(&solver, label, &c)?);
    }
    let first_failure = results.iter().find_map(|r| {
        r.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", r.class, c.name))
    });
    Ok(VerifyReport {
        complex: complex.name().to_string(),
        dim: config.dim,
        cap: config.cap,
        betti: solver.homology().betti(config.dim)?,
        status: if first_failure.is_none() { "pass" } else { "fail" },
        first_failure,
        classes: results,
    })
}

fn to_yaml<T: Serialize>(value: &T) -> String {
    serde_yaml::to_string(value).expect("reports serialise")
}

/// Runs the full invariant suite and renders the report.
pub fn cmd_verify(config: &JobConfig) -> Result<String, CliError> {
    let report = verify_report(config)?;
    let text = to_yaml(&report);
    match report.first_failure {
        None => Ok(text),
        Some(check) => Err(CliError::Verification {
            check,
            report: text,
        }),
    }
}

#[derive(Debug, Serialize)]
pub struct ClassNorms {
    pub class: String,
    pub seminorm: String,
    pub normalised_seminorm: String,
    pub optimal_chain: Vec<ChainTerm>,
    pub optimal_normalised_chain: Vec<ChainTerm>,
}

#[derive(Debug, Serialize)]
pub struct NormOutput {
    pub complex: String,
    pub dim: usize,
    pub classes: Vec<ClassNorms>,
}

/// The two semi-norms and their optima; fails if they differ.
pub fn cmd_norm(config: &JobConfig) -> Result<String, CliError> {
    config.validate()?;
    let complex = load_complex(&config.complex)?;
    let solver = NormSolver::with_cap(&complex, config.cap);
    let mut out = NormOutput {
        complex: complex.name().to_string(),
        dim: config.dim,
        classes: Vec::new(),
    };
    let mut mismatch = None;
    for (label, c) in classes(config, &complex, solver.homology())? {
        let lp_err = |e: Error| match e {
            Error::Lp(e) => CliError::Verification {
                check: format!("{label}: {e}"),
                report: String::new(),
            },
            e => e.into(),
        };
        let plain = solver.min_l1_in_class(&c).map_err(lp_err)?;
        let normalised = solver.min_l1_normalised(&c).map_err(lp_err)?;
        if plain.value != normalised.value && mismatch.is_none() {
            mismatch = Some(format!("{label}: seminorm_equality"));
        }
        out.classes.push(ClassNorms {
            class: label,
            seminorm: format_q(&plain.value),
            normalised_seminorm: format_q(&normalised.value),
            optimal_chain: plain.chain.to_serial(),
            optimal_normalised_chain: normalised.chain.to_serial(),
        });
    }
    let text = to_yaml(&out);
    match mismatch {
        None => Ok(text),
        Some(check) => Err(CliError::Verification {
            check,
            report: text,
        }),
    }
}

/// Canonical JSON serialisation of `sym(chain)`.
pub fn cmd_symmetrise(config: &JobConfig) -> Result<String, CliError> {
    config.validate()?;
    let complex = load_complex(&config.complex)?;
    let homology = HomologyEngine::with_cap(&complex, config.cap);
    let (_, c) = classes(config, &complex, &homology)?
        .pop()
        .expect("one explicit chain");
    let s = Symmetriser::new(config.cap).symmetrise(&c)?;
    Ok(s.to_json() + "\n")
}

pub fn run(config: &JobConfig) -> Result<String, CliError> {
    match config.command {
        Command::Verify => cmd_verify(config),
        Command::Norm => cmd_norm(config),
        Command::Symmetrise => cmd_symmetrise(config),
    }
}

/// Writes `text` to `--out` if given, otherwise returns it for stdout.
pub fn emit(config: &JobConfig, text: &str) -> Result<Option<String>, CliError> {
    match &config.out {
        Some(p) => {
            fs::write(p, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}
