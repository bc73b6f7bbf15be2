//! The `weylgen` command-line tool.
//!
//! [`run`] turns a parsed [`RunConfig`] into a [`Report`] and an exit code:
//! 0 when every check passes, 1 when a verification fails, 2 for input
//! errors. Reports contain no timestamps or other run-dependent data.

pub mod example;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use weyl_invariants::algebra::poly::default_var_names;
use weyl_invariants::algebra::MPoly;
use weyl_invariants::crossprod::{relation_check_with, Convention};
use weyl_invariants::groups::spec::GroupSpec;
use weyl_invariants::groups::{classify_reflections, decompose, Family, GroupError, MatrixGroup, DEFAULT_CLOSURE_BOUND};
use weyl_invariants::invariants::{build_invariant_system, InvariantError, InvariantSystem};
use weyl_invariants::laws::run_all;
use weyl_invariants::random::DEFAULT_SEED;
use weyl_invariants::report::{
    reflection_entries, DecompositionSection, GroupSection, InvariantSection, Perturbation, Report, WeylSection,
};
use weyl_invariants::weyl::{verify_operators, WeylGenerators};

pub const OUT_DIR_ENV: &str = "WEYLGEN_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "weylgen", version, about = "Invariant Weyl generators of pseudo-reflection groups")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Built-in family: Sn, Bn, Dn, G (needs --m), cyclic (needs --m), trivial.
    #[arg(long, global = true, conflicts_with = "spec")]
    pub family: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Root-of-unity order for G(m,1,n) and cyclic groups.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// JSON group specification.
    #[arg(long, global = true, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; defaults to standard output, or to `$WEYLGEN_OUT_DIR/<command>.<ext>` when that is set.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_BOUND)]
    pub closure_bound: usize,
    /// Accept family parameters beyond the shipped bounds.
    #[arg(long, global = true)]
    pub allow_large: bool,
    /// Progress messages on standard error; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Built-in families and their parameter bounds.
    ListFamilies,
    /// Pseudo-reflections with roots, hyperplanes and eigenvalues.
    Reflections,
    /// Fundamental invariants, Jacobian, J', J, c and the discriminant.
    Invariants,
    /// The derivations d_i with d_i(e_j) = delta_ij, and their verification.
    WeylGenerators,
    /// Runs the four verification checks.
    Verify {
        /// Check the generators against the invariants with e_INDEX replaced by its square.
        #[arg(long, value_name = "INDEX")]
        perturb: Option<usize>,
    },
    /// Splits the group into commuting reflection factors.
    Decompose {
        /// Second family; the group becomes the block-diagonal product.
        #[arg(long, value_name = "FAMILY")]
        times: Option<String>,
        #[arg(long)]
        times_rank: Option<usize>,
        #[arg(long)]
        times_m: Option<u32>,
    },
    /// Weyl relations of the embedding into the shift cross product; --rank selects one n, default 1..=4.
    CrossprodCheck {
        /// Multiply with the inverse shift while keeping the embedding.
        #[arg(long)]
        flip: bool,
    },
    /// Recomputes the S3 example and compares with the printed generators.
    ReproduceS3,
    /// Randomized and exhaustive law checks.
    Properties {
        #[arg(long, default_value_t = 500)]
        cases: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ListFamilies => "list-families",
            Command::Reflections => "reflections",
            Command::Invariants => "invariants",
            Command::WeylGenerators => "weyl-generators",
            Command::Verify { .. } => "verify",
            Command::Decompose { .. } => "decompose",
            Command::CrossprodCheck { .. } => "crossprod-check",
            Command::ReproduceS3 => "reproduce-s3",
            Command::Properties { .. } => "properties",
        }
    }
}

/// A problem with the input; exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn input(msg: impl fmt::Display) -> InputError {
    InputError(msg.to_string())
}

#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub report: Option<Report>,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn input_error(e: InputError) -> Outcome {
        Outcome { code: 2, report: None, diagnostic: Some(format!("error: {e}")) }
    }

    pub fn render(&self, format: Format) -> Option<String> {
        self.report.as_ref().map(|r| match format {
            Format::Text => r.to_text(),
            Format::Json => r.to_json(),
        })
    }
}

struct Source {
    group: MatrixGroup,
    spec: Option<GroupSpec>,
    candidates: Option<Vec<MPoly>>,
}

impl RunConfig {
    fn log(&self, level: u8, msg: impl FnOnce() -> String) {
        if self.verbose >= level {
            eprintln!("weylgen: {}", msg());
        }
    }

    fn family_from(&self, name: &str, rank: Option<usize>, m: Option<u32>) -> Result<Family, InputError> {
        let rank = rank.ok_or_else(|| input(format!("family `{name}` needs a rank")))?;
        let f = Family::parse(name, rank, m).map_err(input)?;
        f.check_bounds(self.allow_large).map_err(|e| input(format!("{e} (use --allow-large to override)")))?;
        Ok(f)
    }

    fn source(&self) -> Result<Source, InputError> {
        if let Some(path) = &self.spec {
            let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            let spec = GroupSpec::from_json(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let group = spec.build(self.closure_bound).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let candidates = spec.candidate_invariants().map_err(|e| input(format!("{}: {e}", path.display())))?;
            let spec = spec.canonical().map_err(|e| input(format!("{}: {e}", path.display())))?;
            return Ok(Source { group, spec: Some(spec), candidates });
        }
        let name = self.family.as_deref().ok_or_else(|| input("a group is required: pass --family or --spec"))?;
        let f = self.family_from(name, self.rank, self.m)?;
        let group = f.build(self.closure_bound).map_err(input)?;
        Ok(Source { group, spec: None, candidates: None })
    }
}

fn group_section(src: &Source) -> GroupSection {
    let mut s = GroupSection::new(&src.group);
    if let Some(spec) = &src.spec {
        s.spec = spec.clone();
    }
    s
}

/// Errors that are a property of the input rather than a failed check.
fn invariant_input_error(e: &InvariantError) -> bool {
    matches!(e, InvariantError::Unsupported | InvariantError::WrongCount { .. } | InvariantError::Algebra(_))
}

fn system(src: &Source, report: &mut Report) -> Result<Option<InvariantSystem>, InputError> {
    match build_invariant_system(&src.group, src.candidates.as_deref()) {
        Ok(sys) => Ok(Some(sys)),
        Err(e) if invariant_input_error(&e) => Err(input(e)),
        Err(e) => {
            report.fail_with(e.to_string());
            Ok(None)
        }
    }
}

/// Executes one command. Never panics on bad input; see [`Outcome`].
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut report = Report::new(cfg.command.name());
    match execute(cfg, &mut report) {
        Ok(()) => Outcome { code: if report.passed() { 0 } else { 1 }, diagnostic: report.error.clone(), report: Some(report) },
        Err(e) => Outcome::input_error(e),
    }
}

fn execute(cfg: &RunConfig, report: &mut Report) -> Result<(), InputError> {
    match &cfg.command {
        Command::ListFamilies => {
            report.families = Family::catalog();
        }
        Command::Reflections => {
            let src = cfg.source()?;
            report.group = Some(group_section(&src));
            let refs = classify_reflections(&src.group);
            report.reflections = Some(reflection_entries(&refs, src.group.n()));
        }
        Command::Invariants => {
            let src = cfg.source()?;
            report.group = Some(group_section(&src));
            if let Some(sys) = system(&src, report)? {
                report.invariants = Some(InvariantSection::new(&sys));
            }
        }
        Command::WeylGenerators => {
            let src = cfg.source()?;
            report.group = Some(group_section(&src));
            let Some(sys) = system(&src, report)? else { return Ok(()) };
            report.invariants = Some(InvariantSection::new(&sys));
            cfg.log(1, || format!("solving for {} generators", sys.e.len()));
            match WeylGenerators::from_invariants(&sys.group, &sys.e) {
                Ok(gens) => {
                    report.weyl_generators = Some(WeylSection::new(&gens));
                    report.require(gens.report.passed());
                    report.verification = Some(gens.report);
                }
                Err(e) => report.fail_with(e.to_string()),
            }
        }
        Command::Verify { perturb } => {
            let src = cfg.source()?;
            report.group = Some(group_section(&src));
            let Some(sys) = system(&src, report)? else { return Ok(()) };
            let gens = match WeylGenerators::from_invariants(&sys.group, &sys.e) {
                Ok(g) => g,
                Err(e) => {
                    report.fail_with(e.to_string());
                    return Ok(());
                }
            };
            let mut e = sys.e.clone();
            if let Some(k) = *perturb {
                if k == 0 || k > e.len() {
                    return Err(input(format!("--perturb must be between 1 and {}", e.len())));
                }
                e[k - 1] = e[k - 1].pow(2);
                let names = default_var_names("x", e.len());
                report.perturbation =
                    Some(Perturbation { index: k, invariants: e.iter().map(|p| p.to_string_with(&names)).collect() });
            }
            match verify_operators(&sys.group, &e, &gens.d) {
                Ok(v) => {
                    report.require(v.passed());
                    if !v.passed() {
                        report.error = Some(v.summary());
                    }
                    report.verification = Some(v);
                }
                Err(e) => report.fail_with(e.to_string()),
            }
        }
        Command::Decompose { times, times_rank, times_m } => {
            let mut src = cfg.source()?;
            if let Some(name) = times {
                let other = cfg.family_from(name, *times_rank, *times_m)?.build(cfg.closure_bound).map_err(input)?;
                src.group = src.group.direct_product(&other, cfg.closure_bound).map_err(input)?;
                src.spec = None;
            }
            report.group = Some(group_section(&src));
            match decompose(&src.group) {
                Ok(d) => {
                    let section = DecompositionSection::new(&d);
                    report.require(section.check.all_pass());
                    report.decomposition = Some(section);
                }
                Err(e @ GroupError::NotGeneratedByReflections { .. }) => return Err(input(e)),
                Err(e) => report.fail_with(e.to_string()),
            }
        }
        Command::CrossprodCheck { flip } => {
            let ns: Vec<usize> = match cfg.rank {
                Some(0) => return Err(input("--rank must be positive")),
                Some(n) => vec![n],
                None => (1..=4).collect(),
            };
            let conv = if *flip { Convention::Epsilon } else { Convention::Sigma };
            let reports: Vec<_> = ns.iter().map(|&n| relation_check_with(n, conv)).collect();
            report.require(reports.iter().all(|r| r.passed()));
            report.crossprod = Some(reports);
        }
        Command::ReproduceS3 => {
            let (value, ok) = example::reproduce_s3(cfg.closure_bound).map_err(input)?;
            report.require(ok);
            report.example = Some(value);
        }
        Command::Properties { cases } => {
            cfg.log(1, || format!("running laws with seed {} and {cases} cases", cfg.seed));
            let results = run_all(cfg.seed, *cases);
            report.require(results.iter().all(|r| r.passed));
            report.properties = Some(results);
        }
    }
    Ok(())
}

/// Where the rendered report goes: an explicit `--out`, the directory in
/// [`OUT_DIR_ENV`], or standard output (`None`).
pub fn destination(cfg: &RunConfig, env_dir: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = &cfg.out {
        return Some(p.clone());
    }
    env_dir.map(|d| d.join(format!("{}.{}", cfg.command.name(), cfg.format.extension())))
}
