//! Command-line front end for `gaussdisk`.
//!
//! Exit codes: 0 success, 2 invariant violation or failed verification,
//! 3 numerical failure, 64 usage error, 65 malformed document, 66 unreadable
//! input, 74 unwritable output.

pub mod document;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gaussdisk::dynamics::{
    channel_apply_cov, channel_apply_disk, channel_compose, channel_embed, channel_validate, vacuum_preserving,
};
use gaussdisk::fock_bargmann::{fb_pure_eval, mixed_kernel_eval, state_kernel_eval};
use gaussdisk::linalg::PsdStatus;
use gaussdisk::oracle::{equivalence_run, RunSummary, Suite};
use gaussdisk::siegel::{classify, disk_membership, BlockMap2x2, Domain, MembershipReport};
use gaussdisk::states::{
    complex_from_real, cov_to_disk, disk_to_cov, disk_williamson, pure_embed, real_from_complex, state_membership,
    symplectic_spectrum, williamson, ComplexCovariance, DoubleDiskPoint, StateMembership,
};
use gaussdisk::{ComplexMatrix, ToleranceConfig, C64};
use serde_json::{json, Value};

use document::{parse_document, Document};

/// Cross-picture residual above which `apply --picture both` fails.
pub const BOTH_PICTURE_LIMIT: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum CliError {
    Usage(String),
    Schema(String),
    Input(String),
    Output(String),
    Invariant(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Usage(_) => 64,
            CliError::Schema(_) => 65,
            CliError::Input(_) => 66,
            CliError::Output(_) => 74,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Schema(_) => "schema",
            CliError::Input(_) => "input",
            CliError::Output(_) => "output",
            CliError::Invariant(_) => "invariant",
            CliError::Numerical(_) => "numerical",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Schema(m)
            | CliError::Input(m)
            | CliError::Output(m)
            | CliError::Invariant(m)
            | CliError::Numerical(m) => m,
        }
    }

    pub(crate) fn context(self, prefix: &str) -> Self {
        let wrap = |m: String| format!("{prefix}: {m}");
        match self {
            CliError::Usage(m) => CliError::Usage(wrap(m)),
            CliError::Schema(m) => CliError::Schema(wrap(m)),
            CliError::Input(m) => CliError::Input(wrap(m)),
            CliError::Output(m) => CliError::Output(wrap(m)),
            CliError::Invariant(m) => CliError::Invariant(wrap(m)),
            CliError::Numerical(m) => CliError::Numerical(wrap(m)),
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.label(), "message": self.message(), "exit": self.exit_code()}).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.label(), self.message())
    }
}

impl From<gaussdisk::Error> for CliError {
    fn from(e: gaussdisk::Error) -> Self {
        use gaussdisk::Error as E;
        match &e {
            _ if e.is_numerical() => CliError::Numerical(e.to_string()),
            E::Dimension(_) => CliError::Schema(e.to_string()),
            E::Parameter(_) | E::UnknownSuite(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gaussdisk", version, about = "Gaussian states and channels in Siegel disk coordinates")]
pub struct Cli {
    /// Absolute tolerance for equality and membership tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Picture {
    Disk,
    Cov,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report membership predicates and residuals for a document.
    Check { file: PathBuf },
    /// Convert a covariance or disk point to its double-disk representative.
    ToDisk { file: PathBuf },
    /// Convert a double-disk point to a covariance matrix.
    ToCov {
        file: PathBuf,
        /// Emit the real phase-space covariance instead of the complex one.
        #[arg(long)]
        real: bool,
    },
    /// Williamson form (S, ν) of a covariance matrix.
    Williamson { file: PathBuf },
    /// Disk Williamson form: ABC-symplectic S and thermal spectrum ν.
    DiskWilliamson { file: PathBuf },
    /// Embed an (X, Y) channel as a 4n×4n acting matrix.
    EmbedChannel { file: PathBuf },
    /// Apply a channel to a state.
    Apply {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = Picture::Disk)]
        picture: Picture,
    },
    /// Compose two channels (or multiply two block maps); the second argument acts first.
    Compose { second: PathBuf, first: PathBuf },
    /// Semigroup and group membership of a block map.
    Classify { file: PathBuf },
    /// Evaluate a Fock-Bargmann wavefunction or kernel diagonal.
    FbEval {
        file: PathBuf,
        /// One `re,im` pair per mode.
        #[arg(long, required = true, allow_hyphen_values = true)]
        zeta: Vec<String>,
    },
    /// Run a randomized cross-picture verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Mode counts, cycled over trials.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<usize>,
    },
}

/// Text produced by a command, plus the exit code it should end with.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn psd_status(s: PsdStatus) -> &'static str {
    match s {
        PsdStatus::Positive => "positive",
        PsdStatus::Boundary => "boundary",
        PsdStatus::Negative => "negative",
    }
}

fn domain_name(d: Domain) -> &'static str {
    match d {
        Domain::Interior => "interior",
        Domain::Boundary => "boundary",
        Domain::Outside => "outside",
    }
}

fn membership_json(r: &MembershipReport) -> Value {
    json!({
        "sp_real": r.sp_real,
        "sp_complex": r.sp_complex,
        "sp_abc": r.sp_abc,
        "sp_plus_uhp": r.sp_plus_uhp,
        "sp_plus_disk": r.sp_plus_disk,
        "boundary_saturated": r.boundary_saturated,
        "uhp_boundary_saturated": r.uhp_boundary_saturated,
        "residuals": {
            "real": r.residuals.real,
            "symplectic": r.residuals.symplectic,
            "abc": r.residuals.abc,
            "disk_gap": r.residuals.disk_gap,
            "uhp_gap": r.residuals.uhp_gap,
            "disk_saturation": r.residuals.disk_saturation,
            "uhp_saturation": r.residuals.uhp_saturation,
        },
    })
}

fn state_json(m: &StateMembership) -> Value {
    json!({
        "in_disk": m.in_disk,
        "near_boundary": m.near_boundary,
        "abc": m.abc,
        "up_fractional": m.up_fractional,
        "w_psd": m.w_psd,
        "up_status": psd_status(m.up_status()),
        "w_status": psd_status(m.w_status()),
        "up_min_eigenvalue": m.up_min_eigenvalue,
        "w_min_eigenvalue": m.w_min_eigenvalue,
        "predicates_disagree": m.predicates_disagree(),
    })
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn wrong_kind(command: &str, doc: &Document, accepted: &str) -> CliError {
    CliError::Schema(format!("`{command}` accepts {accepted}, got `{}`", doc.kind()))
}

fn as_complex_cov(doc: &Document, command: &str, tol: &ToleranceConfig) -> Result<ComplexCovariance, CliError> {
    match doc {
        Document::ComplexCov(s) => Ok(s.clone()),
        Document::RealCov(s) => Ok(complex_from_real(s, tol)?),
        Document::DoubleDisk(a) => Ok(disk_to_cov(a, tol)?),
        other => Err(wrong_kind(command, other, "real_cov, complex_cov or double_disk")),
    }
}

fn as_double_disk(doc: &Document, command: &str, tol: &ToleranceConfig) -> Result<DoubleDiskPoint, CliError> {
    match doc {
        Document::DoubleDisk(a) => Ok(a.clone()),
        Document::ComplexCov(s) => Ok(cov_to_disk(s, tol)?),
        Document::RealCov(s) => Ok(cov_to_disk(&complex_from_real(s, tol)?, tol)?),
        Document::DiskPoint(k) => Ok(pure_embed(k, tol)?),
        other => Err(wrong_kind(command, other, "real_cov, complex_cov, disk_point or double_disk")),
    }
}

fn block_doc(map: BlockMap2x2, nu: Option<Vec<f64>>) -> String {
    Document::BlockMap { map, nu }.to_json()
}

fn check(doc: &Document, tol: &ToleranceConfig) -> Result<Value, CliError> {
    let kind = doc.kind().to_string();
    Ok(match doc {
        Document::RealCov(s) => json!({
            "kind": kind,
            "n": s.n(),
            "symplectic_spectrum": symplectic_spectrum(s),
            "is_state": s.is_state(tol),
        }),
        Document::ComplexCov(s) => {
            let up = s.uncertainty(tol)?;
            let a = cov_to_disk(s, tol)?;
            json!({
                "kind": kind,
                "n": s.n(),
                "uncertainty_min_eigenvalue": up.min_eigenvalue,
                "uncertainty_status": psd_status(up.status()),
                "is_state": up.semidefinite(),
                "disk": state_json(&state_membership(a.matrix(), tol)?),
            })
        }
        Document::DiskPoint(k) => {
            let m = disk_membership(k.k(), tol)?;
            json!({
                "kind": kind,
                "n": k.n(),
                "domain": domain_name(m.domain()),
                "symmetric_residual": m.symmetric_residual,
                "gap_min_eigenvalue": m.gap.min_eigenvalue,
            })
        }
        Document::DoubleDisk(a) => json!({
            "kind": kind,
            "n": a.n(),
            "is_abc": a.is_abc(),
            "is_state": a.is_state(),
            "membership": state_json(&state_membership(a.matrix(), tol)?),
        }),
        Document::Channel(ch) => {
            let v = channel_validate(ch, tol)?;
            json!({
                "kind": kind,
                "n": ch.n(),
                "valid": v.valid,
                "residual": v.residual,
                "unnormalized_valid": v.paper_mode_valid,
                "unnormalized_residual": v.paper_mode_residual,
                "vacuum_preserving": vacuum_preserving(ch, tol),
            })
        }
        Document::BlockMap { map, .. } => {
            let mut v = membership_json(&classify(map, tol));
            v["kind"] = json!(kind);
            v["n"] = json!(map.n());
            v
        }
    })
}

fn parse_zeta(items: &[String]) -> Result<Vec<C64>, CliError> {
    items
        .iter()
        .map(|s| {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let parse = |p: &str| p.parse::<f64>().ok().filter(|v| v.is_finite());
            match parts.as_slice() {
                [re, im] => match (parse(re), parse(im)) {
                    (Some(re), Some(im)) => Ok(C64::new(re, im)),
                    _ => Err(CliError::Usage(format!("--zeta `{s}`: expected two finite numbers `re,im`"))),
                },
                _ => Err(CliError::Usage(format!("--zeta `{s}`: expected `re,im`"))),
            }
        })
        .collect()
}

fn verify(suite: &str, trials: u64, seed: u64, n: &[usize], tol: &ToleranceConfig) -> Result<Output, CliError> {
    let suite: Suite = suite.parse()?;
    let reports = equivalence_run(suite, trials, seed, n, tol)?;
    let summary = RunSummary::from_reports(suite, &reports);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).expect("serializable report"));
        text.push('\n');
    }
    text.push_str(&json!({ "summary": summary }).to_string());
    Ok(Output { text, code: if summary.all_passed() { 0 } else { 2 } })
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let tol = ToleranceConfig::default().with_atol(cli.tol).map_err(|e| CliError::Usage(format!("--tol: {e}")))?;
    let load = |p: &Path| parse_document(p, &tol);
    Ok(match &cli.command {
        Command::Check { file } => Output::ok(check(&load(file)?, &tol)?.to_string()),
        Command::ToDisk { file } => {
            let doc = load(file)?;
            Output::ok(Document::DoubleDisk(as_double_disk(&doc, "to-disk", &tol)?).to_json())
        }
        Command::ToCov { file, real } => {
            let a = match load(file)? {
                Document::DoubleDisk(a) => a,
                other => return Err(wrong_kind("to-cov", &other, "double_disk")),
            };
            let sigma = disk_to_cov(&a, &tol)?;
            let doc = if *real { Document::RealCov(real_from_complex(&sigma, &tol)?) } else { Document::ComplexCov(sigma) };
            Output::ok(doc.to_json())
        }
        Command::Williamson { file } => {
            let doc = load(file)?;
            let real = match &doc {
                Document::RealCov(s) => s.clone(),
                Document::ComplexCov(s) => real_from_complex(s, &tol)?,
                other => return Err(wrong_kind("williamson", other, "real_cov or complex_cov")),
            };
            let w = williamson(&real)?;
            let s = BlockMap2x2::new(ComplexMatrix::from_real(&w.s))?;
            Output::ok(block_doc(s, Some(w.nu)))
        }
        Command::DiskWilliamson { file } => {
            let doc = load(file)?;
            let a = as_double_disk(&doc, "disk-williamson", &tol)?;
            let dw = disk_williamson(&a, &tol)?;
            Output::ok(block_doc(dw.s, Some(dw.nu.nu().to_vec())))
        }
        Command::EmbedChannel { file } => match load(file)? {
            Document::Channel(ch) => Output::ok(block_doc(channel_embed(&ch, &tol)?.map().clone(), None)),
            other => return Err(wrong_kind("embed-channel", &other, "channel_xy")),
        },
        Command::Apply { channel, state, picture } => {
            let ch = match load(channel)? {
                Document::Channel(ch) => ch,
                other => return Err(wrong_kind("apply --channel", &other, "channel_xy")),
            };
            let validity = channel_validate(&ch, &tol)?;
            if !validity.valid {
                return Err(CliError::Invariant(format!(
                    "{}: channel validity violated (residual {:.3e})",
                    channel.display(),
                    validity.residual
                )));
            }
            let st = load(state)?;
            if matches!(st, Document::DiskPoint(_)) {
                return Err(wrong_kind("apply --state", &st, "real_cov, complex_cov or double_disk"));
            }
            let disk = || -> Result<DoubleDiskPoint, CliError> {
                let a = as_double_disk(&st, "apply --state", &tol)?;
                Ok(channel_apply_disk(&channel_embed(&ch, &tol)?, &a, &tol)?)
            };
            let cov = || -> Result<ComplexCovariance, CliError> {
                let s = as_complex_cov(&st, "apply --state", &tol)?;
                Ok(channel_apply_cov(&ch, &s, &tol)?)
            };
            match picture {
                Picture::Disk => Output::ok(Document::DoubleDisk(disk()?).to_json()),
                Picture::Cov => Output::ok(Document::ComplexCov(cov()?).to_json()),
                Picture::Both => {
                    let d = disk()?;
                    let c = cov()?;
                    let residual = cov_to_disk(&c, &tol)?.matrix().dist(d.matrix());
                    let text = json!({
                        "disk": Document::DoubleDisk(d).to_raw(),
                        "cov": Document::ComplexCov(c).to_raw(),
                        "residual": residual,
                    })
                    .to_string();
                    Output { text, code: if residual <= BOTH_PICTURE_LIMIT { 0 } else { 3 } }
                }
            }
        }
        Command::Compose { second, first } => match (load(second)?, load(first)?) {
            (Document::Channel(b), Document::Channel(a)) => Output::ok(Document::Channel(channel_compose(&b, &a)?).to_json()),
            (Document::BlockMap { map: b, .. }, Document::BlockMap { map: a, .. }) => Output::ok(block_doc(b.compose(&a)?, None)),
            (b, a) => {
                return Err(CliError::Schema(format!(
                    "`compose` needs two channel_xy or two block_map documents, got `{}` and `{}`",
                    b.kind(),
                    a.kind()
                )))
            }
        },
        Command::Classify { file } => match load(file)? {
            Document::BlockMap { map, .. } => Output::ok(membership_json(&classify(&map, &tol)).to_string()),
            other => return Err(wrong_kind("classify", &other, "block_map")),
        },
        Command::FbEval { file, zeta } => {
            let z = parse_zeta(zeta)?;
            let doc = load(file)?;
            let value = match &doc {
                Document::DiskPoint(k) => fb_pure_eval(k, &z)?,
                Document::DoubleDisk(a) => mixed_kernel_eval(a, &z)?,
                Document::ComplexCov(_) | Document::RealCov(_) => {
                    state_kernel_eval(&as_complex_cov(&doc, "fb-eval", &tol)?, &z, &tol)?
                }
                other => return Err(wrong_kind("fb-eval", other, "disk_point, double_disk, real_cov or complex_cov")),
            };
            let zs: Vec<Value> = z.iter().map(|&v| c_json(v)).collect();
            Output::ok(json!({"zeta": zs, "value": c_json(value)}).to_string())
        }
        Command::Verify { suite, trials, seed, n } => verify(suite, *trials, *seed, n, &tol)?,
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| CliError::Output(format!("stdout: {e}")))
        }
    }
}

/// Parse `args`, run the command and return the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
        }
    };
    let result = execute(&cli).and_then(|o| emit(&cli.out, &o.text).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
