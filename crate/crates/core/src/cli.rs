//! Command-line front end. Every command prints a JSON report on stdout and
//! exits with 0 exactly when the report passes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use crate::coquant::{
    conjugate_symmetrize, pinch_check, properness_check, qbeta_identity_check, symmetrize_report, CorepFamily,
    ProperInput,
};
use crate::error::{Error, Result};
use crate::gfcocycle::{
    attempt_functional, cocycle_from_functional, functional_from_cocycle, roundtrip_check, tau_reality_transfer,
    two_cocycle_check, Cocycle, Functional,
};
use crate::hopf::Presentation;
use crate::io;
use crate::levydecomp::decompose;
use crate::presets;
use crate::report::{Check, Report};
use crate::scalar::{Backend, Scalar};

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Hopf axioms and relation compatibility on normal words.
    VerifyHopf,
    /// Admissibility of the scaling map alpha.
    CheckAdmissible,
    /// Generating functional of a cocycle; writes the functional.
    FromCocycle,
    /// GNS cocycle of a generating functional; writes the cocycle.
    FromFunctional,
    /// Functional -> cocycle -> functional.
    Roundtrip,
    /// Diagnostics of the defining formula on any cocycle.
    Attempt,
    /// Gaussian / non-Gaussian splitting of a cocycle.
    Decompose,
    /// The Q-twisted identity between L^beta and (eta^beta)* eta^beta.
    Qbeta,
    /// Spectral pinching of L^beta.
    Pinch,
    /// Exceptional set of the properness condition.
    Proper,
    /// Direct sum with the conjugate cocycle; writes the cocycle.
    Symmetrize,
    /// The 2-cocycle identity of the pairing.
    TwoCocycle,
    /// Transfer of tau_t-reality to tau_s-reality.
    TauTransfer,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendArg {
    Exact,
    Float,
}

/// Options shared by all commands.
#[derive(Args, Debug, Clone, Default)]
pub struct RunConfig {
    /// Shipped preset, optionally with parameters: `suq2?q=1/3`.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Presentation file.
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    /// Cocycle file, or the name of a file shipped with the preset.
    #[arg(long, global = true)]
    pub cocycle: Option<String>,
    /// Functional file, or the name of a file shipped with the preset.
    #[arg(long, global = true)]
    pub functional: Option<String>,
    /// Corepresentation family; defaults to the preset's `coreps.json`.
    #[arg(long, global = true)]
    pub coreps: Option<String>,
    /// Degree bound for checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub cutoff: usize,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long = "psd-tol", global = true)]
    pub psd_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendArg>,
    /// Largest degree of corepresentation coefficients considered.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Level of the properness condition.
    #[arg(long = "M", global = true, default_value = "1")]
    pub m: String,
    /// `id` or `tau:t`, replacing alpha = tau_{i/2} by tau_{it}.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// tau-transfer: source parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// tau-transfer: target parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Report path; a constructed artifact goes next to it as `<stem>.artifact.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "hopfcorr", version, about = "Cocycles and generating functionals on Hopf *-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub cfg: RunConfig,
}

pub struct Outcome {
    pub report: Report,
    pub artifact: Option<String>,
}

struct Loaded {
    pres: Presentation,
    reference: String,
    provenance: BTreeMap<String, String>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyHopf => "verify-hopf",
            Command::CheckAdmissible => "check-admissible",
            Command::FromCocycle => "from-cocycle",
            Command::FromFunctional => "from-functional",
            Command::Roundtrip => "roundtrip",
            Command::Attempt => "attempt",
            Command::Decompose => "decompose",
            Command::Qbeta => "qbeta",
            Command::Pinch => "pinch",
            Command::Proper => "proper",
            Command::Symmetrize => "symmetrize",
            Command::TwoCocycle => "two-cocycle",
            Command::TauTransfer => "tau-transfer",
        }
    }
}

fn read_artifact(cfg: &RunConfig, arg: &str) -> Result<(String, String)> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok((std::fs::read_to_string(path)?, arg.to_string()));
    }
    match &cfg.preset {
        Some(p) => {
            let (name, _) = io::split_ref(p);
            Ok((presets::data_text(&name, arg)?, format!("{name}/{arg}")))
        }
        None => Err(Error::Io(std::io::Error::new(std::io::ErrorKind::NotFound, format!("no such file `{arg}`")))),
    }
}

fn parse_rational(text: &str) -> Result<Rational64> {
    text.trim().parse::<Rational64>().map_err(|_| Error::Parse(format!("`{text}` is not a rational number")))
}

/// Loads the presentation named by the config, applying backend, tolerance
/// and alpha overrides. Unless `raw`, it must pass validation.
fn load_presentation(cfg: &RunConfig, raw: bool) -> Result<Loaded> {
    let mut provenance = BTreeMap::new();
    let (mut pres, reference) = match (&cfg.preset, &cfg.presentation) {
        (Some(_), Some(_)) => return Err(Error::Parse("give either --preset or --presentation, not both".into())),
        (Some(p), None) => {
            let (name, _) = io::split_ref(p);
            let text = presets::data_text(&name, "presentation.json")?;
            provenance.insert("presentation".into(), format!("preset {p} sha256:{}", io::sha256_hex(text.as_bytes())));
            (presets::preset_presentation(p)?, p.clone())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            provenance.insert(
                "presentation".into(),
                format!("{} sha256:{}", path.display(), io::sha256_hex(text.as_bytes())),
            );
            (io::parse_presentation(&text, &BTreeMap::new())?, path.display().to_string())
        }
        (None, None) => return Err(Error::Parse("one of --preset or --presentation is required".into())),
    };
    if let Some(b) = cfg.backend {
        pres = pres.to_backend(match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        })?;
    }
    if let Some(t) = cfg.tol {
        pres.tol.eps_num = t;
    }
    if let Some(t) = cfg.psd_tol {
        pres.tol.eps_psd = t;
    }
    if let Some(a) = &cfg.alpha {
        pres = match a.as_str() {
            "id" => pres.with_alpha(vec![Scalar::one(); pres.ngens()])?,
            other => match other.strip_prefix("tau:") {
                Some(t) => pres.with_alpha_power(&(parse_rational(t)? * 2))?,
                None => return Err(Error::Parse(format!("--alpha expects `id` or `tau:t`, got `{a}`"))),
            },
        };
    }
    if !raw {
        pres = presets::validated(pres, presets::LOAD_DEGREE)?;
    }
    Ok(Loaded { pres, reference, provenance })
}

fn load_cocycle(cfg: &RunConfig, l: &mut Loaded) -> Result<Cocycle> {
    let arg = cfg.cocycle.as_deref().ok_or_else(|| Error::Parse("--cocycle is required".into()))?;
    let (text, origin) = read_artifact(cfg, arg)?;
    l.provenance.insert("cocycle".into(), format!("{origin} sha256:{}", io::sha256_hex(text.as_bytes())));
    io::parse_cocycle_file(&text)?.build(&l.pres)
}

fn load_functional(cfg: &RunConfig, l: &mut Loaded) -> Result<Functional> {
    let arg = cfg.functional.as_deref().ok_or_else(|| Error::Parse("--functional is required".into()))?;
    let (text, origin) = read_artifact(cfg, arg)?;
    l.provenance.insert("functional".into(), format!("{origin} sha256:{}", io::sha256_hex(text.as_bytes())));
    io::parse_functional_file(&text)?.build(&l.pres)
}

fn load_coreps(cfg: &RunConfig, l: &mut Loaded) -> Result<CorepFamily> {
    let arg = match (&cfg.coreps, &cfg.preset) {
        (Some(c), _) => c.clone(),
        (None, Some(_)) => "coreps.json".to_string(),
        (None, None) => return Err(Error::Parse("--coreps is required".into())),
    };
    let (text, origin) = read_artifact(cfg, &arg)?;
    l.provenance.insert("coreps".into(), format!("{origin} sha256:{}", io::sha256_hex(text.as_bytes())));
    let mut f = io::parse_coreps_file(&text)?.build(&l.pres)?;
    if let Some(h) = cfg.horizon {
        f.coreps.retain(|c| c.u.iter().flatten().all(|p| p.degree() <= h));
    }
    Ok(f)
}

/// Fails with the well-definedness report when the cocycle is not a cocycle.
fn require_welldefined(pres: &Presentation, c: &Cocycle) -> Result<()> {
    let rep = c.check_welldefined(pres);
    if rep.passed() {
        Ok(())
    } else {
        Err(Error::ValidationFailed(Box::new(rep)))
    }
}

fn dispatch(cmd: Command, cfg: &RunConfig, l: &mut Loaded) -> Result<Outcome> {
    let deg = cfg.cutoff;
    let done = |report: Report| Ok(Outcome { report, artifact: None });
    match cmd {
        Command::VerifyHopf => {
            let mut rep = Report::new("verify-hopf");
            rep.absorb("confluence", l.pres.algebra().check_local_confluence((2 * l.pres.algebra().rewrite_system().max_lhs_len()).max(deg)));
            rep.absorb("hopf", l.pres.verify_hopf_axioms(deg));
            done(rep)
        }
        Command::CheckAdmissible => done(l.pres.verify_admissible(deg)),
        Command::FromCocycle => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let mut rep = attempt_functional(&l.pres, &c);
            rep.command = "from-cocycle".into();
            let lf = functional_from_cocycle(&l.pres, &c)?;
            rep.absorb("functional", lf.check_generating(&l.pres));
            let art = io::save_functional(&l.pres, &l.reference, &lf);
            Ok(Outcome { report: rep, artifact: Some(art) })
        }
        Command::FromFunctional => {
            let lf = load_functional(cfg, l)?;
            let mut rep = Report::new("from-functional");
            rep.absorb("functional", lf.check_generating(&l.pres));
            let c = cocycle_from_functional(&l.pres, &lf)?;
            rep.absorb("cocycle", c.check_welldefined(&l.pres));
            rep.absorb("coboundary", lf.yields_coboundary(&l.pres, &c, lf.cutoff)?);
            rep.set_value("dim", c.dim);
            rep.set_value("cocycle_cutoff", c.cutoff);
            rep.set_value("truncated", c.truncated);
            let art = io::save_cocycle(&l.pres, &l.reference, &c);
            Ok(Outcome { report: rep, artifact: Some(art) })
        }
        Command::Roundtrip => {
            let lf = load_functional(cfg, l)?;
            let (mut rep, c, _) = roundtrip_check(&l.pres, &lf)?;
            rep.command = "roundtrip".into();
            let art = io::save_cocycle(&l.pres, &l.reference, &c);
            Ok(Outcome { report: rep, artifact: Some(art) })
        }
        Command::Attempt => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let mut rep = attempt_functional(&l.pres, &c);
            rep.absorb("alpha-real", c.is_alpha_real(&l.pres, deg.min(c.cutoff))?);
            done(rep)
        }
        Command::Decompose => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let d = decompose(&l.pres, &c)?;
            let mut rep = d.report.clone();
            rep.absorb("parts", d.check_parts(&l.pres, deg.min(d.l.cutoff))?);
            done(rep)
        }
        Command::Qbeta | Command::Pinch => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let lf = match &cfg.functional {
                Some(_) => load_functional(cfg, l)?,
                None => functional_from_cocycle(&l.pres, &c)?,
            };
            let f = load_coreps(cfg, l)?;
            let mut rep = if matches!(cmd, Command::Qbeta) {
                qbeta_identity_check(&l.pres, &c, &lf, &f)?
            } else {
                pinch_check(&l.pres, &c, &lf, &f)?
            };
            rep.absorb("coreps", f.check(&l.pres));
            done(rep)
        }
        Command::Proper => {
            let m = Scalar::parse(&cfg.m, l.pres.backend)?;
            let f = load_coreps(cfg, l)?;
            let rep = match (&cfg.cocycle, &cfg.functional) {
                (Some(_), None) => {
                    let c = load_cocycle(cfg, l)?;
                    require_welldefined(&l.pres, &c)?;
                    properness_check(&l.pres, ProperInput::Cocycle(&c), &f, &m)?
                }
                (None, Some(_)) => {
                    let lf = load_functional(cfg, l)?;
                    properness_check(&l.pres, ProperInput::Functional(&lf), &f, &m)?
                }
                _ => return Err(Error::Parse("proper takes exactly one of --cocycle or --functional".into())),
            };
            done(rep)
        }
        Command::Symmetrize => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let s = conjugate_symmetrize(&l.pres, &c)?;
            let f = if cfg.coreps.is_some() || cfg.preset.is_some() { Some(load_coreps(cfg, l)?) } else { None };
            let rep = symmetrize_report(&l.pres, &c, &s, deg.min(s.cutoff), f.as_ref())?;
            let art = io::save_cocycle(&l.pres, &l.reference, &s);
            Ok(Outcome { report: rep, artifact: Some(art) })
        }
        Command::TwoCocycle => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            done(two_cocycle_check(&l.pres, &c, deg)?)
        }
        Command::TauTransfer => {
            let c = load_cocycle(cfg, l)?;
            require_welldefined(&l.pres, &c)?;
            let t = parse_rational(cfg.t.as_deref().ok_or_else(|| Error::Parse("--t is required".into()))?)?;
            let s = parse_rational(cfg.s.as_deref().ok_or_else(|| Error::Parse("--s is required".into()))?)?;
            done(tau_reality_transfer(&l.pres, &c, t, s)?)
        }
    }
}

/// Report for an operation that raised an error.
fn error_report(command: &str, e: Error) -> Report {
    match e {
        Error::ValidationFailed(inner) => {
            let mut rep = Report::new(command);
            let what = inner.command.clone();
            rep.absorb(&what, *inner);
            rep.push(Check::fail("validation", format!("validation failed in `{what}`")));
            rep
        }
        other => {
            let mut rep = Report::new(command);
            rep.push(Check::fail("error", other.to_string()));
            rep
        }
    }
}

fn config_provenance(cfg: &RunConfig, pres: Option<&Presentation>) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    p.insert("tool".into(), format!("hopfcorr {}", env!("CARGO_PKG_VERSION")));
    p.insert("cutoff".into(), cfg.cutoff.to_string());
    if let Some(pres) = pres {
        p.insert("backend".into(), pres.backend.to_string());
        p.insert("tol".into(), format!("{:e}", pres.tol.eps_num));
        p.insert("psd_tol".into(), format!("{:e}", pres.tol.eps_psd));
    }
    if let Some(a) = &cfg.alpha {
        p.insert("alpha".into(), a.clone());
    }
    if let Some(h) = cfg.horizon {
        p.insert("horizon".into(), h.to_string());
    }
    p
}

/// Runs one command; never panics on bad input.
pub fn run_command(cmd: Command, cfg: &RunConfig) -> Outcome {
    let raw = matches!(cmd, Command::VerifyHopf | Command::CheckAdmissible);
    let mut loaded = match load_presentation(cfg, raw) {
        Ok(l) => l,
        Err(e) => {
            let mut report = error_report(cmd.name(), e);
            report.provenance = config_provenance(cfg, None);
            return Outcome { report, artifact: None };
        }
    };
    let mut out = match dispatch(cmd, cfg, &mut loaded) {
        Ok(o) => o,
        Err(e) => Outcome { report: error_report(cmd.name(), e), artifact: None },
    };
    out.report.command = cmd.name().to_string();
    let mut prov = config_provenance(cfg, Some(&loaded.pres));
    prov.extend(loaded.provenance);
    out.report.provenance = prov;
    out
}

/// Path of the artifact written next to the report `out`.
pub fn artifact_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.artifact.json"))
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let top = match Cli::try_parse_from(args) {
        Ok(t) => t,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = run_command(top.command, &top.cfg);
    let text = out.report.to_json() + "\n";
    print!("{text}");
    if let Some(path) = &top.cfg.out {
        let written = std::fs::write(path, &text).and_then(|_| match &out.artifact {
            Some(a) => std::fs::write(artifact_path(path), a),
            None => Ok(()),
        });
        if let Err(e) = written {
            eprintln!("hopfcorr: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if out.report.passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> (Command, RunConfig) {
        let top = Cli::try_parse_from(std::iter::once("hopfcorr").chain(args.iter().copied())).unwrap();
        (top.command, top.cfg)
    }

    fn run(args: &[&str]) -> Outcome {
        let (c, rc) = cfg(args);
        run_command(c, &rc)
    }

    #[test]
    fn names_match_subcommands() {
        for name in [
            "verify-hopf",
            "check-admissible",
            "from-cocycle",
            "from-functional",
            "roundtrip",
            "attempt",
            "decompose",
            "qbeta",
            "pinch",
            "proper",
            "symmetrize",
            "two-cocycle",
            "tau-transfer",
        ] {
            assert_eq!(cfg(&[name, "--preset", "c-z"]).0.name(), name);
        }
    }

    #[test]
    fn flags_parse_after_subcommand() {
        let (_, c) = cfg(&["tau-transfer", "--preset", "suq2?q=1/3", "--t", "-1", "--s", "1/2", "--M", "3", "--backend", "float"]);
        assert_eq!(c.t.as_deref(), Some("-1"));
        assert_eq!(c.s.as_deref(), Some("1/2"));
        assert_eq!(c.m, "3");
        assert_eq!(c.backend, Some(BackendArg::Float));
        assert_eq!(c.cutoff, 3);
    }

    #[test]
    fn artifact_names() {
        assert_eq!(artifact_path(Path::new("/tmp/r.json")), PathBuf::from("/tmp/r.artifact.json"));
        assert_eq!(artifact_path(Path::new("out")), PathBuf::from("out.artifact.json"));
    }

    #[test]
    fn constructions_produce_artifacts() {
        let o = run(&["from-cocycle", "--preset", "c-z", "--cocycle", "eta-n"]);
        assert!(o.report.passed(), "{}", o.report.to_json());
        let text = o.artifact.unwrap();
        let p = presets::preset_presentation("c-z").unwrap();
        assert_eq!(io::parse_functional_file(&text).unwrap().build(&p).unwrap(), presets::cz_gaussian(&p, 4));
        let o = run(&["from-functional", "--preset", "c-z", "--functional", "gaussian"]);
        assert!(o.report.passed());
        assert!(o.artifact.is_some());
    }

    #[test]
    fn provenance_is_recorded() {
        let o = run(&["verify-hopf", "--preset", "c-z"]);
        assert!(o.report.passed());
        assert_eq!(o.report.provenance["cutoff"], "3");
        assert!(o.report.provenance.contains_key("tool"));
    }

    #[test]
    fn bad_inputs_become_failing_reports() {
        assert!(!run(&["verify-hopf", "--preset", "nonesuch"]).report.passed());
        assert!(!run(&["proper", "--preset", "c-z"]).report.passed());
        assert!(!run(&["tau-transfer", "--preset", "c-z", "--cocycle", "eta-n", "--t", "1/2", "--s", "0"]).report.passed());
        assert!(!run(&["attempt", "--preset", "c-f2", "--cocycle", "complex"]).report.passed());
    }

    #[test]
    fn usage_errors_exit_two() {
        let code = main_with(["hopfcorr", "no-such-command"].map(std::ffi::OsString::from));
        assert_eq!(code, 2);
    }
}
