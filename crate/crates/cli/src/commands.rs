//! The `verify`, `export`, `derive-dr` and `preset-suite` commands.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use sun2_core::faulhaber::FaulhaberError;
use sun2_core::sampling::{random_nonzero_scalar, rng};
use sun2_core::verifier::CheckStatus;
use sun2_core::{
    build_fock_rep, build_kind, check_algebra, check_fock_equivalence, check_quotient_equivalence,
    derive_dr, export_json, format_scalar, substitute_mode3, AlgebraSpec, DrTable,
    RealizationError, RealizationKind, RealizationSet, SpaceSpec, VerificationReport, VerifyError,
};
use thiserror::Error;

use crate::config::{parse_preset, ConfigError, Resolved};

/// Exit status contract.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_VACUOUS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

/// Number of `D_r` constants always derived, so that reports carry the full
/// comparison with the reference table.
pub const REPORTED_DR: usize = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Faulhaber(#[from] FaulhaberError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Realization(_) => EXIT_USAGE,
            CliError::Write { .. } => EXIT_IO,
            CliError::Verify(_) | CliError::Faulhaber(_) => EXIT_FAIL,
        }
    }
}

pub fn exit_code(status: CheckStatus) -> i32 {
    match status {
        CheckStatus::Passed => EXIT_PASS,
        CheckStatus::Failed => EXIT_FAIL,
        CheckStatus::Vacuous => EXIT_VACUOUS,
    }
}

pub fn dr_table(alg: &AlgebraSpec) -> Result<DrTable, FaulhaberError> {
    derive_dr(REPORTED_DR.max(alg.dr_limit().max(0) as usize))
}

pub fn build(cfg: &Resolved, dr: &DrTable) -> Result<RealizationSet, CliError> {
    let r = build_kind(&cfg.alg, &cfg.kind, &cfg.space, dr)?;
    Ok(match &cfg.subst {
        Some(f) => substitute_mode3(&r, f, dr)?,
        None => r,
    })
}

/// Relations plus the applicable equivalence check.
pub fn verify_realization(
    r: &RealizationSet,
    dr: &DrTable,
) -> Result<VerificationReport, CliError> {
    let mut report = check_algebra(r).with_dr(dr);
    if r.substitution.is_some() {
        return Ok(report);
    }
    match (&r.kind, r.kind.ideal()) {
        (RealizationKind::ThreeBoson, _) => {
            let f = build_fock_rep(&r.alg, &r.space)?;
            report.absorb(check_fock_equivalence(r, &f)?);
        }
        (_, Some(ideal)) => report.absorb(check_quotient_equivalence(r, ideal)?),
        _ => {}
    }
    Ok(report)
}

pub fn verify(cfg: &Resolved) -> Result<VerificationReport, CliError> {
    let dr = dr_table(&cfg.alg)?;
    let r = build(cfg, &dr)?;
    log::info!("verifying {} on caps {:?}", r.kind.name(), r.space.caps());
    verify_realization(&r, &dr)
}

pub fn export(cfg: &Resolved) -> Result<String, CliError> {
    let dr = dr_table(&cfg.alg)?;
    Ok(export_json(&build(cfg, &dr)?))
}

/// `r D_r` lines followed by one `DISCREPANCY` line per constant that differs
/// from its reference value.
pub fn derive_dr_text(rmax: usize) -> Result<String, CliError> {
    let dr = derive_dr(rmax)?;
    let mut out = String::new();
    for (r, v) in dr.values().iter().enumerate() {
        writeln!(out, "{r} {}", format_scalar(v)).unwrap();
    }
    for d in dr.discrepancies() {
        writeln!(
            out,
            "DISCREPANCY r={} derived={} reference={}",
            d.r,
            format_scalar(&d.derived),
            format_scalar(&d.reference)
        )
        .unwrap();
    }
    Ok(out)
}

pub const SUITE_PRESETS: [&str; 4] = ["su2", "su11", "higgs", "quadratic"];

/// Kinds and boxes run by the preset suite for an algebra of degree `n`.
pub fn suite_cases(
    n: u32,
    mut param: impl FnMut() -> sun2_core::ExactScalar,
) -> Vec<(RealizationKind, Vec<u32>)> {
    vec![
        (RealizationKind::ThreeBoson, vec![8, 8, 8 + 2 * n]),
        (RealizationKind::TwoBosonCentral(param()), vec![10, 10]),
        (RealizationKind::TwoBosonLowering(param()), vec![10, 10 + n]),
        (RealizationKind::SingleBoson(param()), vec![14]),
    ]
}

pub struct SuiteOutcome {
    pub summary: String,
    pub reports: Vec<VerificationReport>,
    pub status: CheckStatus,
}

/// Every preset across the four boson kinds, parameters drawn from `seed`.
pub fn preset_suite(seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut g = rng(seed);
    let mut summary = String::new();
    let mut reports = Vec::new();
    for name in SUITE_PRESETS {
        let alg = parse_preset(name)?;
        let dr = dr_table(&alg)?;
        for (kind, caps) in suite_cases(alg.degree() as u32, || random_nonzero_scalar(&mut g)) {
            let space = SpaceSpec::new(&caps).expect("suite caps are valid");
            let r = build_kind(&alg, &kind, &space, &dr)?;
            let report = verify_realization(&r, &dr)?;
            let param = kind
                .param()
                .map(format_scalar)
                .unwrap_or_else(|| "-".into());
            writeln!(
                summary,
                "{name} {} param={param} caps={caps:?} {}",
                kind.name(),
                status_word(report.status())
            )
            .unwrap();
            reports.push(report);
        }
    }
    let status = aggregate(reports.iter().map(VerificationReport::status));
    Ok(SuiteOutcome {
        summary,
        reports,
        status,
    })
}

pub fn status_word(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Passed => "passed",
        CheckStatus::Failed => "failed",
        CheckStatus::Vacuous => "vacuous",
    }
}

fn aggregate(statuses: impl Iterator<Item = CheckStatus>) -> CheckStatus {
    statuses.fold(CheckStatus::Passed, |acc, s| match (acc, s) {
        (CheckStatus::Failed, _) | (_, CheckStatus::Failed) => CheckStatus::Failed,
        (CheckStatus::Vacuous, _) | (_, CheckStatus::Vacuous) => CheckStatus::Vacuous,
        _ => CheckStatus::Passed,
    })
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let err = |source| CliError::Write {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}
