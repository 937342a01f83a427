//! Run configuration: a JSON document whose fields mirror the command-line
//! flags. Flags override file values field by field.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sun2_core::scalar::parse_scalar;
use sun2_core::{AlgebraSpec, ExactScalar, ModePolynomial, Preset, RealizationKind, SpaceSpec};
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 20251014;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid {field}: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subst: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text).map_err(|message| ConfigError::Parse {
            path: path.to_owned(),
            message,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Fields set in `top` replace those in `self`.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        RunConfig {
            preset: top.preset.or(self.preset),
            n: top.n.or(self.n),
            coeffs: top.coeffs.or(self.coeffs),
            kind: top.kind.or(self.kind),
            param: top.param.or(self.param),
            caps: top.caps.or(self.caps),
            subst: top.subst.or(self.subst),
            out: top.out.or(self.out),
            seed: top.seed.or(self.seed),
        }
    }

    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let alg = self.algebra()?;
        let kind = self.kind()?;
        let caps = self
            .caps
            .as_ref()
            .ok_or_else(|| invalid("caps", "missing"))?;
        if caps.len() != kind.modes() {
            return Err(invalid(
                "caps",
                format!(
                    "{} needs {} caps, got {}",
                    kind.name(),
                    kind.modes(),
                    caps.len()
                ),
            ));
        }
        let space = SpaceSpec::new(caps).map_err(|e| invalid("caps", e.to_string()))?;
        let subst = match &self.subst {
            None => None,
            Some(_) if kind != RealizationKind::ThreeBoson => {
                return Err(invalid("subst", "only applies to three_boson"))
            }
            Some(text) => Some(
                text.parse::<ModePolynomial>()
                    .map_err(|e| invalid("subst", e.to_string()))?,
            ),
        };
        Ok(Resolved {
            alg,
            kind,
            space,
            subst,
            out: self.out.clone(),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
        })
    }

    fn algebra(&self) -> Result<AlgebraSpec, ConfigError> {
        if let Some(name) = &self.preset {
            if self.n.is_some() || self.coeffs.is_some() {
                return Err(invalid("preset", "cannot be combined with n or coeffs"));
            }
            return parse_preset(name);
        }
        let texts = self
            .coeffs
            .as_ref()
            .ok_or_else(|| invalid("coeffs", "missing (or give a preset)"))?;
        let coeffs = texts
            .iter()
            .map(|t| parse_scalar(t).map_err(|e| invalid("coeffs", e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let n = match self.n {
            Some(n) => n,
            None if coeffs.is_empty() => return Err(invalid("coeffs", "empty list")),
            None => coeffs.len() - 1,
        };
        let field = if coeffs.len() == n + 1 { "coeffs" } else { "n" };
        AlgebraSpec::new(n, coeffs).map_err(|e| invalid(field, e.to_string()))
    }

    fn kind(&self) -> Result<RealizationKind, ConfigError> {
        let name = self
            .kind
            .as_deref()
            .ok_or_else(|| invalid("kind", "missing"))?;
        let param = self
            .param
            .as_deref()
            .map(|p| parse_scalar(p).map_err(|e| invalid("param", e.to_string())))
            .transpose()?;
        let needs = |param: Option<ExactScalar>| {
            param.ok_or_else(|| invalid("param", format!("{name} requires a parameter")))
        };
        let kind = match name {
            "fock3" => RealizationKind::Fock3,
            "three_boson" => RealizationKind::ThreeBoson,
            "two_boson_central" => RealizationKind::TwoBosonCentral(needs(param.clone())?),
            "two_boson_lowering" => RealizationKind::TwoBosonLowering(needs(param.clone())?),
            "single_boson" => RealizationKind::SingleBoson(needs(param.clone())?),
            other => return Err(invalid("kind", format!("unknown kind {other:?}"))),
        };
        if kind.param().is_none() && param.is_some() {
            return Err(invalid("param", format!("{name} takes no parameter")));
        }
        Ok(kind)
    }
}

/// `su2`, `su11`, `higgs[:c1,c3]` or `quadratic[:c0,c1,c2]`.
pub fn parse_preset(text: &str) -> Result<AlgebraSpec, ConfigError> {
    let (name, args) = match text.split_once(':') {
        Some((name, args)) => (name.trim(), Some(args)),
        None => (text.trim(), None),
    };
    let values = args
        .map(|a| parse_list(a).map_err(|e| invalid("preset", e)))
        .transpose()?;
    let take = |defaults: &[&str]| -> Result<Vec<ExactScalar>, ConfigError> {
        match &values {
            None => Ok(defaults.iter().map(|d| parse_scalar(d).unwrap()).collect()),
            Some(v) if v.len() == defaults.len() => Ok(v.clone()),
            Some(v) => Err(invalid(
                "preset",
                format!("{name} takes {} values, got {}", defaults.len(), v.len()),
            )),
        }
    };
    let preset = match name {
        "su2" | "su11" if values.is_some() => {
            return Err(invalid("preset", format!("{name} takes no values")))
        }
        "su2" => Preset::Su2,
        "su11" => Preset::Su11,
        "higgs" => {
            let v = take(&["2", "1/3"])?;
            Preset::Higgs {
                c1: v[0].clone(),
                c3: v[1].clone(),
            }
        }
        "quadratic" => {
            let v = take(&["1", "2", "1/2"])?;
            Preset::Quadratic {
                c0: v[0].clone(),
                c1: v[1].clone(),
                c2: v[2].clone(),
            }
        }
        other => return Err(invalid("preset", format!("unknown preset {other:?}"))),
    };
    AlgebraSpec::preset(preset).map_err(|e| invalid("preset", e.to_string()))
}

fn parse_list(text: &str) -> Result<Vec<ExactScalar>, String> {
    text.split(',')
        .map(|t| parse_scalar(t).map_err(|e| e.to_string()))
        .collect()
}

/// Validated configuration, ready to build from.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub alg: AlgebraSpec,
    pub kind: RealizationKind,
    pub space: SpaceSpec,
    pub subst: Option<ModePolynomial>,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use sun2_core::{int, ratio};

    fn base() -> RunConfig {
        RunConfig {
            preset: Some("su2".into()),
            kind: Some("three_boson".into()),
            caps: Some(vec![6, 6, 6]),
            ..RunConfig::default()
        }
    }

    fn field(err: ConfigError) -> &'static str {
        match err {
            ConfigError::Invalid { field, .. } => field,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn resolves_a_preset_run() {
        let r = base().resolve().unwrap();
        assert_eq!(r.alg, AlgebraSpec::su2());
        assert_eq!(r.kind, RealizationKind::ThreeBoson);
        assert_eq!(r.seed, DEFAULT_SEED);
    }

    #[test]
    fn parameter_required_iff_kind_is_parameterized() {
        let mut c = base();
        c.kind = Some("single_boson".into());
        c.caps = Some(vec![4]);
        assert_eq!(field(c.resolve().unwrap_err()), "param");
        c.param = Some("-1".into());
        assert_eq!(
            c.resolve().unwrap().kind,
            RealizationKind::SingleBoson(int(-1))
        );
        let mut d = base();
        d.param = Some("1".into());
        assert_eq!(field(d.resolve().unwrap_err()), "param");
    }

    #[test]
    fn caps_must_match_mode_count() {
        let mut c = base();
        c.caps = Some(vec![6, 6]);
        assert_eq!(field(c.resolve().unwrap_err()), "caps");
        c.kind = Some("two_boson_lowering".into());
        c.param = Some("1/2".into());
        assert_eq!(c.resolve().unwrap().space.caps(), &[6, 6]);
    }

    #[test]
    fn explicit_coefficients_and_errors() {
        let c = RunConfig {
            n: Some(2),
            coeffs: Some(vec!["0".into(), "1/2".into(), "3".into()]),
            kind: Some("fock3".into()),
            caps: Some(vec![2, 2, 2]),
            ..RunConfig::default()
        };
        assert_eq!(c.resolve().unwrap().alg.coeff(1), &ratio(1, 2));
        let mut bad = c.clone();
        bad.n = Some(3);
        assert_eq!(field(bad.resolve().unwrap_err()), "n");
        let mut bad = c.clone();
        bad.coeffs = Some(vec!["1".into(), "x".into(), "3".into()]);
        assert_eq!(field(bad.resolve().unwrap_err()), "coeffs");
        let mut bad = c.clone();
        bad.kind = Some("four_boson".into());
        assert_eq!(field(bad.resolve().unwrap_err()), "kind");
        let mut bad = c;
        bad.subst = Some("(1,0,1)".into());
        assert_eq!(field(bad.resolve().unwrap_err()), "subst");
    }

    #[test]
    fn presets_with_values() {
        assert_eq!(
            parse_preset("higgs").unwrap(),
            parse_preset("higgs:2,1/3").unwrap()
        );
        assert_eq!(
            parse_preset("quadratic:0,1,1").unwrap().coeffs(),
            &[int(0), int(1), int(1)]
        );
        assert!(parse_preset("higgs:1").is_err());
        assert!(parse_preset("su2:1").is_err());
        assert!(parse_preset("so3").is_err());
    }

    #[test]
    fn overlay_prefers_the_top_layer_and_json_round_trips() {
        let file = RunConfig::from_json(
            r#"{"preset":"su11","kind":"three_boson","caps":[4,4,4],"seed":3}"#,
        )
        .unwrap();
        let flags = RunConfig {
            preset: Some("su2".into()),
            ..RunConfig::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.preset.as_deref(), Some("su2"));
        assert_eq!(merged.seed, Some(3));
        let text = serde_json::to_string(&merged).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), merged);
        assert!(RunConfig::from_json(r#"{"kinds":"x"}"#).is_err());
    }
}
