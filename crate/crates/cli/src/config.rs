//! Run configuration: an optional TOML file whose keys mirror the long
//! flags, overridden by flags given on the command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gaq::constants::Constants;
use gaq::poly::parse_rational;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub catalog: Option<String>,
    pub algebra: Option<PathBuf>,
    pub order: Option<u32>,
    pub closed_form: Option<bool>,
    pub seed: Option<u64>,
    pub fields: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub toggles: Option<String>,
    pub mode: Option<String>,
    pub method: Option<String>,
    pub line4: Option<String>,
    pub x: Option<[f64; 3]>,
    pub v: Option<[f64; 3]>,
    pub phase: Option<f64>,
    pub t0: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub kappas: Option<Vec<f64>>,
    pub speed_cap: Option<f64>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub constants: BTreeMap<String, toml::Value>,
}

impl RunConfig {
    /// Reads `path`; relative paths inside are taken from its directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading config {}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.algebra, &mut cfg.fields, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

fn value_text(v: &toml::Value) -> Result<String, String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        // the shortest round-trip decimal is exact as a rational
        toml::Value::Float(f) => Ok(format!("{f:e}")),
        other => Err(format!("expected a number or a fraction string, got {other}")),
    }
}

/// `name=value` pairs separated by commas, or a path to a TOML file of
/// such pairs. `g=mc` is accepted.
fn constant_pairs(spec: &str) -> Result<Vec<(String, String)>, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading constants {}: {e}", path.display())))?;
        let table: BTreeMap<String, toml::Value> =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("constants {}: {e}", path.display())))?;
        return table
            .iter()
            .map(|(k, v)| value_text(v).map(|t| (k.clone(), t)).map_err(|e| CliError::Usage(format!("{k}: {e}"))))
            .collect();
    }
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Usage(format!("constants: expected name=value, got {p:?}")))
        })
        .collect()
}

/// Defaults, then the config table, then `--constants`, then `--kappa` and
/// `--g`. Unless `g` is given, it follows `m c`.
pub fn resolve_constants(
    cfg: &RunConfig,
    flag: Option<&str>,
    kappa: Option<&str>,
    g: Option<&str>,
) -> Result<Constants, CliError> {
    let mut pairs = Vec::new();
    for (k, v) in &cfg.constants {
        pairs.push((k.clone(), value_text(v).map_err(|e| CliError::Usage(format!("constants.{k}: {e}")))?));
    }
    if let Some(spec) = flag {
        pairs.extend(constant_pairs(spec)?);
    }
    if let Some(k) = kappa {
        pairs.push(("kappa".into(), k.to_string()));
    }
    if let Some(g) = g {
        pairs.push(("g".into(), g.to_string()));
    }
    let mut k = Constants::default();
    let mut g_mc = true;
    for (name, value) in pairs {
        if name == "g" {
            g_mc = value == "mc";
            if g_mc {
                continue;
            }
        }
        let r = parse_rational(&value).map_err(|e| CliError::Usage(format!("constant {name}: {e}")))?;
        k.set(&name, r).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if g_mc {
        k = k.with_g_mc();
    }
    k.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(k)
}

/// `1,2,3` as three numbers.
pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}"))).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|p: Vec<f64>| format!("expected 3 components, got {}", p.len()))
}

/// A comma-separated list of numbers, possibly empty.
#[derive(Debug, Clone, PartialEq)]
pub struct List(pub Vec<f64>);

pub fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}")))
        .collect::<Result<_, _>>()
        .map(List)
}

/// `name=value`.
pub fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("bad number {v:?}"))?;
    Ok((k.trim().to_string(), v))
}
