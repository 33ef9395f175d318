//! Suite settings from a `key = value` file and `--set key=value` overrides.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use extmeans::convexity::Region;
use extmeans::suite::SuiteConfig;
use extmeans::{Family, GeneratorPair64};

use crate::params::parse_number;

pub const KEYS: &[&str] = &[
    "seed",
    "samples",
    "grid_b",
    "region",
    "family",
    "step",
    "sign_tol",
    "midpoint_samples",
    "oracle_samples",
    "oracle_tol",
    "identity_samples",
    "continuity_samples",
    "probe_samples",
];

pub fn parse_region(text: &str) -> Result<Option<Region>> {
    match text {
        "pos" | "positive" => Ok(Some(Region::PositiveQuadrant)),
        "neg" | "negative" => Ok(Some(Region::NegativeQuadrant)),
        "both" => Ok(None),
        other => bail!("unknown region `{other}` (expected pos, neg or both)"),
    }
}

/// Family names as accepted on the command line; `F(r,s)` is also accepted
/// here so that config files can name four-parameter families inline.
pub fn parse_family(name: &str, r: Option<f64>, s: Option<f64>) -> Result<Family<f64>> {
    if let Some(inner) = name.strip_prefix("F(").and_then(|x| x.strip_suffix(')')) {
        let (r, s) = inner
            .split_once(',')
            .ok_or_else(|| anyhow!("expected F(r,s), got `{name}`"))?;
        return Ok(Family::FourParam(GeneratorPair64::new(
            parse_number(r)?,
            parse_number(s)?,
        )?));
    }
    let gp = match (r, s) {
        (Some(r), Some(s)) => Some(GeneratorPair64::new(r, s)?),
        (None, None) => None,
        _ => bail!("--r and --s must be given together"),
    };
    Ok(Family::from_name(name, gp)?)
}

fn integer(value: &str) -> Result<usize> {
    value.parse().map_err(|e| anyhow!("`{value}` is not a count: {e}"))
}

pub fn apply(cfg: &mut SuiteConfig, key: &str, value: &str) -> Result<()> {
    let value = value.trim();
    match key.trim() {
        "seed" => cfg.seed = value.parse().map_err(|e| anyhow!("`{value}` is not a seed: {e}"))?,
        "samples" => cfg.samples = integer(value)?,
        "grid_b" => cfg.grid_b = integer(value)?,
        "region" => cfg.region = parse_region(value)?,
        "family" => {
            cfg.family = if value == "all" {
                None
            } else {
                Some(parse_family(value, None, None)?)
            }
        }
        "step" => {
            cfg.hessian.step = if value == "auto" {
                None
            } else {
                Some(parse_number(value)?)
            }
        }
        "sign_tol" => cfg.hessian.sign_tol = parse_number(value)?,
        "midpoint_samples" => cfg.midpoint_samples = integer(value)?,
        "oracle_samples" => cfg.oracle_samples = integer(value)?,
        "oracle_tol" => cfg.oracle_tol = parse_number(value)?,
        "identity_samples" => cfg.identity_samples = integer(value)?,
        "continuity_samples" => cfg.continuity_samples = integer(value)?,
        "probe_samples" => cfg.probe_samples = integer(value)?,
        other => bail!("unknown setting `{other}`; known: {}", KEYS.join(", ")),
    }
    Ok(())
}

pub fn apply_pair(cfg: &mut SuiteConfig, pair: &str) -> Result<()> {
    let (k, v) = pair
        .split_once('=')
        .ok_or_else(|| anyhow!("expected key=value, got `{pair}`"))?;
    apply(cfg, k, v)
}

/// Applies every `key = value` line; blank lines and `#` comments are skipped.
pub fn apply_text(cfg: &mut SuiteConfig, text: &str) -> Result<()> {
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        apply_pair(cfg, line).with_context(|| format!("line {}", n + 1))?;
    }
    Ok(())
}

pub fn read_file(path: &Path) -> std::io::Result<String> {
    std::fs::read_to_string(path)
}
