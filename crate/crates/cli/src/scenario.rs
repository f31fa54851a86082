//! Scenario files: the input schema shared by every subcommand.

use kummer_core::fixlocus::FiberConfig;
use kummer_core::mukai::MukaiVector;
use kummer_core::reptheory::GaloisAction;
use kummer_core::surface::{canonical_model, SurfaceTorsionModel};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SCENARIO_VERSION: &str = "kummer-scenario/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceSpec {
    /// `canonical_model(n1, n2, N)` at the scenario level.
    Canonical { n1: i64, n2: i64 },
    Inline(SurfaceTorsionModel),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Obstructed,
    NoObstruction,
}

/// Second side of `cohomology compare`. Missing surface and vector default to
/// the dual model and the transformed vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OtherSide {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<MukaiVector>,
    pub action: GaloisAction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<MukaiVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<GaloisAction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<OtherSide>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<FiberConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_locus: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            version: SCENARIO_VERSION.to_string(),
            surface: None,
            vector: None,
            d: None,
            level: None,
            action: None,
            other: None,
            expect: None,
            tau: None,
            fibers: None,
            base_locus: None,
            checks: None,
        }
    }
}

#[derive(Debug)]
pub struct ParseError {
    pub source: String,
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: at `{}`: {}", self.source, self.path, self.message)
    }
}

impl Scenario {
    pub fn parse(text: &str, source: &str) -> Result<Scenario, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| ParseError {
            source: source.to_string(),
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        if scenario.version != SCENARIO_VERSION {
            return Err(ParseError {
                source: source.to_string(),
                path: "version".into(),
                message: format!("unrecognized version {:?}, expected {SCENARIO_VERSION:?}", scenario.version),
            });
        }
        Ok(scenario)
    }
}

/// Builds the model at `level`; inline models are reduced when the level is a divisor.
pub fn build_model(spec: Option<&SurfaceSpec>, level: u64) -> kummer_core::Result<SurfaceTorsionModel> {
    match spec {
        None => canonical_model(0, 0, level),
        Some(SurfaceSpec::Canonical { n1, n2 }) => canonical_model(*n1, *n2, level),
        Some(SurfaceSpec::Inline(m)) if m.level() == level => Ok(m.clone()),
        Some(SurfaceSpec::Inline(m)) => m.reduce(level),
    }
}
