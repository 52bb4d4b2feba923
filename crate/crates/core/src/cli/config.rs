use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::efa::{DiagnosticThresholds, RefineConfig, RetentionRule, RotationMethod, RotationOptions};
use crate::error::{Error, Result};
use crate::response::LikertScale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RotationChoice {
    Varimax,
    Quartimax,
    /// Refine with varimax, also report quartimax from the same unrotated solution.
    #[default]
    Both,
}

impl RotationChoice {
    pub fn primary(self) -> RotationMethod {
        match self {
            RotationChoice::Quartimax => RotationMethod::Quartimax,
            _ => RotationMethod::Varimax,
        }
    }

    pub fn secondary(self) -> Option<RotationMethod> {
        match self {
            RotationChoice::Both => Some(RotationMethod::Quartimax),
            _ => None,
        }
    }
}

impl std::str::FromStr for RotationChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "varimax" => Ok(Self::Varimax),
            "quartimax" => Ok(Self::Quartimax),
            "both" => Ok(Self::Both),
            other => Err(Error::InvalidParameter(format!("rotation '{other}'"))),
        }
    }
}

pub const DEFAULT_BETAS: [f64; 10] = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0];

/// Everything the pipeline needs. Missing fields in a config file take the
/// defaults below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub likert_min: i64,
    pub likert_max: i64,
    pub alpha_threshold: f64,
    pub kmo_threshold: f64,
    pub loading_floor: f64,
    pub communality_cutoff: f64,
    pub min_items_per_factor: usize,
    pub retention: RetentionRule,
    pub rotation: RotationChoice,
    pub kaiser_normalize: bool,
    /// Largest IB cluster count; `None` means retained factors + 1.
    pub t_max: Option<usize>,
    pub betas: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
    pub item_floor: usize,
    /// Remove EFA/IB-discordant items one at a time until the partitions agree.
    pub reconcile: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            likert_min: 1,
            likert_max: 5,
            alpha_threshold: 0.7,
            kmo_threshold: 0.8,
            loading_floor: 0.4,
            communality_cutoff: 0.5,
            min_items_per_factor: 3,
            retention: RetentionRule::Kaiser,
            rotation: RotationChoice::Both,
            kaiser_normalize: true,
            t_max: None,
            betas: DEFAULT_BETAS.to_vec(),
            restarts: 10,
            seed: 0,
            item_floor: 6,
            reconcile: true,
        }
    }
}

impl PipelineConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn scale(&self) -> Result<LikertScale> {
        LikertScale::new(self.likert_min, self.likert_max)
    }

    pub fn validate(&self) -> Result<()> {
        self.scale()?;
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} = {v} must lie in [0, 1]")))
            }
        };
        unit("loading floor", self.loading_floor)?;
        unit("communality cutoff", self.communality_cutoff)?;
        unit("KMO threshold", self.kmo_threshold)?;
        if self.alpha_threshold.is_nan() || self.alpha_threshold > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "alpha threshold {} must not exceed 1",
                self.alpha_threshold
            )));
        }
        if self.min_items_per_factor == 0 {
            return Err(Error::InvalidParameter("min items per factor must be >= 1".into()));
        }
        if self.t_max == Some(0) {
            return Err(Error::InvalidParameter("t-max must be >= 1".into()));
        }
        if self.betas.is_empty() || self.betas.iter().any(|b| !(*b >= 0.0 && b.is_finite())) {
            return Err(Error::InvalidParameter(
                "betas must be a non-empty list of finite values >= 0".into(),
            ));
        }
        if self.betas.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter("betas must be ascending".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if self.item_floor < 2 {
            return Err(Error::InvalidParameter("item floor must be >= 2".into()));
        }
        Ok(())
    }

    pub fn thresholds(&self) -> DiagnosticThresholds {
        DiagnosticThresholds {
            communality_cutoff: self.communality_cutoff,
            loading_floor: self.loading_floor,
            min_items_per_factor: self.min_items_per_factor,
            cross_loading: self.loading_floor,
        }
    }

    pub fn refine_config(&self) -> RefineConfig {
        RefineConfig {
            retention: self.retention,
            rotation: self.rotation.primary(),
            rotation_options: RotationOptions {
                kaiser_normalize: self.kaiser_normalize,
            },
            thresholds: self.thresholds(),
            item_floor: self.item_floor,
        }
    }
}
