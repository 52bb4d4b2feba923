use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::correlation_matrix;
use crate::response::ResponseMatrix;

use super::{
    diagnose, extract, retain, rotate, DiagnosticThresholds, FactorSolution, ItemDiagnostics,
    RetentionRule, RotationMethod, RotationOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefineConfig {
    pub retention: RetentionRule,
    pub rotation: RotationMethod,
    pub rotation_options: RotationOptions,
    pub thresholds: DiagnosticThresholds,
    /// Refinement never removes an item that would leave fewer than this many.
    pub item_floor: usize,
}

impl Default for RefineConfig {
    fn default() -> Self {
        Self {
            retention: RetentionRule::Kaiser,
            rotation: RotationMethod::Varimax,
            rotation_options: RotationOptions::default(),
            thresholds: DiagnosticThresholds::default(),
            item_floor: 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalRule {
    LowCommunality,
    UnderpopulatedFactor,
    CrossLoading,
    WeakLoading,
}

impl std::fmt::Display for RemovalRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RemovalRule::LowCommunality => "low communality",
            RemovalRule::UnderpopulatedFactor => "underpopulated factor",
            RemovalRule::CrossLoading => "cross-loading",
            RemovalRule::WeakLoading => "weak loading",
        })
    }
}

/// One entry of the removal log, with the statistics seen when the item was dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Removal {
    pub item: String,
    pub rule: RemovalRule,
    pub communality: f64,
    pub max_loading: f64,
    pub factor: usize,
    pub factor_size: usize,
    pub items_before: usize,
    pub retained_before: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefineStatus {
    /// Diagnostics came back clean.
    Converged,
    /// Retention kept no factors.
    DegenerateRetention,
    /// A further removal would go below the item floor.
    ItemFloorReached,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefineOutcome {
    pub status: RefineStatus,
    /// Final rotated solution (unrotated when fewer than two factors were kept).
    pub solution: FactorSolution,
    /// The same retained factors before rotation.
    pub unrotated: FactorSolution,
    pub diagnostics: ItemDiagnostics,
    pub removals: Vec<Removal>,
    pub passes: usize,
}

/// Extract, retain, rotate and diagnose repeatedly, dropping one flagged item
/// per pass until the diagnostics are clean.
///
/// Removal priority: lowest communality below the cutoff, then the weakest
/// member of the smallest underpopulated factor, then the weakest cross-loader,
/// then the weakest item below the loading floor.
pub fn refine(responses: &ResponseMatrix, config: &RefineConfig) -> Result<RefineOutcome> {
    if responses.n_items() < 4 {
        return Err(Error::TooFew {
            what: "items for refinement",
            required: 4,
            got: responses.n_items(),
        });
    }
    let mut current = responses.clone();
    let mut removals = Vec::new();
    let mut passes = 0;
    loop {
        passes += 1;
        let corr = correlation_matrix(&current)?;
        let full = extract(&corr, current.items())?;
        let k = retain(&full.eigenvalues, config.retention)?;
        let unrotated = full.truncate(k);
        if k == 0 {
            let diagnostics = ItemDiagnostics::default();
            return Ok(RefineOutcome {
                status: RefineStatus::DegenerateRetention,
                solution: unrotated.clone(),
                unrotated,
                diagnostics,
                removals,
                passes,
            });
        }
        let solution = rotate(&unrotated, config.rotation, config.rotation_options)?;
        let diagnostics = diagnose(&solution, &config.thresholds);
        let Some((index, rule)) = pick_removal(&solution, &diagnostics, &config.thresholds) else {
            return Ok(RefineOutcome {
                status: RefineStatus::Converged,
                solution,
                unrotated,
                diagnostics,
                removals,
                passes,
            });
        };
        if current.n_items() <= config.item_floor {
            return Ok(RefineOutcome {
                status: RefineStatus::ItemFloorReached,
                solution,
                unrotated,
                diagnostics,
                removals,
                passes,
            });
        }
        let factor = diagnostics.assignment[index];
        let item = solution.items[index].clone();
        removals.push(Removal {
            item: item.clone(),
            rule,
            communality: solution.communalities[index],
            max_loading: solution.max_abs_loading(index),
            factor,
            factor_size: diagnostics.factor_sizes[factor],
            items_before: current.n_items(),
            retained_before: k,
        });
        current = current.without_item(&item)?;
    }
}

fn pick_removal(
    solution: &FactorSolution,
    diag: &ItemDiagnostics,
    thresholds: &DiagnosticThresholds,
) -> Option<(usize, RemovalRule)> {
    let p = solution.items.len();
    let weakest = |candidates: &mut dyn Iterator<Item = usize>, key: &dyn Fn(usize) -> f64| {
        candidates.fold(None, |best: Option<usize>, i| match best {
            Some(b) if key(b) <= key(i) => Some(b),
            _ => Some(i),
        })
    };
    let max_loading = |i: usize| solution.max_abs_loading(i);

    if !diag.low_communality.is_empty() {
        let mut it = (0..p).filter(|&i| diag.low_communality.contains(&solution.items[i]));
        if let Some(i) = weakest(&mut it, &|i| solution.communalities[i]) {
            return Some((i, RemovalRule::LowCommunality));
        }
    }
    if !diag.underpopulated_factor_members.is_empty() {
        let smallest = (0..diag.factor_sizes.len())
            .filter(|&f| {
                diag.factor_sizes[f] > 0 && diag.factor_sizes[f] < thresholds.min_items_per_factor
            })
            .min_by_key(|&f| (diag.factor_sizes[f], f));
        if let Some(f) = smallest {
            let mut it = (0..p).filter(|&i| diag.assignment[i] == f);
            if let Some(i) = weakest(&mut it, &max_loading) {
                return Some((i, RemovalRule::UnderpopulatedFactor));
            }
        }
    }
    if !diag.cross_loading.is_empty() {
        let mut it = (0..p).filter(|&i| diag.cross_loading.contains(&solution.items[i]));
        if let Some(i) = weakest(&mut it, &max_loading) {
            return Some((i, RemovalRule::CrossLoading));
        }
    }
    if !diag.weak_loading.is_empty() {
        let mut it = (0..p).filter(|&i| diag.weak_loading.contains(&solution.items[i]));
        if let Some(i) = weakest(&mut it, &max_loading) {
            return Some((i, RemovalRule::WeakLoading));
        }
    }
    None
}
