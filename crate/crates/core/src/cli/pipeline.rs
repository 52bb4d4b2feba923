use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::PipelineConfig;
use crate::agreement::{self, AgreementReport};
use crate::efa::{self, FactorSolution, ItemDiagnostics, RefineOutcome, RefineStatus, Removal};
use crate::error::{Error, Result};
use crate::ib::{self, IbSolution, Partition};
use crate::reliability::{self, ReliabilityReport};
use crate::response::ResponseMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config: PipelineConfig,
    /// SHA-256 over item identifiers, scale and responses.
    pub input_digest: String,
    pub respondents: usize,
    pub input_items: Vec<String>,
    /// Incomplete rows removed by listwise deletion before analysis.
    pub rows_dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub status: RefineStatus,
    pub passes: usize,
    pub removals: Vec<Removal>,
}

/// One row of the factor summary: composition, reliability and variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub factor: usize,
    pub items: Vec<String>,
    /// Cronbach's alpha of the factor's items; absent with fewer than two.
    pub alpha: Option<f64>,
    pub eigenvalue: f64,
    pub variance_pct: f64,
    pub cumulative_pct: f64,
    pub rotated_sum_of_squares: f64,
    pub rotated_variance_pct: f64,
}

/// All β solutions at one cluster count, with the selected one marked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IbRun {
    pub t_count: usize,
    pub selected: usize,
    pub selected_beta: f64,
    pub partition: Partition,
    pub solutions: Vec<IbSolution>,
}

impl IbRun {
    pub fn selected_solution(&self) -> &IbSolution {
        &self.solutions[self.selected]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconcileStep {
    pub removed: String,
    pub max_loading: f64,
    pub pairwise_agreement_before: f64,
    /// Items the follow-up refinement removed in addition.
    pub refine_removals: Vec<Removal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReconcileStop {
    ExactMatch,
    Disabled,
    ItemFloor,
    DegenerateRetention,
    /// No factors were retained, so there was nothing to compare.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconciliation {
    pub steps: Vec<ReconcileStep>,
    pub stop: ReconcileStop,
    /// Agreement before any reconciliation removal.
    pub initial_agreement: Option<AgreementReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub provenance: Provenance,
    pub reliability: ReliabilityReport,
    pub refinement: Refinement,
    pub final_items: Vec<String>,
    pub factor_solution: FactorSolution,
    pub unrotated_solution: FactorSolution,
    pub alternate_rotation: Option<FactorSolution>,
    pub diagnostics: ItemDiagnostics,
    pub factors: Vec<FactorSummary>,
    pub factor_partition: Option<Partition>,
    pub ib_runs: Vec<IbRun>,
    pub agreement: Option<AgreementReport>,
    pub reconciliation: Reconciliation,
    pub warnings: Vec<String>,
}

impl PipelineReport {
    pub fn retained(&self) -> usize {
        self.factor_solution.retained
    }

    /// The IB run whose cluster count equals the retained factor count.
    pub fn matching_ib_run(&self) -> Option<&IbRun> {
        self.ib_runs.iter().find(|r| r.t_count == self.retained())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn input_digest(responses: &ResponseMatrix) -> String {
    let mut h = Sha256::new();
    for item in responses.items() {
        h.update(item.as_bytes());
        h.update([0x1f]);
    }
    let scale = responses.scale();
    h.update(scale.min.to_le_bytes());
    h.update(scale.max.to_le_bytes());
    for r in 0..responses.n_respondents() {
        for v in responses.row(r) {
            h.update(v.to_le_bytes());
        }
    }
    format!("{:x}", h.finalize())
}

fn keep_items(responses: &ResponseMatrix, items: &[String]) -> Result<ResponseMatrix> {
    let idx = items
        .iter()
        .map(|id| responses.item_index(id).ok_or_else(|| Error::UnknownItem(id.clone())))
        .collect::<Result<Vec<_>>>()?;
    responses.select_items(&idx)
}

fn ib_run(responses: &ResponseMatrix, t_count: usize, config: &PipelineConfig) -> Result<IbRun> {
    let joint = ib::build_joint(responses)?;
    let sweep = ib::beta_sweep(&joint, t_count, &config.betas, config.seed, config.restarts)?;
    let selected = ib::select_beta(&sweep);
    let partition = ib::hard_partition(&sweep[selected].1);
    Ok(IbRun {
        t_count,
        selected,
        selected_beta: sweep[selected].0,
        partition,
        solutions: sweep.into_iter().map(|(_, s)| s).collect(),
    })
}

fn factor_partition(outcome: &RefineOutcome) -> Result<Partition> {
    Partition::from_assignment(
        &outcome.solution.items,
        &outcome.diagnostics.assignment,
        outcome.solution.retained,
    )
}

fn factor_summaries(responses: &ResponseMatrix, outcome: &RefineOutcome) -> Result<Vec<FactorSummary>> {
    let sol = &outcome.solution;
    let k = sol.retained;
    let p = sol.n_items() as f64;
    let ss = sol.column_sums_of_squares();
    let assignment = &outcome.diagnostics.assignment;
    (0..k)
        .map(|f| {
            let members: Vec<usize> = (0..sol.n_items()).filter(|&i| assignment.get(i) == Some(&f)).collect();
            let alpha = if members.len() >= 2 {
                Some(reliability::cronbach_alpha(responses, &members)?)
            } else {
                None
            };
            Ok(FactorSummary {
                factor: f,
                items: members.iter().map(|&i| sol.items[i].clone()).collect(),
                alpha,
                eigenvalue: sol.eigenvalues[f],
                variance_pct: sol.variance_pct[f],
                cumulative_pct: sol.cumulative_pct[f],
                rotated_sum_of_squares: ss[f],
                rotated_variance_pct: 100.0 * ss[f] / p,
            })
        })
        .collect()
}

/// Reliability → refinement → IB sweep → agreement, then optional
/// reconciliation that drops discordant items one at a time.
pub fn run_pipeline(responses: &ResponseMatrix, config: &PipelineConfig) -> Result<PipelineReport> {
    config.validate().map_err(|e| e.in_stage("config"))?;
    let mut warnings = Vec::new();

    let reliability = reliability::assess(responses, config.alpha_threshold, config.kmo_threshold)
        .map_err(|e| e.in_stage("reliability"))?;
    warnings.extend(reliability.warnings.iter().cloned());

    let refine_config = config.refine_config();
    let initial = efa::refine(responses, &refine_config).map_err(|e| e.in_stage("factor analysis"))?;
    let refinement = Refinement {
        status: initial.status,
        passes: initial.passes,
        removals: initial.removals.clone(),
    };
    if initial.status == RefineStatus::ItemFloorReached {
        warnings.push(format!(
            "refinement stopped at the item floor of {} with flagged items remaining",
            config.item_floor
        ));
    }

    let mut outcome = initial;
    let mut current = keep_items(responses, &outcome.solution.items)?;
    let mut steps = Vec::new();
    let mut initial_agreement = None;
    let mut agreement = None;
    let mut matching_run = None;

    let stop = if outcome.status == RefineStatus::DegenerateRetention {
        warnings.push("no factors retained; IB comparison skipped".into());
        ReconcileStop::NotApplicable
    } else {
        loop {
            let k = outcome.solution.retained;
            let run = ib_run(&current, k, config).map_err(|e| e.in_stage("information bottleneck"))?;
            let report = agreement::compare(&factor_partition(&outcome)?, &run.partition)
                .map_err(|e| e.in_stage("agreement"))?;
            initial_agreement.get_or_insert_with(|| report.clone());
            let exact = report.exact_match;
            let pairwise = report.pairwise_agreement;
            let discordant = report.discordant_items.clone();
            agreement = Some(report);
            matching_run = Some(run);
            if exact {
                break ReconcileStop::ExactMatch;
            }
            if !config.reconcile {
                break ReconcileStop::Disabled;
            }
            if current.n_items() <= config.item_floor {
                warnings.push(format!(
                    "reconciliation stopped at the item floor of {} with discordant items remaining",
                    config.item_floor
                ));
                break ReconcileStop::ItemFloor;
            }
            let sol = &outcome.solution;
            let (removed, max_loading) = discordant
                .iter()
                .map(|id| {
                    let i = sol.items.iter().position(|x| x == id).expect("discordant item in solution");
                    (id.clone(), sol.max_abs_loading(i))
                })
                .fold(None::<(String, f64)>, |best, cand| match best {
                    Some(b) if b.1 <= cand.1 => Some(b),
                    _ => Some(cand),
                })
                .expect("inexact agreement has discordant items");
            let reduced = current.without_item(&removed)?;
            let next = efa::refine(&reduced, &refine_config).map_err(|e| e.in_stage("reconciliation"))?;
            if next.status == RefineStatus::DegenerateRetention {
                warnings.push(format!(
                    "reconciliation stopped: removing '{removed}' leaves no retained factors"
                ));
                break ReconcileStop::DegenerateRetention;
            }
            steps.push(ReconcileStep {
                removed,
                max_loading,
                pairwise_agreement_before: pairwise,
                refine_removals: next.removals.clone(),
            });
            current = keep_items(&reduced, &next.solution.items)?;
            outcome = next;
        }
    };

    let mut ib_runs = Vec::new();
    if let Some(matching) = matching_run {
        let k = outcome.solution.retained;
        let mut t_max = config.t_max.unwrap_or(k + 1);
        if t_max > current.n_items() {
            warnings.push(format!(
                "IB cluster range capped at {} items (requested {t_max})",
                current.n_items()
            ));
            t_max = current.n_items();
        }
        let mut matching = Some(matching);
        for t in 1..=t_max.max(k) {
            if t == k {
                ib_runs.push(matching.take().expect("matching run used once"));
            } else {
                ib_runs.push(ib_run(&current, t, config).map_err(|e| e.in_stage("information bottleneck"))?);
            }
        }
    }

    let alternate_rotation = match (config.rotation.secondary(), outcome.solution.retained) {
        (Some(method), k) if k > 0 => Some(
            efa::rotate(
                &outcome.unrotated,
                method,
                refine_config.rotation_options,
            )
            .map_err(|e| e.in_stage("factor analysis"))?,
        ),
        _ => None,
    };
    let factors = factor_summaries(&current, &outcome)?;
    let factor_partition = if outcome.solution.retained > 0 {
        Some(factor_partition(&outcome)?)
    } else {
        None
    };

    Ok(PipelineReport {
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: config.seed,
            config: config.clone(),
            input_digest: input_digest(responses),
            respondents: responses.n_respondents(),
            input_items: responses.items().to_vec(),
            rows_dropped: 0,
        },
        reliability,
        refinement,
        final_items: outcome.solution.items.clone(),
        factor_solution: outcome.solution,
        unrotated_solution: outcome.unrotated,
        alternate_rotation,
        diagnostics: outcome.diagnostics,
        factors,
        factor_partition,
        ib_runs,
        agreement,
        reconciliation: Reconciliation {
            steps,
            stop,
            initial_agreement,
        },
        warnings,
    })
}
