use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::pipeline::PipelineReport;
use crate::efa::FactorSolution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Text,
    Json,
}

/// Write the report to `path`, or to standard output when `path` is `None`.
pub fn emit_report(report: &PipelineReport, format: ReportFormat, path: Option<&Path>) -> Result<()> {
    let mut body = match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => report.to_json()?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn f4(v: f64) -> String {
    format!("{v:.4}")
}

fn opt4(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".into(), f4)
}

fn heading(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n{title}\n{}", "-".repeat(title.len()));
}

/// Items ordered by factor, then by descending absolute loading; loadings
/// below the floor are left blank.
fn loading_table(out: &mut String, sol: &FactorSolution, assignment: &[usize], floor: f64) {
    let k = sol.retained;
    let width = sol.items.iter().map(String::len).max().unwrap_or(4).max(4);
    let _ = write!(out, "{:<width$}", "item");
    for f in 0..k {
        let _ = write!(out, " {:>8}", format!("F{}", f + 1));
    }
    let _ = writeln!(out, " {:>11}", "communality");
    let mut order: Vec<usize> = (0..sol.n_items()).collect();
    order.sort_by(|&a, &b| {
        let fa = assignment.get(a).copied().unwrap_or(usize::MAX);
        let fb = assignment.get(b).copied().unwrap_or(usize::MAX);
        fa.cmp(&fb)
            .then(sol.max_abs_loading(b).total_cmp(&sol.max_abs_loading(a)))
            .then(a.cmp(&b))
    });
    for i in order {
        let _ = write!(out, "{:<width$}", sol.items[i]);
        for f in 0..k {
            let l = sol.loadings[(i, f)];
            if l.abs() >= floor {
                let _ = write!(out, " {:>8}", f4(l));
            } else {
                let _ = write!(out, " {:>8}", "");
            }
        }
        let _ = writeln!(out, " {:>11}", f4(sol.communalities[i]));
    }
}

pub fn render_text(report: &PipelineReport) -> String {
    let mut out = String::new();
    let prov = &report.provenance;
    let cfg = &prov.config;
    let _ = writeln!(out, "{} {} survey validation report", prov.tool, prov.version);
    let _ = writeln!(out, "input digest (sha256): {}", prov.input_digest);
    let _ = writeln!(
        out,
        "respondents: {}  items: {}  rows dropped (incomplete): {}  seed: {}",
        prov.respondents,
        prov.input_items.len(),
        prov.rows_dropped,
        prov.seed
    );

    heading(&mut out, "Reliability");
    let rel = &report.reliability;
    let _ = writeln!(
        out,
        "Cronbach's alpha: {} ({} threshold {})",
        f4(rel.cronbach_alpha),
        if rel.alpha_acceptable { "meets" } else { "below" },
        cfg.alpha_threshold
    );
    let _ = writeln!(
        out,
        "KMO: {} ({} threshold {})",
        opt4(rel.kmo),
        if rel.kmo_acceptable { "meets" } else { "below" },
        cfg.kmo_threshold
    );
    match &rel.bartlett {
        Some(b) => {
            let _ = writeln!(out, "Bartlett's sphericity: chi2 = {}, df = {}", f4(b.chi2), b.df);
        }
        None => {
            let _ = writeln!(out, "Bartlett's sphericity: n/a, df = {}", rel.bartlett_df);
        }
    }

    heading(&mut out, "Item removal log");
    let removals = report
        .refinement
        .removals
        .iter()
        .map(|r| ("refinement", r.item.clone(), r.rule.to_string(), r.communality, r.max_loading))
        .chain(report.reconciliation.steps.iter().flat_map(|s| {
            std::iter::once(("reconciliation", s.removed.clone(), "discordant with IB".to_string(), f64::NAN, s.max_loading))
                .chain(s.refine_removals.iter().map(|r| {
                    ("reconciliation", r.item.clone(), r.rule.to_string(), r.communality, r.max_loading)
                }))
        }))
        .collect::<Vec<_>>();
    if removals.is_empty() {
        let _ = writeln!(out, "no items removed");
    } else {
        let _ = writeln!(out, "{:<4} {:<15} {:<10} {:<24} {:>11} {:>11}", "step", "stage", "item", "reason", "communality", "max loading");
        for (i, (stage, item, reason, h2, ml)) in removals.iter().enumerate() {
            let h2 = if h2.is_nan() { "".to_string() } else { f4(*h2) };
            let _ = writeln!(out, "{:<4} {:<15} {:<10} {:<24} {:>11} {:>11}", i + 1, stage, item, reason, h2, f4(*ml));
        }
    }
    let _ = writeln!(
        out,
        "final item count: {} of {}",
        report.final_items.len(),
        prov.input_items.len()
    );

    let sol = &report.factor_solution;
    if sol.retained == 0 {
        heading(&mut out, "Factors");
        let _ = writeln!(out, "no factors retained (degenerate retention)");
    } else {
        heading(&mut out, "Factor composition");
        for s in &report.factors {
            let _ = writeln!(
                out,
                "F{} ({} items, alpha {}): {}",
                s.factor + 1,
                s.items.len(),
                opt4(s.alpha),
                s.items.join(", ")
            );
        }

        let method = sol.rotation.map_or("unrotated".to_string(), |m| format!("{m:?}").to_lowercase());
        heading(&mut out, &format!("Rotated loadings ({method}, |loading| >= {})", cfg.loading_floor));
        loading_table(&mut out, sol, &report.diagnostics.assignment, cfg.loading_floor);

        if let Some(alt) = &report.alternate_rotation {
            let m = alt.rotation.map_or("unrotated".to_string(), |m| format!("{m:?}").to_lowercase());
            heading(&mut out, &format!("Alternate rotation ({m}, |loading| >= {})", cfg.loading_floor));
            loading_table(&mut out, alt, &alt.assignment(), cfg.loading_floor);
        }

        heading(&mut out, "Total variance explained");
        let _ = writeln!(
            out,
            "{:<6} {:>10} {:>10} {:>12} {:>12} {:>10}",
            "factor", "eigenvalue", "% var", "cumulative %", "rotated SS", "rotated %"
        );
        for s in &report.factors {
            let _ = writeln!(
                out,
                "F{:<5} {:>10} {:>10} {:>12} {:>12} {:>10}",
                s.factor + 1,
                f4(s.eigenvalue),
                f4(s.variance_pct),
                f4(s.cumulative_pct),
                f4(s.rotated_sum_of_squares),
                f4(s.rotated_variance_pct)
            );
        }
    }

    if !report.ib_runs.is_empty() {
        heading(&mut out, "Information Bottleneck clusters");
        for run in &report.ib_runs {
            let s = run.selected_solution();
            let _ = writeln!(
                out,
                "T = {}: beta = {}, I(X;T) = {}, I(T;Y) = {}, L = {}, sweeps = {}{}",
                run.t_count,
                run.selected_beta,
                f4(s.i_xt),
                f4(s.i_ty),
                f4(s.l_value),
                s.iterations,
                if s.converged { "" } else { " (not converged)" }
            );
            for t in 0..run.t_count {
                let members = run.partition.members(t);
                if !members.is_empty() {
                    let _ = writeln!(out, "  cluster {}: {}", t + 1, members.join(", "));
                }
            }
        }
    }

    if let Some(a) = &report.agreement {
        heading(&mut out, "EFA / IB agreement");
        let _ = writeln!(out, "pairwise (Rand) agreement: {}", f4(a.pairwise_agreement));
        let _ = writeln!(out, "exact match: {}", if a.exact_match { "yes" } else { "no" });
        let pairs: Vec<String> = a
            .matched_group_pairs
            .iter()
            .map(|(f, t)| format!("F{} <-> cluster {}", f + 1, t + 1))
            .collect();
        let _ = writeln!(out, "matched groups: {}", pairs.join("; "));
        if !a.discordant_items.is_empty() {
            let d: Vec<&str> = a.discordant_items.iter().map(String::as_str).collect();
            let _ = writeln!(out, "discordant items: {}", d.join(", "));
        }
        let _ = writeln!(
            out,
            "reconciliation: {} removal(s), stopped: {}",
            report.reconciliation.steps.len(),
            serde_json::to_value(report.reconciliation.stop)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        );
    }

    if !report.warnings.is_empty() {
        heading(&mut out, "Warnings");
        for w in &report.warnings {
            let _ = writeln!(out, "- {w}");
        }
    }
    out
}
