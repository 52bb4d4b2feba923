//! CSV ingestion, the combined analysis pipeline and report output.

mod config;
mod csv_io;
mod pipeline;
mod report;

pub use config::{PipelineConfig, RotationChoice, DEFAULT_BETAS};
pub use csv_io::{load_csv, read_csv, save_csv, write_csv, LoadedSurvey};
pub use pipeline::{
    input_digest, run_pipeline, FactorSummary, IbRun, PipelineReport, Provenance, ReconcileStep, ReconcileStop,
    Reconciliation, Refinement,
};
pub use report::{emit_report, render_text, ReportFormat};

/// Load a CSV and run the pipeline, recording dropped rows in the report.
pub fn analyze_file(path: &std::path::Path, config: &PipelineConfig) -> crate::Result<PipelineReport> {
    let survey = load_csv(path, config.scale()?)?;
    let mut report = run_pipeline(&survey.responses, config)?;
    report.provenance.rows_dropped = survey.rows_dropped;
    if survey.rows_dropped > 0 {
        report
            .warnings
            .push(format!("{} incomplete rows dropped (listwise deletion)", survey.rows_dropped));
    }
    Ok(report)
}
