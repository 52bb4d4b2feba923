use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use likert_efa::cli::{self, PipelineConfig, ReportFormat, RotationChoice};
use likert_efa::efa::RetentionRule;
use likert_efa::synth::{self, PlantedModel};
use likert_efa::LikertScale;

#[derive(Parser)]
#[command(name = "likert-efa", version, about = "Likert survey validation: reliability, EFA and IB clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a survey CSV.
    Analyze(Box<AnalyzeArgs>),
    /// Write synthetic responses with planted factor structure as CSV.
    Synth(SynthArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Survey CSV: header of item ids, one respondent per row.
    input: PathBuf,
    /// JSON config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the machine-readable report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the text report to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    likert_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    likert_max: Option<i64>,
    #[arg(long)]
    alpha_threshold: Option<f64>,
    #[arg(long)]
    kmo_threshold: Option<f64>,
    #[arg(long)]
    loading_floor: Option<f64>,
    #[arg(long)]
    communality_cutoff: Option<f64>,
    #[arg(long)]
    min_items_per_factor: Option<usize>,
    #[arg(long, value_enum)]
    retention: Option<RetentionArg>,
    #[arg(long, value_enum)]
    rotation: Option<RotationArg>,
    /// Largest IB cluster count (default: retained factors + 1).
    #[arg(long)]
    t_max: Option<usize>,
    /// Ascending comma-separated β schedule.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    betas: Option<Vec<f64>>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    item_floor: Option<usize>,
    /// Skip removal of items on which EFA and IB disagree.
    #[arg(long)]
    no_reconcile: bool,
    /// Disable Kaiser row normalization during rotation.
    #[arg(long)]
    no_kaiser_normalize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RetentionArg {
    Kaiser,
    Scree,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum RotationArg {
    Varimax,
    Quartimax,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    /// Items dealt round-robin over `--factors` factors.
    Balanced,
    /// 20 items: 17 clean on three factors plus three defective ones.
    Refinement,
    /// 17 items in three nested groups.
    Nested,
}

#[derive(Args)]
struct SynthArgs {
    /// Destination CSV.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "balanced")]
    fixture: Fixture,
    #[arg(long, default_value_t = 17)]
    items: usize,
    #[arg(long, default_value_t = 3)]
    factors: usize,
    #[arg(long, default_value_t = 0.7)]
    loading: f64,
    #[arg(long, default_value_t = 202)]
    respondents: usize,
    #[arg(long, default_value_t = 0.0)]
    noise_sd: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    likert_min: i64,
    #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
    likert_max: i64,
}

fn build_config(a: &AnalyzeArgs) -> likert_efa::Result<PipelineConfig> {
    let mut c = match &a.config {
        Some(path) => PipelineConfig::from_json_file(path)?,
        None => PipelineConfig::default(),
    };
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = a.$field.clone() { c.$field = v; } )* };
    }
    set!(
        likert_min,
        likert_max,
        alpha_threshold,
        kmo_threshold,
        loading_floor,
        communality_cutoff,
        min_items_per_factor,
        betas,
        restarts,
        seed,
        item_floor
    );
    if a.t_max.is_some() {
        c.t_max = a.t_max;
    }
    if let Some(r) = a.retention {
        c.retention = match r {
            RetentionArg::Kaiser => RetentionRule::Kaiser,
            RetentionArg::Scree => RetentionRule::Scree,
            RetentionArg::Both => RetentionRule::Both,
        };
    }
    if let Some(r) = a.rotation {
        c.rotation = match r {
            RotationArg::Varimax => RotationChoice::Varimax,
            RotationArg::Quartimax => RotationChoice::Quartimax,
            RotationArg::Both => RotationChoice::Both,
        };
    }
    if a.no_reconcile {
        c.reconcile = false;
    }
    if a.no_kaiser_normalize {
        c.kaiser_normalize = false;
    }
    c.validate()?;
    Ok(c)
}

fn analyze(a: &AnalyzeArgs) -> likert_efa::Result<()> {
    let config = build_config(a)?;
    let report = cli::analyze_file(&a.input, &config)?;
    if let Some(path) = &a.json {
        cli::emit_report(&report, ReportFormat::Json, Some(path))?;
    }
    cli::emit_report(&report, ReportFormat::Text, a.output.as_deref())
}

fn synth(a: &SynthArgs) -> likert_efa::Result<()> {
    let model: PlantedModel = match a.fixture {
        Fixture::Balanced => PlantedModel::balanced(a.items, a.factors, a.loading, a.seed),
        Fixture::Refinement => synth::refinement_fixture(a.seed),
        Fixture::Nested => synth::nested_groups_fixture(a.seed),
    };
    let model = model
        .with_noise(a.noise_sd)
        .with_scale(LikertScale::new(a.likert_min, a.likert_max)?);
    let responses = model.generate(a.respondents)?;
    cli::save_csv(&responses, &a.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
