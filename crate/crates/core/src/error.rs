use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is singular (pivot {pivot:e} at column {column})")]
    Singular { column: usize, pivot: f64 },

    #[error("near-singular correlation matrix; near-dependent items: {}", .items.join(", "))]
    Multicollinear { items: Vec<String> },

    #[error("item '{item}' has zero variance")]
    ZeroVariance { item: String },

    #[error("need at least {required} {what}, got {got}")]
    TooFew {
        what: &'static str,
        required: usize,
        got: usize,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("sample too small for Bartlett's test: n = {n} must exceed p = {p}")]
    SampleTooSmall { n: usize, p: usize },

    #[error("response {value} at row {row}, item '{item}' outside Likert range [{min}, {max}]")]
    OutOfRange {
        row: usize,
        item: String,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown item '{0}'")]
    UnknownItem(String),

    #[error("partitions cover different items; symmetric difference: {}", .items.join(", "))]
    ItemSetMismatch { items: Vec<String> },

    #[error("line {line}: cell '{cell}' in column '{item}' is not an integer")]
    CsvNotInteger { line: u64, item: String, cell: String },

    #[error("line {line}: value {value} in column '{item}' outside [{min}, {max}]")]
    CsvOutOfRange {
        line: u64,
        item: String,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("duplicate item identifier '{item}' in header")]
    CsvDuplicateItem { item: String },

    #[error("no usable rows in input ({dropped} rows dropped for missing values)")]
    CsvNoRows { dropped: usize },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
