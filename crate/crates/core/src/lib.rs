//! Likert survey validation by exploratory factor analysis and Information
//! Bottleneck clustering.
//!
//! The usual flow is [`reliability::assess`] → [`efa::refine`] →
//! [`ib::beta_sweep`] → [`agreement::compare`]; [`cli::run_pipeline`] chains
//! them and builds a [`cli::PipelineReport`].

pub mod agreement;
pub mod cli;
pub mod efa;
pub mod error;
pub mod ib;
pub mod numerics;
pub mod reliability;
pub mod response;
pub mod synth;

pub use error::{Error, Result};
pub use numerics::Matrix;
pub use response::{LikertScale, ResponseMatrix};
