//! Synthetic Likert responses with planted orthogonal factor structure.
//!
//! Each respondent draws independent standard-normal factor scores. Item i
//! on factor f(i) with loading λ_i gets the continuous score
//!
//! ```text
//! z = λ_i·F_f(i) + √(1 − λ_i²)·U_i
//! y = (z + σ·E_i) / √(1 + σ²)
//! ```
//!
//! with unique part U and measurement noise E (σ = `noise_sd`), so y has
//! unit variance and same-factor items correlate at λ_iλ_j / (1 + σ²).
//! y is then cut at standard-normal quantiles into equally likely
//! categories.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::response::{LikertScale, ResponseMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedModel {
    pub factor_count: usize,
    /// Planted factor per item.
    pub assignment: Vec<usize>,
    pub primary_loading: f64,
    /// Per-item loadings; defaults to `primary_loading` everywhere.
    pub loadings: Vec<f64>,
    /// Optional second (factor, loading) per item; factors stay orthogonal.
    #[serde(default)]
    pub secondary: Vec<Option<(usize, f64)>>,
    pub noise_sd: f64,
    pub likert_min: i64,
    pub likert_max: i64,
    pub seed: u64,
}

impl PlantedModel {
    pub fn new(assignment: Vec<usize>, primary_loading: f64, seed: u64) -> Self {
        let factor_count = assignment.iter().max().map_or(0, |m| m + 1);
        let loadings = vec![primary_loading; assignment.len()];
        let secondary = vec![None; assignment.len()];
        Self {
            factor_count,
            assignment,
            primary_loading,
            loadings,
            secondary,
            noise_sd: 0.0,
            likert_min: 1,
            likert_max: 5,
            seed,
        }
    }

    /// Items dealt round-robin over `factor_count` factors.
    pub fn balanced(item_count: usize, factor_count: usize, primary_loading: f64, seed: u64) -> Self {
        let assignment = (0..item_count).map(|i| i % factor_count.max(1)).collect();
        let mut m = Self::new(assignment, primary_loading, seed);
        m.factor_count = factor_count;
        m
    }

    pub fn with_item_loading(mut self, item: usize, loading: f64) -> Self {
        self.loadings[item] = loading;
        self
    }

    pub fn with_cross_loading(mut self, item: usize, factor: usize, loading: f64) -> Self {
        self.secondary[item] = Some((factor, loading));
        self
    }

    pub fn with_noise(mut self, noise_sd: f64) -> Self {
        self.noise_sd = noise_sd;
        self
    }

    pub fn with_scale(mut self, scale: LikertScale) -> Self {
        self.likert_min = scale.min;
        self.likert_max = scale.max;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn item_count(&self) -> usize {
        self.assignment.len()
    }

    fn secondary_of(&self, item: usize) -> Option<(usize, f64)> {
        self.secondary.get(item).copied().flatten()
    }

    pub fn item_ids(&self) -> Vec<String> {
        (1..=self.item_count()).map(|i| format!("item{i}")).collect()
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::TooFew {
                what: "respondents",
                required: 2,
                got: n,
            });
        }
        if self.assignment.is_empty() {
            return Err(Error::InvalidParameter("model has no items".into()));
        }
        if self.loadings.len() != self.assignment.len() {
            return Err(Error::InvalidParameter("one loading per item required".into()));
        }
        if let Some(f) = self.assignment.iter().find(|&&f| f >= self.factor_count) {
            return Err(Error::InvalidParameter(format!(
                "item assigned to factor {f} of {}",
                self.factor_count
            )));
        }
        if !self.secondary.is_empty() && self.secondary.len() != self.assignment.len() {
            return Err(Error::InvalidParameter("one secondary entry per item required".into()));
        }
        for i in 0..self.item_count() {
            let (f2, l2) = self.secondary_of(i).unwrap_or((self.assignment[i], 0.0));
            if f2 >= self.factor_count || (f2 == self.assignment[i] && l2 != 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "item {i}: secondary factor {f2} must be another planted factor"
                )));
            }
            let common = self.loadings[i].powi(2) + l2 * l2;
            if common.is_nan() || common >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "item {i}: squared loadings sum to {common}, must stay below 1"
                )));
            }
        }
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return Err(Error::InvalidParameter(format!("noise_sd {}", self.noise_sd)));
        }
        LikertScale::new(self.likert_min, self.likert_max)?;
        Ok(())
    }

    /// Continuous unit-variance scores before discretization, n × p.
    pub fn generate_continuous(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        self.validate(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let scale = (1.0 + self.noise_sd * self.noise_sd).sqrt();
        let mut rows = Vec::with_capacity(n);
        let mut factors = vec![0.0; self.factor_count];
        for _ in 0..n {
            for f in factors.iter_mut() {
                *f = StandardNormal.sample(&mut rng);
            }
            let row = (0..self.item_count())
                .map(|i| {
                    let l = self.loadings[i];
                    let (f2, l2) = self.secondary_of(i).unwrap_or((0, 0.0));
                    let unique: f64 = StandardNormal.sample(&mut rng);
                    let noise: f64 = StandardNormal.sample(&mut rng);
                    let common = l * factors[self.assignment[i]] + l2 * factors[f2];
                    let u = (1.0 - l * l - l2 * l2).sqrt();
                    (common + u * unique + self.noise_sd * noise) / scale
                })
                .collect();
            rows.push(row);
        }
        Ok(rows)
    }

    /// Likert responses from equal-probability cuts of the continuous scores.
    pub fn generate(&self, n: usize) -> Result<ResponseMatrix> {
        let continuous = self.generate_continuous(n)?;
        let scale = LikertScale::new(self.likert_min, self.likert_max)?;
        let k = scale.categories();
        let normal = Normal::standard();
        let cuts: Vec<f64> = (1..k).map(|j| normal.inverse_cdf(j as f64 / k as f64)).collect();
        let rows = continuous
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|z| scale.min + cuts.iter().filter(|&&c| z > c).count() as i64)
                    .collect()
            })
            .collect();
        ResponseMatrix::new(self.item_ids(), rows, scale)
    }
}

/// A 20-item instrument shaped like a survey needing three refinement
/// steps: 17 clean items on three factors, one item loading weakly on the
/// first factor, and two items sharing a weak factor of their own.
///
/// Clean items are items 1–17 (round-robin over factors 0–2), item 18 is the
/// low-communality item and items 19–20 form the pair.
pub fn refinement_fixture(seed: u64) -> PlantedModel {
    let mut assignment: Vec<usize> = (0..17).map(|i| i % 3).collect();
    assignment.extend([0, 3, 3]);
    let mut model = PlantedModel::new(assignment, 0.85, seed);
    model.loadings[17] = 0.35;
    model.loadings[18] = 0.6;
    model.loadings[19] = 0.6;
    model
}

/// 17 items in three nested groups: items 1–11 on a broad factor, items
/// 12–14 on a second factor with a secondary loading on the broad one, and
/// items 15–17 on an isolated factor. Two clusters separate the isolated
/// group; three recover all groups.
pub fn nested_groups_fixture(seed: u64) -> PlantedModel {
    let mut assignment = vec![0usize; 11];
    assignment.extend([1, 1, 1, 2, 2, 2]);
    let mut model = PlantedModel::new(assignment, 0.7, seed);
    for i in 11..14 {
        model.loadings[i] = 0.6;
        model.secondary[i] = Some((0, 0.5));
    }
    for i in 14..17 {
        model.loadings[i] = 0.8;
    }
    model
}
