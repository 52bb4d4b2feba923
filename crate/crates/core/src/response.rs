//! Raw survey responses: one row per respondent, one column per item.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive bounds of a Likert response scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LikertScale {
    pub min: i64,
    pub max: i64,
}

impl LikertScale {
    pub fn new(min: i64, max: i64) -> Result<Self> {
        if max <= min {
            return Err(Error::InvalidParameter(format!(
                "Likert max ({max}) must exceed min ({min})"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn contains(&self, value: i64) -> bool {
        value >= self.min && value <= self.max
    }

    pub fn categories(&self) -> usize {
        (self.max - self.min + 1) as usize
    }
}

impl Default for LikertScale {
    fn default() -> Self {
        Self { min: 1, max: 5 }
    }
}

/// n respondents × p items of integer Likert responses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseMatrix {
    items: Vec<String>,
    scale: LikertScale,
    n: usize,
    values: Vec<i64>,
}

impl ResponseMatrix {
    /// Builds a matrix from respondent rows, validating every cell against `scale`.
    pub fn new(items: Vec<String>, rows: Vec<Vec<i64>>, scale: LikertScale) -> Result<Self> {
        let p = items.len();
        if p == 0 {
            return Err(Error::TooFew {
                what: "items",
                required: 1,
                got: 0,
            });
        }
        let mut seen = std::collections::HashSet::new();
        for item in &items {
            if !seen.insert(item.as_str()) {
                return Err(Error::CsvDuplicateItem { item: item.clone() });
            }
        }
        let n = rows.len();
        let mut values = Vec::with_capacity(n * p);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != p {
                return Err(Error::Shape(format!(
                    "row {r} has {} values, expected {p}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if !scale.contains(v) {
                    return Err(Error::OutOfRange {
                        row: r,
                        item: items[j].clone(),
                        value: v,
                        min: scale.min,
                        max: scale.max,
                    });
                }
                values.push(v);
            }
        }
        Ok(Self {
            items,
            scale,
            n,
            values,
        })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn scale(&self) -> LikertScale {
        self.scale
    }

    pub fn n_respondents(&self) -> usize {
        self.n
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn value(&self, respondent: usize, item: usize) -> i64 {
        self.values[respondent * self.items.len() + item]
    }

    pub fn row(&self, respondent: usize) -> &[i64] {
        let p = self.items.len();
        &self.values[respondent * p..(respondent + 1) * p]
    }

    pub fn column(&self, item: usize) -> Vec<f64> {
        (0..self.n).map(|r| self.value(r, item) as f64).collect()
    }

    pub fn item_index(&self, id: &str) -> Option<usize> {
        self.items.iter().position(|s| s == id)
    }

    /// Keeps only the listed item columns, in the given order.
    pub fn select_items(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::TooFew {
                what: "items",
                required: 1,
                got: 0,
            });
        }
        if let Some(&bad) = keep.iter().find(|&&j| j >= self.n_items()) {
            return Err(Error::UnknownItem(format!("#{bad}")));
        }
        let items = keep.iter().map(|&j| self.items[j].clone()).collect();
        let mut values = Vec::with_capacity(self.n * keep.len());
        for r in 0..self.n {
            values.extend(keep.iter().map(|&j| self.value(r, j)));
        }
        Ok(Self {
            items,
            scale: self.scale,
            n: self.n,
            values,
        })
    }

    pub fn without_item(&self, id: &str) -> Result<Self> {
        let drop = self
            .item_index(id)
            .ok_or_else(|| Error::UnknownItem(id.to_string()))?;
        let keep: Vec<usize> = (0..self.n_items()).filter(|&j| j != drop).collect();
        self.select_items(&keep)
    }
}
