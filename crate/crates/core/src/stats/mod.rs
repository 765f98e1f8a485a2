//! Rank correlation and principal components over an indicator matrix.
//!
//! Spearman uses pairwise-complete rows; PCA uses listwise-complete rows.

mod pca;
mod spearman;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use pca::{
    jacobi_eigen, pca_from_correlation, pca_varimax, varimax, varimax_criterion, PcaResult, Varimax,
};
pub use spearman::{
    average_ranks, pearson, spearman, spearman_pair, CorrelationResult, PairCorrelation,
};

/// Fewest rows any statistic is computed on.
pub const MIN_ROWS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("need at least {needed} complete rows, have {got}")]
    TooFewRows { needed: usize, got: usize },
    #[error("correlation matrix not computable: column {0} is constant")]
    SingularMatrix(String),
    #[error("cannot extract {k} components from {columns} columns")]
    InvalidComponents { k: usize, columns: usize },
}

/// Rows are hosts, columns indicators; `None` is a missing value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorMatrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl IndicatorMatrix {
    pub fn new(
        rows: Vec<String>,
        columns: Vec<String>,
        values: Vec<Vec<Option<f64>>>,
    ) -> Result<Self, StatsError> {
        if values.len() != rows.len() {
            return Err(StatsError::Shape(format!(
                "{} row ids for {} rows",
                rows.len(),
                values.len()
            )));
        }
        if let Some((i, r)) = values
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != columns.len())
        {
            return Err(StatsError::Shape(format!(
                "row {i} has {} values, expected {}",
                r.len(),
                columns.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = columns.iter().find(|c| !seen.insert(*c)) {
            return Err(StatsError::Shape(format!("duplicate column {dup}")));
        }
        if values.iter().flatten().flatten().any(|v| !v.is_finite()) {
            return Err(StatsError::Shape("non-finite value".into()));
        }
        Ok(IndicatorMatrix {
            rows,
            columns,
            values,
        })
    }

    /// Builds a complete matrix from columns of plain numbers.
    pub fn from_columns(names: &[&str], cols: &[Vec<f64>]) -> Result<Self, StatsError> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(StatsError::Shape("columns differ in length".into()));
        }
        Self::new(
            (0..n).map(|i| format!("r{i}")).collect(),
            names.iter().map(|s| s.to_string()).collect(),
            (0..n)
                .map(|i| cols.iter().map(|c| Some(c[i])).collect())
                .collect(),
        )
    }

    pub fn column(&self, j: usize) -> Vec<Option<f64>> {
        self.values.iter().map(|r| r[j]).collect()
    }

    /// Rows with no missing value.
    pub fn complete_rows(&self) -> Vec<Vec<f64>> {
        self.values
            .iter()
            .filter_map(|r| r.iter().copied().collect::<Option<Vec<f64>>>())
            .collect()
    }
}
