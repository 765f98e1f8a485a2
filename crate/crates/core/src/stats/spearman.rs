use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{IndicatorMatrix, MIN_ROWS};

/// Above this many observations significance uses the t approximation;
/// at or below it, the exact permutation distribution.
pub const EXACT_LIMIT: usize = 10;

/// 1-based ranks; tied values share the mean of their positions.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson correlation; `None` when either side is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelation {
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
    pub exact: bool,
}

/// Spearman's rho of two complete samples with a two-tailed p-value.
pub fn spearman_pair(x: &[f64], y: &[f64]) -> Option<PairCorrelation> {
    let n = x.len();
    if n != y.len() || n < MIN_ROWS {
        return None;
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let rho = pearson(&rx, &ry)?;
    let exact = n <= EXACT_LIMIT;
    let p_value = if exact {
        permutation_p(&rx, &ry)
    } else {
        t_test_p(rho, n)
    };
    Some(PairCorrelation {
        rho,
        p_value,
        n,
        exact,
    })
}

fn t_test_p(rho: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    if rho.abs() >= 1.0 {
        return 0.0;
    }
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

/// Share of all n! pairings of the rank vectors at least as extreme as the
/// observed one. With the margins fixed, rho is affine in sum(rx * ry), so
/// only that sum is tracked; Heap's algorithm changes two entries per step.
fn permutation_p(rx: &[f64], ry: &[f64]) -> f64 {
    let n = rx.len();
    let centre = rx.iter().sum::<f64>() * ry.iter().sum::<f64>() / n as f64;
    let dot = |y: &[f64]| rx.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let observed = (dot(ry) - centre).abs();
    let eps = 1e-9 * (1.0 + observed);
    let mut y = ry.to_vec();
    let mut s = dot(&y);
    let mut extreme = 0u64;
    let mut total = 0u64;
    let mut visit = |s: f64| {
        total += 1;
        if (s - centre).abs() >= observed - eps {
            extreme += 1;
        }
    };
    visit(s);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            s += (rx[j] - rx[i]) * (y[i] - y[j]);
            y.swap(i, j);
            visit(s);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    extreme as f64 / total as f64
}

/// Spearman matrix with significance flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub columns: Vec<String>,
    pub alpha: f64,
    /// `None` where fewer than three pairwise-complete rows exist or a side
    /// is constant.
    pub rho: Vec<Vec<Option<f64>>>,
    pub p_value: Vec<Vec<Option<f64>>>,
    pub significant: Vec<Vec<bool>>,
    /// Pairwise-complete row counts.
    pub n: Vec<Vec<usize>>,
    /// Columns constant over their non-missing values.
    pub degenerate: Vec<String>,
}

pub fn spearman(m: &IndicatorMatrix, alpha: f64) -> CorrelationResult {
    let k = m.columns.len();
    let cols: Vec<Vec<Option<f64>>> = (0..k).map(|j| m.column(j)).collect();
    let mut rho = vec![vec![None; k]; k];
    let mut p = vec![vec![None; k]; k];
    let mut sig = vec![vec![false; k]; k];
    let mut nn = vec![vec![0usize; k]; k];
    for i in 0..k {
        nn[i][i] = cols[i].iter().flatten().count();
        rho[i][i] = Some(1.0);
        p[i][i] = Some(0.0);
        for j in i + 1..k {
            let (x, y): (Vec<f64>, Vec<f64>) = cols[i]
                .iter()
                .zip(&cols[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .unzip();
            nn[i][j] = x.len();
            nn[j][i] = x.len();
            if let Some(c) = spearman_pair(&x, &y) {
                let s = c.p_value <= alpha;
                rho[i][j] = Some(c.rho);
                rho[j][i] = Some(c.rho);
                p[i][j] = Some(c.p_value);
                p[j][i] = Some(c.p_value);
                sig[i][j] = s;
                sig[j][i] = s;
            }
        }
    }
    let degenerate = (0..k)
        .filter(|&j| {
            let vals: Vec<f64> = cols[j].iter().flatten().copied().collect();
            vals.windows(2).all(|w| w[0] == w[1])
        })
        .map(|j| m.columns[j].clone())
        .collect();
    CorrelationResult {
        columns: m.columns.clone(),
        alpha,
        rho,
        p_value: p,
        significant: sig,
        n: nn,
        degenerate,
    }
}
