use serde::{Deserialize, Serialize};

use super::{IndicatorMatrix, StatsError, MIN_ROWS};

const JACOBI_MAX_SWEEPS: usize = 100;
const VARIMAX_TOL: f64 = 1e-10;
const VARIMAX_MAX_SWEEPS: usize = 1000;

type Mat = Vec<Vec<f64>>;

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order and the matching eigenvectors as
/// columns.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Mat) {
    let n = a.len();
    let mut a: Mat = a.to_vec();
    let mut v: Mat = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let scale: f64 = a
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n)
        .map(|r| order.iter().map(|&i| v[r][i]).collect())
        .collect();
    (values, vectors)
}

/// Flips each column so its largest-magnitude entry is positive. Returns the
/// signs applied.
fn fix_signs(m: &mut [Vec<f64>], cols: usize) -> Vec<f64> {
    (0..cols)
        .map(|j| {
            let lead =
                m.iter().map(|r| r[j]).fold(
                    0.0,
                    |best: f64, x| if x.abs() > best.abs() { x } else { best },
                );
            let s = if lead < 0.0 { -1.0 } else { 1.0 };
            for r in m.iter_mut() {
                r[j] *= s;
            }
            s
        })
        .collect()
}

/// Varimax criterion: the summed variance of squared loadings per column.
pub fn varimax_criterion(l: &[Vec<f64>]) -> f64 {
    let p = l.len() as f64;
    let k = l.first().map_or(0, Vec::len);
    (0..k)
        .map(|j| {
            let sq: Vec<f64> = l.iter().map(|r| r[j] * r[j]).collect();
            let mean = sq.iter().sum::<f64>() / p;
            sq.iter().map(|s| s * s).sum::<f64>() / p - mean * mean
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Varimax {
    pub rotated: Mat,
    /// Orthogonal k by k matrix with `rotated = loadings * rotation`.
    pub rotation: Mat,
    pub criterion: f64,
    pub sweeps: usize,
}

/// Raw varimax by successive planar rotations of column pairs, each at its
/// closed-form optimal angle, until a sweep gains less than 1e-10.
pub fn varimax(loadings: &[Vec<f64>]) -> Varimax {
    let p = loadings.len();
    let k = loadings.first().map_or(0, Vec::len);
    let mut l: Mat = loadings.to_vec();
    let mut r: Mat = (0..k)
        .map(|i| (0..k).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let mut crit = varimax_criterion(&l);
    let mut sweeps = 0;
    while k >= 2 && sweeps < VARIMAX_MAX_SWEEPS {
        sweeps += 1;
        for a in 0..k {
            for b in a + 1..k {
                let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
                for row in &l {
                    let (x, y) = (row[a], row[b]);
                    let u = x * x - y * y;
                    let v = 2.0 * x * y;
                    sa += u;
                    sb += v;
                    sc += u * u - v * v;
                    sd += 2.0 * u * v;
                }
                let pf = p as f64;
                let num = sd - 2.0 * sa * sb / pf;
                let den = sc - (sa * sa - sb * sb) / pf;
                let phi = num.atan2(den) / 4.0;
                if phi.abs() < 1e-15 {
                    continue;
                }
                let (c, s) = (phi.cos(), phi.sin());
                for row in l.iter_mut().chain(r.iter_mut()) {
                    let (x, y) = (row[a], row[b]);
                    row[a] = c * x + s * y;
                    row[b] = -s * x + c * y;
                }
            }
        }
        let next = varimax_criterion(&l);
        let gain = next - crit;
        crit = next;
        if gain < VARIMAX_TOL {
            break;
        }
    }
    Varimax {
        rotated: l,
        rotation: r,
        criterion: crit,
        sweeps,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaResult {
    pub columns: Vec<String>,
    /// Complete rows the correlation matrix was computed from.
    pub rows_used: usize,
    pub correlation: Mat,
    /// All eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Share of total variance for each of the k retained components.
    pub explained: Vec<f64>,
    /// Columns by components; eigenvectors scaled by the root eigenvalue.
    pub loadings: Mat,
    pub rotated: Mat,
    pub rotation: Mat,
}

/// Pearson correlation matrix of the complete rows (n - 1 denominators).
fn correlation(columns: &[String], rows: &[Vec<f64>]) -> Result<Mat, StatsError> {
    let n = rows.len();
    let k = columns.len();
    let means: Vec<f64> = (0..k)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    let sds: Vec<f64> = (0..k)
        .map(|j| {
            (rows.iter().map(|r| (r[j] - means[j]).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        })
        .collect();
    if let Some(j) = (0..k).find(|&j| sds[j] == 0.0) {
        return Err(StatsError::SingularMatrix(columns[j].clone()));
    }
    let z: Mat = rows
        .iter()
        .map(|r| (0..k).map(|j| (r[j] - means[j]) / sds[j]).collect())
        .collect();
    Ok((0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    if a == b {
                        1.0
                    } else {
                        (z.iter().map(|r| r[a] * r[b]).sum::<f64>() / (n - 1) as f64)
                            .clamp(-1.0, 1.0)
                    }
                })
                .collect()
        })
        .collect())
}

pub fn pca_varimax(m: &IndicatorMatrix, k: usize) -> Result<PcaResult, StatsError> {
    let rows = m.complete_rows();
    if rows.len() < MIN_ROWS {
        return Err(StatsError::TooFewRows {
            needed: MIN_ROWS,
            got: rows.len(),
        });
    }
    let corr = correlation(&m.columns, &rows)?;
    let mut res = pca_from_correlation(&m.columns, &corr, k)?;
    res.rows_used = rows.len();
    Ok(res)
}

/// PCA of a given correlation matrix.
pub fn pca_from_correlation(
    columns: &[String],
    corr: &[Vec<f64>],
    k: usize,
) -> Result<PcaResult, StatsError> {
    let p = columns.len();
    if corr.len() != p || corr.iter().any(|r| r.len() != p) {
        return Err(StatsError::Shape(
            "correlation matrix does not match the columns".into(),
        ));
    }
    if k == 0 || k > p {
        return Err(StatsError::InvalidComponents { k, columns: p });
    }
    let (values, vectors) = jacobi_eigen(corr);
    let mut loadings: Mat = (0..p)
        .map(|i| {
            (0..k)
                .map(|j| vectors[i][j] * values[j].max(0.0).sqrt())
                .collect()
        })
        .collect();
    fix_signs(&mut loadings, k);
    let trace: f64 = (0..p).map(|i| corr[i][i]).sum();
    let explained = values[..k].iter().map(|v| v.max(0.0) / trace).collect();
    let Varimax {
        mut rotated,
        mut rotation,
        ..
    } = varimax(&loadings);
    let signs = fix_signs(&mut rotated, k);
    for row in rotation.iter_mut() {
        for (x, s) in row.iter_mut().zip(&signs) {
            *x *= s;
        }
    }
    Ok(PcaResult {
        columns: columns.to_vec(),
        rows_used: 0,
        correlation: corr.to_vec(),
        eigenvalues: values,
        explained,
        loadings,
        rotated,
        rotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_two_by_two() {
        let (vals, vecs) = jacobi_eigen(&[vec![1.0, 0.5], vec![0.5, 1.0]]);
        assert!((vals[0] - 1.5).abs() < 1e-14 && (vals[1] - 0.5).abs() < 1e-14);
        let h = 0.5f64.sqrt();
        assert!((vecs[0][0].abs() - h).abs() < 1e-14);
    }

    #[test]
    fn collinear_columns() {
        let m = IndicatorMatrix::from_columns(
            &["a", "b"],
            &[vec![1.0, 2.0, 3.0, 5.0], vec![2.0, 4.0, 6.0, 10.0]],
        )
        .unwrap();
        let r = pca_varimax(&m, 1).unwrap();
        assert!((r.explained[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn identity_is_left_alone() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let id: Mat = (0..3)
            .map(|i| (0..3).map(|j| f64::from(u8::from(i == j))).collect())
            .collect();
        let r = pca_from_correlation(&names, &id, 3).unwrap();
        assert_eq!(r.eigenvalues, [1.0, 1.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.rotated[i][j].abs() - id[i][j]).abs() < 1e-12);
                assert!((r.loadings[i][j] - id[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn errors() {
        let m =
            IndicatorMatrix::from_columns(&["a", "b"], &[vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0]])
                .unwrap();
        assert_eq!(
            pca_varimax(&m, 1),
            Err(StatsError::SingularMatrix("a".into()))
        );
        let m =
            IndicatorMatrix::from_columns(&["a", "b"], &[vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert!(matches!(
            pca_varimax(&m, 1),
            Err(StatsError::TooFewRows { .. })
        ));
        let m =
            IndicatorMatrix::from_columns(&["a", "b"], &[vec![1.0, 2.0, 4.0], vec![1.0, 5.0, 3.0]])
                .unwrap();
        assert!(matches!(
            pca_varimax(&m, 3),
            Err(StatsError::InvalidComponents { .. })
        ));
    }
}
