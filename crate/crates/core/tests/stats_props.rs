mod common;

use domainscope::stats::{
    average_ranks, pca_from_correlation, pca_varimax, spearman, spearman_pair, varimax,
    varimax_criterion, IndicatorMatrix,
};
use proptest::prelude::*;

fn tied_sample() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((0i32..12, -50i32..50), 11..40).prop_map(|v| {
        v.into_iter()
            .map(|(a, b)| (f64::from(a), f64::from(b) / 4.0))
            .unzip()
    })
}

fn loadings(p: usize, k: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-0.95f64..0.95, k), p)
}

proptest! {
    #[test]
    fn rho_matches_rank_then_pearson((x, y) in tied_sample()) {
        let oracle = common::rank_pearson(&x, &y);
        match spearman_pair(&x, &y) {
            Some(r) => prop_assert!((r.rho - oracle).abs() < 1e-12),
            None => prop_assert!(oracle.is_nan()),
        }
    }

    #[test]
    fn rho_is_invariant_under_monotone_maps((x, y) in tied_sample()) {
        let fx: Vec<f64> = x.iter().map(|v| (v * 0.3).exp() + 2.0).collect();
        let gy: Vec<f64> = y.iter().map(|v| v.powi(3) - 7.0).collect();
        let a = spearman_pair(&x, &y).map(|r| r.rho);
        let b = spearman_pair(&fx, &gy).map(|r| r.rho);
        match (a, b) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-12),
            (None, None) => {}
            _ => prop_assert!(false, "definedness changed"),
        }
    }

    #[test]
    fn ranks_sum_to_triangular(xs in prop::collection::vec(0i32..6, 1..30)) {
        let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        let n = xs.len() as f64;
        prop_assert!((average_ranks(&xs).iter().sum::<f64>() - n * (n + 1.0) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn correlation_matrix_is_symmetric(cols in prop::collection::vec(prop::collection::vec(-100i32..100, 12), 2..5)) {
        let names: Vec<String> = (0..cols.len()).map(|i| format!("c{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let cols: Vec<Vec<f64>> = cols.into_iter().map(|c| c.into_iter().map(f64::from).collect()).collect();
        let r = spearman(&IndicatorMatrix::from_columns(&refs, &cols).unwrap(), 0.01);
        for i in 0..cols.len() {
            for j in 0..cols.len() {
                prop_assert_eq!(r.rho[i][j], r.rho[j][i]);
                prop_assert_eq!(r.n[i][j], 12);
            }
        }
    }

    #[test]
    fn varimax_preserves_communalities(l in loadings(6, 2)) {
        let v = varimax(&l);
        for (a, b) in l.iter().zip(&v.rotated) {
            let h = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
            prop_assert!((h(a) - h(b)).abs() < 1e-9);
        }
        prop_assert!(v.criterion >= varimax_criterion(&l) - 1e-12);
    }

    #[test]
    fn varimax_rotation_is_orthogonal(l in loadings(7, 3)) {
        let r = varimax(&l).rotation;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                prop_assert!((dot - f64::from(u8::from(i == j))).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn full_rank_loadings_reconstruct_the_correlation(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = common::rng(seed);
        let cols: Vec<Vec<f64>> = (0..5).map(|_| (0..20).map(|_| rng.random_range(-10.0..10.0)).collect()).collect();
        let names = ["a", "b", "c", "d", "e"];
        let m = IndicatorMatrix::from_columns(&names, &cols).unwrap();
        let p = pca_varimax(&m, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let r: f64 = (0..5).map(|k| p.loadings[i][k] * p.loadings[j][k]).sum();
                prop_assert!((r - p.correlation[i][j]).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn perfect_monotone_is_exactly_one() {
    let x: Vec<f64> = (0..30).map(f64::from).collect();
    let up: Vec<f64> = x.iter().map(|v| v * v).collect();
    let down: Vec<f64> = x.iter().map(|v| -v).collect();
    assert_eq!(spearman_pair(&x, &up).unwrap().rho, 1.0);
    assert_eq!(spearman_pair(&x, &down).unwrap().rho, -1.0);
}

#[test]
fn identity_correlation_keeps_column_order() {
    let names: Vec<String> = (0..4).map(|i| format!("v{i}")).collect();
    let id: Vec<Vec<f64>> = (0..4)
        .map(|i| (0..4).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    let p = pca_from_correlation(&names, &id, 4).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert!((p.loadings[i][j].abs() - f64::from(u8::from(i == j))).abs() < 1e-12);
        }
    }
}
