//! Rank correlations with significance marks, then PCA with varimax rotation.

use domainscope::report::fmt_correlation;
use domainscope::stats::{pca_varimax, spearman, IndicatorMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Small deterministic sample: two correlated impact figures, one network
    // figure and noise.
    let n = 24;
    let pco: Vec<f64> = (0..n)
        .map(|i| (i as f64 * 1.7).exp().ln() + (i % 5) as f64)
        .collect();
    let alexa: Vec<f64> = pco
        .iter()
        .enumerate()
        .map(|(i, v)| v * 2.0 + (i % 3) as f64)
        .collect();
    let ind: Vec<f64> = (0..n).map(|i| ((i * 7) % 11) as f64).collect();
    let eve: Vec<f64> = ind
        .iter()
        .enumerate()
        .map(|(i, v)| v / 10.0 + ((i * 3) % 4) as f64 * 0.05)
        .collect();
    let m =
        IndicatorMatrix::from_columns(&["Pco", "Alexa", "InD", "Eve"], &[pco, alexa, ind, eve])?;

    let c = spearman(&m, 0.01);
    println!(
        "{:>6} {}",
        "",
        c.columns
            .iter()
            .map(|s| format!("{s:>7}"))
            .collect::<String>()
    );
    for (i, name) in c.columns.iter().enumerate() {
        let cells: String = (0..c.columns.len())
            .map(|j| {
                format!(
                    "{:>7}",
                    fmt_correlation(c.rho[i][j], i != j && c.significant[i][j])
                )
            })
            .collect();
        println!("{name:>6} {cells}");
    }

    let p = pca_varimax(&m, 2)?;
    println!(
        "eigenvalues {:?}",
        p.eigenvalues
            .iter()
            .map(|v| format!("{v:.3}"))
            .collect::<Vec<_>>()
    );
    println!(
        "explained   {:?}",
        p.explained
            .iter()
            .map(|v| format!("{v:.3}"))
            .collect::<Vec<_>>()
    );
    for (i, name) in p.columns.iter().enumerate() {
        println!(
            "{name:>6} PC {:>7.3} {:>7.3}   rotated {:>7.3} {:>7.3}",
            p.loadings[i][0], p.loadings[i][1], p.rotated[i][0], p.rotated[i][1]
        );
    }
    Ok(())
}
