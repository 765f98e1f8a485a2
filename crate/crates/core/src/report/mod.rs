//! Report tables, graph exports and the machine-readable summary.

mod analysis;
mod render;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

pub use analysis::{
    best_performers, contribution_table, BestPerformerTally, ContributionRow, OrgWinners,
    ReportError, TIE_POLICY,
};
pub use render::{
    fmt_correlation, fmt_count, fmt_real, render_report, ReportInput, CORRELATION_CORNER,
    CORRELATION_DECIMALS, METRIC_DECIMALS, MISSING, PCA_CORNER, PERCENT_DECIMALS,
};

/// Writes rendered files under `out`. A previous `report/` directory is
/// replaced so no stale file survives.
pub fn write_report(out: &Path, files: &BTreeMap<String, String>) -> io::Result<()> {
    let report_dir = out.join("report");
    if report_dir.exists() {
        fs::remove_dir_all(&report_dir)?;
    }
    for (rel, body) in files {
        let path = out.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, body)?;
    }
    Ok(())
}
