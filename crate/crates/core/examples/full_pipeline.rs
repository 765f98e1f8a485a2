//! The whole fixture pipeline through the command-line entry point, twice.
//! The second run is served entirely from the cache.

use std::fs;
use std::path::Path;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let registry = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ibex.toml");
    let out = std::env::temp_dir().join("domainscope-example");
    let _ = fs::remove_dir_all(&out);
    let argv = |_| {
        [
            "domainscope",
            "pipeline",
            "--registry",
            registry.to_str().expect("utf-8 path"),
            "--out",
            out.to_str().expect("utf-8 path"),
        ]
    };
    for run in 1..=2 {
        let code = domainscope::cli::run(argv(run));
        let manifest: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out.join("manifest.json"))?)?;
        println!(
            "run {run}: exit {code}, backend calls {}",
            manifest["backend_calls"]
        );
    }
    print!("{}", fs::read_to_string(out.join("report/summary.txt"))?);
    println!("report written under {}", out.join("report").display());
    Ok(())
}
