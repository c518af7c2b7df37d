//! Runs the bundled configuration and prints the summary table.

use std::path::Path;

use hilbert_jackson::runner::{run_config, summary_table, Overrides};

fn main() -> hilbert_jackson::Result<()> {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/classical_constants.toml");
    let out = std::env::temp_dir().join("hilbert-jackson-example");
    let outcome = run_config(
        &config,
        &Overrides {
            out: Some(out),
            ..Default::default()
        },
    )?;
    let rows: Vec<_> = outcome.outputs.iter().map(|o| o.row.clone()).collect();
    print!("{}", summary_table(&rows));
    println!("records: {}", outcome.records_path.display());
    std::process::exit(outcome.exit_code());
}
