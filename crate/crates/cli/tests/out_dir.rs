//! Kept in its own test binary: it sets a process-wide environment variable.

use cuspidal_cli::{run_command, OUT_DIR_ENV};

#[test]
fn relative_outputs_go_to_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(OUT_DIR_ENV, dir.path());
    let mut out = Vec::new();
    let code = run_command(
        [
            "cuspidal", "synthesize", "--kind", "euclid-cusp", "--f", "1",
            "--samples", "11", "--out", "figs/canonical.csv", "--svg", "figs/canonical.svg",
        ],
        &mut out,
    )
    .unwrap();
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(dir.path().join("figs/canonical.csv").exists());
    assert!(dir.path().join("figs/canonical.svg").exists());
}
