//! Loads the bundled JSON spec files and reports entropy and mixing for each.
//!
//! `cargo run --example spec_files`

use gapshift::dynamics::is_mixing;
use gapshift::entropy::{solve_entropy, SolverConfig};
use gapshift::spec_file::SpecFile;

fn main() -> gapshift::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).expect("specs directory").flatten().map(|e| e.path()).collect();
    paths.sort();
    for path in paths {
        let file = SpecFile::load(&path)?;
        let spec = file.to_shift_spec()?;
        let cfg = SolverConfig::with_tol(file.solver().tol.unwrap_or(1e-12));
        let e = solve_entropy(&spec, &cfg)?;
        let v = is_mixing(&spec, 1000)?;
        println!(
            "{:<22} h = {:.10}  {:?}",
            path.file_stem().unwrap().to_string_lossy(),
            e.h_mid(),
            v.status
        );
    }
    Ok(())
}
