//! DIMACS export for instances beyond in-process search: the four-colour
//! Schur problem on [1, 44] (satisfiable) and [1, 45] (unsatisfiable).
//!
//! Run with `cargo run --release --example cnf_export [out-dir]`; hand the
//! files to any SAT solver.

use std::path::PathBuf;

use rado::search::{export_cnf, parse_dimacs};
use rado::Equation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let schur = Equation::new(vec![1, 1], 0)?;
    for n in [44, 45] {
        let cnf = export_cnf(&schur, n, 4)?;
        let text = cnf.to_dimacs();
        // the reader is strict, so a round trip doubles as a syntax check
        assert_eq!(parse_dimacs(&text)?, cnf);
        let path = dir.join(format!("schur4_{n}.cnf"));
        std::fs::write(&path, text)?;
        println!("{}: {} variables, {} clauses", path.display(), cnf.num_vars, cnf.clauses.len());
    }

    let small = export_cnf(&schur, 4, 2)?;
    println!("\ntwo colours on [1, 4]:\n{}", small.to_dimacs());
    Ok(())
}
