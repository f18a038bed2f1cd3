//! Theory versus search over every coefficient multiset with a small sum,
//! written as the semicolon-separated report.
//!
//! Run with `cargo run --release --example verification_sweep [s_max]`.

use rado::sweep::{run_sweep, summarise, write_csv, ConstantRange, SweepSpec};

fn main() -> rado::Result<()> {
    let s_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let spec = SweepSpec::new(s_max, 4, ConstantRange::Scaled);
    let rows = run_sweep(&spec)?;
    write_csv(&rows, std::io::stdout().lock())?;
    let s = summarise(&rows);
    eprintln!("{} rows: {} agree, {} disagree, {} unknown", s.rows, s.agree, s.disagree, s.unknown);
    Ok(())
}
