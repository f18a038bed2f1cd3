//! Schur numbers s(1), s(2), s(3) by exhaustive search, with the valid
//! colouring that shows each value is not one smaller.
//!
//! Run with `cargo run --release --example schur_numbers`.

use std::time::Instant;

use rado::search::{rado_search_with_stats, SearchConfig, SearchOutcome};
use rado::Equation;

fn main() -> rado::Result<()> {
    let schur = Equation::new(vec![1, 1], 0)?;
    println!("equation: {schur}");
    for r in 1..=3 {
        let start = Instant::now();
        let (outcome, stats) = rado_search_with_stats(&schur, &SearchConfig::new(100).colours(r))?;
        match outcome {
            SearchOutcome::Found { n, witness } => {
                let shown = witness.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
                println!(
                    "s({r}) = {n:>3}   {} nodes, {:?}   witness {shown}",
                    stats.nodes,
                    start.elapsed()
                );
            }
            other => println!("s({r}): {other:?}"),
        }
    }
    Ok(())
}
