//! Set distribution coefficients and t-distributability, each checked
//! against brute-force enumeration.
//!
//! Run with `cargo run --example distributability`.

use rado::distrib::{
    is_complete_sequence, is_t_distributable, is_t_distributable_bruteforce, sdc, sdc_bruteforce,
    SdcQuery,
};

fn main() -> rado::Result<()> {
    println!("set distribution coefficients");
    for (coeffs, targets) in [
        (vec![1, 1, 2], vec![2, 2]),
        (vec![1, 1, 1, 2], vec![2, 2, 1]),
        (vec![2, 2], vec![1, 3]),
        (vec![1, 2, 3, 4], vec![5, 5]),
    ] {
        let q = SdcQuery::new(coeffs, targets)?;
        println!(
            "  {:?} into {:?}: {} (brute force {})",
            q.coeffs,
            q.targets,
            sdc(&q)?,
            sdc_bruteforce(&q)?
        );
    }

    println!("\nt-distributability");
    for coeffs in [vec![1u64, 1, 2], vec![1, 2], vec![2, 2], vec![1, 1, 1, 3], vec![1, 5], vec![1, 1, 2, 4]] {
        for t in 2..=3 {
            let rep = is_t_distributable(&coeffs, t);
            let brute = is_t_distributable_bruteforce(&coeffs, t)?;
            let why = rep.failing_index.map(|i| format!(" (fails at position {i})")).unwrap_or_default();
            println!("  {coeffs:?} t={t}: {}{why}, brute force {brute}", rep.holds);
        }
    }

    println!("\n2-distributable is the same as complete");
    for coeffs in [vec![1u64, 1, 2, 4], vec![1, 3], vec![1, 1, 3, 5]] {
        println!(
            "  {coeffs:?}: complete {}, 2-distributable {}",
            is_complete_sequence(&coeffs),
            is_t_distributable(&coeffs, 2).holds
        );
    }
    Ok(())
}
