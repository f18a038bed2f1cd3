//! What the closed forms say about x1 + ... + xk - y = c and a few other
//! coefficient multisets, across the whole constant axis.
//!
//! Run with `cargo run --example theorem_table [coeffs]`, e.g. `1,1,2`.

use rado::equation::parse_coeffs;
use rado::theorems::{decompose, rado_by_theorems};
use rado::Equation;

fn main() -> rado::Result<()> {
    let lists = match std::env::args().nth(1) {
        Some(arg) => vec![parse_coeffs(&arg)?],
        None => vec![vec![1, 1], vec![1, 1, 1], vec![1, 1, 2], vec![2, 2]],
    };
    for coeffs in lists {
        let s: i64 = coeffs.iter().map(|&a| a as i64).sum();
        println!("coefficients {coeffs:?} (S = {s})");
        for c in -2 * s..=s * (s - 1) + 2 * s {
            let eq = Equation::new(coeffs.clone(), c)?;
            let out = rado_by_theorems(&eq)?;
            let tags: Vec<&str> = out.decisive().iter().map(|r| r.tag()).collect();
            let family = decompose(&eq).map(|lm| format!("  lambda={} mu={}", lm.lambda, lm.mu)).unwrap_or_default();
            println!("  c = {c:>4}: {:<24} {}{family}", out.kind.to_string(), tags.join(", "));
        }
        println!();
    }
    Ok(())
}
