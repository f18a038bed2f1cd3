//! Every witness construction, instantiated and re-validated with the
//! monochromatic-solution oracle.
//!
//! Run with `cargo run --example witnesses`.

use rado::witness::{
    witness_big_c, witness_c_lt_s, witness_lambda_mu, witness_mod_p, witness_two_point,
};
use rado::theorems::decompose;
use rado::{find_mono_solution, Equation};

fn show(w: &rado::Witness) -> rado::Result<()> {
    println!("  {:<10} {:<34} {} -> valid {}", w.kind.to_string(), w.equation.to_string(), w.claim, w.check()?);
    println!("             {}", w.colouring);
    Ok(())
}

fn main() -> rado::Result<()> {
    println!("three blocks (c < S - 1)");
    show(&witness_c_lt_s(&Equation::new(vec![1, 1], 0)?)?)?;
    show(&witness_c_lt_s(&Equation::new(vec![1, 1, 2], -2)?)?)?;

    println!("two blocks (family A)");
    let eq = Equation::new(vec![1, 1, 1, 1, 1], 10)?;
    show(&witness_lambda_mu(&eq, decompose(&eq).expect("family A"))?)?;

    println!("single block (c > S - 1)");
    show(&witness_big_c(&Equation::new(vec![1, 1, 1], 8)?)?)?;
    show(&witness_big_c(&Equation::new(vec![1, 1, 1], 40)?)?)?;

    println!("two points (c = 2S - 1, S even)");
    show(&witness_two_point(&Equation::new(vec![1, 1, 2], 7)?)?)?;

    println!("residues (no Rado number)");
    let eq = Equation::new(vec![1, 2], 1)?;
    let rule = witness_mod_p(&eq, 2)?;
    let col = rule.instantiate(200)?;
    println!("  x mod {} on [1, 200]: monochromatic solution {:?}", rule.p, find_mono_solution(&eq, &col)?);
    Ok(())
}
