//! Moving and mirroring colourings: validity is preserved when the
//! constant moves along with the points.
//!
//! Run with `cargo run --example transforms`.

use rado::transform::{complement_pair, shift_colouring_down, shift_down, translate};
use rado::{is_valid_colouring, Colouring, Equation};

fn main() -> rado::Result<()> {
    let eq = Equation::new(vec![1, 1, 1], 0)?;
    let col: Colouring = "1..10:0011111100".parse()?;
    println!("{eq} on {col}: valid {}", is_valid_colouring(&eq, &col)?);

    let (down, moved) = (shift_down(&eq), shift_colouring_down(&col));
    println!("{down} on {moved}: valid {}", is_valid_colouring(&down, &moved)?);

    let (up, far) = (translate(&eq, 100), col.translated(100));
    println!("{up} on {far}: valid {}", is_valid_colouring(&up, &far)?);

    let (mirror, reflected) = complement_pair(&eq, &col)?;
    println!("{mirror} on {reflected}: valid {}", is_valid_colouring(&mirror, &reflected)?);

    let broken: Colouring = "1..10:0111111100".parse()?;
    let (mirror, reflected) = complement_pair(&eq, &broken)?;
    println!(
        "{eq} on {broken}: valid {}; mirrored: valid {}",
        is_valid_colouring(&eq, &broken)?,
        is_valid_colouring(&mirror, &reflected)?
    );
    Ok(())
}
