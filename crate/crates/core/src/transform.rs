//! Index transforms that move solutions between equations.
//!
//! Moving every point down by one turns `[1, N]` into `[0, N - 1]` and the
//! constant `c` into `c - (S - 1)`. Reflecting `x -> P - x` turns constant
//! `c` into `(S - 1) * P - c`.

use crate::colouring::Colouring;
use crate::equation::Equation;
use crate::error::{RadoError, Result};

/// The equation seen on points moved down by one.
pub fn shift_down(eq: &Equation) -> Equation {
    eq.with_constant(eq.constant() - eq.sigma())
}

/// Moves a colouring down by one, pairing with [`shift_down`].
pub fn shift_colouring_down(col: &Colouring) -> Colouring {
    col.translated(-1)
}

/// Equation obtained by translating every point by `delta`.
pub fn translate(eq: &Equation, delta: i64) -> Equation {
    eq.with_constant(eq.constant() + eq.sigma() * delta)
}

/// Reflects `col` through `x -> pivot - x`; `pivot` must be `lo + hi`.
pub fn complement(col: &Colouring, pivot: i64) -> Result<Colouring> {
    if pivot != col.lo() + col.hi() {
        return Err(RadoError::PivotMismatch { pivot, lo: col.lo(), hi: col.hi() });
    }
    Colouring::from_fn(col.lo(), col.hi(), col.r(), |x| col.colour(pivot - x))
}

/// Constant whose solutions under the reflected colouring mirror those of `eq`.
pub fn complement_constant(eq: &Equation, pivot: i64) -> i64 {
    eq.sigma() * pivot - eq.constant()
}

/// [`complement`] together with the mirrored equation.
pub fn complement_pair(eq: &Equation, col: &Colouring) -> Result<(Equation, Colouring)> {
    let pivot = col.lo() + col.hi();
    Ok((eq.with_constant(complement_constant(eq, pivot)), complement(col, pivot)?))
}
