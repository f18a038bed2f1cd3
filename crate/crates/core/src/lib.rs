//! Two-colour Rado numbers for `a1*x1 + ... + ak*xk - y = c`.
//!
//! The crate has three layers:
//!
//! * a model of the equation and of interval colourings, with an exact
//!   monochromatic-solution oracle ([`solutions`]) and the translation and
//!   reflection transforms ([`transform`]);
//! * closed forms: set distribution coefficients and t-distributability
//!   ([`distrib`]), the case analysis that turns an equation into an exact
//!   value, bounds, or a nonexistence verdict ([`theorems`]), and the
//!   explicit colourings that certify lower bounds ([`witness`]);
//! * an independent exhaustive search ([`search`]) used to check every
//!   closed form at desk scale, plus the sweep driver ([`sweep`]) behind the
//!   `rado verify` command.

pub mod cli;
pub mod colouring;
pub mod distrib;
pub mod equation;
pub mod error;
pub mod search;
pub mod solutions;
pub mod sweep;
pub mod theorems;
pub mod transform;
pub mod witness;

pub use colouring::Colouring;
pub use equation::Equation;
pub use error::{RadoError, Result};
pub use search::{rado_search, SearchConfig, SearchOutcome};
pub use solutions::{find_mono_solution, is_valid_colouring, reachable_sums, MonoSolution};
pub use theorems::{rado_by_theorems, OutcomeKind, RadoOutcome};
pub use witness::{best_witness, Claim, Witness, WitnessKind};
