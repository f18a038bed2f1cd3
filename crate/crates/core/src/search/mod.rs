//! Exhaustive search for Rado numbers, the nonexistence guard, and DIMACS
//! export for instances too large to settle in-process.
//!
//! [`rado_search`] grows the interval `[1, N]` one point at a time and asks
//! the bitset engine whether a valid colouring still exists. Each pass is
//! seeded with the colouring found for `N - 1`, so satisfiable passes are
//! cheap and the real work is the final exhaustive refutation.

mod cnf;
mod engine;

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::equation::Equation;
use crate::error::{RadoError, Result};
use crate::solutions::SumTable;

pub use cnf::{export_cnf, parse_dimacs, Cnf, DEFAULT_CLAUSE_CAP};

/// Default cap on search-tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
/// Depth at which the tree is split into independent subtrees.
pub const DEFAULT_SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub r: usize,
    pub n_max: u64,
    pub parallel: bool,
    pub node_budget: Option<u64>,
    pub split_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            r: 2,
            n_max: 1000,
            parallel: false,
            node_budget: Some(DEFAULT_NODE_BUDGET),
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

impl SearchConfig {
    pub fn new(n_max: u64) -> Self {
        Self { n_max, ..Self::default() }
    }

    pub fn colours(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }

    pub fn budget(mut self, nodes: Option<u64>) -> Self {
        self.node_budget = nodes;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.r == 0 || self.r >= u8::MAX as usize {
            return Err(RadoError::Precondition(format!("colour count {} out of range", self.r)));
        }
        if self.n_max == 0 {
            return Err(RadoError::Precondition("n_max must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Every colouring of `[1, n]` has a monochromatic solution; `witness`
    /// is a valid colouring of `[1, n - 1]` when `n > 1`.
    Found { n: u64, witness: Option<Colouring> },
    /// A valid colouring of `[1, n_max]` exists.
    NotFound { colouring: Colouring },
    /// The node budget ran out while deciding `[1, n]`.
    BudgetExceeded { n: u64 },
}

impl SearchOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            SearchOutcome::Found { n, .. } => Some(*n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Computes `Rad_r` by exhaustive search over `[1, N]`, `N = 1, 2, ...`.
pub fn rado_search(eq: &Equation, cfg: &SearchConfig) -> Result<SearchOutcome> {
    rado_search_with_stats(eq, cfg).map(|(o, _)| o)
}

pub fn rado_search_with_stats(eq: &Equation, cfg: &SearchConfig) -> Result<(SearchOutcome, SearchStats)> {
    cfg.validate()?;
    let nodes = AtomicU64::new(0);
    let opts = engine::SolveOptions {
        symmetry: true,
        parallel: cfg.parallel,
        split_depth: cfg.split_depth,
        budget: cfg.node_budget.unwrap_or(u64::MAX),
        nodes: &nodes,
    };
    let mut last: Option<Vec<u8>> = None;
    for n in 1..=cfg.n_max {
        let hint = last.as_deref().unwrap_or(&[]);
        match engine::decide(eq, 1, n as usize, cfg.r, hint, &opts) {
            engine::Decision::Valid(colours) => last = Some(colours),
            engine::Decision::NoneExists => {
                let witness = last
                    .map(|c| Colouring::new(1, &c, cfg.r as u8))
                    .transpose()?;
                let stats = SearchStats { nodes: nodes.load(Ordering::Relaxed) };
                return Ok((SearchOutcome::Found { n, witness }, stats));
            }
            engine::Decision::OutOfBudget => {
                let stats = SearchStats { nodes: nodes.load(Ordering::Relaxed) };
                return Ok((SearchOutcome::BudgetExceeded { n }, stats));
            }
        }
    }
    let colours = last.expect("n_max >= 1");
    let stats = SearchStats { nodes: nodes.load(Ordering::Relaxed) };
    Ok((SearchOutcome::NotFound { colouring: Colouring::new(1, &colours, cfg.r as u8)? }, stats))
}

/// Decides whether `[lo, hi]` has a valid `r`-colouring, returning one if so.
pub fn find_valid_colouring(
    eq: &Equation,
    lo: i64,
    hi: i64,
    r: usize,
    budget: Option<u64>,
) -> Result<Option<Colouring>> {
    if hi < lo {
        return Err(RadoError::Precondition(format!("empty interval [{lo}, {hi}]")));
    }
    let nodes = AtomicU64::new(0);
    let opts = engine::SolveOptions {
        symmetry: true,
        parallel: false,
        split_depth: DEFAULT_SPLIT_DEPTH,
        budget: budget.unwrap_or(u64::MAX),
        nodes: &nodes,
    };
    match engine::decide(eq, lo, (hi - lo + 1) as usize, r, &[], &opts) {
        engine::Decision::Valid(c) => Ok(Some(Colouring::new(lo, &c, r as u8)?)),
        engine::Decision::NoneExists => Ok(None),
        engine::Decision::OutOfBudget => Err(RadoError::BudgetExceeded(budget.unwrap_or(u64::MAX))),
    }
}

/// Counts valid `r`-colourings of `[1, n]`; with `symmetry` only colourings
/// whose colours first appear in increasing order are counted.
pub fn count_valid_colourings(eq: &Equation, n: u64, r: usize, symmetry: bool) -> Result<u64> {
    engine::count_valid(eq, 1, n as usize, r, symmetry, DEFAULT_NODE_BUDGET)
        .map_err(|_| RadoError::BudgetExceeded(DEFAULT_NODE_BUDGET))
}

/// True iff a monochromatic solution uses the last point `hi` of `partial`
/// and only points of `partial`.
pub fn incremental_check(eq: &Equation, partial: &Colouring) -> Result<bool> {
    let n = partial.hi();
    let k = partial.colour(n);
    let class = partial.class(k);
    let c = eq.constant();
    let table = SumTable::new(eq, &class)?;
    // n as the right-hand unknown
    if table.contains(n + c) {
        return Ok(true);
    }
    // n in one coefficient position
    for (a, _) in eq.groups() {
        let mut rest = eq.coeffs().to_vec();
        let at = rest.iter().position(|&b| b == a).expect("group coefficient present");
        rest.remove(at);
        let base = a as i64 * n - c;
        if rest.is_empty() {
            if class.binary_search(&base).is_ok() {
                return Ok(true);
            }
            continue;
        }
        let reduced = SumTable::new(&Equation::new(rest, 0)?, &class)?;
        if class.iter().any(|&y| reduced.contains(y - base)) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `lcm(2, 3, ..., r)`, or 1 when `r < 2`.
pub fn lcm_upto(r: usize) -> u64 {
    (2..=r as u64).fold(1, |l, k| l / gcd(l, k) * k)
}

/// `gcd(sigma, lcm(2..r))`, the modulus behind the nonexistence guard.
pub fn guard_modulus(eq: &Equation, r: usize) -> u64 {
    gcd(eq.sigma().unsigned_abs(), lcm_upto(r))
}

/// True iff `gcd(sigma, lcm(2..r))` does not divide `c`, in which case the
/// residue colouring modulo a suitable prime is valid on every interval.
pub fn nonexistence_guard(eq: &Equation, r: usize) -> bool {
    eq.constant() % guard_modulus(eq, r) as i64 != 0
}
