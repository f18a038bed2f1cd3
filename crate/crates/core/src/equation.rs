//! The equation `a1*x1 + ... + ak*xk - y = c` with positive coefficients.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{RadoError, Result};

/// `a1*x1 + ... + ak*xk - y = c`, with the `ai` kept as a sorted multiset.
///
/// `S` is the coefficient sum and `sigma = S - 1` is the sum of every
/// coefficient including the trailing `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equation {
    coeffs: Vec<u32>,
    c: i64,
}

impl Equation {
    pub fn new(coeffs: impl Into<Vec<u32>>, c: i64) -> Result<Self> {
        let mut coeffs = coeffs.into();
        if coeffs.is_empty() {
            return Err(RadoError::InvalidEquation("no coefficients".into()));
        }
        if coeffs.contains(&0) {
            return Err(RadoError::InvalidEquation("coefficients must be positive".into()));
        }
        coeffs.sort_unstable();
        Ok(Self { coeffs, c })
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn constant(&self) -> i64 {
        self.c
    }

    /// Number of unknowns on the left, `m - 1`.
    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    /// `S`, the sum of the positive coefficients.
    pub fn sum(&self) -> i64 {
        self.coeffs.iter().map(|&a| a as i64).sum()
    }

    /// `sigma = S - 1`.
    pub fn sigma(&self) -> i64 {
        self.sum() - 1
    }

    pub fn with_constant(&self, c: i64) -> Self {
        Self { coeffs: self.coeffs.clone(), c }
    }

    /// Distinct coefficients with their multiplicities, ascending.
    pub fn groups(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &a in &self.coeffs {
            match out.last_mut() {
                Some((b, k)) if *b == a => *k += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    /// Evaluates `sum ai*vi - y - c`; zero means `(values, y)` solves the equation.
    pub fn residual(&self, values: &[i64], y: i64) -> i64 {
        assert_eq!(values.len(), self.coeffs.len(), "one value per coefficient");
        let lhs: i64 = self.coeffs.iter().zip(values).map(|(&a, &v)| a as i64 * v).sum();
        lhs - y - self.c
    }

    pub fn is_solution(&self, values: &[i64], y: i64) -> bool {
        self.residual(values, y) == 0
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *a == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{}*x{}", a, i + 1)?;
            }
        }
        write!(f, " - y = {}", self.c)
    }
}

/// Parses a comma separated coefficient list such as `1,1,2`.
pub fn parse_coeffs(s: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        return Err(RadoError::Parse("empty coefficient list".into()));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|e| RadoError::Parse(format!("bad coefficient {p:?}: {e}")))
        })
        .collect()
}

impl FromStr for Equation {
    type Err = RadoError;

    /// Accepts `1,1,2;c` as well as a bare coefficient list (constant 0).
    fn from_str(s: &str) -> Result<Self> {
        let (coeffs, c) = match s.split_once(';') {
            Some((a, c)) => (
                a,
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| RadoError::Parse(format!("bad constant {c:?}: {e}")))?,
            ),
            None => (s, 0),
        };
        Equation::new(parse_coeffs(coeffs)?, c)
    }
}
