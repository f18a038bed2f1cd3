//! Closed-form knowledge about `Rad_2(a1, ..., ak, -1; c)`.
//!
//! [`rado_by_theorems`] evaluates every applicable rule for the equation,
//! intersects the bounds they give, and reports an exact value, an interval,
//! or nonexistence, together with the rules that contributed. Rules that
//! need distributability of the coefficient multiset test it themselves.
//!
//! Write `S` for the coefficient sum. The constant axis splits as follows:
//!
//! | constant `c`                    | knowledge                                      |
//! |---------------------------------|------------------------------------------------|
//! | `S` odd, `c` odd                | no Rado number                                 |
//! | `c < S - 1`                     | `>= (S-1-c)(S+2)+1`, equal if 2-distributable  |
//! | `c = S - 1`                     | `1`                                            |
//! | `S <= c <= 2S - 3`              | `<= S+1` if 2-distributable                    |
//! | `c = 2S - 2`                    | `2`                                            |
//! | `c = 2S - 1`                    | `3` if 2-distributable                         |
//! | `c = l(S-1) - m`, `0 <= m <= S-l` | `>= l+m`; `= l` for `m = 0`; `= l+1` for `m = 1` (2-dist.); `= l+m` (3-dist.) |
//! | `c = lS - m`, `1 <= m <= l-1`   | `<= 2l-m` if 3-distributable and `l <= ceil((S+1)/2)` |
//! | `c > S - 1`                     | `>= ceil((1+c(S+2))/(S^2+S-1))`, equal if 2-dist. and `c > S(S-1)` |
//! | `S - 1 < c < S(S-1)`            | `<= S+1` if 3-distributable                    |

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::distrib::distributable;
use crate::equation::Equation;
use crate::error::{RadoError, Result};
use crate::search::nonexistence_guard;

/// Which of the two `l`/`m` parametrisations a constant falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `c = l(S - 1) - m`, `3 <= l <= S`, `0 <= m <= S - l`.
    A,
    /// `c = lS - m`, `3 <= l`, `1 <= m <= l - 1`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaMu {
    pub lambda: i64,
    pub mu: i64,
    pub family: Family,
}

/// Places `c` in family A or B, or returns `None` outside both.
pub fn decompose(eq: &Equation) -> Option<LambdaMu> {
    let s = eq.sum();
    let c = eq.constant();
    if s < 2 || c <= 0 {
        return None;
    }
    let lambda = ceil_div(c, s - 1);
    if (3..=s).contains(&lambda) && (lambda - 1) * s <= c && c <= lambda * (s - 1) {
        return Some(LambdaMu { lambda, mu: lambda * (s - 1) - c, family: Family::A });
    }
    let lambda = ceil_div(c, s);
    if lambda >= 3 && lambda * (s - 1) < c && c < lambda * s {
        return Some(LambdaMu { lambda, mu: lambda * s - c, family: Family::B });
    }
    None
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + (a.rem_euclid(b) != 0) as i64
}

/// `ceil((1 + c(S+2)) / (S^2 + S - 1)) - 1`; requires `c > S - 1`.
pub fn big_t(eq: &Equation) -> Result<i64> {
    let s = eq.sum();
    let c = eq.constant();
    if c < s {
        return Err(RadoError::Precondition(format!("need c > S - 1, got c = {c}, S = {s}")));
    }
    Ok(ceil_div(1 + c * (s + 2), s * s + s - 1) - 1)
}

/// The rules the dispatcher can apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `S` odd and `c` odd: the parity colouring is valid everywhere.
    ParityObstruction,
    /// `c = S - 1`: all ones solve it.
    UnitSolution,
    /// `c < S - 1`: the three-block colouring lower bound.
    ThreeBlockLower,
    /// `c < S - 1`, 2-distributable: the lower bound is exact.
    ThreeBlockExact,
    /// `c = 2S - 2`: all twos solve it.
    DoubleSolution,
    /// `S <= c <= 2S - 3`, 2-distributable: at most `S + 1`.
    NearDoubleUpper,
    /// `c = 2S - 1`, 2-distributable: exactly 3.
    NearDoubleExact,
    /// Family A: two-block lower bound `l + m`.
    TwoBlockLower,
    /// Family A with `m = 0`: exactly `l`.
    TwoBlockMuZero,
    /// Family A with `m = 1`, 2-distributable: exactly `l + 1`.
    TwoBlockMuOne,
    /// Family A with `m >= 2`, 3-distributable: exactly `l + m`.
    TwoBlockMuMany,
    /// Family B, 3-distributable, `l <= ceil((S+1)/2)`: at most `2l - m`.
    FamilyBUpper,
    /// `c > S - 1`: the single-block lower bound `T + 1`.
    LargeConstantLower,
    /// `c > S(S - 1)`, 2-distributable: exactly `T + 1`.
    LargeConstantExact,
    /// `S - 1 < c < S(S - 1)`, 3-distributable: at most `S + 1`.
    ReflectedUpper,
}

impl Rule {
    /// Stable tag used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Rule::ParityObstruction => "Cor dne",
            Rule::UnitSolution => "Thm c<S-1(i)",
            Rule::ThreeBlockLower => "Thm c<S-1(ii)",
            Rule::ThreeBlockExact => "Thm c<S-1(iii)",
            Rule::DoubleSolution => "Thm [S,2S-1](i)",
            Rule::NearDoubleUpper | Rule::NearDoubleExact => "Thm [S,2S-1](ii)",
            Rule::TwoBlockLower => "Thm lambda_mu_1(i)",
            Rule::TwoBlockMuZero => "Thm lambda_mu_1(ii)",
            Rule::TwoBlockMuOne => "Thm lambda_mu_1(iii)",
            Rule::TwoBlockMuMany => "Thm lambda_mu_1(iv)",
            Rule::FamilyBUpper => "Thm lambda_mu_2",
            Rule::LargeConstantLower => "Thm >S(S-1)(i)",
            Rule::LargeConstantExact => "Thm >S(S-1)(ii)",
            Rule::ReflectedUpper => "Thm S+1",
        }
    }

    /// Rules whose exact value holds for every number of colours.
    pub fn holds_for_all_r(self) -> bool {
        matches!(self, Rule::UnitSolution | Rule::DoubleSolution | Rule::TwoBlockMuZero)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One rule's contribution: a lower bound, an upper bound, or both (exact).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub rule: Rule,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
}

impl Contribution {
    fn lower(rule: Rule, v: i64) -> Self {
        Self { rule, lower: Some(v.max(1) as u64), upper: None }
    }

    fn upper(rule: Rule, v: i64) -> Self {
        Self { rule, lower: None, upper: Some(v as u64) }
    }

    fn exact(rule: Rule, v: i64) -> Self {
        Self { rule, lower: Some(v as u64), upper: Some(v as u64) }
    }

    pub fn is_exact(&self) -> bool {
        self.lower.is_some() && self.lower == self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeKind {
    Exact(u64),
    Bounds { lower: u64, upper: Option<u64> },
    DoesNotExist,
    /// Nothing is known beyond a search that stopped at `searched_to`.
    Unknown { searched_to: Option<u64> },
}

impl OutcomeKind {
    pub fn lower(&self) -> Option<u64> {
        match *self {
            OutcomeKind::Exact(n) => Some(n),
            OutcomeKind::Bounds { lower, .. } => Some(lower),
            _ => None,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match *self {
            OutcomeKind::Exact(n) => Some(n),
            OutcomeKind::Bounds { upper, .. } => upper,
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            OutcomeKind::Exact(_) => "exact",
            OutcomeKind::Bounds { .. } => "bounds",
            OutcomeKind::DoesNotExist => "does-not-exist",
            OutcomeKind::Unknown { .. } => "unknown",
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeKind::Exact(n) => write!(f, "exact {n}"),
            OutcomeKind::Bounds { lower, upper: Some(u) } => write!(f, "between {lower} and {u}"),
            OutcomeKind::Bounds { lower, upper: None } => write!(f, "at least {lower}"),
            OutcomeKind::DoesNotExist => write!(f, "does-not-exist"),
            OutcomeKind::Unknown { searched_to: Some(n) } => write!(f, "unknown (searched to {n})"),
            OutcomeKind::Unknown { searched_to: None } => write!(f, "unknown"),
        }
    }
}

/// What the closed forms say about one equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadoOutcome {
    pub equation: Equation,
    pub kind: OutcomeKind,
    pub provenance: Vec<Contribution>,
    /// The exact value is stated for every colour count, not only two.
    pub all_r: bool,
}

impl RadoOutcome {
    /// Rules that decided the reported value or interval ends.
    pub fn decisive(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> = Vec::new();
        let mut push = |r: Rule| {
            if !out.contains(&r) {
                out.push(r);
            }
        };
        match self.kind {
            OutcomeKind::Exact(n) => {
                let exact: Vec<Rule> =
                    self.provenance.iter().filter(|c| c.is_exact()).map(|c| c.rule).collect();
                if exact.is_empty() {
                    for c in &self.provenance {
                        if c.lower == Some(n) || c.upper == Some(n) {
                            push(c.rule);
                        }
                    }
                } else {
                    exact.into_iter().for_each(push);
                }
            }
            OutcomeKind::Bounds { lower, upper } => {
                for c in &self.provenance {
                    if c.lower == Some(lower) || (upper.is_some() && c.upper == upper) {
                        push(c.rule);
                    }
                }
            }
            _ => self.provenance.iter().for_each(|c| push(c.rule)),
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tags: Vec<&str> = self.decisive().iter().map(|r| r.tag()).collect();
        let coeffs = self.equation.coeffs();
        let c = self.equation.constant();
        match self.kind {
            OutcomeKind::Exact(n) => json!({
                "coeffs": coeffs, "c": c, "kind": "exact", "value": n, "provenance": tags,
            }),
            OutcomeKind::Bounds { lower, upper } => json!({
                "coeffs": coeffs, "c": c, "kind": "bounds", "lower": lower, "upper": upper,
                "provenance": tags,
            }),
            OutcomeKind::DoesNotExist => json!({
                "coeffs": coeffs, "c": c, "kind": "does-not-exist", "provenance": tags,
            }),
            OutcomeKind::Unknown { searched_to } => json!({
                "coeffs": coeffs, "c": c, "kind": "unknown", "searched_to": searched_to,
                "provenance": tags,
            }),
        }
    }
}

/// Collects every rule that applies to `eq` (two colours).
pub fn contributions(eq: &Equation) -> Vec<Contribution> {
    let s = eq.sum();
    let c = eq.constant();
    if s % 2 == 1 && c.rem_euclid(2) == 1 {
        return vec![Contribution { rule: Rule::ParityObstruction, lower: None, upper: None }];
    }
    if c == s - 1 {
        return vec![Contribution::exact(Rule::UnitSolution, 1)];
    }
    // A lone unit coefficient gives y = x - c, which has no Rado number for
    // c != 0; the distributability rules need at least two coefficients' worth.
    let dist2 = s >= 2 && distributable(eq.coeffs(), 2);
    let dist3 = s >= 2 && distributable(eq.coeffs(), 3);
    let mut out = Vec::new();

    if c < s - 1 {
        let bound = (s - 1 - c) * (s + 2) + 1;
        out.push(Contribution::lower(Rule::ThreeBlockLower, bound));
        if dist2 {
            out.push(Contribution::exact(Rule::ThreeBlockExact, bound));
        }
        return out;
    }

    if c == 2 * s - 2 {
        out.push(Contribution::exact(Rule::DoubleSolution, 2));
    }
    if c == 2 * s - 1 && dist2 {
        out.push(Contribution::exact(Rule::NearDoubleExact, 3));
    }
    if s <= c && c <= 2 * s - 3 && dist2 {
        out.push(Contribution::upper(Rule::NearDoubleUpper, s + 1));
    }
    if let Some(lm) = decompose(eq) {
        let LambdaMu { lambda, mu, family } = lm;
        match family {
            Family::A => {
                out.push(Contribution::lower(Rule::TwoBlockLower, lambda + mu));
                if mu == 0 {
                    out.push(Contribution::exact(Rule::TwoBlockMuZero, lambda));
                } else if mu == 1 && dist2 {
                    out.push(Contribution::exact(Rule::TwoBlockMuOne, lambda + 1));
                } else if mu >= 2 && dist3 {
                    out.push(Contribution::exact(Rule::TwoBlockMuMany, lambda + mu));
                }
            }
            Family::B => {
                if lambda <= ceil_div(s + 1, 2) && dist3 {
                    out.push(Contribution::upper(Rule::FamilyBUpper, 2 * lambda - mu));
                }
            }
        }
    }
    let t = big_t(eq).expect("c > S - 1 here");
    out.push(Contribution::lower(Rule::LargeConstantLower, t + 1));
    if dist2 && c > s * (s - 1) {
        out.push(Contribution::exact(Rule::LargeConstantExact, t + 1));
    }
    if c < s * (s - 1) && dist3 {
        out.push(Contribution::upper(Rule::ReflectedUpper, s + 1));
    }
    out
}

/// Intersects every applicable rule into one outcome for two colours.
pub fn rado_by_theorems(eq: &Equation) -> Result<RadoOutcome> {
    let provenance = contributions(eq);
    if provenance.iter().any(|c| c.rule == Rule::ParityObstruction) {
        return Ok(RadoOutcome {
            equation: eq.clone(),
            kind: OutcomeKind::DoesNotExist,
            provenance,
            all_r: false,
        });
    }
    let lower = provenance.iter().filter_map(|c| c.lower).max().unwrap_or(1);
    let upper = provenance.iter().filter_map(|c| c.upper).min();
    if let Some(u) = upper {
        if lower > u {
            let detail: Vec<String> = provenance
                .iter()
                .map(|c| format!("{}: {:?}..{:?}", c.rule, c.lower, c.upper))
                .collect();
            return Err(RadoError::Contradiction(format!(
                "{eq}: lower {lower} > upper {u} [{}]",
                detail.join("; ")
            )));
        }
    }
    let kind = match upper {
        Some(u) if u == lower => OutcomeKind::Exact(u),
        _ => OutcomeKind::Bounds { lower, upper },
    };
    let all_r = matches!(kind, OutcomeKind::Exact(_))
        && provenance.iter().any(|c| c.is_exact() && c.rule.holds_for_all_r());
    Ok(RadoOutcome { equation: eq.clone(), kind, provenance, all_r })
}

/// The closed forms for `r` colours: the two-colour analysis for `r = 2`;
/// for more colours only nonexistence and the values that hold for every `r`.
pub fn rado_by_theorems_with_colours(eq: &Equation, r: usize) -> Result<RadoOutcome> {
    if r == 2 {
        return rado_by_theorems(eq);
    }
    let unknown = |provenance| RadoOutcome {
        equation: eq.clone(),
        kind: OutcomeKind::Unknown { searched_to: None },
        provenance,
        all_r: false,
    };
    if r < 2 {
        return Ok(unknown(Vec::new()));
    }
    if nonexistence_guard(eq, r) {
        return Ok(RadoOutcome {
            equation: eq.clone(),
            kind: OutcomeKind::DoesNotExist,
            provenance: vec![Contribution { rule: Rule::ParityObstruction, lower: None, upper: None }],
            all_r: false,
        });
    }
    let general: Vec<Contribution> = contributions(eq)
        .into_iter()
        .filter(|c| c.is_exact() && c.rule.holds_for_all_r())
        .collect();
    match general.first() {
        Some(c) => Ok(RadoOutcome {
            equation: eq.clone(),
            kind: OutcomeKind::Exact(c.lower.expect("exact")),
            provenance: general,
            all_r: true,
        }),
        None => Ok(unknown(Vec::new())),
    }
}
