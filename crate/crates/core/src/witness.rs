//! Explicit colourings that certify lower bounds and nonexistence.
//!
//! Every constructor returns a colouring of an interval starting at 1 for the
//! equation as given, so [`crate::is_valid_colouring`] checks it directly.
//! Constructions naturally stated on `[0, M - 1]` are moved onto `[1, M]`
//! (the equation's constant is already in the `[1, N]` normalisation).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::colouring::Colouring;
use crate::equation::Equation;
use crate::error::{RadoError, Result};
use crate::search::{guard_modulus, nonexistence_guard};
use crate::solutions::is_valid_colouring;
use crate::theorems::{big_t, decompose, Family, LambdaMu};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// Three blocks 0 | 1 | 0 for `c < S - 1`.
    ThreeBlock,
    /// Two blocks 0 | 1 for family A constants.
    TwoBlock,
    /// One 0-block inside a 1-coloured `[1, T]` for `c > S - 1`.
    SingleBlock,
    /// `x mod p`, valid on every interval.
    Residue,
    /// `(0, 1)` on `[1, 2]` for `c = 2S - 1`, `S` even.
    TwoPoint,
}

impl WitnessKind {
    pub fn tag(self) -> &'static str {
        match self {
            WitnessKind::ThreeBlock => "c_lt_S",
            WitnessKind::TwoBlock => "lambda_mu",
            WitnessKind::SingleBlock => "big_c",
            WitnessKind::Residue => "mod_p",
            WitnessKind::TwoPoint => "two_point",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// What a valid witness proves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    /// A valid colouring of `[1, n - 1]` exists, so the Rado number is at least `n`.
    RadoAtLeast(u64),
    /// Same bound, from a colouring that uses a single colour.
    OneColouring(u64),
    /// Valid `colours`-colourings exist on every interval.
    NoRadoNumber { colours: usize },
}

impl Claim {
    pub fn lower_bound(&self) -> Option<u64> {
        match *self {
            Claim::RadoAtLeast(n) | Claim::OneColouring(n) => Some(n),
            Claim::NoRadoNumber { .. } => None,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::RadoAtLeast(n) => write!(f, "Rad >= {n}"),
            Claim::OneColouring(n) => write!(f, "valid 1-colouring, Rad >= {n}"),
            Claim::NoRadoNumber { colours } => write!(f, "no {colours}-colour Rado number"),
        }
    }
}

/// A concrete certificate: a colouring plus the bound it proves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub equation: Equation,
    pub colouring: Colouring,
    pub claim: Claim,
    /// The integers that define the construction.
    pub params: BTreeMap<&'static str, i64>,
}

impl Witness {
    /// Runs the monochromatic-solution oracle on the colouring.
    pub fn check(&self) -> Result<bool> {
        is_valid_colouring(&self.equation, &self.colouring)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let claim = match self.claim {
            Claim::RadoAtLeast(n) => json!({"type": "rado-at-least", "value": n}),
            Claim::OneColouring(n) => {
                json!({"type": "rado-at-least", "value": n, "note": "valid 1-colouring"})
            }
            Claim::NoRadoNumber { colours } => json!({"type": "no-rado-number", "colours": colours}),
        };
        json!({
            "kind": self.kind.tag(),
            "coeffs": self.equation.coeffs(),
            "c": self.equation.constant(),
            "colouring": self.colouring.to_string(),
            "claim": claim,
            "params": self.params,
        })
    }
}

fn precondition(msg: String) -> RadoError {
    RadoError::Precondition(msg)
}

fn two_colouring(colours: &[u8]) -> Result<Colouring> {
    Colouring::new(1, colours, 2)
}

/// `0^(S-1-c) 1^((S-1-c)S) 0^(S-1-c)` on `[1, (S-1-c)(S+2)]`.
pub fn witness_c_lt_s(eq: &Equation) -> Result<Witness> {
    let s = eq.sum();
    let c = eq.constant();
    if c >= s - 1 || (c * s) % 2 != 0 {
        return Err(precondition(format!("three-block witness needs c < S - 1 and cS even (S = {s}, c = {c})")));
    }
    let d = s - 1 - c;
    let len = d * (s + 2);
    let colours: Vec<u8> =
        (0..len).map(|u| if u < d || u >= d * (s + 1) { 0 } else { 1 }).collect();
    Ok(Witness {
        kind: WitnessKind::ThreeBlock,
        equation: eq.clone(),
        colouring: two_colouring(&colours)?,
        claim: Claim::RadoAtLeast(len as u64 + 1),
        params: BTreeMap::from([("d", d), ("len", len)]),
    })
}

/// `0^(l-1) 1^m` on `[1, l + m - 1]` for a family-A constant.
pub fn witness_lambda_mu(eq: &Equation, lm: LambdaMu) -> Result<Witness> {
    if lm.family != Family::A || decompose(eq) != Some(lm) {
        return Err(precondition(format!("{lm:?} is not the family-A decomposition of {eq}")));
    }
    let LambdaMu { lambda, mu, .. } = lm;
    let colours: Vec<u8> = (0..lambda + mu - 1).map(|u| (u >= lambda - 1) as u8).collect();
    Ok(Witness {
        kind: WitnessKind::TwoBlock,
        equation: eq.clone(),
        colouring: two_colouring(&colours)?,
        claim: Claim::RadoAtLeast((lambda + mu) as u64),
        params: BTreeMap::from([("lambda", lambda), ("mu", mu)]),
    })
}

/// On `[1, T]`, colour 0 on `(max(0, S^2 T - c(S+1)), ST - c]` and 1 elsewhere.
pub fn witness_big_c(eq: &Equation) -> Result<Witness> {
    let s = eq.sum();
    let c = eq.constant();
    let t = big_t(eq)?;
    if t < 1 {
        return Err(precondition(format!("single-block witness needs T >= 1 (S = {s}, c = {c})")));
    }
    let from = (s * s * t - c * (s + 1)).max(0);
    let to = s * t - c;
    let colours: Vec<u8> = (1..=t).map(|x| if from < x && x <= to { 0 } else { 1 }).collect();
    let single = colours.iter().all(|&k| k == 1);
    let bound = t as u64 + 1;
    Ok(Witness {
        kind: WitnessKind::SingleBlock,
        equation: eq.clone(),
        colouring: two_colouring(&colours)?,
        claim: if single { Claim::OneColouring(bound) } else { Claim::RadoAtLeast(bound) },
        params: BTreeMap::from([("T", t), ("block_lo", from), ("block_hi", to)]),
    })
}

/// The colouring `x -> x mod p`, valid on every interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRule {
    pub p: u64,
    pub colours: usize,
}

impl ResidueRule {
    pub fn instantiate(&self, n: u64) -> Result<Colouring> {
        let p = self.p as i64;
        Colouring::from_fn(1, n as i64, self.p.max(2) as u8, |x| x.rem_euclid(p) as u8)
    }

    pub fn witness(&self, eq: &Equation, n: u64) -> Result<Witness> {
        Ok(Witness {
            kind: WitnessKind::Residue,
            equation: eq.clone(),
            colouring: self.instantiate(n)?,
            claim: Claim::NoRadoNumber { colours: self.colours },
            params: BTreeMap::from([("p", self.p as i64)]),
        })
    }
}

/// Smallest prime dividing `gcd(sigma, lcm(2..r))` but not `c`.
pub fn witness_mod_p(eq: &Equation, r: usize) -> Result<ResidueRule> {
    if !nonexistence_guard(eq, r) {
        return Err(precondition(format!("{eq} has a {r}-colour Rado number candidate; no residue witness")));
    }
    let g = guard_modulus(eq, r);
    let c = eq.constant();
    (2..=g)
        .filter(|&p| g.is_multiple_of(p) && (2..p).all(|d| p % d != 0))
        .find(|&p| c % p as i64 != 0)
        .map(|p| ResidueRule { p, colours: r })
        .ok_or_else(|| precondition(format!("no prime for {eq} with {r} colours")))
}

/// `(0, 1)` on `[1, 2]` for `c = 2S - 1` with `S` even.
pub fn witness_two_point(eq: &Equation) -> Result<Witness> {
    let s = eq.sum();
    if eq.constant() != 2 * s - 1 || s % 2 != 0 {
        return Err(precondition(format!("two-point witness needs c = 2S - 1 and S even ({eq})")));
    }
    Ok(Witness {
        kind: WitnessKind::TwoPoint,
        equation: eq.clone(),
        colouring: two_colouring(&[0, 1])?,
        claim: Claim::RadoAtLeast(3),
        params: BTreeMap::new(),
    })
}

/// Every two-colour witness construction that applies to `eq`. A residue
/// witness is instantiated on `[1, residue_len]`.
pub fn applicable_witnesses(eq: &Equation, residue_len: u64) -> Vec<Witness> {
    if let Ok(rule) = witness_mod_p(eq, 2) {
        return rule.witness(eq, residue_len).into_iter().collect();
    }
    let mut out = Vec::new();
    out.extend(witness_c_lt_s(eq).ok());
    if let Some(lm) = decompose(eq).filter(|lm| lm.family == Family::A) {
        out.extend(witness_lambda_mu(eq, lm).ok());
    }
    out.extend(witness_big_c(eq).ok());
    out.extend(witness_two_point(eq).ok());
    out
}

/// The applicable witness with the largest claim; the residue witness wins
/// outright, and ties go to the first construction listed.
pub fn best_witness(eq: &Equation, residue_len: u64) -> Option<Witness> {
    let all = applicable_witnesses(eq, residue_len);
    if let Some(w) = all.iter().find(|w| w.kind == WitnessKind::Residue) {
        return Some(w.clone());
    }
    let mut best: Option<Witness> = None;
    for w in all {
        if best.as_ref().is_none_or(|b| w.claim.lower_bound() > b.claim.lower_bound()) {
            best = Some(w);
        }
    }
    best
}
