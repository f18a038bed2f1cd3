//! Theory-versus-search sweeps over families of equations.
//!
//! A sweep enumerates coefficient multisets by sum and then
//! lexicographically, pairs each with every constant in a range, and
//! compares the closed-form outcome with the exhaustive search. Every
//! applicable witness construction is re-validated on the way. Rows are
//! evaluated in parallel and reported in enumeration order.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::colouring::Colouring;
use crate::distrib::distributable;
use crate::equation::Equation;
use crate::error::{RadoError, Result};
use crate::search::{find_valid_colouring, rado_search, SearchConfig, SearchOutcome};
use crate::solutions::is_valid_colouring;
use crate::theorems::{rado_by_theorems, OutcomeKind, RadoOutcome};
use crate::witness::{applicable_witnesses, witness_mod_p};

/// Interval length on which residue witnesses are instantiated.
pub const RESIDUE_CHECK_LEN: u64 = 200;
/// Search cap for equations with no Rado number.
pub const NONEXISTENCE_SEARCH_CAP: u64 = 30;
/// Default per-row node budget.
pub const DEFAULT_ROW_BUDGET: u64 = 50_000_000;

/// Which constants each multiset is paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantRange {
    /// The same inclusive interval for every multiset.
    Fixed(i64, i64),
    /// `[-3S, S(S - 1) + 3S]`, depending on the multiset's sum.
    Scaled,
}

impl ConstantRange {
    fn for_sum(&self, s: i64) -> (i64, i64) {
        match *self {
            ConstantRange::Fixed(lo, hi) => (lo, hi),
            ConstantRange::Scaled => (-3 * s, s * (s - 1) + 3 * s),
        }
    }
}

/// Restricts a sweep to multisets with a distributability property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistributabilityFilter {
    #[default]
    Any,
    Two,
    Three,
}

impl DistributabilityFilter {
    fn admits(&self, coeffs: &[u32]) -> bool {
        match self {
            DistributabilityFilter::Any => true,
            DistributabilityFilter::Two => distributable(coeffs, 2),
            DistributabilityFilter::Three => distributable(coeffs, 3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub s_min: i64,
    pub s_max: i64,
    pub coeff_max: u32,
    pub constants: ConstantRange,
    pub filter: DistributabilityFilter,
    /// Overrides the per-row search cap.
    pub n_max: Option<u64>,
    pub row_budget: u64,
    /// Keep only rows with `cS` even, i.e. drop the parity-obstructed ones.
    pub even_only: bool,
    /// Record wall-clock time per row (otherwise the column is zero).
    pub timings: bool,
}

impl SweepSpec {
    pub fn new(s_max: i64, coeff_max: u32, constants: ConstantRange) -> Self {
        Self {
            s_min: 1,
            s_max,
            coeff_max,
            constants,
            filter: DistributabilityFilter::Any,
            n_max: None,
            row_budget: DEFAULT_ROW_BUDGET,
            even_only: false,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_max < 1 || self.s_min > self.s_max || self.coeff_max == 0 {
            return Err(RadoError::Precondition("empty multiset range".into()));
        }
        if let ConstantRange::Fixed(lo, hi) = self.constants {
            if lo > hi {
                return Err(RadoError::Precondition(format!("empty constant range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    /// All equations of the sweep, in report order.
    pub fn equations(&self) -> Vec<Equation> {
        let mut out = Vec::new();
        for s in self.s_min.max(1)..=self.s_max {
            let (lo, hi) = self.constants.for_sum(s);
            for coeffs in multisets_with_sum(s as u32, self.coeff_max) {
                if !self.filter.admits(&coeffs) {
                    continue;
                }
                for c in lo..=hi {
                    if self.even_only && (c * s) % 2 != 0 {
                        continue;
                    }
                    out.push(Equation::new(coeffs.clone(), c).expect("positive coefficients"));
                }
            }
        }
        out
    }
}

/// Nondecreasing tuples of positive integers `<= max_part` summing to `s`,
/// in lexicographic order.
pub fn multisets_with_sum(s: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, min: u32, max: u32, buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(buf.clone());
            return;
        }
        for v in min..=max.min(rem) {
            buf.push(v);
            go(rem - v, v, max, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        go(s, 1, max_part, &mut Vec::new(), &mut out);
    }
    out
}

/// What the search established for one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleResult {
    Exact(u64),
    /// `[1, n - 1]` has a valid colouring; no Rado number below `n`.
    AtLeast(u64),
    /// The node budget ran out while testing `[1, n]`.
    Unknown(u64),
}

impl std::fmt::Display for OracleResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleResult::Exact(n) => write!(f, "{n}"),
            OracleResult::AtLeast(n) => write!(f, ">={n}"),
            OracleResult::Unknown(n) => write!(f, "?{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub theory: RadoOutcome,
    pub oracle: OracleResult,
    /// Theory and search are consistent and every witness checked out.
    pub agree: bool,
    /// Witnesses constructed and validated for this row.
    pub witnesses: usize,
    /// Human-readable reasons when `agree` is false.
    pub problems: Vec<String>,
    pub ms: u64,
}

impl SweepRow {
    pub fn equation(&self) -> &Equation {
        &self.theory.equation
    }
}

/// Search cap used for a row, given what theory predicts.
pub fn oracle_cap(kind: &OutcomeKind) -> u64 {
    match *kind {
        OutcomeKind::Exact(n) => 2 * n + 10,
        OutcomeKind::Bounds { upper: Some(u), .. } => 2 * u + 10,
        OutcomeKind::Bounds { lower, upper: None } => 2 * lower + 10,
        OutcomeKind::DoesNotExist => NONEXISTENCE_SEARCH_CAP,
        OutcomeKind::Unknown { .. } => NONEXISTENCE_SEARCH_CAP,
    }
}

/// Runs the search and summarises the outcome together with the search's
/// valid colouring (of `[1, n - 1]` for an exact value, of `[1, n_max]` otherwise).
pub fn run_oracle(eq: &Equation, cfg: &SearchConfig) -> Result<(OracleResult, Option<Colouring>)> {
    Ok(match rado_search(eq, cfg)? {
        SearchOutcome::Found { n, witness } => (OracleResult::Exact(n), witness),
        SearchOutcome::NotFound { colouring } => (OracleResult::AtLeast(cfg.n_max + 1), Some(colouring)),
        SearchOutcome::BudgetExceeded { n } => (OracleResult::Unknown(n), None),
    })
}

/// Whether a search result is compatible with what theory predicts. A search
/// that ran out of budget is compatible with anything.
pub fn consistent(kind: &OutcomeKind, oracle: OracleResult) -> bool {
    match (*kind, oracle) {
        (_, OracleResult::Unknown(_)) | (OutcomeKind::Unknown { .. }, _) => true,
        (OutcomeKind::Exact(n), OracleResult::Exact(v)) => n == v,
        (OutcomeKind::Exact(n), OracleResult::AtLeast(m)) => n >= m,
        (OutcomeKind::Bounds { lower, upper }, OracleResult::Exact(v)) => {
            lower <= v && upper.is_none_or(|u| v <= u)
        }
        (OutcomeKind::Bounds { upper, .. }, OracleResult::AtLeast(m)) => upper.is_none_or(|u| u >= m),
        (OutcomeKind::DoesNotExist, OracleResult::AtLeast(_)) => true,
        (OutcomeKind::DoesNotExist, OracleResult::Exact(_)) => false,
    }
}

/// Compares theory, search and witnesses for one equation.
pub fn evaluate(eq: &Equation, spec: &SweepSpec) -> Result<SweepRow> {
    let start = Instant::now();
    let theory = rado_by_theorems(eq)?;
    let cap = spec.n_max.unwrap_or_else(|| oracle_cap(&theory.kind));
    let cfg = SearchConfig::new(cap).budget(Some(spec.row_budget));
    let (oracle, search_witness) = run_oracle(eq, &cfg)?;
    let mut problems = Vec::new();

    if !consistent(&theory.kind, oracle) {
        problems.push(format!("theory says {}, search says {oracle}", theory.kind));
    }

    // the search's own certificate of minimality
    if let (OracleResult::Exact(n), Some(col)) = (oracle, &search_witness) {
        if col.len() as u64 != n - 1 || !is_valid_colouring(eq, col)? {
            problems.push(format!("search witness for {n} is not a valid colouring of [1, {}]", n - 1));
        }
    }
    if let (OracleResult::Exact(1), None) = (oracle, &search_witness) {
        // nothing to certify below 1
    } else if let (OracleResult::Exact(n), None) = (oracle, &search_witness) {
        problems.push(format!("search returned {n} without a witness"));
    }

    let witnesses = applicable_witnesses(eq, RESIDUE_CHECK_LEN);
    for w in &witnesses {
        if !w.check()? {
            problems.push(format!("{} witness {} is not valid", w.kind, w.colouring));
        }
        let bound = w.claim.lower_bound();
        match (bound, oracle) {
            (Some(b), OracleResult::Exact(v)) if b > v => {
                problems.push(format!("{} witness claims >= {b}, search found {v}", w.kind))
            }
            (None, OracleResult::Exact(v)) => {
                problems.push(format!("{} witness claims nonexistence, search found {v}", w.kind))
            }
            _ => {}
        }
    }
    if theory.kind == OutcomeKind::DoesNotExist && witness_mod_p(eq, 2).is_err() {
        problems.push("no residue witness for a nonexistence verdict".into());
    }
    if let OutcomeKind::Exact(n) = theory.kind {
        if n > 1 && find_valid_colouring(eq, 1, n as i64 - 1, 2, Some(spec.row_budget))?.is_none() {
            problems.push(format!("no valid colouring of [1, {}]", n - 1));
        }
    }

    let ms = if spec.timings { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(SweepRow {
        agree: problems.is_empty(),
        theory,
        oracle,
        witnesses: witnesses.len(),
        problems,
        ms,
    })
}

/// Evaluates every row of the sweep, in enumeration order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.equations().par_iter().map(|eq| evaluate(eq, spec)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepSummary {
    pub rows: usize,
    pub agree: usize,
    pub disagree: usize,
    pub unknown: usize,
    pub exact: usize,
    pub witnesses: usize,
}

pub fn summarise(rows: &[SweepRow]) -> SweepSummary {
    let mut s = SweepSummary { rows: rows.len(), ..Default::default() };
    for row in rows {
        if row.agree {
            s.agree += 1;
        } else {
            s.disagree += 1;
        }
        s.unknown += matches!(row.oracle, OracleResult::Unknown(_)) as usize;
        s.exact += matches!(row.theory.kind, OutcomeKind::Exact(_)) as usize;
        s.witnesses += row.witnesses;
    }
    s
}

/// Header of the CSV report.
pub const CSV_COLUMNS: [&str; 10] =
    ["coeffs", "c", "S", "kind", "lower", "upper", "oracle", "agree", "provenance", "ms"];

fn csv_record(row: &SweepRow) -> [String; 10] {
    let eq = row.equation();
    let coeffs: Vec<String> = eq.coeffs().iter().map(|a| a.to_string()).collect();
    let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
    let tags: Vec<&str> = row.theory.decisive().iter().map(|r| r.tag()).collect();
    [
        coeffs.join(","),
        eq.constant().to_string(),
        eq.sum().to_string(),
        row.theory.kind.label().to_string(),
        opt(row.theory.kind.lower()),
        opt(row.theory.kind.upper()),
        row.oracle.to_string(),
        row.agree.to_string(),
        tags.join("|"),
        row.ms.to_string(),
    ]
}

/// Writes the semicolon-separated report.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: csv::Error| RadoError::Io(e.to_string());
    let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for row in rows {
        w.write_record(csv_record(row)).map_err(io)?;
    }
    w.flush().map_err(|e| RadoError::Io(e.to_string()))
}

/// Full report: summary plus one object per row.
pub fn to_json(rows: &[SweepRow]) -> serde_json::Value {
    let s = summarise(rows);
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut v = row.theory.to_json();
            v["oracle"] = json!(row.oracle.to_string());
            v["agree"] = json!(row.agree);
            v["witnesses"] = json!(row.witnesses);
            if !row.problems.is_empty() {
                v["problems"] = json!(row.problems);
            }
            v["ms"] = json!(row.ms);
            v
        })
        .collect();
    json!({
        "summary": {
            "rows": s.rows, "agree": s.agree, "disagree": s.disagree,
            "unknown": s.unknown, "exact": s.exact, "witnesses": s.witnesses,
        },
        "rows": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_order() {
        assert_eq!(
            multisets_with_sum(4, 4),
            vec![vec![1, 1, 1, 1], vec![1, 1, 2], vec![1, 3], vec![2, 2], vec![4]]
        );
        assert_eq!(multisets_with_sum(4, 2), vec![vec![1, 1, 1, 1], vec![1, 1, 2], vec![2, 2]]);
    }

    #[test]
    fn equations_follow_sum_then_lex() {
        let spec = SweepSpec::new(2, 2, ConstantRange::Fixed(0, 1));
        let eqs: Vec<String> = spec.equations().iter().map(|e| e.to_string()).collect();
        assert_eq!(eqs, vec!["x1 - y = 0", "x1 - y = 1", "x1 + x2 - y = 0", "x1 + x2 - y = 1", "2*x1 - y = 0", "2*x1 - y = 1"]);
    }

    #[test]
    fn schur_row() {
        let spec = SweepSpec::new(2, 1, ConstantRange::Fixed(0, 0));
        let row = evaluate(&Equation::new(vec![1, 1], 0).unwrap(), &spec).unwrap();
        assert_eq!(row.oracle, OracleResult::Exact(5));
        assert!(row.agree, "{:?}", row.problems);
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "coeffs;c;S;kind;lower;upper;oracle;agree;provenance;ms\n1,1;0;2;exact;5;5;5;true;Thm c<S-1(iii);0\n"
        );
    }
}
