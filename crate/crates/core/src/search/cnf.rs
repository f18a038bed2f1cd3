//! DIMACS encoding of "a valid r-colouring of [1, N] exists".
//!
//! With two colours, point `k` is variable `k` (true means colour 1) and each
//! solution support contributes one clause per colour forbidding it from
//! being monochromatic. With `r > 2` colours, point `p` in colour `k` is
//! variable `(p - 1) * r + k + 1`, every point gets an at-least-one-colour
//! clause, and each support gets one negative clause per colour.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::equation::Equation;
use crate::error::{RadoError, Result};

/// Default cap on emitted clauses.
pub const DEFAULT_CLAUSE_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comments: Vec<String>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Evaluates the formula under `assignment[v - 1]` for variable `v`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                let v = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Strict DIMACS reader: header first (after comments), 0-terminated
/// clauses, literals within range, clause count matching the header.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let bad = |msg: String| RadoError::Parse(format!("dimacs: {msg}"));
    let mut cnf = Cnf::default();
    let mut header: Option<(usize, usize)> = None;
    let mut current: Vec<i64> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if header.is_some() {
                return Err(bad(format!("line {}: comment after header", lineno + 1)));
            }
            cnf.comments.push(rest.trim().to_string());
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(bad(format!("line {}: malformed header", lineno + 1)));
            }
            let vars = parts[2].parse().map_err(|_| bad("bad variable count".into()))?;
            let clauses = parts[3].parse().map_err(|_| bad("bad clause count".into()))?;
            header = Some((vars, clauses));
            cnf.num_vars = vars;
            continue;
        }
        let (vars, _) = header.ok_or_else(|| bad("clause before header".into()))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                cnf.clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(bad(format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (_, expected) = header.ok_or_else(|| bad("missing header".into()))?;
    if !current.is_empty() {
        return Err(bad("unterminated clause".into()));
    }
    if cnf.clauses.len() != expected {
        return Err(bad(format!("header promises {expected} clauses, found {}", cnf.clauses.len())));
    }
    Ok(cnf)
}

/// Distinct point sets of solutions inside `[1, n]`, each sorted.
fn solution_supports(eq: &Equation, n: i64, cap: usize) -> Result<BTreeSet<Vec<i64>>> {
    let coeffs: Vec<i64> = eq.coeffs().iter().map(|&a| a as i64).collect();
    let k = coeffs.len();
    // reach[i][s]: positions i.. can sum to s with values in [1, n]
    let max_sum = eq.sum() * n;
    let mut reach = vec![vec![false; max_sum as usize + 1]; k + 1];
    reach[k][0] = true;
    for i in (0..k).rev() {
        let (head, tail) = reach.split_at_mut(i + 1);
        let next = &tail[0];
        for (s, &ok) in next.iter().enumerate() {
            if !ok {
                continue;
            }
            for v in 1..=n {
                let t = s + (coeffs[i] * v) as usize;
                if t <= max_sum as usize {
                    head[i][t] = true;
                }
            }
        }
    }
    let mut supports = BTreeSet::new();
    let mut values = vec![0i64; k];
    for y in 1..=n {
        let target = y + eq.constant();
        if target < 0 || target > max_sum || !reach[0][target as usize] {
            continue;
        }
        walk(&coeffs, &reach, n, 0, target, 1, &mut values, &mut |vals| {
            let mut support: Vec<i64> = vals.to_vec();
            support.push(y);
            support.sort_unstable();
            support.dedup();
            supports.insert(support);
            supports.len() <= cap
        });
        if supports.len() > cap {
            return Err(RadoError::CapExceeded(format!("more than {cap} solution supports")));
        }
    }
    Ok(supports)
}

/// Back-traces every value assignment reaching `rem`, keeping values
/// nondecreasing across equal coefficients. Stops when `f` returns false.
#[allow(clippy::too_many_arguments)]
fn walk(
    coeffs: &[i64],
    reach: &[Vec<bool>],
    n: i64,
    i: usize,
    rem: i64,
    floor: i64,
    values: &mut [i64],
    f: &mut impl FnMut(&[i64]) -> bool,
) -> bool {
    if i == coeffs.len() {
        return rem != 0 || f(values);
    }
    for v in floor..=n {
        let left = rem - coeffs[i] * v;
        if left < 0 {
            break;
        }
        if !reach[i + 1][left as usize] {
            continue;
        }
        values[i] = v;
        let next_floor = if i + 1 < coeffs.len() && coeffs[i + 1] == coeffs[i] { v } else { 1 };
        if !walk(coeffs, reach, n, i + 1, left, next_floor, values, f) {
            return false;
        }
    }
    true
}

/// CNF that is satisfiable iff `[1, n]` has a valid `r`-colouring.
pub fn export_cnf(eq: &Equation, n: u64, r: usize) -> Result<Cnf> {
    export_cnf_capped(eq, n, r, DEFAULT_CLAUSE_CAP)
}

pub fn export_cnf_capped(eq: &Equation, n: u64, r: usize, clause_cap: usize) -> Result<Cnf> {
    if r < 2 {
        return Err(RadoError::Precondition("CNF export needs at least two colours".into()));
    }
    if n == 0 {
        return Err(RadoError::Precondition("empty interval".into()));
    }
    let n = n as i64;
    let supports = solution_supports(eq, n, clause_cap)?;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let total = if r == 2 { 2 * supports.len() } else { n as usize + r * supports.len() };
    if total > clause_cap {
        return Err(RadoError::CapExceeded(format!("{total} clauses (cap {clause_cap})")));
    }
    let num_vars = if r == 2 { n as usize } else { n as usize * r };
    if r == 2 {
        for s in &supports {
            clauses.push(s.iter().map(|&p| -p).collect());
            clauses.push(s.clone());
        }
    } else {
        let var = |p: i64, k: usize| (p - 1) * r as i64 + k as i64 + 1;
        for p in 1..=n {
            clauses.push((0..r).map(|k| var(p, k)).collect());
        }
        for s in &supports {
            for k in 0..r {
                clauses.push(s.iter().map(|&p| -var(p, k)).collect());
            }
        }
    }
    let coeffs: Vec<String> = eq.coeffs().iter().map(|a| a.to_string()).collect();
    let comments = vec![
        format!("valid {r}-colourings of [1, {n}]"),
        format!("coeffs {} c {}", coeffs.join(","), eq.constant()),
    ];
    Ok(Cnf { num_vars, clauses, comments })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_pair_clauses() {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        let cnf = export_cnf(&eq, 2, 2).unwrap();
        assert_eq!(cnf.num_vars, 2);
        assert_eq!(cnf.clauses, vec![vec![-1, -2], vec![1, 2]]);
        let text = cnf.to_dimacs();
        assert!(text.contains("p cnf 2 2\n-1 -2 0\n1 2 0\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), cnf);
    }

    #[test]
    fn supports_deduplicate() {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        let s = solution_supports(&eq, 4, usize::MAX).unwrap();
        let want: BTreeSet<Vec<i64>> =
            [vec![1, 2], vec![1, 2, 3], vec![2, 4], vec![1, 3, 4]].into_iter().collect();
        assert_eq!(s, want);
    }

    #[test]
    fn multi_colour_layout() {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        let cnf = export_cnf(&eq, 3, 3).unwrap();
        assert_eq!(cnf.num_vars, 9);
        assert_eq!(cnf.clauses[0], vec![1, 2, 3]);
        // support {1,2} in colour 0: points 1 and 2 -> vars 1 and 4
        assert!(cnf.clauses.contains(&vec![-1, -4]));
    }

    #[test]
    fn caps_and_errors() {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        assert!(export_cnf_capped(&eq, 20, 2, 10).is_err());
        assert!(export_cnf(&eq, 4, 1).is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }
}
