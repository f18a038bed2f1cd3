//! Set distribution coefficients and t-distributability.
//!
//! A set distribution coefficient counts the ways to split the positions of
//! a coefficient multiset into `t` labeled (possibly empty) blocks whose
//! coefficient sums hit prescribed targets. A multiset is t-distributable
//! when every nonnegative target tuple with the right total is reachable.
//! Each closed form here has a brute-force twin that enumerates block
//! assignments directly.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{RadoError, Result};

/// Largest multiset size [`sdc_bruteforce`] enumerates by default.
pub const DEFAULT_BRUTEFORCE_MAX_LEN: usize = 16;
/// Largest coefficient total [`is_t_distributable_bruteforce`] accepts by default.
pub const DEFAULT_BRUTEFORCE_MAX_SUM: u64 = 24;

/// A coefficient multiset together with an ordered tuple of block targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SdcQuery {
    pub coeffs: Vec<u64>,
    pub targets: Vec<u64>,
}

impl SdcQuery {
    pub fn new(coeffs: impl Into<Vec<u64>>, targets: impl Into<Vec<u64>>) -> Result<Self> {
        let coeffs = coeffs.into();
        if coeffs.contains(&0) {
            return Err(RadoError::Precondition("coefficients must be positive".into()));
        }
        Ok(Self { coeffs, targets: targets.into() })
    }

    fn balanced(&self) -> bool {
        self.coeffs.iter().sum::<u64>() == self.targets.iter().sum::<u64>()
    }
}

/// Counts labeled block assignments through the peel-off-the-last-coefficient
/// recurrence, memoized on the prefix length and the sorted remaining targets.
pub fn sdc(q: &SdcQuery) -> Result<u128> {
    if !q.balanced() {
        return Ok(0);
    }
    let mut memo = HashMap::new();
    let mut targets = q.targets.clone();
    targets.sort_unstable_by(|a, b| b.cmp(a));
    sdc_rec(&q.coeffs, q.coeffs.len(), targets, &mut memo)
}

fn sdc_rec(
    coeffs: &[u64],
    k: usize,
    targets: Vec<u64>,
    memo: &mut HashMap<(usize, Vec<u64>), u128>,
) -> Result<u128> {
    if k == 0 {
        return Ok(targets.iter().all(|&t| t == 0) as u128);
    }
    if let Some(&v) = memo.get(&(k, targets.clone())) {
        return Ok(v);
    }
    let a = coeffs[k - 1];
    let mut total: u128 = 0;
    for j in 0..targets.len() {
        if targets[j] < a {
            continue;
        }
        let mut next = targets.clone();
        next[j] -= a;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let sub = sdc_rec(coeffs, k - 1, next, memo)?;
        total = total.checked_add(sub).ok_or(RadoError::Overflow)?;
    }
    memo.insert((k, targets), total);
    Ok(total)
}

/// Counts every labeled block-sum tuple reached by the `t^k` assignments of
/// positions to blocks.
pub fn block_sum_counts(coeffs: &[u64], t: usize) -> Result<HashMap<Vec<u64>, u128>> {
    if coeffs.len() > DEFAULT_BRUTEFORCE_MAX_LEN {
        return Err(RadoError::CapExceeded(format!(
            "{} coefficients (cap {DEFAULT_BRUTEFORCE_MAX_LEN})",
            coeffs.len()
        )));
    }
    let mut counts = HashMap::new();
    if t == 0 {
        if coeffs.is_empty() {
            counts.insert(Vec::new(), 1);
        }
        return Ok(counts);
    }
    let mut sums = vec![0u64; t];
    enumerate_blocks(coeffs, &mut sums, &mut counts);
    Ok(counts)
}

fn enumerate_blocks(coeffs: &[u64], sums: &mut [u64], counts: &mut HashMap<Vec<u64>, u128>) {
    match coeffs.split_first() {
        None => *counts.entry(sums.to_vec()).or_insert(0) += 1,
        Some((&a, rest)) => {
            for j in 0..sums.len() {
                sums[j] += a;
                enumerate_blocks(rest, sums, counts);
                sums[j] -= a;
            }
        }
    }
}

/// Same contract as [`sdc`], by enumerating all `t^k` assignments.
pub fn sdc_bruteforce(q: &SdcQuery) -> Result<u128> {
    let counts = block_sum_counts(&q.coeffs, q.targets.len())?;
    Ok(counts.get(&q.targets).copied().unwrap_or(0))
}

/// Outcome of the prefix-sum test for t-distributability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributabilityReport {
    /// Sorted coefficients.
    pub coeffs: Vec<u64>,
    pub t: usize,
    pub holds: bool,
    /// 1-based position of the first `a_i > ceil(s_i / t)`.
    pub failing_index: Option<usize>,
    #[serde(skip)]
    pub partial_sums: Vec<u64>,
}

/// Checks `a_i <= ceil(s_i / t)` along the sorted multiset, where `s_i` is
/// the running sum.
pub fn is_t_distributable(coeffs: &[u64], t: usize) -> DistributabilityReport {
    assert!(t >= 1, "t must be positive");
    let mut sorted = coeffs.to_vec();
    sorted.sort_unstable();
    let mut partial_sums = Vec::with_capacity(sorted.len());
    let mut failing_index = None;
    let mut s = 0u64;
    for (i, &a) in sorted.iter().enumerate() {
        s += a;
        partial_sums.push(s);
        if failing_index.is_none() && a > s.div_ceil(t as u64) {
            failing_index = Some(i + 1);
        }
    }
    DistributabilityReport { coeffs: sorted, t, holds: failing_index.is_none(), partial_sums, failing_index }
}

/// Convenience wrapper around [`is_t_distributable`] for `u32` coefficients.
pub fn distributable(coeffs: &[u32], t: usize) -> bool {
    let wide: Vec<u64> = coeffs.iter().map(|&a| a as u64).collect();
    is_t_distributable(&wide, t).holds
}

/// Tests every nondecreasing target tuple for a positive coefficient, using
/// one enumeration of block assignments.
pub fn is_t_distributable_bruteforce(coeffs: &[u64], t: usize) -> Result<bool> {
    let total: u64 = coeffs.iter().sum();
    if total > DEFAULT_BRUTEFORCE_MAX_SUM {
        return Err(RadoError::CapExceeded(format!(
            "coefficient sum {total} (cap {DEFAULT_BRUTEFORCE_MAX_SUM})"
        )));
    }
    let counts = block_sum_counts(coeffs, t)?;
    let mut ok = true;
    for_each_sorted_tuple(total, t, &mut |tuple| {
        ok &= counts.get(tuple).is_some_and(|&n| n > 0);
    });
    Ok(ok)
}

/// Calls `f` on each nondecreasing `t`-tuple of nonnegative integers with
/// the given total.
pub fn for_each_sorted_tuple(total: u64, t: usize, f: &mut impl FnMut(&[u64])) {
    fn go(rem: u64, min: u64, slots: usize, buf: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if slots == 1 {
            if rem >= min {
                buf.push(rem);
                f(buf);
                buf.pop();
            }
            return;
        }
        let mut v = min;
        while v * slots as u64 <= rem {
            buf.push(v);
            go(rem - v, v, slots - 1, buf, f);
            buf.pop();
            v += 1;
        }
    }
    if t == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    go(total, 0, t, &mut Vec::with_capacity(t), f);
}

/// Finite completeness test: after sorting, `u1 = 1` and `u_n <= s_{n-1} + 1`.
pub fn is_complete_sequence(u: &[u64]) -> bool {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    if sorted.first() != Some(&1) {
        return false;
    }
    let mut s = 0u64;
    for &x in &sorted {
        if s > 0 && x > s + 1 {
            return false;
        }
        s += x;
    }
    true
}
