//! Reachable coefficient sums over a colour class, and the monochromatic
//! solution oracle built on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::colouring::Colouring;
use crate::equation::Equation;
use crate::error::{RadoError, Result};

/// Default bound on `|sum|` and on the width of the sum range.
pub const DEFAULT_SUM_CAPACITY: u64 = 1 << 24;

const UNREACHED: u32 = u32::MAX;

/// A monochromatic solution `sum ai*values[i] - xm = c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoSolution {
    pub values: Vec<i64>,
    pub xm: i64,
    pub colour: u8,
}

impl MonoSolution {
    /// Re-evaluates the solution against `eq` and `col`.
    pub fn verify(&self, eq: &Equation, col: &Colouring) -> bool {
        eq.is_solution(&self.values, self.xm)
            && self
                .values
                .iter()
                .chain(std::iter::once(&self.xm))
                .all(|&x| col.get(x) == Some(self.colour))
    }
}

/// j-fold sumsets of the class for one coefficient group, with predecessor
/// pointers (index into the sorted class) for witness recovery.
struct GroupLayers {
    coeff: u32,
    /// `layers[j - 1][s]` is the smallest class index `v` with `s - v`
    /// reachable as a `(j - 1)`-fold sum.
    layers: Vec<Vec<u32>>,
}

/// All sums `sum ai*vi` with every `vi` drawn from a fixed class.
///
/// Sums are stored relative to `S * min(class)`; entry `s` of a layer
/// stands for the value `s + j * min(class)`.
pub struct SumTable {
    class: Vec<i64>,
    min: i64,
    groups: Vec<GroupLayers>,
    /// `totals[g][s]`: smallest group-`g` contribution `d` such that
    /// `s - coeff_g * d` is reachable from the first `g` groups.
    totals: Vec<Vec<u32>>,
}

impl SumTable {
    pub fn new(eq: &Equation, class: &[i64]) -> Result<Self> {
        Self::with_capacity(eq, class, DEFAULT_SUM_CAPACITY)
    }

    pub fn with_capacity(eq: &Equation, class: &[i64], capacity: u64) -> Result<Self> {
        let mut class: Vec<i64> = class.to_vec();
        class.sort_unstable();
        class.dedup();
        let (&min, &max) = match (class.first(), class.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(RadoError::Precondition("class must be nonempty".into())),
        };
        let s = eq.sum() as u64;
        let width = (max - min) as u64;
        let needed = (s * width + 1)
            .max(s * min.unsigned_abs())
            .max(s * max.unsigned_abs());
        if needed > capacity {
            return Err(RadoError::Capacity { needed, capacity });
        }
        let width = width as usize;
        let offsets: Vec<usize> = class.iter().map(|&v| (v - min) as usize).collect();

        let mut groups = Vec::new();
        let mut totals: Vec<Vec<u32>> = Vec::new();
        let mut prev_total: Vec<bool> = vec![true];
        for (coeff, mult) in eq.groups() {
            let mut layers: Vec<Vec<u32>> = Vec::with_capacity(mult);
            for j in 1..=mult {
                let mut next = vec![UNREACHED; j * width + 1];
                for (ci, &v) in offsets.iter().enumerate() {
                    if j == 1 {
                        if next[v] == UNREACHED {
                            next[v] = ci as u32;
                        }
                        continue;
                    }
                    for (s, &p) in layers[j - 2].iter().enumerate() {
                        if p != UNREACHED && next[s + v] == UNREACHED {
                            next[s + v] = ci as u32;
                        }
                    }
                }
                layers.push(next);
            }
            let last = layers.last().expect("mult >= 1");
            let span = prev_total.len() - 1 + coeff as usize * (last.len() - 1);
            let mut total = vec![UNREACHED; span + 1];
            for (d, &p) in last.iter().enumerate() {
                if p == UNREACHED {
                    continue;
                }
                for (t, &ok) in prev_total.iter().enumerate() {
                    let idx = t + coeff as usize * d;
                    if ok && total[idx] == UNREACHED {
                        total[idx] = d as u32;
                    }
                }
            }
            prev_total = total.iter().map(|&p| p != UNREACHED).collect();
            totals.push(total);
            groups.push(GroupLayers { coeff, layers });
        }
        Ok(Self { class, min, groups, totals })
    }

    fn base(&self) -> i64 {
        let s: i64 = self
            .groups
            .iter()
            .map(|g| g.coeff as i64 * g.layers.len() as i64)
            .sum();
        s * self.min
    }

    fn index_of(&self, sum: i64) -> Option<usize> {
        let idx = sum - self.base();
        let last = self.totals.last()?;
        (idx >= 0 && (idx as usize) < last.len() && last[idx as usize] != UNREACHED)
            .then_some(idx as usize)
    }

    pub fn contains(&self, sum: i64) -> bool {
        self.index_of(sum).is_some()
    }

    pub fn sums(&self) -> BTreeSet<i64> {
        let base = self.base();
        self.totals
            .last()
            .map(|t| {
                t.iter()
                    .enumerate()
                    .filter(|(_, &p)| p != UNREACHED)
                    .map(|(s, _)| base + s as i64)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// One assignment of class values to coefficient positions reaching `sum`.
    ///
    /// Values follow the sorted coefficient order; within a run of equal
    /// coefficients they are ascending.
    pub fn witness(&self, sum: i64) -> Option<Vec<i64>> {
        let mut idx = self.index_of(sum)?;
        let mut per_group: Vec<Vec<i64>> = Vec::with_capacity(self.groups.len());
        for (g, group) in self.groups.iter().enumerate().rev() {
            let d = self.totals[g][idx] as usize;
            idx -= group.coeff as usize * d;
            let mut rest = d;
            let mut vals = Vec::with_capacity(group.layers.len());
            for layer in group.layers.iter().rev() {
                let ci = layer[rest] as usize;
                let v = self.class[ci];
                rest -= (v - self.min) as usize;
                vals.push(v);
            }
            vals.sort_unstable();
            per_group.push(vals);
        }
        per_group.reverse();
        Some(per_group.into_iter().flatten().collect())
    }
}

/// `{ sum ai*vi : every vi in class }`.
pub fn reachable_sums(eq: &Equation, class: &[i64]) -> Result<BTreeSet<i64>> {
    Ok(SumTable::new(eq, class)?.sums())
}

/// Finds a monochromatic solution of `eq` inside `col`, if any.
///
/// Colours are scanned in increasing order and, within a colour, the
/// smallest `xm` wins, so the result is deterministic.
pub fn find_mono_solution(eq: &Equation, col: &Colouring) -> Result<Option<MonoSolution>> {
    for k in 0..col.r() {
        let class = col.class(k);
        if class.is_empty() {
            continue;
        }
        let table = SumTable::new(eq, &class)?;
        for &xm in &class {
            if let Some(values) = table.witness(xm + eq.constant()) {
                return Ok(Some(MonoSolution { values, xm, colour: k }));
            }
        }
    }
    Ok(None)
}

/// True iff `col` has no monochromatic solution of `eq`.
pub fn is_valid_colouring(eq: &Equation, col: &Colouring) -> Result<bool> {
    Ok(find_mono_solution(eq, col)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(a: &[u32], c: i64) -> Equation {
        Equation::new(a.to_vec(), c).unwrap()
    }

    fn set(v: &[i64]) -> BTreeSet<i64> {
        v.iter().copied().collect()
    }

    #[test]
    fn reachable_sum_examples() {
        assert_eq!(reachable_sums(&eq(&[1, 1], 0), &[1]).unwrap(), set(&[2]));
        assert_eq!(reachable_sums(&eq(&[1, 2], 0), &[0, 1]).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(reachable_sums(&eq(&[1, 1, 1], 0), &[2, 3]).unwrap(), set(&[6, 7, 8, 9]));
    }

    #[test]
    fn negative_class_values() {
        let sums = reachable_sums(&eq(&[1, 3], 0), &[-2, 1]).unwrap();
        assert_eq!(sums, set(&[-8, -5, 1, 4]));
    }

    #[test]
    fn capacity_is_enforced() {
        let err = SumTable::with_capacity(&eq(&[1, 1], 0), &[1, 1000], 100).err().unwrap();
        assert!(matches!(err, RadoError::Capacity { .. }));
        assert!(SumTable::new(&eq(&[1], 0), &[]).is_err());
    }

    #[test]
    fn witnesses_prefer_small_values() {
        let t = SumTable::new(&eq(&[1, 1], 0), &[1, 4, 5]).unwrap();
        assert_eq!(t.witness(5), Some(vec![1, 4]));
        assert_eq!(t.witness(10), Some(vec![5, 5]));
        assert_eq!(t.witness(3), None);
    }

    #[test]
    fn mono_solution_examples() {
        let e = eq(&[1, 1], 0);
        let all0 = Colouring::constant(1, 5, 0, 2).unwrap();
        let sol = find_mono_solution(&e, &all0).unwrap().unwrap();
        assert_eq!((sol.values.clone(), sol.xm, sol.colour), (vec![1, 1], 2, 0));

        let schur: Colouring = "1..4:0110".parse().unwrap();
        assert!(find_mono_solution(&e, &schur).unwrap().is_none());
        assert!(is_valid_colouring(&e, &schur).unwrap());

        let col: Colouring = "1..5:01100".parse().unwrap();
        let sol = find_mono_solution(&e, &col).unwrap().unwrap();
        assert_eq!(sol.colour, 0);
        assert_eq!((sol.values.clone(), sol.xm), (vec![1, 4], 5));
        assert!(sol.verify(&e, &col));
    }

    #[test]
    fn single_point_interval_is_valid_for_schur() {
        let e = eq(&[1, 1], 0);
        for k in 0..2 {
            let col = Colouring::constant(1, 1, k, 2).unwrap();
            assert!(is_valid_colouring(&e, &col).unwrap());
        }
    }

    #[test]
    fn all_one_colour_up_to_rado_number_fails() {
        // Rad(x + y - z = 0) = 5
        let col = Colouring::constant(1, 5, 1, 2).unwrap();
        assert!(!is_valid_colouring(&eq(&[1, 1], 0), &col).unwrap());
    }
}
