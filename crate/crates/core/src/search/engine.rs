//! Bitset depth-first search for valid colourings of a fixed interval.
//!
//! Points are stored by offset from `lo`, so a solution of the equation on
//! `[lo, lo + n - 1]` is a solution of `sum ai*ui - w = shift` on offsets,
//! with `shift = c - (S - 1) * lo`. Every offset is nonnegative, which lets
//! all coefficient sums live in one bitset per colour.
//!
//! For each colour the engine keeps the j-fold sumsets of its class (one
//! layer per multiplicity) and the full coefficient sumset `R`. A class is
//! free of monochromatic solutions iff no member `w` has `w + shift` in `R`;
//! an unassigned point `u` may not take that colour if `u + shift` is in
//! `R`. Points left with a single admissible colour are assigned at once.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::equation::Equation;

const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Problem {
    n: usize,
    r: usize,
    shift: i64,
    groups: Vec<(usize, usize)>,
    max_mult: usize,
    nbits: usize,
    pw: usize,
    sw: usize,
}

impl Problem {
    pub(crate) fn new(eq: &Equation, lo: i64, n: usize, r: usize) -> Self {
        assert!(r >= 1 && r < UNSET as usize, "colour count out of range");
        let shift = eq.constant() - eq.sigma() * lo;
        let groups: Vec<(usize, usize)> =
            eq.groups().into_iter().map(|(a, k)| (a as usize, k)).collect();
        let max_mult = groups.iter().map(|g| g.1).max().unwrap_or(0);
        let s = eq.sum() as usize;
        // largest sum that can still name a point: (n - 1) + shift
        let wanted = n as i64 + shift;
        let nbits = wanted.clamp(0, (s * n.saturating_sub(1) + 1) as i64) as usize;
        Self {
            n,
            r,
            shift,
            groups,
            max_mult,
            nbits,
            pw: n.div_ceil(64),
            sw: nbits.div_ceil(64),
        }
    }

    fn layer_words(&self) -> usize {
        (self.max_mult + 1) * self.sw
    }
}

/// Mutable search state; cloned wholesale for backtracking.
#[derive(Debug, Clone)]
pub(crate) struct State {
    colour: Vec<u8>,
    unassigned: Vec<u64>,
    /// Per colour: member points (`pw` words).
    members: Vec<Vec<u64>>,
    /// Per colour: layers 0..=max_mult, `sw` words each.
    layers: Vec<Vec<u64>>,
    /// Per colour: the coefficient sumset.
    sums: Vec<Vec<u64>>,
    /// Per colour: points barred from the colour by `sums`.
    barred: Vec<Vec<u64>>,
}

impl State {
    fn new(p: &Problem) -> Self {
        let mut unassigned = vec![!0u64; p.pw];
        trim(&mut unassigned, p.n);
        let mut layer = vec![0u64; p.layer_words()];
        if p.nbits > 0 {
            layer[0] = 1;
        }
        Self {
            colour: vec![UNSET; p.n],
            unassigned,
            members: vec![vec![0; p.pw]; p.r],
            layers: vec![layer; p.r],
            sums: vec![vec![0; p.sw]; p.r],
            barred: vec![vec![0; p.pw]; p.r],
        }
    }

    pub(crate) fn colours(&self) -> &[u8] {
        &self.colour
    }
}

fn trim(words: &mut [u64], bits: usize) {
    let full = bits / 64;
    if full < words.len() {
        let rem = bits % 64;
        words[full] &= if rem == 0 { 0 } else { (1u64 << rem) - 1 };
        for w in &mut words[full + 1..] {
            *w = 0;
        }
    }
}

fn test_bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn clear_bit(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1 << (i % 64));
}

/// `dst |= src << by`, truncated to `bits`.
fn or_shifted(dst: &mut [u64], src: &[u64], by: usize, bits: usize) {
    let (wshift, bshift) = (by / 64, by % 64);
    if wshift >= dst.len() {
        return;
    }
    for i in (wshift..dst.len()).rev() {
        let j = i - wshift;
        if j >= src.len() {
            continue;
        }
        let mut v = src[j] << bshift;
        if bshift > 0 && j > 0 {
            v |= src[j - 1] >> (64 - bshift);
        }
        dst[i] |= v;
    }
    trim(dst, bits);
}

/// `out[u] = src[u + offset]` for every `u < out_bits`.
fn shifted_view(out: &mut [u64], out_bits: usize, src: &[u64], src_bits: usize, offset: i64) {
    for w in out.iter_mut() {
        *w = 0;
    }
    if offset >= 0 {
        let off = offset as usize;
        if off >= src_bits {
            return;
        }
        let (ws, bs) = (off / 64, off % 64);
        for (i, o) in out.iter_mut().enumerate() {
            let j = i + ws;
            if j >= src.len() {
                break;
            }
            let mut v = src[j] >> bs;
            if bs > 0 && j + 1 < src.len() {
                v |= src[j + 1] << (64 - bs);
            }
            *o = v;
        }
    } else {
        let off = (-offset) as usize;
        if off >= out_bits {
            return;
        }
        let (ws, bs) = (off / 64, off % 64);
        for (j, o) in out[ws..].iter_mut().enumerate() {
            if j > src.len() {
                break;
            }
            let mut v = if j < src.len() { src[j] << bs } else { 0 };
            if bs > 0 && j > 0 {
                v |= src[j - 1] >> (64 - bs);
            }
            *o = v;
        }
    }
    trim(out, out_bits.min((src_bits as i64 - offset).max(0) as usize));
}

/// `{a * i : i in src}`, truncated to `bits`.
fn dilate(src: &[u64], a: usize, bits: usize, out: &mut [u64]) {
    if a == 1 {
        out.copy_from_slice(src);
        return;
    }
    for w in out.iter_mut() {
        *w = 0;
    }
    for (wi, &w) in src.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            let i = (wi * 64 + b) * a;
            if i >= bits {
                return;
            }
            set_bit(out, i);
        }
    }
}

/// Minkowski sum of two bitsets, truncated to `bits`.
fn minkowski(a: &[u64], b: &[u64], bits: usize, out: &mut [u64]) {
    for w in out.iter_mut() {
        *w = 0;
    }
    let count = |v: &[u64]| v.iter().map(|w| w.count_ones()).sum::<u32>();
    let (sparse, dense) = if count(a) <= count(b) { (a, b) } else { (b, a) };
    for (wi, &w) in sparse.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            let by = wi * 64 + bit;
            if by >= bits {
                return;
            }
            or_shifted(out, dense, by, bits);
        }
    }
}

pub(crate) struct Engine<'a> {
    p: &'a Problem,
    hint: &'a [u8],
    symmetry: bool,
    budget: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    scratch: Vec<u64>,
    scratch2: Vec<u64>,
}

/// Why a search stopped before deciding its instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OutOfBudget;

impl<'a> Engine<'a> {
    pub(crate) fn new(
        p: &'a Problem,
        hint: &'a [u8],
        symmetry: bool,
        budget: u64,
        nodes: &'a AtomicU64,
        stop: &'a AtomicBool,
    ) -> Self {
        Self {
            p,
            hint,
            symmetry,
            budget,
            nodes,
            stop,
            scratch: vec![0; p.sw],
            scratch2: vec![0; p.sw],
        }
    }

    pub(crate) fn initial_state(&self) -> State {
        State::new(self.p)
    }

    fn add_point(&self, st: &mut State, u: usize, k: usize) {
        let p = self.p;
        st.colour[u] = k as u8;
        clear_bit(&mut st.unassigned, u);
        set_bit(&mut st.members[k], u);
        let sw = p.sw;
        if sw == 0 {
            return;
        }
        let layers = &mut st.layers[k];
        for j in 1..=p.max_mult {
            let (lower, upper) = layers.split_at_mut(j * sw);
            or_shifted(&mut upper[..sw], &lower[(j - 1) * sw..], u, p.nbits);
        }
    }

    fn rebuild_sums(&mut self, st: &mut State, k: usize) {
        let p = self.p;
        let sw = p.sw;
        if sw == 0 {
            return;
        }
        let layers = &st.layers[k];
        let layer = |m: usize| &layers[m * sw..(m + 1) * sw];
        let (a0, m0) = p.groups[0];
        dilate(layer(m0), a0, p.nbits, &mut st.sums[k]);
        for &(a, m) in &p.groups[1..] {
            dilate(layer(m), a, p.nbits, &mut self.scratch);
            self.scratch2.copy_from_slice(&st.sums[k]);
            minkowski(&self.scratch2, &self.scratch, p.nbits, &mut st.sums[k]);
        }
    }

    fn refresh_barred(&self, st: &mut State, k: usize) {
        let p = self.p;
        if p.sw == 0 {
            return;
        }
        shifted_view(&mut st.barred[k], p.n, &st.sums[k], p.nbits, p.shift);
    }

    /// Assigns the given points and propagates forced colours; false on conflict.
    fn assign(&mut self, st: &mut State, first: (usize, usize)) -> bool {
        let p = self.p;
        let mut pending = vec![first];
        let mut dirty = vec![false; p.r];
        loop {
            for &(u, k) in &pending {
                self.add_point(st, u, k);
                dirty[k] = true;
            }
            pending.clear();
            while let Some(k) = dirty.iter().position(|&d| d) {
                dirty[k] = false;
                self.rebuild_sums(st, k);
                self.refresh_barred(st, k);
                if st.members[k].iter().zip(&st.barred[k]).any(|(m, b)| m & b != 0) {
                    return false;
                }
            }
            for w in 0..p.pw {
                let free = st.unassigned[w];
                if free == 0 {
                    continue;
                }
                let (mut ones, mut twos) = (0u64, 0u64);
                for k in 0..p.r {
                    let open = free & !st.barred[k][w];
                    twos |= ones & open;
                    ones |= open;
                }
                if free & !ones != 0 {
                    return false;
                }
                let mut forced = free & ones & !twos;
                while forced != 0 {
                    let b = forced.trailing_zeros() as usize;
                    forced &= forced - 1;
                    let u = w * 64 + b;
                    let k = (0..p.r)
                        .find(|&k| !test_bit(&st.barred[k], u))
                        .expect("exactly one open colour");
                    pending.push((u, k));
                }
            }
            if pending.is_empty() {
                return true;
            }
        }
    }

    /// Children of the node whose next free point is `cursor`, in search order.
    fn choices(&self, st: &State, cursor: usize, maxcol: i64) -> Vec<usize> {
        let p = self.p;
        let limit = if self.symmetry { (maxcol + 1).min(p.r as i64 - 1) as usize } else { p.r - 1 };
        let mut out = Vec::with_capacity(p.r);
        if let Some(&h) = self.hint.get(cursor) {
            let h = h as usize;
            if h <= limit && !test_bit(&st.barred[h], cursor) {
                out.push(h);
            }
        }
        for k in 0..=limit {
            if !out.contains(&k) && !test_bit(&st.barred[k], cursor) {
                out.push(k);
            }
        }
        out
    }

    /// Skips already coloured points, enforcing first-use colour order.
    fn advance(&self, st: &State, mut cursor: usize, mut maxcol: i64) -> Option<(usize, i64)> {
        while cursor < self.p.n && st.colour[cursor] != UNSET {
            let k = st.colour[cursor] as i64;
            if self.symmetry && k > maxcol + 1 {
                return None;
            }
            maxcol = maxcol.max(k);
            cursor += 1;
        }
        Some((cursor, maxcol))
    }

    fn tick(&self) -> Result<(), OutOfBudget> {
        if self.stop.load(Ordering::Relaxed) {
            return Err(OutOfBudget);
        }
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            self.stop.store(true, Ordering::Relaxed);
            return Err(OutOfBudget);
        }
        Ok(())
    }

    /// Finds the first valid completion of `st` in search order.
    pub(crate) fn solve(
        &mut self,
        st: &State,
        cursor: usize,
        maxcol: i64,
    ) -> Result<Option<State>, OutOfBudget> {
        let Some((cursor, maxcol)) = self.advance(st, cursor, maxcol) else {
            return Ok(None);
        };
        if cursor == self.p.n {
            return Ok(Some(st.clone()));
        }
        self.tick()?;
        for k in self.choices(st, cursor, maxcol) {
            let mut child = st.clone();
            if self.assign(&mut child, (cursor, k)) {
                if let Some(done) = self.solve(&child, cursor + 1, maxcol.max(k as i64))? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }

    /// Counts valid completions of `st`.
    pub(crate) fn count(&mut self, st: &State, cursor: usize, maxcol: i64) -> Result<u64, OutOfBudget> {
        let Some((cursor, maxcol)) = self.advance(st, cursor, maxcol) else {
            return Ok(0);
        };
        if cursor == self.p.n {
            return Ok(1);
        }
        self.tick()?;
        let mut total = 0;
        for k in self.choices(st, cursor, maxcol) {
            let mut child = st.clone();
            if self.assign(&mut child, (cursor, k)) {
                total += self.count(&child, cursor + 1, maxcol.max(k as i64))?;
            }
        }
        Ok(total)
    }

    /// Open nodes at `depth` branching decisions below `st`, in search order.
    /// Finished leaves met on the way are returned as frontier entries too.
    pub(crate) fn frontier(
        &mut self,
        st: &State,
        cursor: usize,
        maxcol: i64,
        depth: usize,
        out: &mut Vec<(State, usize, i64)>,
    ) -> Result<(), OutOfBudget> {
        let Some((cursor, maxcol)) = self.advance(st, cursor, maxcol) else {
            return Ok(());
        };
        if depth == 0 || cursor == self.p.n {
            out.push((st.clone(), cursor, maxcol));
            return Ok(());
        }
        self.tick()?;
        for k in self.choices(st, cursor, maxcol) {
            let mut child = st.clone();
            if self.assign(&mut child, (cursor, k)) {
                self.frontier(&child, cursor + 1, maxcol.max(k as i64), depth - 1, out)?;
            }
        }
        Ok(())
    }
}

/// Result of one fixed-interval satisfiability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Decision {
    Valid(Vec<u8>),
    NoneExists,
    OutOfBudget,
}

pub(crate) struct SolveOptions<'a> {
    pub symmetry: bool,
    pub parallel: bool,
    pub split_depth: usize,
    pub budget: u64,
    pub nodes: &'a AtomicU64,
}

/// Looks for a valid colouring of `[lo, lo + n - 1]` with `r` colours.
pub(crate) fn decide(eq: &Equation, lo: i64, n: usize, r: usize, hint: &[u8], opts: &SolveOptions) -> Decision {
    let p = Problem::new(eq, lo, n, r);
    let stop = AtomicBool::new(false);
    let mut engine = Engine::new(&p, hint, opts.symmetry, opts.budget, opts.nodes, &stop);
    let root = engine.initial_state();
    if !opts.parallel {
        return match engine.solve(&root, 0, -1) {
            Ok(Some(st)) => Decision::Valid(st.colours().to_vec()),
            Ok(None) => Decision::NoneExists,
            Err(OutOfBudget) => Decision::OutOfBudget,
        };
    }
    let mut front = Vec::new();
    if engine.frontier(&root, 0, -1, opts.split_depth, &mut front).is_err() {
        return Decision::OutOfBudget;
    }
    let results: Vec<Result<Option<Vec<u8>>, OutOfBudget>> = front
        .par_iter()
        .map(|(st, cursor, maxcol)| {
            let mut e = Engine::new(&p, hint, opts.symmetry, opts.budget, opts.nodes, &stop);
            e.solve(st, *cursor, *maxcol).map(|o| o.map(|s| s.colours().to_vec()))
        })
        .collect();
    // first frontier entry in search order decides, exactly as the sequential walk would
    for res in results {
        match res {
            Ok(Some(c)) => return Decision::Valid(c),
            Ok(None) => continue,
            Err(OutOfBudget) => return Decision::OutOfBudget,
        }
    }
    Decision::NoneExists
}

/// Number of valid colourings of `[lo, lo + n - 1]`, optionally up to colour relabelling.
pub(crate) fn count_valid(
    eq: &Equation,
    lo: i64,
    n: usize,
    r: usize,
    symmetry: bool,
    budget: u64,
) -> Result<u64, OutOfBudget> {
    let p = Problem::new(eq, lo, n, r);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut engine = Engine::new(&p, &[], symmetry, budget, &nodes, &stop);
    let root = engine.initial_state();
    engine.count(&root, 0, -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifting_bitsets() {
        let src = vec![0b1011u64, 1 << 63];
        let mut dst = vec![0u64; 2];
        or_shifted(&mut dst, &src, 1, 128);
        assert_eq!(dst, vec![0b10110, 0]);
        let mut dst = vec![0u64; 3];
        or_shifted(&mut dst, &src, 64, 130);
        assert_eq!(dst, vec![0, 0b1011, 0]);

        let mut out = vec![0u64; 1];
        shifted_view(&mut out, 10, &[0b1_0100], 5, 2);
        assert_eq!(out, vec![0b101]);
        shifted_view(&mut out, 10, &[0b101], 3, -3);
        assert_eq!(out, vec![0b101000]);

        // the top word of a shorter source still carries into the next output word
        let mut out = vec![0u64; 2];
        shifted_view(&mut out, 128, &[1 << 63], 64, -2);
        assert_eq!(out, vec![0, 0b10]);
    }

    #[test]
    fn dilation_and_minkowski() {
        let mut out = vec![0u64; 1];
        dilate(&[0b111], 3, 64, &mut out);
        assert_eq!(out, vec![0b1001001]);
        minkowski(&[0b11], &[0b101], 64, &mut out);
        assert_eq!(out, vec![0b1111]);
        minkowski(&[0b11], &[0b101], 3, &mut out);
        assert_eq!(out, vec![0b111]);
    }

    #[test]
    fn counts_schur_colourings() {
        let eq = Equation::new(vec![1, 1], 0).unwrap();
        // [1,4] admits 0110 and 1001 only
        assert_eq!(count_valid(&eq, 1, 4, 2, false, u64::MAX), Ok(2));
        assert_eq!(count_valid(&eq, 1, 4, 2, true, u64::MAX), Ok(1));
        assert_eq!(count_valid(&eq, 1, 5, 2, false, u64::MAX), Ok(0));
    }
}
