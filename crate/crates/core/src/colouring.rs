//! Dense colourings of an integer interval.
//!
//! Two-colourings are bit-packed; anything wider stores one byte per point.
//! The text form is `lo..hi:` followed by one digit per point, for example
//! `1..4:0110`.

use std::fmt;
use std::str::FromStr;

use crate::error::{RadoError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Store {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

/// An assignment of a colour in `0..r` to every integer of `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    lo: i64,
    len: usize,
    r: u8,
    store: Store,
}

impl Colouring {
    /// Builds a colouring of `[lo, lo + colours.len() - 1]`.
    pub fn new(lo: i64, colours: &[u8], r: u8) -> Result<Self> {
        if r == 0 {
            return Err(RadoError::InvalidColouring("need at least one colour".into()));
        }
        if colours.is_empty() {
            return Err(RadoError::InvalidColouring("empty interval".into()));
        }
        if let Some(&bad) = colours.iter().find(|&&k| k >= r) {
            return Err(RadoError::InvalidColouring(format!(
                "colour {bad} out of range for r = {r}"
            )));
        }
        let store = if r <= 2 {
            let mut words = vec![0u64; colours.len().div_ceil(64)];
            for (i, &k) in colours.iter().enumerate() {
                if k == 1 {
                    words[i / 64] |= 1 << (i % 64);
                }
            }
            Store::Bits(words)
        } else {
            Store::Bytes(colours.to_vec())
        };
        Ok(Self { lo, len: colours.len(), r, store })
    }

    /// Colours `[lo, hi]` with `f(x)`.
    pub fn from_fn(lo: i64, hi: i64, r: u8, f: impl Fn(i64) -> u8) -> Result<Self> {
        if hi < lo {
            return Err(RadoError::InvalidColouring(format!("empty interval [{lo}, {hi}]")));
        }
        let colours: Vec<u8> = (lo..=hi).map(f).collect();
        Self::new(lo, &colours, r)
    }

    pub fn constant(lo: i64, hi: i64, colour: u8, r: u8) -> Result<Self> {
        Self::from_fn(lo, hi, r, |_| colour)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.len as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && x <= self.hi()
    }

    /// Colour of the `i`-th point of the interval (offset from `lo`).
    fn at(&self, i: usize) -> u8 {
        match &self.store {
            Store::Bits(w) => ((w[i / 64] >> (i % 64)) & 1) as u8,
            Store::Bytes(b) => b[i],
        }
    }

    pub fn get(&self, x: i64) -> Option<u8> {
        self.contains(x).then(|| self.at((x - self.lo) as usize))
    }

    /// Colour of `x`; panics outside the interval.
    pub fn colour(&self, x: i64) -> u8 {
        self.get(x)
            .unwrap_or_else(|| panic!("{x} lies outside [{}, {}]", self.lo, self.hi()))
    }

    pub fn colours(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.at(i)).collect()
    }

    /// The points of colour `k`, ascending.
    pub fn class(&self, k: u8) -> Vec<i64> {
        (0..self.len)
            .filter(|&i| self.at(i) == k)
            .map(|i| self.lo + i as i64)
            .collect()
    }

    /// Same colours, interval moved by `delta`.
    pub fn translated(&self, delta: i64) -> Self {
        Self { lo: self.lo + delta, ..self.clone() }
    }

    /// Restricts to `[lo, hi]`, which must lie inside the current interval.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi || !self.contains(lo) || !self.contains(hi) {
            return Err(RadoError::InvalidColouring(format!(
                "[{lo}, {hi}] is not inside [{}, {}]",
                self.lo,
                self.hi()
            )));
        }
        let colours: Vec<u8> = (lo..=hi).map(|x| self.colour(x)).collect();
        Self::new(lo, &colours, self.r)
    }

    /// Appends one point of colour `k` at `hi + 1`.
    pub fn extended(&self, k: u8) -> Result<Self> {
        let mut colours = self.colours();
        colours.push(k);
        Self::new(self.lo, &colours, self.r)
    }

    /// The same colouring viewed with `r` colours (`r` must cover every colour used).
    pub fn with_r(&self, r: u8) -> Result<Self> {
        Self::new(self.lo, &self.colours(), r)
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}:", self.lo, self.hi())?;
        for i in 0..self.len {
            let k = self.at(i);
            if k < 10 {
                write!(f, "{}", (b'0' + k) as char)?;
            } else {
                write!(f, "{}", (b'a' + k - 10) as char)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Colouring {
    type Err = RadoError;

    /// Parses `lo..hi:digits`; the colour count is `max(2, largest digit + 1)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| RadoError::Parse(format!("colouring {s:?}: {msg}"));
        let (range, digits) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let (lo, hi) = range.split_once("..").ok_or_else(|| bad("missing '..'"))?;
        let lo: i64 = lo.parse().map_err(|_| bad("bad lower end"))?;
        let hi: i64 = hi.parse().map_err(|_| bad("bad upper end"))?;
        if hi < lo {
            return Err(bad("empty interval"));
        }
        let colours: Vec<u8> = digits
            .chars()
            .map(|ch| match ch {
                '0'..='9' => Ok(ch as u8 - b'0'),
                'a'..='z' => Ok(ch as u8 - b'a' + 10),
                _ => Err(bad("colours must be digits")),
            })
            .collect::<Result<_>>()?;
        if colours.len() as i64 != hi - lo + 1 {
            return Err(bad("digit count does not match interval length"));
        }
        let r = colours.iter().copied().max().unwrap_or(0).max(1) + 1;
        Self::new(lo, &colours, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["1..4:0110", "-3..2:010011", "0..0:1", "1..5:01201"] {
            let col: Colouring = s.parse().unwrap();
            assert_eq!(col.to_string(), s);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["1..4:011", "4..1:0", "1-4:0110", "1..2:0#", "a..2:00"] {
            assert!(s.parse::<Colouring>().is_err(), "{s}");
        }
    }

    #[test]
    fn bit_and_byte_storage_agree() {
        let colours = [0u8, 1, 1, 0, 1, 0, 0, 0, 1];
        let two = Colouring::new(-2, &colours, 2).unwrap();
        let three = Colouring::new(-2, &colours, 3).unwrap();
        assert_eq!(two.colours(), three.colours());
        assert_eq!(two.class(1), vec![-1, 0, 2, 6]);
        assert_eq!(two.hi(), 6);
        assert_eq!(two.get(7), None);
    }

    #[test]
    fn long_bit_colourings_cross_word_boundaries() {
        let col = Colouring::from_fn(1, 200, 2, |x| (x % 3 == 0) as u8).unwrap();
        assert_eq!(col.class(1).len(), 66);
        assert_eq!(col.colour(129), 1);
        assert_eq!(col.colour(130), 0);
    }

    #[test]
    fn rejects_out_of_range_colour() {
        assert!(Colouring::new(1, &[0, 2], 2).is_err());
        assert!(Colouring::new(1, &[], 2).is_err());
    }

    #[test]
    fn restrict_and_extend() {
        let col: Colouring = "1..5:01101".parse().unwrap();
        assert_eq!(col.restrict(2, 4).unwrap().to_string(), "2..4:110");
        assert_eq!(col.extended(0).unwrap().to_string(), "1..6:011010");
        assert!(col.restrict(0, 3).is_err());
    }
}
