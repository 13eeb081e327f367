//! Points and Boolean functions on `{0,1}^m`.
//!
//! Conventions, used by every module and file format in this workspace:
//!
//! - A point `x` is encoded as the integer `sum_i x_i * 2^(i-1)`, so
//!   coordinate `1` is the least significant bit. Flipping coordinate `i`
//!   is an XOR with `2^(i-1)`, and per-coordinate kernels become
//!   block-swapped XORs with stride `2^(i-1)`.
//! - Truth tables are bit-packed into `u64` words, bit `ix` of the table
//!   holding `f(ix)`. Trailing bits of the final word are zero.
//! - Functions are immutable after construction and freely shareable
//!   across threads; every operation here is a pure read.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;
use crate::rng::Xoshiro256;
use crate::{Error, Result};

/// Largest supported arity for materialized truth tables (8 MiB bit-packed).
pub const MAX_ARITY: u32 = 26;

/// Positions within a word whose coordinate `s+1` bit is set, for strides
/// `2^s` smaller than a word.
const HI_MASK: [u64; 6] = [
    0xaaaa_aaaa_aaaa_aaaa,
    0xcccc_cccc_cccc_cccc,
    0xf0f0_f0f0_f0f0_f0f0,
    0xff00_ff00_ff00_ff00,
    0xffff_0000_ffff_0000,
    0xffff_ffff_0000_0000,
];

/// Index of a point of `{0,1}^m`, i.e. an integer in `[0, 2^m)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointIndex(u64);

impl PointIndex {
    pub fn new(value: u64) -> Self {
        PointIndex(value)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Value of coordinate `i` (1-based).
    pub fn coordinate(self, i: u32) -> bool {
        debug_assert!(i >= 1);
        self.0 >> (i - 1) & 1 == 1
    }

    /// The point with coordinate `i` toggled; involutive.
    pub fn toggled(self, i: u32) -> Self {
        debug_assert!(i >= 1);
        PointIndex(self.0 ^ (1 << (i - 1)))
    }

    /// Checked toggle of coordinate `i` within ambient arity `m`.
    pub fn flip(self, i: u32, arity: u32) -> Result<Self> {
        if !(1..=arity).contains(&i) {
            return Err(Error::Coordinate { coord: i, arity });
        }
        Ok(self.toggled(i))
    }

    /// True when `self <= other` coordinatewise.
    pub fn below(self, other: PointIndex) -> bool {
        self.0 & !other.0 == 0
    }
}

impl From<u64> for PointIndex {
    fn from(v: u64) -> Self {
        PointIndex(v)
    }
}

/// How a function behaves along one coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonotoneDirection {
    /// `f(x) <= f(x^i)` whenever `x_i = 0`, with at least one strict step.
    Increasing,
    /// `f(x) >= f(x^i)` whenever `x_i = 0`, with at least one strict step.
    Decreasing,
    /// Both hold: the coordinate is irrelevant.
    Irrelevant,
    /// Neither holds.
    Neither,
}

impl MonotoneDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneDirection::Increasing => "increasing",
            MonotoneDirection::Decreasing => "decreasing",
            MonotoneDirection::Irrelevant => "irrelevant",
            MonotoneDirection::Neither => "neither",
        }
    }
}

/// A partial assignment: a set of (coordinate, bit) pairs with distinct
/// coordinates, kept sorted by coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    fixed: Vec<(u32, bool)>,
}

impl Assignment {
    pub fn new(pairs: impl IntoIterator<Item = (u32, bool)>) -> Result<Self> {
        let mut fixed: Vec<(u32, bool)> = pairs.into_iter().collect();
        fixed.sort_unstable_by_key(|&(c, _)| c);
        for w in fixed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateCoordinate { coord: w[0].0 });
            }
        }
        if let Some(&(c, _)) = fixed.first() {
            if c == 0 {
                return Err(Error::Coordinate { coord: 0, arity: 0 });
            }
        }
        Ok(Assignment { fixed })
    }

    pub fn single(coord: u32, bit: bool) -> Result<Self> {
        Assignment::new([(coord, bit)])
    }

    pub fn fixed(&self) -> &[(u32, bool)] {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }
}

/// A Boolean function on `{0,1}^m` as a bit-packed truth table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BooleanFunction {
    arity: u32,
    words: Vec<u64>,
}

fn word_count(arity: u32) -> usize {
    if arity >= 6 {
        1 << (arity - 6)
    } else {
        1
    }
}

fn check_arity(arity: u32) -> Result<()> {
    if !(1..=MAX_ARITY).contains(&arity) {
        return Err(Error::ArityRange {
            arity,
            max: MAX_ARITY,
        });
    }
    Ok(())
}

impl BooleanFunction {
    /// Builds a function from one bit per point, `bits[ix] = f(ix)`.
    pub fn from_bits(arity: u32, bits: &[bool]) -> Result<Self> {
        check_arity(arity)?;
        let size = 1u64 << arity;
        if bits.len() as u64 != size {
            return Err(Error::TableLength {
                expected: size,
                actual: bits.len() as u64,
            });
        }
        let mut words = vec![0u64; word_count(arity)];
        for (ix, &b) in bits.iter().enumerate() {
            if b {
                words[ix >> 6] |= 1 << (ix & 63);
            }
        }
        Ok(BooleanFunction { arity, words })
    }

    /// Builds from an ASCII `0`/`1` string, character `ix` giving `f(ix)`.
    pub fn from_bit_string(arity: u32, s: &str) -> Result<Self> {
        check_arity(arity)?;
        let size = 1u64 << arity;
        if s.len() as u64 != size {
            return Err(Error::TableLength {
                expected: size,
                actual: s.len() as u64,
            });
        }
        let mut words = vec![0u64; word_count(arity)];
        for (ix, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => words[ix >> 6] |= 1 << (ix & 63),
                _ => {
                    return Err(Error::InvalidParameter {
                        what: "truth table characters must be 0 or 1",
                    })
                }
            }
        }
        Ok(BooleanFunction { arity, words })
    }

    /// Builds from pre-packed words; trailing bits of the last word are
    /// cleared.
    pub fn from_words(arity: u32, mut words: Vec<u64>) -> Result<Self> {
        check_arity(arity)?;
        let expect = word_count(arity);
        if words.len() != expect {
            return Err(Error::TableLength {
                expected: expect as u64 * 64,
                actual: words.len() as u64 * 64,
            });
        }
        if arity < 6 {
            words[0] &= (1u64 << (1 << arity)) - 1;
        }
        Ok(BooleanFunction { arity, words })
    }

    /// Builds by evaluating `f` at every point in index order.
    pub fn from_fn(arity: u32, mut f: impl FnMut(PointIndex) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let size = 1u64 << arity;
        let mut words = vec![0u64; word_count(arity)];
        for ix in 0..size {
            if f(PointIndex(ix)) {
                words[(ix >> 6) as usize] |= 1 << (ix & 63);
            }
        }
        Ok(BooleanFunction { arity, words })
    }

    /// A function on `m <= 6` variables from the low `2^m` bits of `table`.
    pub fn from_table_u64(arity: u32, table: u64) -> Result<Self> {
        check_arity(arity)?;
        if arity > 6 {
            return Err(Error::Capacity {
                what: "u64 truth table arity",
                limit: 6,
                requested: arity as u64,
            });
        }
        let mask = if arity == 6 {
            u64::MAX
        } else {
            (1u64 << (1 << arity)) - 1
        };
        Ok(BooleanFunction {
            arity,
            words: vec![table & mask],
        })
    }

    /// A uniformly random truth table, deterministic in the generator state.
    pub fn random(arity: u32, rng: &mut Xoshiro256) -> Result<Self> {
        check_arity(arity)?;
        let mut words = vec![0u64; word_count(arity)];
        rng.fill_words(&mut words);
        if arity < 6 {
            words[0] &= (1u64 << (1 << arity)) - 1;
        }
        Ok(BooleanFunction { arity, words })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// Number of points, `2^m`.
    pub fn size(&self) -> u64 {
        1u64 << self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The table as a single word, for `m <= 6`.
    pub fn table_u64(&self) -> Option<u64> {
        if self.arity <= 6 {
            Some(self.words[0])
        } else {
            None
        }
    }

    /// Number of points with `f = 1`.
    pub fn ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Unchecked table read; `ix` must be below `2^m`.
    pub fn get(&self, ix: u64) -> bool {
        debug_assert!(ix < self.size());
        self.words[(ix >> 6) as usize] >> (ix & 63) & 1 == 1
    }

    /// Range-checked table read.
    pub fn evaluate(&self, ix: PointIndex) -> Result<bool> {
        if ix.value() >= self.size() {
            return Err(Error::PointRange {
                index: ix.value(),
                size: self.size(),
            });
        }
        Ok(self.get(ix.value()))
    }

    /// Checked flip of coordinate `i` at `ix` within this function's arity.
    pub fn flip(&self, ix: PointIndex, i: u32) -> Result<PointIndex> {
        if ix.value() >= self.size() {
            return Err(Error::PointRange {
                index: ix.value(),
                size: self.size(),
            });
        }
        ix.flip(i, self.arity)
    }

    /// Exact `(E[f], Var[f])`; both are counts over `2^m` and `2^{2m}`.
    pub fn mean_variance(&self) -> (Rational, Rational) {
        let mean = Rational::from_count(self.ones(), self.arity);
        let variance = mean * (Rational::ONE - mean);
        (mean, variance)
    }

    /// The table as bytes, bit `j` of byte `b` holding `f(8b + j)`.
    pub fn table_bytes(&self) -> Vec<u8> {
        let n_bytes = self.size().div_ceil(8) as usize;
        let mut out = Vec::with_capacity(n_bytes);
        'outer: for w in &self.words {
            for byte in w.to_le_bytes() {
                if out.len() == n_bytes {
                    break 'outer;
                }
                out.push(byte);
            }
        }
        out
    }

    /// Inverse of [`table_bytes`](Self::table_bytes).
    pub fn from_table_bytes(arity: u32, bytes: &[u8]) -> Result<Self> {
        check_arity(arity)?;
        let size = 1u64 << arity;
        let n_bytes = size.div_ceil(8) as usize;
        if bytes.len() != n_bytes {
            return Err(Error::TableLength {
                expected: n_bytes as u64 * 8,
                actual: bytes.len() as u64 * 8,
            });
        }
        let mut words = vec![0u64; word_count(arity)];
        for (b, &byte) in bytes.iter().enumerate() {
            words[b >> 3] |= (byte as u64) << ((b & 7) * 8);
        }
        if arity < 6 {
            words[0] &= (1u64 << (1 << arity)) - 1;
        }
        Ok(BooleanFunction { arity, words })
    }

    /// ASCII `0`/`1` rendering in index order.
    pub fn to_bit_string(&self) -> String {
        let mut s = String::with_capacity(self.size() as usize);
        for ix in 0..self.size() {
            s.push(if self.get(ix) { '1' } else { '0' });
        }
        s
    }

    /// Word `w` of the table with level-`s` blocks swapped, i.e. the table
    /// of `x -> f(x ^ 2^s)`.
    pub(crate) fn swapped_word(&self, w: usize, s: u32) -> u64 {
        if s < 6 {
            let stride = 1u32 << s;
            let word = self.words[w];
            ((word & HI_MASK[s as usize]) >> stride) | ((word & !HI_MASK[s as usize]) << stride)
        } else {
            self.words[w ^ (1 << (s - 6))]
        }
    }

    /// Within word `w`, the positions whose coordinate `s+1` is set.
    pub(crate) fn upper_mask(w: usize, s: u32) -> u64 {
        if s < 6 {
            HI_MASK[s as usize]
        } else if w >> (s - 6) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    }

    /// Number of points where flipping coordinate `i` changes `f`
    /// (both endpoints of each sensitive edge are counted).
    pub(crate) fn sensitive_point_count(&self, i: u32) -> u64 {
        let s = i - 1;
        (0..self.words.len())
            .map(|w| (self.words[w] ^ self.swapped_word(w, s)).count_ones() as u64)
            .sum()
    }

    /// Number of coordinate-`i` edges violating monotonicity: points `x`
    /// with `x_i = 0`, `f(x) = 1` and `f(x^i) = 0`.
    pub(crate) fn violated_edge_count(&self, i: u32) -> u64 {
        let s = i - 1;
        (0..self.words.len())
            .map(|w| {
                (self.words[w] & !self.swapped_word(w, s) & !Self::upper_mask(w, s)).count_ones()
                    as u64
            })
            .sum()
    }

    /// Number of coordinate-`i` edges rising with the order: points `x`
    /// with `x_i = 0`, `f(x) = 0` and `f(x^i) = 1`.
    pub(crate) fn rising_edge_count(&self, i: u32) -> u64 {
        let s = i - 1;
        (0..self.words.len())
            .map(|w| {
                (!self.words[w] & self.swapped_word(w, s) & !Self::upper_mask(w, s)).count_ones()
                    as u64
            })
            .sum()
    }

    fn check_coordinate(&self, i: u32) -> Result<()> {
        if !(1..=self.arity).contains(&i) {
            return Err(Error::Coordinate {
                coord: i,
                arity: self.arity,
            });
        }
        Ok(())
    }

    /// Classifies the behavior of `f` along coordinate `i`.
    pub fn monotone_direction(&self, i: u32) -> Result<MonotoneDirection> {
        self.check_coordinate(i)?;
        let drops = self.violated_edge_count(i);
        let rises = self.rising_edge_count(i);
        Ok(match (drops == 0, rises == 0) {
            (true, true) => MonotoneDirection::Irrelevant,
            (true, false) => MonotoneDirection::Increasing,
            (false, true) => MonotoneDirection::Decreasing,
            (false, false) => MonotoneDirection::Neither,
        })
    }

    /// True when `x <= y` implies `f(x) <= f(y)`; equivalent to every
    /// coordinate having no violated edge.
    pub fn is_monotone(&self) -> bool {
        (1..=self.arity).all(|i| self.violated_edge_count(i) == 0)
    }

    /// The function on the free coordinates after fixing the assignment.
    /// Free coordinates keep their relative order and are renumbered
    /// from 1.
    pub fn restrict(&self, a: &Assignment) -> Result<BooleanFunction> {
        for &(c, _) in a.fixed() {
            self.check_coordinate(c)?;
        }
        let k = a.len() as u32;
        if k >= self.arity {
            return Err(Error::NoFreeCoordinates);
        }
        let mut fixed_mask = 0u64;
        let mut fixed_bits = 0u64;
        for &(c, b) in a.fixed() {
            fixed_mask |= 1 << (c - 1);
            if b {
                fixed_bits |= 1 << (c - 1);
            }
        }
        let free: Vec<u32> = (0..self.arity)
            .filter(|p| fixed_mask >> p & 1 == 0)
            .collect();
        BooleanFunction::from_fn(self.arity - k, |ix| {
            let mut full = fixed_bits;
            for (j, &p) in free.iter().enumerate() {
                if ix.value() >> j & 1 == 1 {
                    full |= 1 << p;
                }
            }
            self.get(full)
        })
    }
}
