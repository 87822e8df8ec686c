//! Classical reference implementations used as ground truth.
//!
//! Counts are plain integers here; the bit-pattern view of a count only
//! exists in the circuit layer.

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 128;

/// An unsigned `width`-bit word, `1 <= width <= 128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BitWord {
    value: u128,
    width: u32,
}

pub(crate) fn width_mask(width: u32) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

impl BitWord {
    pub fn new(value: u128, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Domain(format!("word width {width} outside 1..=128")));
        }
        if value & !width_mask(width) != 0 {
            return Err(Error::Domain(format!("value {value} does not fit in {width} bits")));
        }
        Ok(BitWord { value, width })
    }

    pub fn zero(width: u32) -> Result<Self> {
        BitWord::new(0, width)
    }

    pub fn ones(width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Domain(format!("word width {width} outside 1..=128")));
        }
        BitWord::new(width_mask(width), width)
    }

    pub fn value(self) -> u128 {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// Bit `j`, counted from the LSB.
    pub fn bit(self, j: u32) -> bool {
        j < self.width && (self.value >> j) & 1 == 1
    }

    pub fn complement(self) -> Self {
        BitWord { value: !self.value & width_mask(self.width), width: self.width }
    }
}

fn leading_run(x: BitWord, bit: bool) -> u32 {
    let m = x.width();
    (0..m).find(|&gamma| x.bit(m - 1 - gamma) != bit).unwrap_or(m)
}

/// Leading-zero count: `m` for the zero word, otherwise the number of zeros
/// above the most significant 1.
pub fn lzc(x: BitWord) -> u32 {
    leading_run(x, false)
}

/// Leading-one count: `m` for the all-ones word, otherwise the number of ones
/// above the most significant 0.
pub fn loc(x: BitWord) -> u32 {
    leading_run(x, true)
}

/// The bits that change when a counter steps from `i - 1` to `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipMask {
    /// Number of low bits flipped.
    pub n: u32,
    /// `(i - 1) ^ i`, which always equals `2^n - 1`.
    pub delta: u64,
}

/// `n` is the unique integer with `i mod 2^n = 2^(n-1)`.
pub fn flip_mask(i: u64) -> Result<FlipMask> {
    if i == 0 {
        return Err(Error::Domain("flip mask is undefined for i = 0".into()));
    }
    let n = (1..=64u32)
        .find(|&n| {
            let modulus = 1u128 << n;
            (i as u128) % modulus == modulus >> 1
        })
        .expect("every positive integer has a lowest set bit");
    Ok(FlipMask { n, delta: (i - 1) ^ i })
}

/// Runs the modular leading-one counting procedure step by step, returning
/// the final count and the mask applied at each stage that fired.
pub fn mloc_trace(x: BitWord) -> (u64, Vec<(u64, u64)>) {
    let m = x.width() as u64;
    let mut gamma = 0u64;
    let mut trace = Vec::new();
    for i in 1..=m {
        let prefix_all_ones = (0..i).all(|t| x.bit((m - 1 - t) as u32));
        if prefix_all_ones {
            let mask = flip_mask(i).expect("i >= 1").delta;
            gamma ^= mask;
            trace.push((i, mask));
        }
    }
    (gamma, trace)
}

pub fn mloc(x: BitWord) -> u64 {
    mloc_trace(x).0
}

/// Combines the counts of the high and low halves of a `2m`-bit word:
/// the low count only contributes when the high half is all zeros.
pub fn merge_reference(gamma_h: u32, gamma_l: u32, m: u32) -> Result<u32> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::Domain(format!("merge width {m} is not a power of two")));
    }
    if gamma_h > m || gamma_l > m {
        return Err(Error::Domain(format!("counts ({gamma_h}, {gamma_l}) exceed half width {m}")));
    }
    Ok(if gamma_h == m { gamma_h + gamma_l } else { gamma_h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(value: u128, width: u32) -> BitWord {
        BitWord::new(value, width).unwrap()
    }

    #[test]
    fn lzc_reference_values() {
        assert_eq!(lzc(w(0b0000_0001_0010_0011, 16)), 7);
        assert_eq!(lzc(w(0, 11)), 11);
        assert_eq!(lzc(w(0b0000_0000_0010_1011, 16)), 10);
    }

    #[test]
    fn loc_reference_values() {
        assert_eq!(loc(w(0b1111_1111_1100_0011, 16)), 10);
        assert_eq!(loc(w((1 << 13) - 2, 13)), 12);
        assert_eq!(loc(BitWord::ones(7).unwrap()), 7);
        assert_eq!(loc(BitWord::ones(128).unwrap()), 128);
        assert_eq!(lzc(BitWord::zero(128).unwrap()), 128);
    }

    #[test]
    fn word_bounds() {
        assert!(BitWord::new(16, 4).is_err());
        assert!(BitWord::new(0, 0).is_err());
        assert!(BitWord::new(0, 129).is_err());
        assert_eq!(w(0b1010, 4).complement().value(), 0b0101);
    }

    #[test]
    fn flip_mask_examples() {
        assert_eq!(flip_mask(1).unwrap(), FlipMask { n: 1, delta: 0b1 });
        assert_eq!(flip_mask(4).unwrap(), FlipMask { n: 3, delta: 0b111 });
        assert_eq!(flip_mask(6).unwrap(), FlipMask { n: 2, delta: 0b11 });
        assert!(flip_mask(0).is_err());
    }

    #[test]
    fn mloc_trace_all_ones() {
        let (gamma, trace) = mloc_trace(BitWord::ones(4).unwrap());
        assert_eq!(gamma, 4);
        assert_eq!(trace, vec![(1, 0b1), (2, 0b11), (3, 0b1), (4, 0b111)]);
        let (gamma, trace) = mloc_trace(BitWord::zero(4).unwrap());
        assert_eq!(gamma, 0);
        assert!(trace.is_empty());
    }

    #[test]
    fn merge_reference_examples() {
        assert_eq!(merge_reference(4, 3, 4).unwrap(), 7);
        assert_eq!(merge_reference(2, 4, 4).unwrap(), 2);
        assert!(merge_reference(5, 0, 4).is_err());
        assert!(merge_reference(1, 1, 3).is_err());
    }

    #[test]
    fn merge_reference_splits_every_byte() {
        for x in 0u128..256 {
            let hi = lzc(w(x >> 4, 4));
            let lo = lzc(w(x & 0xf, 4));
            assert_eq!(merge_reference(hi, lo, 4).unwrap(), lzc(w(x, 8)), "x={x:#010b}");
        }
    }

    #[test]
    fn duality_exhaustive_small_widths() {
        for m in 1..=12u32 {
            for v in 0..(1u128 << m) {
                let x = w(v, m);
                assert_eq!(lzc(x), loc(x.complement()));
                assert_eq!(loc(x), lzc(x.complement()));
            }
        }
    }

    #[test]
    fn intrinsic_agrees_with_scan() {
        for m in [1u32, 5, 16, 64, 100, 128] {
            for v in [0u128, 1, 2, 3, 0xdead_beef, u128::MAX] {
                let v = v & width_mask(m);
                let expect = if v == 0 { m } else { v.leading_zeros() - (128 - m) };
                assert_eq!(lzc(w(v, m)), expect);
            }
        }
    }

    proptest! {
        #[test]
        fn duality_random(width in 1u32..=128, raw in any::<u128>()) {
            let x = w(raw & width_mask(width), width);
            prop_assert_eq!(lzc(x), loc(x.complement()));
            prop_assert_eq!(loc(x), lzc(x.complement()));
        }

        #[test]
        fn mloc_matches_loc(width in 1u32..=40, raw in any::<u128>(), ones in 0u32..=40) {
            // Force a leading run of ones so deep prefixes get exercised.
            let ones = ones.min(width);
            let v = (raw | (width_mask(ones) << (width - ones))) & width_mask(width);
            let x = w(v, width);
            prop_assert_eq!(mloc(x), loc(x) as u64);
        }
    }
}
