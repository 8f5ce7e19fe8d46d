//! Bit-level primitives on matrix rows and the generator of all n-bit masks
//! with exactly k ones.
//!
//! A row of an n-column matrix is stored as the integer whose binary digits
//! are the row entries read left to right, so column 1 (leftmost) lives at bit
//! `n - 1` and column n at bit 0. Bits are numbered right to left from 0.

use crate::error::{invalid, Error, Result};

/// One matrix row. Only the low `width` bits are significant.
pub type BitMask = u64;

/// Largest supported row width.
pub const MAX_WIDTH: u32 = 62;

/// Largest mask pool that will be materialized.
pub const MAX_POOL_LEN: u64 = 1 << 28;

/// Number of set bits, by testing each bit position in turn.
pub fn popcount(x: BitMask) -> u32 {
    let mut count = 0;
    for i in 0..BitMask::BITS {
        if x & (1 << i) != 0 {
            count += 1;
        }
    }
    count
}

/// Value (0 or 1) of bit `i` of `x`, for a row of the given width.
pub fn bit_value(x: BitMask, i: u32, width: u32) -> Result<u8> {
    if i >= width || i >= BitMask::BITS {
        return Err(invalid!("bit index {i} outside width {width}"));
    }
    Ok(if x & (1 << i) == 0 { 0 } else { 1 })
}

/// Renders `x` as exactly `width` characters, most significant bit first.
pub fn to_binary_string(x: BitMask, width: u32) -> String {
    (0..width)
        .rev()
        .map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// `2^width - 1`.
#[inline]
pub fn full_mask(width: u32) -> BitMask {
    if width >= BitMask::BITS {
        BitMask::MAX
    } else {
        (1 << width) - 1
    }
}

pub(crate) fn check_width(n: u32) -> Result<()> {
    if n == 0 || n > MAX_WIDTH {
        return Err(invalid!("width {n} outside 1..={MAX_WIDTH}"));
    }
    Ok(())
}

/// Sorted, duplicate-free list of every `n`-bit mask with exactly `k` ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaskPool {
    n: u32,
    k: u32,
    masks: Vec<BitMask>,
}

impl MaskPool {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn masks(&self) -> &[BitMask] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    /// Always false: every pool holds at least one mask.
    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Position of `mask` in the pool, if present.
    pub fn index_of(&self, mask: BitMask) -> Option<usize> {
        self.masks.binary_search(&mask).ok()
    }
}

impl AsRef<[BitMask]> for MaskPool {
    fn as_ref(&self) -> &[BitMask] {
        &self.masks
    }
}

/// Builds the pool of all `n`-bit masks with popcount `k`.
///
/// The masks are produced directly rather than by filtering `0..2^n`: the
/// masks whose top bit is clear are the `(n-1, k)` pool, and those whose top
/// bit is set are the `(n-1, k-1)` pool with bit `n-1` added. Concatenating
/// the two keeps the result ascending.
pub fn k_subset_masks(n: u32, k: u32) -> Result<MaskPool> {
    if n > MAX_WIDTH {
        return Err(invalid!("width {n} exceeds {MAX_WIDTH}"));
    }
    if k > n {
        return Err(invalid!("popcount {k} exceeds width {n}"));
    }
    let len = small_binomial(n, k);
    if len > MAX_POOL_LEN {
        return Err(Error::TooLarge(format!(
            "pool for n={n}, k={k} has {len} masks"
        )));
    }
    let mut masks = Vec::with_capacity(len as usize);
    fill_pool(n, k, 0, &mut masks);
    Ok(MaskPool { n, k, masks })
}

// Appends the (n, k) pool, each element OR-ed with `high`, to `out`.
fn fill_pool(n: u32, k: u32, high: BitMask, out: &mut Vec<BitMask>) {
    if k == 0 {
        out.push(high);
    } else if k == n {
        out.push(high | full_mask(k));
    } else {
        fill_pool(n - 1, k, high, out);
        fill_pool(n - 1, k - 1, high | (1 << (n - 1)), out);
    }
}

/// C(n, k) in 64-bit arithmetic; saturates at `u64::MAX`.
pub(crate) fn small_binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn filter_oracle(n: u32, k: u32) -> Vec<BitMask> {
        (0..1u64 << n).filter(|m| m.count_ones() == k).collect()
    }

    fn kernighan(mut m: BitMask) -> u32 {
        let mut c = 0;
        while m != 0 {
            m &= m - 1;
            c += 1;
        }
        c
    }

    #[test]
    fn popcount_examples() {
        assert_eq!(popcount(0), 0);
        assert_eq!(popcount(0b1100), 2);
        for n in 1..=MAX_WIDTH {
            assert_eq!(popcount(full_mask(n)), n);
        }
    }

    #[test]
    fn popcount_matches_kernighan() {
        let mut rng = seeded_rng();
        for _ in 0..100_000 {
            let m: u64 = rng.gen::<u64>() & full_mask(MAX_WIDTH);
            assert_eq!(popcount(m), kernighan(m));
        }
    }

    fn seeded_rng() -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(0x5eed)
    }

    #[test]
    fn bit_value_examples() {
        assert_eq!(bit_value(5, 0, 3), Ok(1));
        assert_eq!(bit_value(5, 1, 3), Ok(0));
        assert_eq!(bit_value(5, 2, 3), Ok(1));
        assert!(matches!(bit_value(5, 3, 3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn binary_string_examples() {
        assert_eq!(to_binary_string(5, 4), "0101");
        assert_eq!(to_binary_string(0, 3), "000");
        assert_eq!(to_binary_string(12, 4), "1100");
    }

    #[test]
    fn pool_examples() {
        assert_eq!(k_subset_masks(3, 0).unwrap().masks(), &[0]);
        assert_eq!(k_subset_masks(3, 3).unwrap().masks(), &[7]);
        assert_eq!(k_subset_masks(4, 2).unwrap().masks(), &[3, 5, 6, 9, 10, 12]);
        assert_eq!(k_subset_masks(0, 0).unwrap().masks(), &[0]);
    }

    #[test]
    fn pool_rejects_bad_parameters() {
        assert!(matches!(k_subset_masks(3, 4), Err(Error::InvalidArgument(_))));
        assert!(matches!(k_subset_masks(63, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(k_subset_masks(62, 31), Err(Error::TooLarge(_))));
    }

    #[test]
    fn pool_matches_filter_up_to_16() {
        for n in 0..=16 {
            for k in 0..=n {
                assert_eq!(k_subset_masks(n, k).unwrap().masks(), filter_oracle(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pool_length_is_binomial() {
        for n in 0..=20u32 {
            let mut c = 1u64; // C(n, 0)
            for k in 0..=n {
                assert_eq!(k_subset_masks(n, k).unwrap().len() as u64, c);
                c = c * (n - k) as u64 / (k + 1) as u64;
            }
        }
    }

    #[test]
    fn wide_pool_is_sorted_with_top_bits() {
        let pool = k_subset_masks(62, 2).unwrap();
        assert_eq!(pool.len(), 61 * 31);
        assert!(pool.masks().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*pool.masks().last().unwrap(), 0b11 << 60);
        assert_eq!(pool.index_of(3), Some(0));
    }

    proptest! {
        #[test]
        fn binary_string_parses_back(n in 1u32..=MAX_WIDTH, raw in any::<u64>()) {
            let x = raw & full_mask(n);
            let s = to_binary_string(x, n);
            prop_assert_eq!(s.len(), n as usize);
            prop_assert_eq!(u64::from_str_radix(&s, 2).unwrap(), x);
        }
    }
}
