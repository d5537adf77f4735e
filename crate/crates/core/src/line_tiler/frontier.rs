use std::hash::Hash;

/// Coverage bits of the window starting at the leftmost uncovered cell.
///
/// Bit `i` is cell `p + i`. A placement mask has bits `0..=diameter`, so
/// an implementation must hold `diameter + 1` bits.
pub(crate) trait Frontier: Clone + Eq + Hash + Send + Sync {
    fn with_bits(width: usize, bits: impl IntoIterator<Item = usize>) -> Self;

    /// Lowest bit set in both `self` and `mask`.
    fn first_overlap(&self, mask: &Self) -> Option<usize>;

    fn or_assign(&mut self, mask: &Self);

    /// Shifts out the run of covered cells at the bottom; returns its length.
    fn advance(&mut self) -> usize;

    #[cfg(test)]
    fn bit(&self, i: usize) -> bool;
}

impl Frontier for u64 {
    fn with_bits(width: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        debug_assert!(width <= 64);
        bits.into_iter().fold(0, |acc, b| acc | 1 << b)
    }

    fn first_overlap(&self, mask: &Self) -> Option<usize> {
        let both = self & mask;
        (both != 0).then(|| both.trailing_zeros() as usize)
    }

    fn or_assign(&mut self, mask: &Self) {
        *self |= mask;
    }

    fn advance(&mut self) -> usize {
        let k = self.trailing_ones();
        *self = if k >= 64 { 0 } else { *self >> k };
        k as usize
    }

    #[cfg(test)]
    fn bit(&self, i: usize) -> bool {
        i < 64 && self >> i & 1 == 1
    }
}

impl Frontier for u128 {
    fn with_bits(width: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        debug_assert!(width <= 128);
        bits.into_iter().fold(0, |acc, b| acc | 1 << b)
    }

    fn first_overlap(&self, mask: &Self) -> Option<usize> {
        let both = self & mask;
        (both != 0).then(|| both.trailing_zeros() as usize)
    }

    fn or_assign(&mut self, mask: &Self) {
        *self |= mask;
    }

    fn advance(&mut self) -> usize {
        let k = self.trailing_ones();
        *self = if k >= 128 { 0 } else { *self >> k };
        k as usize
    }

    #[cfg(test)]
    fn bit(&self, i: usize) -> bool {
        i < 128 && self >> i & 1 == 1
    }
}

/// Frontier for diameters beyond 127.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct WideFrontier(Box<[u64]>);

impl Frontier for WideFrontier {
    fn with_bits(width: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; width.div_ceil(64).max(1)];
        for b in bits {
            words[b / 64] |= 1 << (b % 64);
        }
        WideFrontier(words.into_boxed_slice())
    }

    fn first_overlap(&self, mask: &Self) -> Option<usize> {
        self.0.iter().zip(mask.0.iter()).enumerate().find_map(|(i, (a, b))| {
            let both = a & b;
            (both != 0).then(|| i * 64 + both.trailing_zeros() as usize)
        })
    }

    fn or_assign(&mut self, mask: &Self) {
        for (a, b) in self.0.iter_mut().zip(mask.0.iter()) {
            *a |= b;
        }
    }

    fn advance(&mut self) -> usize {
        let words = &mut self.0;
        let mut k = 0usize;
        for w in words.iter() {
            let ones = w.trailing_ones() as usize;
            k += ones;
            if ones < 64 {
                break;
            }
        }
        let (word_shift, bit_shift) = (k / 64, k % 64);
        let len = words.len();
        for i in 0..len {
            let lo = words.get(i + word_shift).copied().unwrap_or(0);
            let hi = words.get(i + word_shift + 1).copied().unwrap_or(0);
            words[i] = if bit_shift == 0 { lo } else { lo >> bit_shift | hi << (64 - bit_shift) };
        }
        k
    }

    #[cfg(test)]
    fn bit(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }
}
