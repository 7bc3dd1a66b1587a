//! Fixed-width bit sets used for vertex neighborhoods.
//!
//! Intersections and unions are word-parallel, so pairwise neighborhood queries run in
//! time linear in the size of the opposite vertex class.

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Universe size (number of addressable bits).
    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, bit: usize) {
        assert!(bit < self.len, "bit {bit} out of range {}", self.len);
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    pub fn contains(&self, bit: usize) -> bool {
        bit < self.len && self.words[bit / 64] & (1 << (bit % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Distance from `pivot` to the closest bit set in both `self` and `other`,
    /// ignoring `pivot` itself. `None` when no such bit exists.
    pub fn nearest_common(&self, other: &BitSet, pivot: usize) -> Option<usize> {
        let above = self.next_common_after(other, pivot).map(|j| j - pivot);
        let below = self.prev_common_before(other, pivot).map(|j| pivot - j);
        match (above, below) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn next_common_after(&self, other: &BitSet, pivot: usize) -> Option<usize> {
        let start = pivot + 1;
        if start >= self.len {
            return None;
        }
        let mut wi = start / 64;
        let mut word = (self.words[wi] & other.words[wi]) & (!0u64 << (start % 64));
        loop {
            if word != 0 {
                return Some(wi * 64 + word.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            word = self.words[wi] & other.words[wi];
        }
    }

    fn prev_common_before(&self, other: &BitSet, pivot: usize) -> Option<usize> {
        if pivot == 0 {
            return None;
        }
        let end = pivot - 1;
        let mut wi = end / 64;
        let shift = 63 - (end % 64);
        let mut word = (self.words[wi] & other.words[wi]) & (!0u64 >> shift);
        loop {
            if word != 0 {
                return Some(wi * 64 + 63 - word.leading_zeros() as usize);
            }
            if wi == 0 {
                return None;
            }
            wi -= 1;
            word = self.words[wi] & other.words[wi];
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
