//! Fixed-length bitsets used for subsets and matrix rows.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// A fixed-length bitset. Ordering compares the numeric value with bit `i`
/// weighted `2^i`, so for carriers of at most 64 elements it agrees with
/// the subset mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits {
            len,
            words: vec![!0; len.div_ceil(WORD)],
        };
        b.trim();
        b
    }

    /// Builds a bitset of length `len` from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut b = Bits::new(len);
        if let Some(w) = b.words.first_mut() {
            *w = mask;
        }
        b.trim();
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    /// The bitset as a mask. Panics if longer than 64 bits.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD, "bitset of length {} has no u64 mask", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.set(i, true);
    }

    pub fn remove(&mut self, i: usize) {
        self.set(i, false);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            bits: self,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest set bit.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &Bits) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> Bits {
        let mut r = Bits {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        r.trim();
        r
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Whether some bit below `i` is set.
    pub fn any_below(&self, i: usize) -> bool {
        let (w, b) = (i / WORD, i % WORD);
        self.words[..w.min(self.words.len())].iter().any(|&x| x != 0)
            || (b > 0 && w < self.words.len() && self.words[w] & ((1u64 << b) - 1) != 0)
    }

    fn check(&self, other: &Bits) {
        assert_eq!(self.len, other.len, "bitset length mismatch");
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "Bits({s})")
    }
}

pub struct Ones<'a> {
    bits: &'a Bits,
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.current = self.bits.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = Bits::from_indices(70, [0, 3, 65]);
        let b = Bits::from_indices(70, [3, 69]);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![0, 3, 65, 69]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(a.complement().count(), 67);
        assert!(Bits::full(70).is_full());
        assert!(Bits::from_indices(70, [3]).is_subset(&a));
        assert!(a.any_below(1));
        assert!(!b.any_below(3));
        assert!(b.any_below(4));
    }

    #[test]
    fn order_is_numeric() {
        let mut all: Vec<Bits> = (0..16).map(|m| Bits::from_mask(4, m)).collect();
        all.reverse();
        all.sort();
        let masks: Vec<u64> = all.iter().map(Bits::to_mask).collect();
        assert_eq!(masks, (0..16).collect::<Vec<_>>());
    }
}
