//! Fixed-width subsets of a small carrier `{0, .., n-1}`, `n <= 64`.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// Largest carrier a [`Bits`] value can describe.
pub const MAX_CARRIER: usize = 64;

/// A subset of `{0, .., 63}` stored as one machine word.
///
/// Ordering is the numeric order of the underlying word, which is what the
/// deterministic enumeration orders in this crate are defined against.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(pub u64);

/// Subset of a lattice carrier.
pub type ElemSet = Bits;
/// Subset of the points of a space.
pub type PointSet = Bits;

impl Bits {
    pub const EMPTY: Bits = Bits(0);

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Bits {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            Bits(u64::MAX)
        } else {
            Bits((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Bits {
        debug_assert!(i < MAX_CARRIER);
        Bits(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Bits {
        it.into_iter()
            .fold(Bits::EMPTY, |acc, i| acc | Bits::singleton(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: Bits) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: Bits) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to the carrier `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> Bits {
        Bits(!self.0) & Bits::full(n)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> BitsIter {
        BitsIter(self.0)
    }

    /// Every subset of `self`, smallest word first.
    pub fn subsets(self) -> impl Iterator<Item = Bits> {
        let mask = self.0;
        let mut cur = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Bits(cur);
            if cur == mask {
                done = true;
            } else {
                cur = (cur.wrapping_sub(mask)) & mask;
            }
            Some(out)
        })
    }
}

pub struct BitsIter(u64);

impl Iterator for BitsIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitsIter {}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bits::from_indices(iter)
    }
}

impl BitOr for Bits {
    type Output = Bits;
    fn bitor(self, rhs: Bits) -> Bits {
        Bits(self.0 | rhs.0)
    }
}

impl BitOrAssign for Bits {
    fn bitor_assign(&mut self, rhs: Bits) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    fn bitand(self, rhs: Bits) -> Bits {
        Bits(self.0 & rhs.0)
    }
}

impl BitAndAssign for Bits {
    fn bitand_assign(&mut self, rhs: Bits) {
        self.0 &= rhs.0;
    }
}

impl Sub for Bits {
    type Output = Bits;
    fn sub(self, rhs: Bits) -> Bits {
        Bits(self.0 & !rhs.0)
    }
}

impl Not for Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        Bits(!self.0)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
