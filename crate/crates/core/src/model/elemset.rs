use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// A set of universe elements, stored as a bitmask over π-ranks.
///
/// Bit `r` stands for the element at position `r` of the universe listing, so
/// ascending bit order is exactly the fixed order π and "the first `k`
/// elements of a set under π" are its `k` lowest set bits.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u128);

impl ElemSet {
    /// Largest universe an `ElemSet` can index.
    pub const CAPACITY: usize = 128;
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The first `n` elements of the universe.
    pub fn prefix(n: usize) -> Self {
        assert!(
            n <= Self::CAPACITY,
            "universe larger than {}",
            Self::CAPACITY
        );
        if n == Self::CAPACITY {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(rank: usize) -> Self {
        assert!(rank < Self::CAPACITY);
        ElemSet(1u128 << rank)
    }

    pub fn from_ranks<I: IntoIterator<Item = usize>>(ranks: I) -> Self {
        ranks
            .into_iter()
            .fold(ElemSet::EMPTY, |acc, r| acc | ElemSet::singleton(r))
    }

    pub fn insert(&mut self, rank: usize) {
        *self = *self | ElemSet::singleton(rank);
    }

    pub fn contains(self, rank: usize) -> bool {
        rank < Self::CAPACITY && self.0 >> rank & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// The `k` π-smallest elements (all of them if `k >= len`).
    pub fn first(self, k: usize) -> Self {
        let mut rest = self.0;
        let mut out = 0u128;
        for _ in 0..k {
            if rest == 0 {
                break;
            }
            let low = rest & rest.wrapping_neg();
            out |= low;
            rest ^= low;
        }
        ElemSet(out)
    }

    /// The `k` π-largest elements (all of them if `k >= len`).
    pub fn last(self, k: usize) -> Self {
        let mut rest = self.0;
        let mut out = 0u128;
        for _ in 0..k {
            if rest == 0 {
                break;
            }
            let high = 1u128 << (127 - rest.leading_zeros());
            out |= high;
            rest ^= high;
        }
        ElemSet(out)
    }

    /// Element ranks in π order.
    pub fn iter(self) -> Ranks {
        Ranks(self.0)
    }

    /// Every subset of `self`, starting with `self` and ending with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(self.0),
        }
    }
}

impl BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        self.union(rhs)
    }
}

impl BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        self.intersection(rhs)
    }
}

impl Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_ranks(iter)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ranks(u128);

impl Iterator for Ranks {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let r = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(r)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ranks {}

pub struct Subsets {
    full: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = ElemSet;

    fn next(&mut self) -> Option<ElemSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.full)
        };
        Some(ElemSet(cur))
    }
}
