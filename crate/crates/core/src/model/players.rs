use std::fmt;

/// A coalition of players, as a bitmask over 0-based player indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerSet(u32);

impl PlayerSet {
    pub const CAPACITY: usize = 32;
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        PlayerSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Players `0..n`.
    pub fn all(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "at most {} players", Self::CAPACITY);
        if n == Self::CAPACITY {
            PlayerSet(u32::MAX)
        } else {
            PlayerSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < Self::CAPACITY);
        PlayerSet(1 << i)
    }

    pub fn from_flags(flags: &[bool]) -> Self {
        flags
            .iter()
            .enumerate()
            .filter(|(_, &on)| on)
            .fold(PlayerSet::EMPTY, |s, (i, _)| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < Self::CAPACITY && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        PlayerSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        PlayerSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        PlayerSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PlayerSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Every subset, from `self` down to the empty coalition.
    pub fn subsets(self) -> impl Iterator<Item = PlayerSet> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(PlayerSet(cur))
        })
    }

    pub fn to_flags(self, n: usize) -> Vec<bool> {
        (0..n).map(|i| self.contains(i)).collect()
    }

    /// 1-based member list, the form used in reports.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
