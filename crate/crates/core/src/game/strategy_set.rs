use std::fmt;

/// A set of strategy indices of one player, stored as a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategySet(u64);

impl StrategySet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        StrategySet(0)
    }

    /// `{0, .., count-1}`.
    pub fn full(count: usize) -> Self {
        assert!(count <= Self::CAPACITY);
        if count == Self::CAPACITY {
            StrategySet(u64::MAX)
        } else {
            StrategySet((1u64 << count) - 1)
        }
    }

    pub fn singleton(s: usize) -> Self {
        let mut set = Self::empty();
        set.insert(s);
        set
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        s < Self::CAPACITY && self.0 & (1 << s) != 0
    }

    pub fn insert(&mut self, s: usize) {
        assert!(s < Self::CAPACITY, "strategy index {s} out of range");
        self.0 |= 1 << s;
    }

    pub fn remove(&mut self, s: usize) {
        if s < Self::CAPACITY {
            self.0 &= !(1 << s);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: StrategySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: StrategySet) -> StrategySet {
        StrategySet(self.0 | other.0)
    }

    pub fn intersection(self, other: StrategySet) -> StrategySet {
        StrategySet(self.0 & other.0)
    }

    pub fn difference(self, other: StrategySet) -> StrategySet {
        StrategySet(self.0 & !other.0)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(s)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        self.iter().next()
    }
}

impl FromIterator<usize> for StrategySet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StrategySet::empty();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for StrategySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
