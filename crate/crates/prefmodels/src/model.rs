//! Models as bit-encoded valuations and exact sets of models.

use std::fmt;

/// One valuation of the alphabet, encoded as an index into the model
/// universe. Bit `i` (least significant first) is the truth value of the
/// atom at position `i` of the governing [`Alphabet`](crate::Alphabet).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Model(pub u16);

impl Model {
    /// Truth value of the atom at `position` in this valuation.
    pub fn truth(&self, position: usize) -> bool {
        (self.0 >> position) & 1 == 1
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of models, encoded as a bit set over a fixed model universe.
///
/// Every set carries the size of its universe (`capacity`); operations
/// combining two sets require equal capacities. Sets are ordered by the
/// numeric value of their bit pattern, so `BTreeMap` iteration and
/// [`ModelSet::subsets`] both enumerate in ascending bit-set value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    capacity: usize,
    words: Vec<u64>,
}

fn word_count(capacity: usize) -> usize {
    capacity.div_ceil(64).max(1)
}

impl ModelSet {
    /// The empty set over a universe of `capacity` models.
    pub fn empty(capacity: usize) -> Self {
        ModelSet {
            capacity,
            words: vec![0; word_count(capacity)],
        }
    }

    /// The full universe of `capacity` models.
    pub fn full(capacity: usize) -> Self {
        let mut set = Self::empty(capacity);
        for i in 0..capacity {
            set.insert(Model(i as u16));
        }
        set
    }

    pub fn from_models<I: IntoIterator<Item = Model>>(capacity: usize, models: I) -> Self {
        let mut set = Self::empty(capacity);
        for m in models {
            set.insert(m);
        }
        set
    }

    /// Number of model slots in the universe (not the cardinality).
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, m: Model) {
        assert!(m.index() < self.capacity, "model {} outside universe of {}", m.0, self.capacity);
        self.words[m.index() / 64] |= 1 << (m.index() % 64);
    }

    pub fn remove(&mut self, m: Model) {
        if m.index() < self.capacity {
            self.words[m.index() / 64] &= !(1 << (m.index() % 64));
        }
    }

    pub fn contains(&self, m: Model) -> bool {
        m.index() < self.capacity && (self.words[m.index() / 64] >> (m.index() % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_capacity(&self, other: &ModelSet) {
        assert_eq!(
            self.capacity, other.capacity,
            "model sets over different universes ({} vs {})",
            self.capacity, other.capacity
        );
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        self.check_capacity(other);
        ModelSet {
            capacity: self.capacity,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        self.check_capacity(other);
        ModelSet {
            capacity: self.capacity,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        self.check_capacity(other);
        ModelSet {
            capacity: self.capacity,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// Complement relative to the full universe.
    pub fn complement(&self) -> ModelSet {
        Self::full(self.capacity).difference(self)
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.check_capacity(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.check_capacity(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Model> + '_ {
        (0..self.capacity).map(|i| Model(i as u16)).filter(|m| self.contains(*m))
    }

    /// Smallest member, if any.
    pub fn smallest(&self) -> Option<Model> {
        self.iter().next()
    }

    /// All subsets of this set, in ascending bit-set value order.
    ///
    /// The subset count is `2^len`; callers keep `len` at desk scale.
    pub fn subsets(&self) -> impl Iterator<Item = ModelSet> + '_ {
        let members: Vec<Model> = self.iter().collect();
        assert!(members.len() <= 20, "powerset of {} elements is out of scope", members.len());
        let capacity = self.capacity;
        (0u32..1 << members.len()).map(move |mask| {
            ModelSet::from_models(
                capacity,
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, m)| *m),
            )
        })
    }
}

impl PartialOrd for ModelSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModelSet {
    /// Numeric comparison of the underlying bit patterns.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.check_capacity(other);
        for (a, b) in self.words.iter().zip(&other.words).rev() {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for ModelSet {
    /// Braced ascending index list: `{0,2,5}`, `{}` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m)?;
        }
        write!(f, "}}")
    }
}
