use std::fmt;

/// A subset of a local vertex space `[0, universe)`.
///
/// Binary operations assume both operands share the same universe.
pub trait VertexSet: Clone + fmt::Debug + PartialEq {
    type Iter<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    fn empty(universe: usize) -> Self;
    /// Builds a set from strictly ascending members.
    fn from_sorted<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn contains(&self, v: usize) -> bool;
    fn len(&self) -> usize;
    fn intersection(&self, other: &Self) -> Self;
    fn intersection_len(&self, other: &Self) -> usize;
    fn is_subset(&self, other: &Self) -> bool;
    /// Members in ascending order.
    fn iter(&self) -> Self::Iter<'_>;

    fn full(universe: usize) -> Self {
        Self::from_sorted(universe, 0..universe)
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Bits packed into 64-bit words, lowest bit first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    #[inline]
    fn words_for(universe: usize) -> usize {
        universe.div_ceil(64)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl VertexSet for BitSet {
    type Iter<'a> = BitIter<'a>;

    fn empty(universe: usize) -> Self {
        BitSet {
            words: vec![0; Self::words_for(universe)],
        }
    }

    fn from_sorted<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for v in items {
            set.insert(v);
        }
        set
    }

    fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; Self::words_for(universe)];
        if !universe.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        BitSet { words }
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    #[inline]
    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn intersection(&self, other: &Self) -> Self {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    #[inline]
    fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> BitIter<'_> {
        BitIter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Ascending list of members; the compressed-row alternative to [`BitSet`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SortedSet {
    items: Vec<u32>,
}

impl SortedSet {
    pub fn as_slice(&self) -> &[u32] {
        &self.items
    }
}

impl fmt::Debug for SortedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.items).finish()
    }
}

fn widen(v: &u32) -> usize {
    *v as usize
}

impl VertexSet for SortedSet {
    type Iter<'a> = std::iter::Map<std::slice::Iter<'a, u32>, fn(&u32) -> usize>;

    fn empty(_universe: usize) -> Self {
        SortedSet { items: Vec::new() }
    }

    fn from_sorted<I: IntoIterator<Item = usize>>(_universe: usize, items: I) -> Self {
        let items: Vec<u32> = items.into_iter().map(|v| v as u32).collect();
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        SortedSet { items }
    }

    fn insert(&mut self, v: usize) {
        if let Err(at) = self.items.binary_search(&(v as u32)) {
            self.items.insert(at, v as u32);
        }
    }

    fn remove(&mut self, v: usize) {
        if let Ok(at) = self.items.binary_search(&(v as u32)) {
            self.items.remove(at);
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.items.binary_search(&(v as u32)).is_ok()
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.items, &other.items);
        let mut items = Vec::with_capacity(a.len().min(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    items.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        SortedSet { items }
    }

    fn intersection_len(&self, other: &Self) -> usize {
        let (a, b) = (&self.items, &other.items);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.items.len() <= other.items.len() && self.intersection_len(other) == self.items.len()
    }

    fn iter(&self) -> Self::Iter<'_> {
        self.items.iter().map(widen as fn(&u32) -> usize)
    }
}
