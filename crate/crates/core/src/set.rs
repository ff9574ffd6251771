use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of `0..universe`, stored as a bitset.
///
/// Sets order by cardinality first, then by their sorted member lists, which
/// is the canonical order used for every listing this crate produces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset(FixedBitSet);

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(universe);
        b.insert_range(..);
        Subset(b)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i)
    }

    pub fn remove(&mut self, i: usize) {
        self.0.remove(i)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut b = self.0.clone();
        b.intersect_with(&other.0);
        Subset(b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        Subset(b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut b = self.0.clone();
        b.difference_with(&other.0);
        Subset(b)
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        self.0.intersect_with(&other.0)
    }

    pub fn union_with(&mut self, other: &Subset) {
        self.0.union_with(&other.0)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.ones().cmp(other.0.ones()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_cardinality_then_members() {
        let a = Subset::from_indices(5, [4]);
        let b = Subset::from_indices(5, [0, 1]);
        let c = Subset::from_indices(5, [0, 2]);
        let mut v = vec![c.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn set_ops() {
        let a = Subset::from_indices(6, [1, 2, 3]);
        let b = Subset::from_indices(6, [2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 3]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert!(Subset::empty(6).is_subset(&a));
        assert_eq!(Subset::full(3).to_vec(), vec![0, 1, 2]);
    }
}
