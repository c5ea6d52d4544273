//! Dense bit-matrix relations over element indices.
//!
//! Row `x` holds the set `{y : x R y}` as a `u64` mask, which caps a universe
//! at [`MAX_ELEMENTS`] points. Every operation here is index-level; labels
//! live one layer up in [`crate::BinRel`] and [`crate::Structure`].

use alloc::vec::Vec;
use core::fmt;

use smallvec::{smallvec, SmallVec};

/// Largest universe a [`Relation`] can carry.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: SmallVec<[u64; 8]>,
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// Iterates the set bits of a mask, lowest first.
#[inline]
pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "universe of {n} elements exceeds {MAX_ELEMENTS}");
        Relation { rows: smallvec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = bit(i);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = Relation::empty(n);
        let m = full_mask(n);
        r.rows.iter_mut().for_each(|row| *row = m);
        r
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        assert!(n <= MAX_ELEMENTS);
        let m = full_mask(n);
        assert!(rows.iter().all(|r| r & !m == 0), "row bits outside the universe");
        Relation { rows: SmallVec::from_vec(rows) }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] & bit(y) != 0
    }

    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) {
        debug_assert!(y < self.rows.len());
        self.rows[x] |= bit(y);
    }

    #[inline]
    pub fn remove(&mut self, x: usize, y: usize) {
        self.rows[x] &= !bit(y);
    }

    #[inline]
    pub fn row(&self, x: usize) -> u64 {
        self.rows[x]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `{y : y R x}`.
    pub fn column(&self, x: usize) -> u64 {
        let b = bit(x);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r & b != 0)
            .fold(0, |acc, (y, _)| acc | bit(y))
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Pairs in row-major order, which is lexicographic order on indices.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| ones(r).map(move |y| (x, y)))
    }

    /// Left-to-right composition: `x (R;S) z` iff `x R y` and `y S z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.len(), other.len());
        let rows = self
            .rows
            .iter()
            .map(|&r| ones(r).fold(0, |acc, y| acc | other.rows[y]))
            .collect();
        Relation { rows }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.len(), other.len());
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect();
        Relation { rows }
    }

    pub fn union_with(&mut self, other: &Relation) {
        assert_eq!(self.len(), other.len());
        self.rows.iter_mut().zip(&other.rows).for_each(|(a, b)| *a |= b);
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.len(), other.len());
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect();
        Relation { rows }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.len());
        for (x, y) in self.pairs() {
            t.insert(y, x);
        }
        t
    }

    /// Warshall closure.
    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.rows.clone();
        for k in 0..rows.len() {
            let rk = rows[k];
            let b = bit(k);
            for row in rows.iter_mut() {
                if *row & b != 0 {
                    *row |= rk;
                }
            }
        }
        Relation { rows }
    }

    pub fn is_transitive(&self) -> bool {
        self.rows
            .iter()
            .all(|&r| ones(r).all(|y| self.rows[y] & !r == 0))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.contains(i, i))
    }

    pub fn is_antireflexive(&self) -> bool {
        (0..self.len()).all(|i| !self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| x == y || !self.contains(y, x))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    /// Every two elements are comparable.
    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.contains(x, y) || self.contains(y, x)))
    }

    /// Induced relation on `keep`, renumbered in the order given.
    pub fn restrict(&self, keep: &[usize]) -> Relation {
        let mut out = Relation::empty(keep.len());
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.contains(x, y) {
                    out.insert(i, j);
                }
            }
        }
        out
    }

    /// Image under an index map `old -> new` into a universe of `n` points.
    pub fn map(&self, f: &[usize], n: usize) -> Relation {
        let mut out = Relation::empty(n);
        for (x, &row) in self.rows.iter().enumerate() {
            let mut img = 0;
            for y in ones(row) {
                img |= bit(f[y]);
            }
            out.rows[f[x]] |= img;
        }
        out
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
