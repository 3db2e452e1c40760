//! Finite carriers and bit-vector subsets.
//!
//! Every structure in this crate lives over a [`Carrier`]: an ordered list of
//! unique labels. A [`Subset`] is a fixed-width bit vector over such a
//! carrier, so the set algebra is word operations and every quantifier over
//! subsets is a loop over masks `0..(1 << size)` in index order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard width limit imposed by the `u128` mask representation.
pub const MAX_CARRIER: usize = 128;

/// Default carrier cap; override with [`Carrier::with_cap`] (up to 128).
pub const DEFAULT_CARRIER_CAP: usize = 64;

/// An ordered set of labelled elements. Element order is input order and is
/// the enumeration order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(names, DEFAULT_CARRIER_CAP)
    }

    pub fn with_cap<I, S>(names: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let cap = cap.min(MAX_CARRIER);
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if names.len() > cap {
            return Err(Error::CarrierTooLarge { size: names.len(), cap });
        }
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(Carrier { names, index })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.size())
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn singleton(&self, i: usize) -> Subset {
        Subset::singleton(self.size(), i)
    }

    pub fn subset_from_mask(&self, mask: u128) -> Subset {
        Subset::from_mask(self.size(), mask)
    }

    /// Build a subset from labels; unknown labels are an error.
    pub fn subset_from_labels<'a, I>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut s = self.empty();
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    /// Render a subset as `{a,b}` in index order.
    pub fn format_subset(&self, s: Subset) -> String {
        debug_assert_eq!(s.universe(), self.size());
        let mut out = String::from("{");
        let mut first = true;
        for i in s.iter() {
            if !first {
                out.push(',');
            }
            out.push_str(&self.names[i]);
            first = false;
        }
        out.push('}');
        out
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }
}

/// A subset of a carrier as a fixed-width bit vector.
///
/// The `universe` field records the carrier size so that operations over
/// mismatched carriers are caught; set algebra requires equal widths.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u128,
    universe: u32,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        debug_assert!(universe <= MAX_CARRIER);
        Subset { bits: 0, universe: universe as u32 }
    }

    pub fn full(universe: usize) -> Self {
        Subset { bits: Self::full_mask(universe), universe: universe as u32 }
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        debug_assert!(i < universe);
        Subset { bits: 1u128 << i, universe: universe as u32 }
    }

    pub fn from_mask(universe: usize, mask: u128) -> Self {
        Subset { bits: mask & Self::full_mask(universe), universe: universe as u32 }
    }

    fn full_mask(universe: usize) -> u128 {
        debug_assert!(universe <= MAX_CARRIER);
        if universe == MAX_CARRIER {
            u128::MAX
        } else {
            (1u128 << universe) - 1
        }
    }

    pub fn mask(&self) -> u128 {
        self.bits
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe());
        self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.universe());
        self.bits |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.bits &= !(1u128 << i);
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn union(&self, other: Subset) -> Subset {
        self.check(other);
        Subset { bits: self.bits | other.bits, universe: self.universe }
    }

    pub fn intersect(&self, other: Subset) -> Subset {
        self.check(other);
        Subset { bits: self.bits & other.bits, universe: self.universe }
    }

    pub fn minus(&self, other: Subset) -> Subset {
        self.check(other);
        Subset { bits: self.bits & !other.bits, universe: self.universe }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            bits: !self.bits & Self::full_mask(self.universe()),
            universe: self.universe,
        }
    }

    pub fn is_subset_of(&self, other: Subset) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: Subset) -> bool {
        self.check(other);
        self.bits & other.bits != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.universe()).filter(move |i| bits >> i & 1 == 1)
    }

    /// Iterate all subsets of `self` in mask order (including empty and self).
    pub fn subsets(&self) -> SubsetsIter {
        SubsetsIter { of: self.bits, current: 0, universe: self.universe, done: false }
    }

    #[inline]
    fn check(&self, other: Subset) {
        assert_eq!(self.universe, other.universe, "subsets over different carriers");
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#x}/{})", self.bits, self.universe)
    }
}

/// Iterator over the subsets of a fixed mask, ascending in mask value.
pub struct SubsetsIter {
    of: u128,
    current: u128,
    universe: u32,
    done: bool,
}

impl Iterator for SubsetsIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset { bits: self.current, universe: self.universe };
        if self.current == self.of {
            self.done = true;
        } else {
            // standard subset-enumeration step within a mask
            self.current = (self.current.wrapping_sub(self.of)) & self.of;
        }
        Some(out)
    }
}

/// Iterate every subset of a universe of size `n`, ascending by mask.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n < 32, "exhaustive subset scan over {n} elements");
    (0u128..(1u128 << n)).map(move |m| Subset::from_mask(n, m))
}
