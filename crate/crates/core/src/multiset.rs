//! A small ordered multiset used for sequent antecedents, linear contexts
//! and Petri-net markings.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finite multiset over an ordered element type.
///
/// Elements with count zero are never stored, so structural equality of the
/// underlying map coincides with multiset equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset<T: Ord>(BTreeMap<T, u32>);

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset(BTreeMap::new())
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total number of elements, counting multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().map(|&n| n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, x: &T) -> u32 {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.0.contains_key(x)
    }

    pub fn insert(&mut self, x: T) {
        *self.0.entry(x).or_insert(0) += 1;
    }

    pub fn insert_n(&mut self, x: T, n: u32) {
        if n > 0 {
            *self.0.entry(x).or_insert(0) += n;
        }
    }

    /// Removes one occurrence of `x`; returns false if absent.
    pub fn remove_one(&mut self, x: &T) -> bool
    where
        T: Clone,
    {
        match self.0.get_mut(x) {
            Some(n) if *n > 1 => {
                *n -= 1;
                true
            }
            Some(_) => {
                self.0.remove(x);
                true
            }
            None => false,
        }
    }

    /// Iterates over `(element, count)` pairs in element order.
    pub fn counts(&self) -> impl Iterator<Item = (&T, u32)> {
        self.0.iter().map(|(x, &n)| (x, n))
    }

    /// Iterates over distinct elements in order.
    pub fn distinct(&self) -> impl Iterator<Item = &T> {
        self.0.keys()
    }

    /// Iterates over elements with multiplicity, in element order.
    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.0
            .iter()
            .flat_map(|(x, &n)| std::iter::repeat(x).take(n as usize))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.counts().all(|(x, n)| other.count(x) >= n)
    }

    /// Multiset sum.
    pub fn union(&self, other: &Self) -> Self
    where
        T: Clone,
    {
        let mut out = self.clone();
        for (x, n) in other.counts() {
            out.insert_n(x.clone(), n);
        }
        out
    }

    /// Pointwise minimum (multiset intersection).
    pub fn intersection(&self, other: &Self) -> Self
    where
        T: Clone,
    {
        let mut out = Multiset::new();
        for (x, n) in self.counts() {
            let m = n.min(other.count(x));
            out.insert_n(x.clone(), m);
        }
        out
    }

    /// Saturating multiset difference `self − other`.
    pub fn difference(&self, other: &Self) -> Self
    where
        T: Clone,
    {
        let mut out = Multiset::new();
        for (x, n) in self.counts() {
            let m = n.saturating_sub(other.count(x));
            out.insert_n(x.clone(), m);
        }
        out
    }

    /// Every way of splitting the multiset into an ordered pair of parts.
    /// The number of splits is the product of `count + 1` over distinct
    /// elements.
    pub fn splits(&self) -> Vec<(Self, Self)>
    where
        T: Clone,
    {
        let mut out = vec![(Multiset::new(), Multiset::new())];
        for (x, n) in self.counts() {
            let mut next = Vec::with_capacity(out.len() * (n as usize + 1));
            for (left, right) in &out {
                for k in 0..=n {
                    let mut l = left.clone();
                    let mut r = right.clone();
                    l.insert_n(x.clone(), k);
                    r.insert_n(x.clone(), n - k);
                    next.push((l, r));
                }
            }
            out = next;
        }
        out
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut ms = Multiset::new();
        for x in iter {
            ms.insert(x);
        }
        ms
    }
}

impl<T: Ord + Clone> From<&[T]> for Multiset<T> {
    fn from(xs: &[T]) -> Self {
        xs.iter().cloned().collect()
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

// Serialized as the expanded element sequence so proof files stay readable.
impl<T: Ord + Serialize> Serialize for Multiset<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for x in self.iter() {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

impl<'de, T: Ord + Deserialize<'de>> Deserialize<'de> for Multiset<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<'de, T: Ord + Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Multiset<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a sequence of multiset elements")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut ms = Multiset::new();
                while let Some(x) = seq.next_element()? {
                    ms.insert(x);
                }
                Ok(ms)
            }
        }
        deserializer.deserialize_seq(V(std::marker::PhantomData))
    }
}
