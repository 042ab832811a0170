use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::config;
use crate::error::{Error, Result};

/// A finite carrier with distinct labels. Element `i` is the `i`-th label.
///
/// Two carriers are equal when their label lists are equal.
#[derive(Clone)]
pub struct FinSet(Arc<Labels>);

enum Labels {
    Explicit {
        names: Vec<String>,
        index: HashMap<String, usize>,
    },
    /// The subsets of `base`; element `i` is the subset with mask `i`.
    Power { base: FinSet },
}

impl FinSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(FinSet(Arc::new(Labels::Explicit { names, index })))
    }

    /// The carrier `{0, 1, ..., n-1}` labelled by decimal numerals.
    pub fn numbered(n: usize) -> Self {
        FinSet::new((0..n).map(|i| i.to_string())).expect("numerals are distinct")
    }

    /// The empty carrier.
    pub fn empty() -> Self {
        FinSet::numbered(0)
    }

    /// The one-element carrier `{*}`.
    pub fn point() -> Self {
        FinSet::new(["*"]).expect("single label")
    }

    /// The carrier of all subsets of `base`, indexed by bitmask.
    pub fn power(base: &FinSet) -> Result<Self> {
        config::check_power("power set base", base.len())?;
        Ok(FinSet(Arc::new(Labels::Power { base: base.clone() })))
    }

    pub fn power_with_limit(base: &FinSet, limit: usize) -> Result<Self> {
        config::check_power_with("power set base", base.len(), limit)?;
        Ok(FinSet(Arc::new(Labels::Power { base: base.clone() })))
    }

    pub fn len(&self) -> usize {
        match &*self.0 {
            Labels::Explicit { names, .. } => names.len(),
            Labels::Power { base } => 1usize << base.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The base carrier if this is a power carrier.
    pub fn power_base(&self) -> Option<&FinSet> {
        match &*self.0 {
            Labels::Power { base } => Some(base),
            Labels::Explicit { .. } => None,
        }
    }

    pub fn label(&self, i: usize) -> Cow<'_, str> {
        match &*self.0 {
            Labels::Explicit { names, .. } => Cow::Borrowed(&names[i]),
            Labels::Power { base } => {
                assert!(i < self.len(), "index {i} out of range");
                Cow::Owned(subset_label(base, &Bits::from_mask(base.len(), i as u64)))
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i).into_owned()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &*self.0 {
            Labels::Explicit { index, .. } => index.get(label).copied(),
            Labels::Power { base } => {
                let inner = label.strip_prefix('{')?.strip_suffix('}')?;
                let mut mask = 0usize;
                if !inner.is_empty() {
                    for part in inner.split(',') {
                        mask |= 1 << base.index_of(part)?;
                    }
                }
                Some(mask)
            }
        }
    }

    /// Index of `label`, or an unknown-element error.
    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    pub(crate) fn same(&self, other: &FinSet, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(format!("{what}: {self:?} vs {other:?}")))
        }
    }

    pub fn ptr_eq(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

pub(crate) fn subset_label(carrier: &FinSet, bits: &Bits) -> String {
    let parts: Vec<Cow<'_, str>> = bits.iter().map(|i| carrier.label(i)).collect();
    format!("{{{}}}", parts.join(","))
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Labels::Explicit { names: a, .. }, Labels::Explicit { names: b, .. }) => a == b,
            (Labels::Power { base: a }, Labels::Power { base: b }) => a == b,
            _ => {
                self.len() == other.len()
                    && (0..self.len()).all(|i| self.label(i) == other.label(i))
            }
        }
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Labels::Power { base } => write!(f, "P{base:?}"),
            Labels::Explicit { names, .. } => write!(f, "{{{}}}", names.join(",")),
        }
    }
}

impl Serialize for FinSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(d)?;
        FinSet::new(labels).map_err(serde::de::Error::custom)
    }
}

/// A subset of a carrier, stored as a bitset over the canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    carrier: FinSet,
    bits: Bits,
}

impl Subset {
    pub fn empty(carrier: &FinSet) -> Self {
        Subset {
            carrier: carrier.clone(),
            bits: Bits::new(carrier.len()),
        }
    }

    pub fn full(carrier: &FinSet) -> Self {
        Subset {
            carrier: carrier.clone(),
            bits: Bits::full(carrier.len()),
        }
    }

    pub fn singleton(carrier: &FinSet, i: usize) -> Result<Self> {
        Subset::from_indices(carrier, [i])
    }

    pub fn from_indices(carrier: &FinSet, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = Bits::new(carrier.len());
        for i in indices {
            carrier.check_index(i)?;
            bits.insert(i);
        }
        Ok(Subset {
            carrier: carrier.clone(),
            bits,
        })
    }

    pub fn from_labels<S: AsRef<str>>(carrier: &FinSet, labels: &[S]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| carrier.require(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Subset::from_indices(carrier, idx)
    }

    pub fn from_bits(carrier: &FinSet, bits: Bits) -> Result<Self> {
        if bits.len() != carrier.len() {
            return Err(Error::mismatch(format!(
                "bitset of length {} over carrier of size {}",
                bits.len(),
                carrier.len()
            )));
        }
        Ok(Subset {
            carrier: carrier.clone(),
            bits,
        })
    }

    /// The subset of a carrier of at most 64 elements with the given mask.
    pub fn from_mask(carrier: &FinSet, mask: u64) -> Self {
        Subset {
            carrier: carrier.clone(),
            bits: Bits::from_mask(carrier.len(), mask),
        }
    }

    pub(crate) fn from_bits_unchecked(carrier: &FinSet, bits: Bits) -> Self {
        debug_assert_eq!(bits.len(), carrier.len());
        Subset {
            carrier: carrier.clone(),
            bits,
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn into_bits(self) -> Bits {
        self.bits
    }

    pub fn mask(&self) -> u64 {
        self.bits.to_mask()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.bits
            .iter()
            .map(|i| self.carrier.label(i).into_owned())
            .collect()
    }

    fn check(&self, other: &Subset) -> Result<()> {
        self.carrier.same(&other.carrier, "subset carriers")
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(Subset::from_bits_unchecked(&self.carrier, self.bits.union(&other.bits)))
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(Subset::from_bits_unchecked(
            &self.carrier,
            self.bits.intersection(&other.bits),
        ))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check(other)?;
        Ok(Subset::from_bits_unchecked(
            &self.carrier,
            self.bits.difference(&other.bits),
        ))
    }

    pub fn complement(&self) -> Subset {
        Subset::from_bits_unchecked(&self.carrier, self.bits.complement())
    }

    /// Relative pseudo-complement `{a | a in self implies a in other}`.
    pub fn implies(&self, other: &Subset) -> Result<Subset> {
        self.complement().union(other)
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        self.check(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// Intersection of a family; the empty family gives the full carrier.
    pub fn family_intersection<'a>(
        carrier: &FinSet,
        family: impl IntoIterator<Item = &'a Subset>,
    ) -> Result<Subset> {
        let mut acc = Subset::full(carrier);
        for s in family {
            acc = acc.intersection(s)?;
        }
        Ok(acc)
    }

    /// Union of a family; the empty family gives the empty subset.
    pub fn family_union<'a>(
        carrier: &FinSet,
        family: impl IntoIterator<Item = &'a Subset>,
    ) -> Result<Subset> {
        let mut acc = Subset::empty(carrier);
        for s in family {
            acc = acc.union(s)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&subset_label(&self.carrier, &self.bits))
    }
}
