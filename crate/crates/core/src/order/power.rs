use super::{Poset, Preorder};
use crate::config;
use crate::error::Result;
use crate::finrel::{FinSet, Subset};

/// The subsets of a base carrier under inclusion. Element `i` is the subset
/// with bitmask `i`, so the carrier is in ascending bitset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerLattice {
    base: FinSet,
    order: Poset,
    full: usize,
}

/// The power lattice of `base`, bounded by [`config::max_carrier`].
pub fn power_order(base: &FinSet) -> Result<PowerLattice> {
    power_order_with_limit(base, config::max_carrier())
}

pub fn power_order_with_limit(base: &FinSet, limit: usize) -> Result<PowerLattice> {
    let carrier = FinSet::power_with_limit(base, limit)?;
    Ok(PowerLattice {
        base: base.clone(),
        order: Poset::new_unchecked(Preorder::power_on(&carrier)),
        full: (1usize << base.len()) - 1,
    })
}

impl PowerLattice {
    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, x: &Subset) -> Result<usize> {
        self.base.same(x.carrier(), "power lattice subset")?;
        Ok(x.mask() as usize)
    }

    pub fn subset(&self, i: usize) -> Subset {
        Subset::from_mask(&self.base, i as u64)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.full
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        a & b
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        a | b
    }

    /// Relative pseudo-complement `a ⇒ b`.
    pub fn implies(&self, a: usize, b: usize) -> usize {
        (!a | b) & self.full
    }

    pub fn complement(&self, a: usize) -> usize {
        !a & self.full
    }

    /// Intersection of a family; the empty family gives the top.
    pub fn family_intersection(&self, family: impl IntoIterator<Item = usize>) -> usize {
        family.into_iter().fold(self.full, |acc, x| acc & x)
    }

    /// Union of a family; the empty family gives the bottom.
    pub fn family_union(&self, family: impl IntoIterator<Item = usize>) -> usize {
        family.into_iter().fold(0, |acc, x| acc | x)
    }
}
