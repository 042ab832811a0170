//! Classifications (formal contexts), their derivation adjunctions,
//! infomorphisms, and the exponent and multiplication constructions.

mod exponent;
mod infomorphism;

pub use exponent::{exponent, infomorphisms, multiply, Exponent};
pub use infomorphism::{check_infomorphism, Infomorphism, InfomorphismReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::Result;
use crate::finrel::{FinSet, Relation, Subset};
use crate::galois::Adjunction;
use crate::order::{power_order_with_limit, MonotoneMap, Preorder};

/// A classification `⟨inst, typ, ⊨⟩`: instances, types and an incidence relation.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Classification {
    incidence: Relation,
}

impl Classification {
    pub fn new(instances: &FinSet, types: &FinSet, incidence: Relation) -> Result<Self> {
        instances.same(incidence.source(), "classification instances")?;
        types.same(incidence.target(), "classification types")?;
        Ok(Classification { incidence })
    }

    pub fn from_relation(incidence: Relation) -> Self {
        Classification { incidence }
    }

    /// A classification from label lists and `(instance, type)` label pairs.
    pub fn from_labels<S: AsRef<str>>(instances: &[S], types: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let inst = FinSet::new(instances.iter().map(|s| s.as_ref().to_string()))?;
        let typ = FinSet::new(types.iter().map(|s| s.as_ref().to_string()))?;
        Ok(Classification {
            incidence: Relation::from_labels(&inst, &typ, pairs)?,
        })
    }

    pub fn instances(&self) -> &FinSet {
        self.incidence.source()
    }

    pub fn types(&self) -> &FinSet {
        self.incidence.target()
    }

    pub fn incidence(&self) -> &Relation {
        &self.incidence
    }

    pub fn holds(&self, instance: usize, ty: usize) -> bool {
        self.incidence.get(instance, ty)
    }

    /// `ext(t) = {i | i ⊨ t}`.
    pub fn ext(&self, ty: usize) -> Subset {
        self.incidence.fiber10(ty)
    }

    /// `int(i) = {t | i ⊨ t}`.
    pub fn int(&self, instance: usize) -> Subset {
        self.incidence.fiber01(instance)
    }

    /// The involution `A^∝`, swapping instances and types.
    pub fn transpose(&self) -> Classification {
        Classification {
            incidence: self.incidence.transpose(),
        }
    }

    /// `⟨A⇒, A⇐⟩ : ℘inst ⇌ (℘typ)^op`.
    pub fn derivation(&self) -> Result<Adjunction> {
        self.derivation_with_limit(config::max_carrier())
    }

    pub fn derivation_with_limit(&self, limit: usize) -> Result<Adjunction> {
        let pi = power_order_with_limit(self.instances(), limit)?;
        let pt = power_order_with_limit(self.types(), limit)?;
        let source = pi.order().preorder().clone();
        let target = pt.order().preorder().opposite();
        let (n, m) = (self.instances().len(), self.types().len());
        let rows: Vec<usize> = (0..n).map(|i| self.incidence.row(i).to_mask() as usize).collect();
        let cols: Vec<usize> = (0..m).map(|t| self.incidence.column(t).to_mask() as usize).collect();
        let left = meet_table(&rows, (1usize << m) - 1);
        let right = meet_table(&cols, (1usize << n) - 1);
        Ok(Adjunction::new_unchecked(
            MonotoneMap::new_unchecked(&source, &target, left),
            MonotoneMap::new_unchecked(&target, &source, right),
        ))
    }
}

/// `table[X] = ⋂{masks[i] | i ∈ X}`, with the empty meet equal to `full`.
pub(crate) fn meet_table(masks: &[usize], full: usize) -> Vec<usize> {
    let size = 1usize << masks.len();
    let mut table = vec![full; size];
    for x in 1..size {
        let low = x.trailing_zeros() as usize;
        table[x] = table[x & (x - 1)] & masks[low];
    }
    table
}

pub fn derivation(a: &Classification) -> Result<Adjunction> {
    a.derivation()
}

/// The classification whose instances and types are the carrier and
/// whose incidence is the order.
pub fn order_as_classification(p: &Preorder) -> Classification {
    Classification {
        incidence: p.relation(),
    }
}

impl fmt::Debug for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Classification {{ instances: {:?}, types: {:?}, incidence: {:?} }}",
            self.instances(),
            self.types(),
            self.incidence
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{bounds_adjunction, check_adjunction};

    fn worked() -> Classification {
        Classification::from_labels(&["1", "2"], &["a", "b"], &[("1", "a"), ("1", "b"), ("2", "b")]).unwrap()
    }

    #[test]
    fn worked_derivation() {
        let a = worked();
        let d = a.derivation().unwrap();
        assert!(check_adjunction(d.left(), d.right()).is_ok());
        // {2} has mask 0b10; {b} has mask 0b10.
        assert_eq!(d.left().apply(0b10), 0b10);
        assert_eq!(d.right().apply(0b10), 0b11);
    }

    #[test]
    fn empty_incidence() {
        let a = Classification::new(
            &FinSet::numbered(2),
            &FinSet::numbered(2),
            Relation::empty(&FinSet::numbered(2), &FinSet::numbered(2)),
        )
        .unwrap();
        let d = a.derivation().unwrap();
        assert_eq!(d.left().apply(0), 0b11);
        for x in 1..4 {
            assert_eq!(d.left().apply(x), 0);
        }
    }

    #[test]
    fn orders_give_bounds() {
        let c = Preorder::chain(3);
        let a = order_as_classification(&c);
        assert_eq!(a.derivation().unwrap(), bounds_adjunction(&c).unwrap());
        let d = Preorder::discrete(&FinSet::numbered(2));
        assert_eq!(order_as_classification(&d).incidence(), &Relation::identity(d.carrier()));
    }

    #[test]
    fn json_mirrors_relation() {
        let a = worked();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, serde_json::to_string(a.incidence()).unwrap());
        assert_eq!(serde_json::from_str::<Classification>(&text).unwrap(), a);
    }
}
