use super::{MonotoneMap, Preorder};
use crate::error::{Error, Result};
use crate::finrel::{Relation, Subset};

/// A relation closed under the source order on the left and the target
/// order on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBimodule {
    source: Preorder,
    target: Preorder,
    rel: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `f▷(a, b)` iff `f(a) ≤ b`.
    Forward,
    /// `f◁(b, a)` iff `b ≤ f(a)`.
    Reverse,
}

impl OrderBimodule {
    /// Validates `≤_A;r ⊆ r` and `r;≤_B ⊆ r`.
    pub fn new(source: &Preorder, target: &Preorder, rel: Relation) -> Result<Self> {
        source.carrier().same(rel.source(), "bimodule source")?;
        target.carrier().same(rel.target(), "bimodule target")?;
        if !source.relation().compose(&rel)?.is_subset(&rel)? {
            return Err(Error::NotBimodule("not closed on the left".into()));
        }
        if !rel.compose(&target.relation())?.is_subset(&rel)? {
            return Err(Error::NotBimodule("not closed on the right".into()));
        }
        Ok(OrderBimodule {
            source: source.clone(),
            target: target.clone(),
            rel,
        })
    }

    pub fn source(&self) -> &Preorder {
        &self.source
    }

    pub fn target(&self) -> &Preorder {
        &self.target
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    /// `{b | r(a,b)}`, an up-set of the target.
    pub fn fiber01(&self, a: usize) -> Subset {
        self.rel.fiber01(a)
    }

    /// `{a | r(a,b)}`, a down-set of the source.
    pub fn fiber10(&self, b: usize) -> Subset {
        self.rel.fiber10(b)
    }
}

pub fn bimodule_of_map(f: &MonotoneMap, direction: Direction) -> OrderBimodule {
    let (a, b) = (f.source(), f.target());
    let (source, target, rel) = match direction {
        Direction::Forward => (
            a.clone(),
            b.clone(),
            Relation::from_fn(a.carrier(), b.carrier(), |x, y| b.leq(f.apply(x), y)),
        ),
        Direction::Reverse => (
            b.clone(),
            a.clone(),
            Relation::from_fn(b.carrier(), a.carrier(), |y, x| b.leq(y, f.apply(x))),
        ),
    };
    OrderBimodule { source, target, rel }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_gives_order() {
        let c = Preorder::chain(3);
        let m = bimodule_of_map(&MonotoneMap::identity(&c), Direction::Forward);
        assert_eq!(m.relation(), &c.relation());
        assert!(OrderBimodule::new(m.source(), m.target(), m.relation().clone()).is_ok());
    }

    #[test]
    fn rejects_unclosed() {
        let c = Preorder::chain(2);
        let r = Relation::new(c.carrier(), c.carrier(), [(0, 0)]).unwrap();
        assert!(matches!(OrderBimodule::new(&c, &c, r), Err(Error::NotBimodule(_))));
    }
}
