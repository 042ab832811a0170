use std::fmt;
use std::sync::Arc;

use super::Preorder;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::finrel::FinFunction;

/// An order-preserving map between preorders.
#[derive(Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Preorder,
    target: Preorder,
    table: Arc<[usize]>,
}

impl MonotoneMap {
    /// Validates the range and monotonicity of `table`.
    pub fn new(source: &Preorder, target: &Preorder, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::mismatch(format!(
                "table of length {} for order of size {}",
                table.len(),
                source.len()
            )));
        }
        for &t in &table {
            target.carrier().check_index(t)?;
        }
        let f = MonotoneMap::new_unchecked(source, target, table);
        if let Some((a, b)) = f.monotonicity_witness() {
            return Err(Error::NotMonotone(format!(
                "{} <= {} but {} -> {}, {} -> {}",
                source.label(a),
                source.label(b),
                source.label(a),
                target.label(f.apply(a)),
                source.label(b),
                target.label(f.apply(b))
            )));
        }
        Ok(f)
    }

    /// Builds a map without checking monotonicity. For orders too large to
    /// validate pairwise; the caller is responsible for the law.
    pub fn new_unchecked(source: &Preorder, target: &Preorder, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), source.len());
        MonotoneMap {
            source: source.clone(),
            target: target.clone(),
            table: table.into(),
        }
    }

    pub fn from_function(source: &Preorder, target: &Preorder, f: &FinFunction) -> Result<Self> {
        source.carrier().same(f.source(), "map source")?;
        target.carrier().same(f.target(), "map target")?;
        MonotoneMap::new(source, target, f.table().to_vec())
    }

    pub fn identity(p: &Preorder) -> Self {
        MonotoneMap::new_unchecked(p, p, (0..p.len()).collect())
    }

    pub fn constant(source: &Preorder, target: &Preorder, value: usize) -> Result<Self> {
        target.carrier().check_index(value)?;
        Ok(MonotoneMap::new_unchecked(source, target, vec![value; source.len()]))
    }

    pub fn source(&self) -> &Preorder {
        &self.source
    }

    pub fn target(&self) -> &Preorder {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// The underlying function of carriers.
    pub fn func(&self) -> FinFunction {
        FinFunction::new_unchecked(self.source.carrier(), self.target.carrier(), self.table.to_vec())
    }

    /// A pair `a ≤ b` with `f(a) ≰ f(b)`, if any.
    pub fn monotonicity_witness(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.source.leq(a, b) && !self.target.leq(self.apply(a), self.apply(b)))
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        self.target.same(&g.source, "monotone composite")?;
        Ok(self.then_unchecked(g))
    }

    pub(crate) fn then_unchecked(&self, g: &MonotoneMap) -> MonotoneMap {
        MonotoneMap::new_unchecked(
            &self.source,
            &g.target,
            self.table.iter().map(|&b| g.table[b]).collect(),
        )
    }

    /// The same function between the opposite orders.
    pub fn opposite(&self) -> MonotoneMap {
        MonotoneMap::new_unchecked(&self.source.opposite(), &self.target.opposite(), self.table.to_vec())
    }

    /// Preserves and reflects order: `a ≤ b` iff `f(a) ≤ f(b)`.
    pub fn is_isotonic(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| self.source.leq(a, b) == self.target.leq(self.apply(a), self.apply(b)))
        })
    }

    fn check_parallel(&self, g: &MonotoneMap) -> Result<()> {
        self.source.same(&g.source, "parallel maps")?;
        self.target.same(&g.target, "parallel maps")
    }

    /// Pointwise order on parallel maps: `f(a) ≤ g(a)` for every `a`.
    pub fn leq_pointwise(&self, g: &MonotoneMap) -> Result<bool> {
        self.check_parallel(g)?;
        Ok((0..self.source.len()).all(|a| self.target.leq(self.apply(a), g.apply(a))))
    }

    /// `f ≡ g`: pointwise equivalent values.
    pub fn equivalent(&self, g: &MonotoneMap) -> Result<bool> {
        Ok(self.leq_pointwise(g)? && g.leq_pointwise(self)?)
    }

    /// `f·h ≡ f·k` implies `h ≡ k` for all parallel `h, k` out of the target.
    /// Equivalent to every target element being equivalent to some image point.
    pub fn is_pseudo_epi(&self) -> bool {
        let image = Bits::from_indices(self.target.len(), self.table.iter().copied());
        (0..self.target.len())
            .all(|b| image.iter().any(|c| self.target.equiv(b, c)))
    }

    /// `h·f ≡ k·f` implies `h ≡ k` for all parallel `h, k` into the source.
    /// Equivalent to `f(a) ≡ f(a')` implying `a ≡ a'`.
    pub fn is_pseudo_mono(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| !self.target.equiv(self.apply(a), self.apply(b)) || self.source.equiv(a, b))
        })
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.table.len() > 64 {
            return write!(f, "MonotoneMap({} -> {} elements)", self.source.len(), self.target.len());
        }
        write!(f, "MonotoneMap{:?}", &self.table[..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::FinSet;

    #[test]
    fn rejects_antitone() {
        let c = Preorder::chain(2);
        assert!(matches!(
            MonotoneMap::new(&c, &c, vec![1, 0]),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn isotonic_and_pseudo() {
        let c = Preorder::chain(3);
        let d = Preorder::discrete(&FinSet::numbered(3));
        let inc = MonotoneMap::new(&d, &c, vec![0, 1, 2]).unwrap();
        assert!(!inc.is_isotonic());
        assert!(inc.is_pseudo_epi() && inc.is_pseudo_mono());
        let skip = MonotoneMap::new(&Preorder::chain(2), &c, vec![0, 2]).unwrap();
        assert!(skip.is_isotonic() && !skip.is_pseudo_epi());
    }
}
