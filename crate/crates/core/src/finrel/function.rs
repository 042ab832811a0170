use std::fmt;

use super::{FinSet, Relation, Subset};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// A total function between finite carriers, given by its table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFunction {
    source: FinSet,
    target: FinSet,
    table: Vec<usize>,
}

impl FinFunction {
    pub fn new(source: &FinSet, target: &FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::mismatch(format!(
                "table of length {} for source of size {}",
                table.len(),
                source.len()
            )));
        }
        for &t in &table {
            target.check_index(t)?;
        }
        Ok(FinFunction {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    pub(crate) fn new_unchecked(source: &FinSet, target: &FinSet, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), source.len());
        FinFunction {
            source: source.clone(),
            target: target.clone(),
            table,
        }
    }

    /// A function given by `(source label, target label)` pairs, one per source element.
    pub fn from_labels<S: AsRef<str>>(
        source: &FinSet,
        target: &FinSet,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table = vec![None; source.len()];
        for (a, b) in pairs {
            let i = source.require(a.as_ref())?;
            if table[i].replace(target.require(b.as_ref())?).is_some() {
                return Err(Error::Invalid(format!("`{}` mapped twice", a.as_ref())));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::Invalid(format!("`{}` is unmapped", source.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        FinFunction::new(source, target, table)
    }

    pub fn identity(carrier: &FinSet) -> Self {
        FinFunction::new_unchecked(carrier, carrier, (0..carrier.len()).collect())
    }

    pub fn constant(source: &FinSet, target: &FinSet, value: usize) -> Result<Self> {
        target.check_index(value)?;
        Ok(FinFunction::new_unchecked(source, target, vec![value; source.len()]))
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn then(&self, g: &FinFunction) -> Result<FinFunction> {
        self.target.same(&g.source, "function composite")?;
        Ok(FinFunction::new_unchecked(
            &self.source,
            &g.target,
            self.table.iter().map(|&b| g.table[b]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Bits::new(self.target.len());
        self.table.iter().all(|&b| {
            let fresh = !seen.get(b);
            seen.insert(b);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        Bits::from_indices(self.target.len(), self.table.iter().copied()).is_full()
    }

    /// The graph `f▷ : A ⇀ B`.
    pub fn forward_relation(&self) -> Relation {
        Relation::new(&self.source, &self.target, self.table.iter().copied().enumerate())
            .expect("table entries are in range")
    }

    /// The cograph `f◁ : B ⇀ A`, the transpose of the graph.
    pub fn reverse_relation(&self) -> Relation {
        self.forward_relation().transpose()
    }

    /// Splits `f` into a surjection onto its image followed by the image inclusion.
    /// Image elements keep their target labels, in first-occurrence order.
    pub fn image_factorize(&self) -> (FinFunction, FinFunction) {
        let mut slot = vec![usize::MAX; self.target.len()];
        let mut image = Vec::new();
        let epi_table = self
            .table
            .iter()
            .map(|&b| {
                if slot[b] == usize::MAX {
                    slot[b] = image.len();
                    image.push(b);
                }
                slot[b]
            })
            .collect();
        let carrier = FinSet::new(image.iter().map(|&b| self.target.label(b).into_owned()))
            .expect("target labels are distinct");
        (
            FinFunction::new_unchecked(&self.source, &carrier, epi_table),
            FinFunction::new_unchecked(&carrier, &self.target, image),
        )
    }

    /// Existential image `∃f(X) = {f(x) | x ∈ X}`.
    pub fn existential(&self, x: &Subset) -> Result<Subset> {
        self.source.same(x.carrier(), "existential image")?;
        Ok(Subset::from_bits_unchecked(&self.target, self.existential_bits(x.bits())))
    }

    /// Inverse image `f⁻¹(Y) = {x | f(x) ∈ Y}`.
    pub fn inverse(&self, y: &Subset) -> Result<Subset> {
        self.target.same(y.carrier(), "inverse image")?;
        Ok(Subset::from_bits_unchecked(&self.source, self.inverse_bits(y.bits())))
    }

    /// Universal image `∀f(X) = {y | f⁻¹({y}) ⊆ X}`.
    pub fn universal(&self, x: &Subset) -> Result<Subset> {
        self.source.same(x.carrier(), "universal image")?;
        Ok(Subset::from_bits_unchecked(&self.target, self.universal_bits(x.bits())))
    }

    pub(crate) fn existential_bits(&self, x: &Bits) -> Bits {
        Bits::from_indices(self.target.len(), x.iter().map(|a| self.table[a]))
    }

    pub(crate) fn inverse_bits(&self, y: &Bits) -> Bits {
        Bits::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&a| y.get(self.table[a])),
        )
    }

    pub(crate) fn universal_bits(&self, x: &Bits) -> Bits {
        let outside = self.existential_bits(&x.complement());
        outside.complement()
    }
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", self.source.label(a), self.target.label(b)))
            .collect();
        write!(f, "FinFunction[{}]", parts.join(" "))
    }
}

/// The image triple `∃f ⊣ f⁻¹ ⊣ ∀f` of a function, as subset maps.
#[derive(Clone, Copy)]
pub struct Images<'a> {
    f: &'a FinFunction,
}

impl<'a> Images<'a> {
    pub fn new(f: &'a FinFunction) -> Self {
        Images { f }
    }

    pub fn existential(&self, x: &Subset) -> Result<Subset> {
        self.f.existential(x)
    }

    pub fn inverse(&self, y: &Subset) -> Result<Subset> {
        self.f.inverse(y)
    }

    pub fn universal(&self, x: &Subset) -> Result<Subset> {
        self.f.universal(x)
    }
}
