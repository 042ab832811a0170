use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FinFunction, FinSet, Subset};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// A binary relation `r : A ⇀ B` stored as one bitset row per source element.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationJson", into = "RelationJson")]
pub struct Relation {
    source: FinSet,
    target: FinSet,
    rows: Vec<Bits>,
}

impl Relation {
    pub fn new(
        source: &FinSet,
        target: &FinSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = Relation::empty(source, target);
        for (a, b) in pairs {
            source.check_index(a)?;
            target.check_index(b)?;
            r.rows[a].insert(b);
        }
        Ok(r)
    }

    /// A relation given by label pairs.
    pub fn from_labels<S: AsRef<str>>(
        source: &FinSet,
        target: &FinSet,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((source.require(a.as_ref())?, target.require(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Relation::new(source, target, idx)
    }

    pub fn from_fn(source: &FinSet, target: &FinSet, f: impl Fn(usize, usize) -> bool) -> Self {
        let rows = (0..source.len())
            .map(|a| Bits::from_indices(target.len(), (0..target.len()).filter(|&b| f(a, b))))
            .collect();
        Relation {
            source: source.clone(),
            target: target.clone(),
            rows,
        }
    }

    pub fn from_rows(source: &FinSet, target: &FinSet, rows: Vec<Bits>) -> Result<Self> {
        if rows.len() != source.len() || rows.iter().any(|r| r.len() != target.len()) {
            return Err(Error::mismatch("matrix dimensions do not match carriers"));
        }
        Ok(Relation {
            source: source.clone(),
            target: target.clone(),
            rows,
        })
    }

    pub fn empty(source: &FinSet, target: &FinSet) -> Self {
        Relation {
            source: source.clone(),
            target: target.clone(),
            rows: vec![Bits::new(target.len()); source.len()],
        }
    }

    pub fn full(source: &FinSet, target: &FinSet) -> Self {
        Relation {
            source: source.clone(),
            target: target.clone(),
            rows: vec![Bits::full(target.len()); source.len()],
        }
    }

    pub fn identity(carrier: &FinSet) -> Self {
        Relation::from_fn(carrier, carrier, |a, b| a == b)
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rows[a].get(b)
    }

    pub fn row(&self, a: usize) -> &Bits {
        &self.rows[a]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn column(&self, b: usize) -> Bits {
        Bits::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&a| self.rows[a].get(b)),
        )
    }

    /// The 01-fiber `r^01(a) = {b | r(a,b)}`.
    pub fn fiber01(&self, a: usize) -> Subset {
        Subset::from_bits_unchecked(&self.target, self.rows[a].clone())
    }

    /// The 10-fiber `r^10(b) = {a | r(a,b)}`.
    pub fn fiber10(&self, b: usize) -> Subset {
        Subset::from_bits_unchecked(&self.source, self.column(b))
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(Bits::count).sum()
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Relational composition, diagrammatic: `(r;s)(a,c) = ∃b. r(a,b) ∧ s(b,c)`.
    pub fn compose(&self, s: &Relation) -> Result<Relation> {
        self.target.same(&s.source, "compose")?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = Bits::new(s.target.len());
                for b in row.iter() {
                    acc.union_with(&s.rows[b]);
                }
                acc
            })
            .collect();
        Ok(Relation {
            source: self.source.clone(),
            target: s.target.clone(),
            rows,
        })
    }

    pub fn transpose(&self) -> Relation {
        let mut rows = vec![Bits::new(self.source.len()); self.target.len()];
        for (a, row) in self.rows.iter().enumerate() {
            for b in row.iter() {
                rows[b].insert(a);
            }
        }
        Relation {
            source: self.target.clone(),
            target: self.source.clone(),
            rows,
        }
    }

    fn check_parallel(&self, other: &Relation) -> Result<()> {
        self.source.same(&other.source, "relation sources")?;
        self.target.same(&other.target, "relation targets")
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_parallel(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(b)).collect();
        Ok(Relation { rows, ..self.clone() })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_parallel(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.intersection(b))
            .collect();
        Ok(Relation { rows, ..self.clone() })
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_parallel(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b)))
    }

    /// Left residual `r\s : B ⇀ C` of `r : A ⇀ B` and `s : A ⇀ C`,
    /// `(r\s)(b,c) = ∀a. r(a,b) ⇒ s(a,c)`. The largest `x` with `r;x ⊆ s`.
    pub fn residuate_left(&self, s: &Relation) -> Result<Relation> {
        self.source.same(&s.source, "left residual sources")?;
        let rows = (0..self.target.len())
            .map(|b| {
                let mut acc = Bits::full(s.target.len());
                for (a, row) in self.rows.iter().enumerate() {
                    if row.get(b) {
                        acc.intersect_with(&s.rows[a]);
                    }
                }
                acc
            })
            .collect();
        Ok(Relation {
            source: self.target.clone(),
            target: s.target.clone(),
            rows,
        })
    }

    /// Right residual `s/r : C ⇀ A` of `r : A ⇀ B` and `s : C ⇀ B`,
    /// `(s/r)(c,a) = ∀b. r(a,b) ⇒ s(c,b)`. The largest `x` with `x;r ⊆ s`.
    pub fn residuate_right(&self, s: &Relation) -> Result<Relation> {
        self.target.same(&s.target, "right residual targets")?;
        let rows = s
            .rows
            .iter()
            .map(|srow| {
                Bits::from_indices(
                    self.source.len(),
                    (0..self.source.len()).filter(|&a| self.rows[a].is_subset(srow)),
                )
            })
            .collect();
        Ok(Relation {
            source: s.source.clone(),
            target: self.source.clone(),
            rows,
        })
    }

    /// `{b | ∀a ∈ X. r(a,b)}`.
    pub fn derive_forward(&self, x: &Subset) -> Result<Subset> {
        self.source.same(x.carrier(), "derivation subset")?;
        Ok(Subset::from_bits_unchecked(&self.target, self.derive_forward_bits(x.bits())))
    }

    /// `{a | ∀b ∈ Y. r(a,b)}`.
    pub fn derive_reverse(&self, y: &Subset) -> Result<Subset> {
        self.target.same(y.carrier(), "derivation subset")?;
        Ok(Subset::from_bits_unchecked(&self.source, self.derive_reverse_bits(y.bits())))
    }

    pub(crate) fn derive_forward_bits(&self, x: &Bits) -> Bits {
        let mut acc = Bits::full(self.target.len());
        for a in x.iter() {
            acc.intersect_with(&self.rows[a]);
        }
        acc
    }

    pub(crate) fn derive_reverse_bits(&self, y: &Bits) -> Bits {
        Bits::from_indices(
            self.source.len(),
            (0..self.source.len()).filter(|&a| y.is_subset(&self.rows[a])),
        )
    }

    /// The relation as a function, if it is total and single-valued.
    pub fn as_function(&self) -> Option<FinFunction> {
        let table = self
            .rows
            .iter()
            .map(|row| (row.count() == 1).then(|| row.first()).flatten())
            .collect::<Option<Vec<_>>>()?;
        FinFunction::new(&self.source, &self.target, table).ok()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("({},{})", self.source.label(a), self.target.label(b)))
            .collect();
        write!(f, "Relation[{}]", pairs.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    source: FinSet,
    target: FinSet,
    pairs: Vec<[usize; 2]>,
}

impl TryFrom<RelationJson> for Relation {
    type Error = Error;

    fn try_from(j: RelationJson) -> Result<Self> {
        Relation::new(&j.source, &j.target, j.pairs.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Relation> for RelationJson {
    fn from(r: Relation) -> Self {
        RelationJson {
            pairs: r.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            source: r.source,
            target: r.target,
        }
    }
}
