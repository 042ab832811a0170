//! Finite preorders, posets, monotone maps, limits, power lattices and
//! order bimodules.

mod bimodule;
mod hasse;
mod iso;
mod limits;
mod monotone;
mod power;

pub use bimodule::{bimodule_of_map, Direction, OrderBimodule};
pub use hasse::{hasse_covers, hasse_dot};
pub use iso::{is_isomorphism, isomorphisms, order_isomorphism, MAX_SEARCH};
pub use limits::{equalizer, product, quotient, terminal, to_terminal, Equalizer, Product, Quotient};
pub use monotone::MonotoneMap;
pub use power::{power_order, power_order_with_limit, PowerLattice};

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Relation, Subset};

/// A reflexive, transitive order on a finite carrier.
///
/// Equality compares carriers and the order pointwise; use
/// [`order_isomorphism`] for isomorphism.
#[derive(Clone)]
pub struct Preorder(Arc<Inner>);

struct Inner {
    carrier: FinSet,
    leq: Leq,
    dual: bool,
}

enum Leq {
    Matrix(Vec<Bits>),
    /// Inclusion of bitmasks; the carrier is a power carrier.
    Power,
    /// Inclusion of the given sets.
    Family(Vec<Bits>),
    /// `a ≤ b` iff `map(a) ≤ map(b)` in `base`.
    Kernel { base: Preorder, map: Vec<usize> },
}

impl Preorder {
    /// Validates that `leq` is a reflexive, transitive endorelation on `carrier`.
    pub fn new(carrier: &FinSet, leq: &Relation) -> Result<Self> {
        carrier.same(leq.source(), "order source")?;
        carrier.same(leq.target(), "order target")?;
        let flags = classify_endorelation(leq)?;
        if !flags.reflexive {
            let a = (0..carrier.len()).find(|&a| !leq.get(a, a)).unwrap_or(0);
            return Err(Error::NotPreorder(format!("not reflexive at `{}`", carrier.label(a))));
        }
        if !flags.transitive {
            return Err(Error::NotPreorder(transitivity_witness(leq)));
        }
        Ok(Preorder::from_rows(carrier, leq.rows().to_vec()))
    }

    /// The least preorder containing the given pairs.
    pub fn generated(carrier: &FinSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let r = Relation::new(carrier, carrier, pairs)?;
        let mut rows: Vec<Bits> = r.rows().to_vec();
        for (a, row) in rows.iter_mut().enumerate() {
            row.insert(a);
        }
        let n = carrier.len();
        for k in 0..n {
            let rk = rows[k].clone();
            for row in rows.iter_mut() {
                if row.get(k) {
                    row.union_with(&rk);
                }
            }
        }
        Ok(Preorder::from_rows(carrier, rows))
    }

    pub(crate) fn from_rows(carrier: &FinSet, rows: Vec<Bits>) -> Self {
        Preorder::with(carrier, Leq::Matrix(rows))
    }

    fn with(carrier: &FinSet, leq: Leq) -> Self {
        Preorder(Arc::new(Inner {
            carrier: carrier.clone(),
            leq,
            dual: false,
        }))
    }

    pub fn discrete(carrier: &FinSet) -> Self {
        Preorder::from_rows(
            carrier,
            (0..carrier.len()).map(|a| Bits::from_indices(carrier.len(), [a])).collect(),
        )
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Preorder::chain_on(&FinSet::numbered(n))
    }

    /// The chain following the carrier order.
    pub fn chain_on(carrier: &FinSet) -> Self {
        let n = carrier.len();
        Preorder::from_rows(carrier, (0..n).map(|a| Bits::from_indices(n, a..n)).collect())
    }

    /// Inclusion order on the subsets of `base`.
    pub(crate) fn power_on(carrier: &FinSet) -> Self {
        debug_assert!(carrier.power_base().is_some());
        Preorder::with(carrier, Leq::Power)
    }

    /// Inclusion order on an indexed family of sets.
    pub(crate) fn family(carrier: &FinSet, sets: Vec<Bits>) -> Self {
        debug_assert_eq!(sets.len(), carrier.len());
        Preorder::with(carrier, Leq::Family(sets))
    }

    pub(crate) fn kernel_unchecked(carrier: &FinSet, base: &Preorder, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), carrier.len());
        Preorder::with(
            carrier,
            Leq::Kernel {
                base: base.clone(),
                map,
            },
        )
    }

    /// The kernel order `B(f,f)` on the source of `f`: `a ≤ a'` iff `f(a) ≤ f(a')`.
    pub fn kernel(base: &Preorder, f: &FinFunction) -> Result<Self> {
        base.carrier().same(f.target(), "kernel base")?;
        Ok(Preorder::kernel_unchecked(f.source(), base, f.table().to_vec()))
    }

    /// The opposite order.
    pub fn opposite(&self) -> Preorder {
        let leq = match &self.0.leq {
            Leq::Matrix(rows) => Leq::Matrix(rows.clone()),
            Leq::Power => Leq::Power,
            Leq::Family(sets) => Leq::Family(sets.clone()),
            Leq::Kernel { base, map } => Leq::Kernel {
                base: base.clone(),
                map: map.clone(),
            },
        };
        Preorder(Arc::new(Inner {
            carrier: self.0.carrier.clone(),
            leq,
            dual: !self.0.dual,
        }))
    }

    pub fn carrier(&self) -> &FinSet {
        &self.0.carrier
    }

    pub fn len(&self) -> usize {
        self.0.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, a: usize) -> String {
        self.0.carrier.label(a).into_owned()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (x, y) = if self.0.dual { (b, a) } else { (a, b) };
        match &self.0.leq {
            Leq::Matrix(rows) => rows[x].get(y),
            Leq::Power => x & !y == 0,
            Leq::Family(sets) => sets[x].is_subset(&sets[y]),
            Leq::Kernel { base, map } => base.leq(map[x], map[y]),
        }
    }

    /// `a ≡ b`: `a ≤ b` and `b ≤ a`.
    pub fn equiv(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// The order as an endorelation.
    pub fn relation(&self) -> Relation {
        Relation::from_fn(self.carrier(), self.carrier(), |a, b| self.leq(a, b))
    }

    pub fn is_antisymmetric(&self) -> bool {
        if matches!(self.0.leq, Leq::Power) {
            return true;
        }
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| !self.equiv(a, b)))
    }

    pub fn up_bits(&self, a: usize) -> Bits {
        Bits::from_indices(self.len(), (0..self.len()).filter(|&x| self.leq(a, x)))
    }

    pub fn down_bits(&self, a: usize) -> Bits {
        Bits::from_indices(self.len(), (0..self.len()).filter(|&x| self.leq(x, a)))
    }

    /// `↑a = {x | a ≤ x}`.
    pub fn up_segment(&self, a: usize) -> Result<Subset> {
        self.carrier().check_index(a)?;
        Subset::from_bits(self.carrier(), self.up_bits(a))
    }

    /// `↓a = {x | x ≤ a}`.
    pub fn down_segment(&self, a: usize) -> Result<Subset> {
        self.carrier().check_index(a)?;
        Subset::from_bits(self.carrier(), self.down_bits(a))
    }

    pub(crate) fn upper_bounds_bits(&self, x: &Bits) -> Bits {
        Bits::from_indices(
            self.len(),
            (0..self.len()).filter(|&u| x.iter().all(|a| self.leq(a, u))),
        )
    }

    pub(crate) fn lower_bounds_bits(&self, x: &Bits) -> Bits {
        Bits::from_indices(
            self.len(),
            (0..self.len()).filter(|&l| x.iter().all(|a| self.leq(l, a))),
        )
    }

    /// Upper bounds `⋂{↑a | a ∈ X}` and lower bounds `⋂{↓a | a ∈ X}`.
    pub fn bounds(&self, x: &Subset) -> Result<(Subset, Subset)> {
        self.carrier().same(x.carrier(), "bounds subset")?;
        Ok((
            Subset::from_bits(self.carrier(), self.upper_bounds_bits(x.bits()))?,
            Subset::from_bits(self.carrier(), self.lower_bounds_bits(x.bits()))?,
        ))
    }

    /// A least element of `x`'s upper bounds, if any.
    pub fn least_upper_bound(&self, x: &Bits) -> Option<usize> {
        let ub = self.upper_bounds_bits(x);
        let found = ub.iter().find(|&u| ub.iter().all(|v| self.leq(u, v)));
        found
    }

    /// A greatest element of `x`'s lower bounds, if any.
    pub fn greatest_lower_bound(&self, x: &Bits) -> Option<usize> {
        let lb = self.lower_bounds_bits(x);
        let found = lb.iter().find(|&l| lb.iter().all(|v| self.leq(v, l)));
        found
    }

    pub(crate) fn same(&self, other: &Preorder, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(format!("{what}: orders differ")))
        }
    }

    pub fn ptr_eq(&self, other: &Preorder) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Validates antisymmetry.
    pub fn into_poset(self) -> Result<Poset> {
        Poset::new(self)
    }
}

fn transitivity_witness(leq: &Relation) -> String {
    let n = leq.source().len();
    for a in 0..n {
        for b in leq.row(a).iter() {
            for c in leq.row(b).iter() {
                if !leq.get(a, c) {
                    let l = |i| leq.source().label(i).into_owned();
                    return format!("{} <= {} <= {} but not {} <= {}", l(a), l(b), l(c), l(a), l(c));
                }
            }
        }
    }
    "not transitive".into()
}

impl PartialEq for Preorder {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.carrier() != other.carrier() {
            return false;
        }
        match (&self.0.leq, &other.0.leq) {
            (Leq::Power, Leq::Power) => return self.0.dual == other.0.dual,
            (Leq::Family(a), Leq::Family(b)) if self.0.dual == other.0.dual && a == b => return true,
            (Leq::Kernel { base: b1, map: m1 }, Leq::Kernel { base: b2, map: m2 })
                if self.0.dual == other.0.dual && b1.ptr_eq(b2) && m1 == m2 =>
            {
                return true
            }
            _ => {}
        }
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) == other.leq(a, b)))
    }
}

impl Eq for Preorder {}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() > 64 {
            return write!(f, "Preorder({} elements)", self.len());
        }
        let pairs: Vec<String> = (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq(a, b))
            .map(|(a, b)| format!("{}<={}", self.label(a), self.label(b)))
            .collect();
        write!(f, "Preorder{:?}[{}]", self.carrier(), pairs.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct PreorderJson {
    elements: Vec<String>,
    leq: Vec<[usize; 2]>,
}

impl Serialize for Preorder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.len();
        PreorderJson {
            elements: self.carrier().labels(),
            leq: (0..n)
                .flat_map(|a| (0..n).map(move |b| [a, b]))
                .filter(|&[a, b]| self.leq(a, b))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Preorder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PreorderJson::deserialize(d)?;
        let carrier = FinSet::new(j.elements).map_err(serde::de::Error::custom)?;
        let rel = Relation::new(&carrier, &carrier, j.leq.into_iter().map(|[a, b]| (a, b)))
            .map_err(serde::de::Error::custom)?;
        Preorder::new(&carrier, &rel).map_err(serde::de::Error::custom)
    }
}

/// An antisymmetric preorder.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset(Preorder);

impl Poset {
    pub fn new(p: Preorder) -> Result<Self> {
        let n = p.len();
        for a in 0..n {
            for b in a + 1..n {
                if p.equiv(a, b) {
                    return Err(Error::NotPoset(format!(
                        "`{}` and `{}` are distinct but equivalent",
                        p.label(a),
                        p.label(b)
                    )));
                }
            }
        }
        Ok(Poset(p))
    }

    pub(crate) fn new_unchecked(p: Preorder) -> Self {
        Poset(p)
    }

    pub fn chain(n: usize) -> Self {
        Poset(Preorder::chain(n))
    }

    pub fn discrete(carrier: &FinSet) -> Self {
        Poset(Preorder::discrete(carrier))
    }

    pub fn preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn into_preorder(self) -> Preorder {
        self.0
    }

    pub fn opposite(&self) -> Poset {
        Poset(self.0.opposite())
    }

    /// Binary join, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.0
            .least_upper_bound(&Bits::from_indices(self.len(), [a, b]))
    }

    /// Binary meet, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.0
            .greatest_lower_bound(&Bits::from_indices(self.len(), [a, b]))
    }

    /// Whether every subset has a join and a meet.
    pub fn is_complete_lattice(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        (0..n).all(|a| (a + 1..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.0.least_upper_bound(&Bits::new(self.len()))
    }

    pub fn top(&self) -> Option<usize> {
        self.0.greatest_lower_bound(&Bits::new(self.len()))
    }
}

impl Deref for Poset {
    type Target = Preorder;

    fn deref(&self) -> &Preorder {
        &self.0
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = Preorder::deserialize(d)?;
        Poset::new(p).map_err(serde::de::Error::custom)
    }
}

/// Properties of an endorelation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoFlags {
    pub reflexive: bool,
    pub transitive: bool,
    pub symmetric: bool,
    pub antisymmetric: bool,
}

/// Reflexive: `id ⊆ r`. Transitive: `r;r ⊆ r`. Symmetric: `r^∝ ⊆ r`.
/// Antisymmetric: `r ∩ r^∝ ⊆ id`.
pub fn classify_endorelation(r: &Relation) -> Result<EndoFlags> {
    if !r.is_endo() {
        return Err(Error::mismatch("endorelation expected"));
    }
    let id = Relation::identity(r.source());
    let t = r.transpose();
    Ok(EndoFlags {
        reflexive: id.is_subset(r)?,
        transitive: r.compose(r)?.is_subset(r)?,
        symmetric: t.is_subset(r)?,
        antisymmetric: r.intersection(&t)?.is_subset(&id)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endorelation_flags() {
        let a = FinSet::numbered(3);
        let id = classify_endorelation(&Relation::identity(&a)).unwrap();
        assert!(id.reflexive && id.transitive && id.symmetric && id.antisymmetric);

        let succ = Relation::new(&a, &a, [(0, 1), (1, 2)]).unwrap();
        let f = classify_endorelation(&succ).unwrap();
        assert!(f.antisymmetric && !f.reflexive && !f.transitive && !f.symmetric);

        let two = FinSet::numbered(2);
        let f = classify_endorelation(&Relation::full(&two, &two)).unwrap();
        assert!(f.reflexive && f.transitive && f.symmetric && !f.antisymmetric);

        let r = Relation::empty(&a, &two);
        assert!(classify_endorelation(&r).is_err());
    }

    #[test]
    fn rejects_non_preorders() {
        let a = FinSet::numbered(3);
        let r = Relation::new(&a, &a, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap();
        assert!(matches!(Preorder::new(&a, &r), Err(Error::NotPreorder(_))));
        assert!(matches!(
            Preorder::new(&a, &Relation::empty(&a, &a)),
            Err(Error::NotPreorder(_))
        ));
    }

    #[test]
    fn segments() {
        let c = Preorder::chain(3);
        assert_eq!(c.up_segment(2).unwrap().indices(), vec![2]);
        assert_eq!(c.down_segment(1).unwrap().indices(), vec![0, 1]);
        let d = Preorder::discrete(&FinSet::numbered(3));
        assert_eq!(d.up_segment(1).unwrap().indices(), vec![1]);
        assert!(matches!(c.up_segment(7), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn empty_bounds_are_full() {
        let c = Preorder::chain(3);
        let (u, l) = c.bounds(&Subset::empty(c.carrier())).unwrap();
        assert!(u.is_full() && l.is_full());
        let (u, _) = c.bounds(&Subset::singleton(c.carrier(), 1).unwrap()).unwrap();
        assert_eq!(u, c.up_segment(1).unwrap());
    }

    #[test]
    fn opposite_and_poset() {
        let c = Preorder::chain(3);
        assert!(c.opposite().leq(2, 0));
        assert_eq!(c.opposite().opposite(), c);
        let two = FinSet::numbered(2);
        let full = Preorder::new(&two, &Relation::full(&two, &two)).unwrap();
        assert!(matches!(Poset::new(full), Err(Error::NotPoset(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = Preorder::chain(2);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"elements":["0","1"],"leq":[[0,0],[0,1],[1,1]]}"#);
        let back: Preorder = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn generated_is_closure() {
        let a = FinSet::numbered(3);
        let p = Preorder::generated(&a, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(p, Preorder::chain(3));
    }
}
