use super::{MonotoneMap, Poset, Preorder};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::finrel::FinSet;

/// The quotient poset of a preorder with its canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub order: Poset,
    pub canon: MonotoneMap,
    /// Minimum-index member of each class.
    pub representatives: Vec<usize>,
}

/// Collapses `≡`-classes. Classes are ordered and labelled by their
/// minimum-index member.
pub fn quotient(p: &Preorder) -> Quotient {
    let n = p.len();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class[a] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(a);
        for b in a..n {
            if class[b] == usize::MAX && p.equiv(a, b) {
                class[b] = k;
            }
        }
    }
    let carrier = FinSet::new(reps.iter().map(|&a| p.label(a))).expect("labels of distinct elements");
    let order = Poset::new_unchecked(Preorder::kernel_unchecked(&carrier, p, reps.clone()));
    let canon = MonotoneMap::new_unchecked(p, &order, class);
    Quotient {
        order,
        canon,
        representatives: reps,
    }
}

/// A product of two preorders with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub order: Preorder,
    pub first: MonotoneMap,
    pub second: MonotoneMap,
}

/// Componentwise order on pairs; pair `(a, b)` has index `a * |q| + b`.
pub fn product(p: &Preorder, q: &Preorder) -> Product {
    let (n, m) = (p.len(), q.len());
    let carrier = FinSet::new(
        (0..n).flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", p.label(a), q.label(b))),
    )
    .expect("pair labels are distinct");
    let rows = (0..n * m)
        .map(|i| {
            Bits::from_indices(
                n * m,
                (0..n * m).filter(|&j| p.leq(i / m.max(1), j / m.max(1)) && q.leq(i % m, j % m)),
            )
        })
        .collect();
    let order = Preorder::from_rows(&carrier, rows);
    let first = MonotoneMap::new_unchecked(&order, p, (0..n * m).map(|i| i / m).collect());
    let second = MonotoneMap::new_unchecked(&order, q, (0..n * m).map(|i| i % m).collect());
    Product {
        order,
        first,
        second,
    }
}

impl Product {
    /// The mediating map `⟨f, g⟩` into the product.
    pub fn pair(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        f.source().same(g.source(), "cone apex")?;
        f.target().same(self.first.target(), "first leg")?;
        g.target().same(self.second.target(), "second leg")?;
        let m = self.second.target().len();
        MonotoneMap::new(
            f.source(),
            &self.order,
            (0..f.source().len()).map(|x| f.apply(x) * m + g.apply(x)).collect(),
        )
    }
}

/// The one-element poset.
pub fn terminal() -> Poset {
    Poset::discrete(&FinSet::point())
}

pub fn to_terminal(p: &Preorder) -> MonotoneMap {
    MonotoneMap::new_unchecked(p, terminal().preorder(), vec![0; p.len()])
}

/// The equalizer of a parallel pair with its inclusion.
#[derive(Clone, Debug)]
pub struct Equalizer {
    pub order: Preorder,
    pub inclusion: MonotoneMap,
}

/// `{a | f(a) = g(a)}` with the order inherited from the source.
pub fn equalizer(f: &MonotoneMap, g: &MonotoneMap) -> Result<Equalizer> {
    f.source().same(g.source(), "parallel pair sources")?;
    f.target().same(g.target(), "parallel pair targets")?;
    let points: Vec<usize> = (0..f.source().len()).filter(|&a| f.apply(a) == g.apply(a)).collect();
    let carrier = FinSet::new(points.iter().map(|&a| f.source().label(a))).expect("distinct labels");
    let order = Preorder::kernel_unchecked(&carrier, f.source(), points.clone());
    let inclusion = MonotoneMap::new_unchecked(&order, f.source(), points);
    Ok(Equalizer { order, inclusion })
}

impl Equalizer {
    /// The unique factorization of `h` through the inclusion, when `h;f = h;g`.
    pub fn factor(&self, h: &MonotoneMap) -> Result<MonotoneMap> {
        h.target().same(self.inclusion.target(), "cone target")?;
        let index = |b: usize| self.inclusion.table().iter().position(|&x| x == b);
        let table = (0..h.source().len())
            .map(|x| {
                index(h.apply(x)).ok_or_else(|| {
                    Error::Invalid(format!("`{}` does not equalize the pair", h.source().label(x)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MonotoneMap::new(h.source(), &self.order, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::Relation;

    #[test]
    fn quotient_collapses() {
        let two = FinSet::numbered(2);
        let full = Preorder::new(&two, &Relation::full(&two, &two)).unwrap();
        let q = quotient(&full);
        assert_eq!(q.order.len(), 1);
        assert_eq!(q.order.carrier().labels(), vec!["0"]);
        let d = Preorder::discrete(&FinSet::numbered(3));
        assert_eq!(*quotient(&d).order, d);
    }

    #[test]
    fn diamond_product() {
        let c = Preorder::chain(2);
        let p = product(&c, &c);
        assert_eq!(p.order.len(), 4);
        assert!(p.order.leq(0, 3) && !p.order.leq(1, 2) && !p.order.leq(2, 1));
        let t = product(&c, terminal().preorder());
        assert!(super::super::order_isomorphism(&t.order, &c).unwrap().is_some());
    }

    #[test]
    fn equalizer_of_equal_pair() {
        let c = Preorder::chain(3);
        let f = MonotoneMap::new(&c, &c, vec![0, 2, 2]).unwrap();
        let e = equalizer(&f, &f).unwrap();
        assert_eq!(e.order.len(), 3);
        let g = MonotoneMap::new(&c, &c, vec![0, 1, 2]).unwrap();
        let e = equalizer(&f, &g).unwrap();
        assert_eq!(e.inclusion.table(), &[0, 2]);
    }
}
