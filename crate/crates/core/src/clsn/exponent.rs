use super::{Classification, Infomorphism};
use crate::bits::Bits;
use crate::config::MAX_ENUMERATION;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Relation};

/// The exponent `B^A` together with the infomorphisms naming its instances.
#[derive(Clone, Debug)]
pub struct Exponent {
    pub classification: Classification,
    pub infomorphisms: Vec<Infomorphism>,
}

/// Every infomorphism `A ⇌ B`, ordered by type map then instance map
/// (lexicographically on their tables).
///
/// Type maps are assigned one type at a time; each instance `x` of `B`
/// keeps the instances of `A` whose intent agrees with `x` on the types
/// assigned so far, and a branch dies as soon as one candidate set empties.
pub fn infomorphisms(a: &Classification, b: &Classification) -> Result<Vec<Infomorphism>> {
    let mut search = Search {
        a,
        b,
        typ: Vec::with_capacity(a.types().len()),
        found: Vec::new(),
    };
    let all = Bits::full(a.instances().len());
    let candidates = vec![all; b.instances().len()];
    search.assign(candidates)?;
    Ok(search.found)
}

struct Search<'a> {
    a: &'a Classification,
    b: &'a Classification,
    typ: Vec<usize>,
    found: Vec<Infomorphism>,
}

impl Search<'_> {
    fn assign(&mut self, candidates: Vec<Bits>) -> Result<()> {
        let y = self.typ.len();
        if y == self.a.types().len() {
            return self.emit(&candidates);
        }
        let ext_a = self.a.ext(y);
        for t in 0..self.b.types().len() {
            let mut next = candidates.clone();
            let mut alive = true;
            for (x, c) in next.iter_mut().enumerate() {
                if self.b.holds(x, t) {
                    c.intersect_with(ext_a.bits());
                } else {
                    c.difference_with(ext_a.bits());
                }
                if c.is_empty() {
                    alive = false;
                    break;
                }
            }
            if alive {
                self.typ.push(t);
                self.assign(next)?;
                self.typ.pop();
            }
        }
        Ok(())
    }

    fn emit(&mut self, candidates: &[Bits]) -> Result<()> {
        let choices: Vec<Vec<usize>> = candidates.iter().map(|c| c.iter().collect()).collect();
        let count = choices
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
            .unwrap_or(usize::MAX);
        if count == 0 {
            return Ok(());
        }
        let total = self.found.len().saturating_add(count);
        if total > MAX_ENUMERATION {
            return Err(Error::SizeLimit {
                what: "infomorphism enumeration".into(),
                size: total,
                limit: MAX_ENUMERATION,
            });
        }
        let typ = FinFunction::new_unchecked(self.a.types(), self.b.types(), self.typ.clone());
        let mut pick = vec![0usize; choices.len()];
        loop {
            let table = pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
            let inst = FinFunction::new_unchecked(self.b.instances(), self.a.instances(), table);
            self.found
                .push(Infomorphism::new_unchecked(self.a, self.b, inst, typ.clone())?);
            let mut i = pick.len();
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

/// `B^A`: instances are the infomorphisms `A ⇌ B`, types are
/// `inst(B) × typ(A)` labelled `(x,y)`, and `f ⊨ (x, y)` iff `A(ǧ(x), y)`.
///
/// An infomorphism is labelled `[ǧ(x₁),…|ĝ(y₁),…]`.
pub fn exponent(a: &Classification, b: &Classification) -> Result<Exponent> {
    let maps = infomorphisms(a, b)?;
    let label = |f: &Infomorphism| {
        let inst: Vec<_> = f.inst_map().table().iter().map(|&i| a.instances().label(i)).collect();
        let typ: Vec<_> = f.typ_map().table().iter().map(|&t| b.types().label(t)).collect();
        format!("[{}|{}]", inst.join(","), typ.join(","))
    };
    let instances = FinSet::new(maps.iter().map(label)).map_err(|e| Error::Invalid(format!("exponent labels: {e}")))?;
    let (bi, at) = (b.instances(), a.types());
    let types = FinSet::new(
        (0..bi.len()).flat_map(|x| (0..at.len()).map(move |y| format!("({},{})", bi.label(x), at.label(y)))),
    )
    .map_err(|e| Error::Invalid(format!("exponent labels: {e}")))?;
    let m = at.len();
    let incidence = Relation::from_fn(&instances, &types, |f, xy| {
        a.holds(maps[f].inst_map().apply(xy / m), xy % m)
    });
    Ok(Exponent {
        classification: Classification::from_relation(incidence),
        infomorphisms: maps,
    })
}

/// `A ⊗ B`, the involution of `B^(A^∝)`.
pub fn multiply(a: &Classification, b: &Classification) -> Result<Classification> {
    Ok(exponent(&a.transpose(), b)?.classification.transpose())
}
