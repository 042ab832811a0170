use super::Adjunction;
use crate::error::{Error, Result};
use crate::order::{MonotoneMap, Preorder};

/// Default bound on middle-poset size for exhaustive adjunction search.
pub const DEFAULT_SEARCH_BOUND: usize = 4;

/// The unique `d : C₁ ⇌ C₂` filling the commuting square `e;s = r;m`,
/// where `e : A₀ ⇌ C₁` is a reflection and `m : C₂ ⇌ A₁` a coreflection.
/// `ď = ê·ř` and `d̂ = m̌·ŝ`; the alternatives `š·m̂` and `r̂·ě` are checked.
pub fn diagonalize(e: &Adjunction, s: &Adjunction, r: &Adjunction, m: &Adjunction) -> Result<Adjunction> {
    e.source().same(r.source(), "square source")?;
    e.target().same(s.source(), "square top")?;
    r.target().same(m.source(), "square bottom")?;
    s.target().same(m.target(), "square target")?;
    if e.compose_unchecked(s) != r.compose_unchecked(m) {
        return Err(Error::SquareDoesNotCommute("e;s differs from r;m".into()));
    }
    if !e.is_reflection() {
        return Err(Error::NotReflection("top-left side of the square".into()));
    }
    if !m.is_coreflection() {
        return Err(Error::NotCoreflection("bottom-right side of the square".into()));
    }
    let left = e.right().then_unchecked(r.left());
    let right = m.left().then_unchecked(s.right());
    if left != s.left().then_unchecked(m.right()) || right != r.right().then_unchecked(e.left()) {
        return Err(Error::Invalid("diagonal formulas disagree".into()));
    }
    let d = Adjunction::new(left, right)?;
    debug_assert!(e.compose_unchecked(&d) == *r && d.compose_unchecked(m) == *s);
    Ok(d)
}

/// Every adjunction `c₁ ⇌ c₂`, by enumerating all function pairs.
/// Both posets must have at most `bound` elements.
pub fn all_adjunctions(c1: &Preorder, c2: &Preorder, bound: usize) -> Result<Vec<Adjunction>> {
    for p in [c1, c2] {
        if p.len() > bound {
            return Err(Error::SizeLimit {
                what: "adjunction search".into(),
                size: p.len(),
                limit: bound,
            });
        }
    }
    let lefts = monotone_maps(c1, c2);
    let rights = monotone_maps(c2, c1);
    let mut found = Vec::new();
    for l in &lefts {
        for r in &rights {
            let ok = (0..c1.len())
                .all(|a| (0..c2.len()).all(|b| c2.leq(l.apply(a), b) == c1.leq(a, r.apply(b))));
            if ok {
                found.push(Adjunction::new_unchecked(l.clone(), r.clone()));
            }
        }
    }
    Ok(found)
}

/// All `d : C₁ ⇌ C₂` with `e;d = r` and `d;m = s`, by exhaustive search.
pub fn mediating_adjunctions(
    e: &Adjunction,
    s: &Adjunction,
    r: &Adjunction,
    m: &Adjunction,
    bound: usize,
) -> Result<Vec<Adjunction>> {
    Ok(all_adjunctions(e.target(), r.target(), bound)?
        .into_iter()
        .filter(|d| e.compose_unchecked(d) == *r && d.compose_unchecked(m) == *s)
        .collect())
}

fn monotone_maps(p: &Preorder, q: &Preorder) -> Vec<MonotoneMap> {
    let (n, m) = (p.len(), q.len());
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(MonotoneMap::new_unchecked(p, q, Vec::new()));
        }
        return out;
    }
    let mut table = vec![0; n];
    loop {
        let f = MonotoneMap::new_unchecked(p, q, table.clone());
        if f.monotonicity_witness().is_none() {
            out.push(f);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            table[i] += 1;
            if table[i] < m {
                break;
            }
            table[i] = 0;
            i += 1;
        }
    }
}
