use super::{MonotoneMap, Preorder};
use crate::error::{Error, Result};

/// Largest number of unconstrained elements the isomorphism search accepts.
pub const MAX_SEARCH: usize = 10;

/// Bijective, and order is both preserved and reflected.
pub fn is_isomorphism(f: &MonotoneMap) -> bool {
    f.source().len() == f.target().len() && f.func().is_injective() && f.is_isotonic()
}

/// Some order isomorphism `p → q`, if one exists.
pub fn order_isomorphism(p: &Preorder, q: &Preorder) -> Result<Option<MonotoneMap>> {
    Ok(isomorphisms(p, q, &vec![None; p.len()], 1)?.pop())
}

/// Up to `limit` isomorphisms `p → q` agreeing with the forced assignments.
/// Backtracking; unforced elements are bounded by [`MAX_SEARCH`].
pub fn isomorphisms(
    p: &Preorder,
    q: &Preorder,
    forced: &[Option<usize>],
    limit: usize,
) -> Result<Vec<MonotoneMap>> {
    let n = p.len();
    if forced.len() != n {
        return Err(Error::mismatch("forced assignment length"));
    }
    let free = forced.iter().filter(|f| f.is_none()).count();
    if free > MAX_SEARCH {
        return Err(Error::SizeLimit {
            what: "isomorphism search".into(),
            size: free,
            limit: MAX_SEARCH,
        });
    }
    let mut found = Vec::new();
    if n != q.len() || limit == 0 {
        return Ok(found);
    }
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(p, q, forced, 0, &mut assign, &mut used, limit, &mut found);
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &Preorder,
    q: &Preorder,
    forced: &[Option<usize>],
    i: usize,
    assign: &mut [usize],
    used: &mut [bool],
    limit: usize,
    found: &mut Vec<MonotoneMap>,
) {
    if found.len() >= limit {
        return;
    }
    let n = p.len();
    if i == n {
        found.push(MonotoneMap::new_unchecked(p, q, assign.to_vec()));
        return;
    }
    let candidates: Vec<usize> = match forced[i] {
        Some(v) => vec![v],
        None => (0..n).collect(),
    };
    for v in candidates {
        if v >= n || used[v] {
            continue;
        }
        let consistent = (0..i).all(|j| {
            p.leq(i, j) == q.leq(v, assign[j]) && p.leq(j, i) == q.leq(assign[j], v)
        }) && p.leq(i, i) == q.leq(v, v);
        if !consistent {
            continue;
        }
        assign[i] = v;
        used[v] = true;
        search(p, q, forced, i + 1, assign, used, limit, found);
        used[v] = false;
        assign[i] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::FinSet;

    #[test]
    fn chain_has_one_automorphism() {
        let c = Preorder::chain(4);
        assert_eq!(isomorphisms(&c, &c, &[None; 4], 10).unwrap().len(), 1);
        let d = Preorder::discrete(&FinSet::numbered(3));
        assert_eq!(isomorphisms(&d, &d, &[None; 3], 10).unwrap().len(), 6);
        assert!(order_isomorphism(&c, &Preorder::chain(3)).unwrap().is_none());
    }

    #[test]
    fn search_is_bounded() {
        let c = Preorder::chain(11);
        assert!(matches!(order_isomorphism(&c, &c), Err(Error::SizeLimit { .. })));
    }
}
