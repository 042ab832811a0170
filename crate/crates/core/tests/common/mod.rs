//! Brute-force oracles and fixtures shared by the integration tests.
//! Oracles work on raw bitmasks and never call the code under test
//! beyond reading incidences.

#![allow(dead_code)]

use conceptua::clsn::{Classification, Infomorphism};
use conceptua::galois::{direct_image_adjunction, opposite_image_adjunction, polar_factorize, Adjunction};
use conceptua::finrel::{FinSet, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn numbered(prefix: &str, n: usize) -> FinSet {
    FinSet::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

/// A context from cross-table rows over `'X'` and `'.'`.
pub fn context(rows: &[&str]) -> Classification {
    let m = rows.first().map_or(0, |r| r.len());
    let g = numbered("g", rows.len());
    let attrs = numbered("m", m);
    Classification::from_relation(Relation::from_fn(&g, &attrs, |i, j| rows[i].as_bytes()[j] == b'X'))
}

pub fn random_context(rng: &mut impl Rng, g: usize, m: usize) -> Classification {
    let cells: Vec<bool> = (0..g * m).map(|_| rng.gen_bool(0.5)).collect();
    Classification::from_relation(Relation::from_fn(&numbered("g", g), &numbered("m", m), |i, j| {
        cells[i * m + j]
    }))
}

/// `g I m` iff `g ≠ m`.
pub fn contranominal(n: usize) -> Classification {
    Classification::from_relation(Relation::from_fn(&numbered("g", n), &numbered("m", n), |i, j| i != j))
}

/// `g I m` iff `g = m`.
pub fn nominal(n: usize) -> Classification {
    Classification::from_relation(Relation::from_fn(&numbered("g", n), &numbered("m", n), |i, j| i == j))
}

fn rows(a: &Classification) -> Vec<u64> {
    (0..a.instances().len())
        .map(|i| (0..a.types().len()).filter(|&j| a.holds(i, j)).fold(0, |acc, j| acc | 1 << j))
        .collect()
}

/// All `(extent, intent)` mask pairs, found by closing every object set.
pub fn concepts(a: &Classification) -> Vec<(u64, u64)> {
    let (g, m) = (a.instances().len(), a.types().len());
    let rows = rows(a);
    let full_m = (1u64 << m) - 1;
    let mut out = Vec::new();
    for x in 0..1u64 << g {
        let intent = (0..g).filter(|i| x >> i & 1 == 1).fold(full_m, |acc, i| acc & rows[i]);
        let extent = (0..g).filter(|&i| rows[i] & intent == intent).fold(0, |acc, i| acc | 1 << i);
        if extent == x {
            out.push((extent, intent));
        }
    }
    out.sort();
    out
}

/// Every function table `from → to`, in lexicographic order.
pub fn tables(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..from {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..to).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// All `(inst, typ)` table pairs meeting `A(inst(x), y) ⇔ B(x, typ(y))`.
pub fn infomorphisms(a: &Classification, b: &Classification) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for inst in tables(b.instances().len(), a.instances().len()) {
        for typ in tables(a.types().len(), b.types().len()) {
            let ok = (0..b.instances().len())
                .all(|x| (0..a.types().len()).all(|y| a.holds(inst[x], y) == b.holds(x, typ[y])));
            if ok {
                out.push((inst.clone(), typ));
            }
        }
    }
    out
}

/// Every relation between carriers of the given sizes, by cell mask.
pub fn all_relations(a: &FinSet, b: &FinSet) -> Vec<Relation> {
    let cells = a.len() * b.len();
    (0..1u64 << cells)
        .map(|mask| Relation::from_fn(a, b, |i, j| mask >> (i * b.len() + j) & 1 == 1))
        .collect()
}

/// Truth tables of every sentence up to `depth` over `n` variables, by
/// closing the atoms under the connectives level by level.
pub fn truth_tables(n: usize, depth: usize) -> std::collections::BTreeSet<u64> {
    let rows = 1u64 << n;
    let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    let var = |v: usize| (0..rows).filter(|m| m >> v & 1 == 1).fold(0u64, |acc, m| acc | 1 << m);
    let mut level: std::collections::BTreeSet<u64> = (0..n).map(var).chain([0, full]).collect();
    for _ in 0..depth {
        let prev: Vec<u64> = level.iter().copied().collect();
        for &a in &prev {
            level.insert(!a & full);
            for &b in &prev {
                level.insert(a & b);
                level.insert(a | b);
                level.insert((!a | b) & full);
            }
        }
    }
    level
}

pub fn random_relation(rng: &mut impl Rng, a: &FinSet, b: &FinSet) -> Relation {
    let cells: Vec<bool> = (0..a.len() * b.len()).map(|_| rng.gen_bool(0.5)).collect();
    Relation::from_fn(a, b, |i, j| cells[i * b.len() + j])
}

/// A random context with at most `max_g` objects and `max_m` attributes.
pub fn small_context(rng: &mut impl Rng, max_g: usize, max_m: usize) -> Classification {
    let (g, m) = (rng.gen_range(0..=max_g), rng.gen_range(0..=max_m));
    random_context(rng, g, m)
}

/// A commuting square `e;s = r;m` built from `f : A ⇌ B` and the polar
/// factorizations of both derivations, plus the extent mask of each axis
/// element of `B` and `A`.
pub struct Square {
    pub e: Adjunction,
    pub s: Adjunction,
    pub r: Adjunction,
    pub m: Adjunction,
    pub top_extents: Vec<u64>,
    pub bottom_extents: Vec<u64>,
}

pub fn infomorphism_square(f: &Infomorphism) -> Square {
    let pa = polar_factorize(&f.source().derivation().unwrap()).unwrap();
    let pb = polar_factorize(&f.target().derivation().unwrap()).unwrap();
    let opp = opposite_image_adjunction(f.typ_map()).unwrap();
    let dir = direct_image_adjunction(f.inst_map()).unwrap();
    Square {
        e: pb.extent_reflection().clone(),
        s: pb.intent_coreflection().compose(&opp).unwrap(),
        r: dir.compose(pa.extent_reflection()).unwrap(),
        m: pa.intent_coreflection().clone(),
        top_extents: pb.bipoles().iter().map(|&(a, _)| a as u64).collect(),
        bottom_extents: pa.bipoles().iter().map(|&(a, _)| a as u64).collect(),
    }
}
