//! Concept lattices of classifications and concept morphisms between them.

mod morphism;

pub use morphism::{concept_morphism_between, concept_morphism_of, ConceptMorphism, ConceptMorphismReport};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::clsn::{meet_table, Classification};
use crate::config;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Relation, Subset};
use crate::galois::Adjunction;
use crate::order::{hasse_covers, hasse_dot, power_order, MonotoneMap, Poset, Preorder};

/// A pair of mutually derived sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalConcept {
    pub extent: Subset,
    pub intent: Subset,
}

/// A complete lattice of concepts with its extent reflection
/// `℘inst ⇌ L`, intent coreflection `L ⇌ (℘typ)^op` and the
/// instance and type embeddings.
#[derive(Clone, Debug)]
pub struct ConceptLattice {
    instances: FinSet,
    types: FinSet,
    lattice: Poset,
    concepts: Vec<FormalConcept>,
    by_extent: HashMap<Bits, usize>,
    by_intent: HashMap<Bits, usize>,
    extent: Adjunction,
    intent: Adjunction,
    iota: FinFunction,
    tau: FinFunction,
}

/// The concept lattice of `a`, with concepts indexed in lectic order of
/// their extents and ordered by extent inclusion.
pub fn concept_lattice(a: &Classification) -> Result<ConceptLattice> {
    let (n, m) = (a.instances().len(), a.types().len());
    config::check_power("concept lattice instances", n)?;
    config::check_power("concept lattice types", m)?;
    let rows: Vec<u64> = (0..n).map(|i| a.incidence().row(i).to_mask()).collect();
    let cols: Vec<u64> = (0..m).map(|t| a.incidence().column(t).to_mask()).collect();
    let full_i = mask_of(n);
    let full_t = mask_of(m);
    let intent_of = |x: u64| (0..n).filter(|&i| x >> i & 1 == 1).fold(full_t, |acc, i| acc & rows[i]);
    let extent_of = |y: u64| (0..m).filter(|&t| y >> t & 1 == 1).fold(full_i, |acc, t| acc & cols[t]);
    let closure = |x: u64| extent_of(intent_of(x));

    let mut extents = Vec::new();
    let mut current = closure(0);
    extents.push(current);
    while let Some(next) = next_closure(current, n, &closure) {
        extents.push(next);
        current = next;
    }
    let concepts = extents
        .iter()
        .map(|&x| FormalConcept {
            extent: Subset::from_mask(a.instances(), x),
            intent: Subset::from_mask(a.types(), intent_of(x)),
        })
        .collect();
    assemble(a.instances(), a.types(), None, concepts, a.incidence())
}

fn mask_of(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The lectically next closed set after `x`: the smallest element in which
/// two sets differ belongs to the larger one.
fn next_closure(x: u64, n: usize, closure: &impl Fn(u64) -> u64) -> Option<u64> {
    let mut x = x;
    for i in (0..n).rev() {
        let bit = 1u64 << i;
        if x & bit != 0 {
            x &= !bit;
        } else {
            let y = closure(x | bit);
            if (y & !x) & (bit - 1) == 0 {
                return Some(y);
            }
        }
    }
    None
}

/// Builds the lattice structure from a complete, duplicate-free list of
/// concepts of `incidence`. Without `order`, concepts are ordered by extent
/// inclusion and labelled `c0, c1, …`.
fn assemble(
    instances: &FinSet,
    types: &FinSet,
    order: Option<Poset>,
    concepts: Vec<FormalConcept>,
    incidence: &Relation,
) -> Result<ConceptLattice> {
    let k = concepts.len();
    let lattice = match order {
        Some(p) => p,
        None => {
            let carrier = FinSet::new((0..k).map(|c| format!("c{c}")))?;
            let sets = concepts.iter().map(|c| c.extent.bits().clone()).collect();
            Poset::new_unchecked(Preorder::family(&carrier, sets))
        }
    };
    let by_extent: HashMap<Bits, usize> = concepts.iter().enumerate().map(|(c, x)| (x.extent.bits().clone(), c)).collect();
    let by_intent: HashMap<Bits, usize> = concepts.iter().enumerate().map(|(c, x)| (x.intent.bits().clone(), c)).collect();
    if by_extent.len() != k || by_intent.len() != k {
        return Err(Error::NotConceptLattice("two concepts share an extent or intent".into()));
    }
    let (n, m) = (instances.len(), types.len());
    let rows: Vec<usize> = (0..n).map(|i| incidence.row(i).to_mask() as usize).collect();
    let cols: Vec<usize> = (0..m).map(|t| incidence.column(t).to_mask() as usize).collect();
    let forward = meet_table(&rows, mask_of(m) as usize);
    let reverse = meet_table(&cols, mask_of(n) as usize);
    let lookup = |map: &HashMap<Bits, usize>, len: usize, mask: usize| {
        map.get(&Bits::from_mask(len, mask as u64))
            .copied()
            .ok_or_else(|| Error::NotConceptLattice(format!("closed set {mask:#b} has no concept")))
    };
    let iota_table = forward
        .iter()
        .map(|&y| lookup(&by_intent, m, y))
        .collect::<Result<Vec<_>>>()?;
    let tau_table = reverse
        .iter()
        .map(|&x| lookup(&by_extent, n, x))
        .collect::<Result<Vec<_>>>()?;

    let p_inst = power_order(instances)?.order().preorder().clone();
    let p_typ = power_order(types)?.order().preorder().opposite();
    let ext_table = concepts.iter().map(|c| c.extent.mask() as usize).collect();
    let int_table = concepts.iter().map(|c| c.intent.mask() as usize).collect();
    let extent = Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&p_inst, &lattice, iota_table),
        MonotoneMap::new_unchecked(&lattice, &p_inst, ext_table),
    );
    let intent = Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&lattice, &p_typ, int_table),
        MonotoneMap::new_unchecked(&p_typ, &lattice, tau_table),
    );
    let carrier = lattice.carrier().clone();
    let iota = FinFunction::new(instances, &carrier, (0..n).map(|i| extent.left().apply(1 << i)).collect())?;
    let tau = FinFunction::new(types, &carrier, (0..m).map(|t| intent.right().apply(1 << t)).collect())?;
    Ok(ConceptLattice {
        instances: instances.clone(),
        types: types.clone(),
        lattice,
        concepts,
        by_extent,
        by_intent,
        extent,
        intent,
        iota,
        tau,
    })
}

impl ConceptLattice {
    /// A concept lattice given abstractly by a complete lattice and
    /// embeddings of instances and types. Embedded instances must be
    /// join-dense and embedded types meet-dense.
    pub fn from_embeddings(
        instances: &FinSet,
        types: &FinSet,
        lattice: Poset,
        iota: FinFunction,
        tau: FinFunction,
    ) -> Result<ConceptLattice> {
        instances.same(iota.source(), "instance embedding source")?;
        types.same(tau.source(), "type embedding source")?;
        lattice.carrier().same(iota.target(), "instance embedding target")?;
        lattice.carrier().same(tau.target(), "type embedding target")?;
        if !lattice.is_complete_lattice() {
            return Err(Error::NotConceptLattice("the order is not a complete lattice".into()));
        }
        let (n, m, k) = (instances.len(), types.len(), lattice.len());
        let ext: Vec<Bits> = (0..k)
            .map(|c| Bits::from_indices(n, (0..n).filter(|&i| lattice.leq(iota.apply(i), c))))
            .collect();
        let int: Vec<Bits> = (0..k)
            .map(|c| Bits::from_indices(m, (0..m).filter(|&t| lattice.leq(c, tau.apply(t)))))
            .collect();
        for c in 0..k {
            let below = Bits::from_indices(k, ext[c].iter().map(|i| iota.apply(i)));
            if lattice.least_upper_bound(&below) != Some(c) {
                return Err(Error::NotConceptLattice(format!(
                    "`{}` is not a join of embedded instances",
                    lattice.label(c)
                )));
            }
            let above = Bits::from_indices(k, int[c].iter().map(|t| tau.apply(t)));
            if lattice.greatest_lower_bound(&above) != Some(c) {
                return Err(Error::NotConceptLattice(format!(
                    "`{}` is not a meet of embedded types",
                    lattice.label(c)
                )));
            }
        }
        let incidence = Relation::from_fn(instances, types, |i, t| lattice.leq(iota.apply(i), tau.apply(t)));
        let concepts = ext
            .into_iter()
            .zip(int)
            .map(|(x, y)| FormalConcept {
                extent: Subset::from_bits_unchecked(instances, x),
                intent: Subset::from_bits_unchecked(types, y),
            })
            .collect();
        let l = assemble(instances, types, Some(lattice), concepts, &incidence)?;
        if l.iota != iota || l.tau != tau {
            return Err(Error::NotConceptLattice("embeddings disagree with the derived concepts".into()));
        }
        Ok(l)
    }

    pub fn instances(&self) -> &FinSet {
        &self.instances
    }

    pub fn types(&self) -> &FinSet {
        &self.types
    }

    pub fn lattice(&self) -> &Poset {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn concept(&self, c: usize) -> &FormalConcept {
        &self.concepts[c]
    }

    /// `⟨iota, ext⟩ : ℘inst ⇌ L`.
    pub fn extent_reflection(&self) -> &Adjunction {
        &self.extent
    }

    /// `⟨int, tau⟩ : L ⇌ (℘typ)^op`.
    pub fn intent_coreflection(&self) -> &Adjunction {
        &self.intent
    }

    /// The most specific concept of each instance.
    pub fn iota_embed(&self) -> &FinFunction {
        &self.iota
    }

    /// The most generic concept of each type.
    pub fn tau_embed(&self) -> &FinFunction {
        &self.tau
    }

    pub fn concept_with_extent(&self, extent: &Subset) -> Option<usize> {
        self.by_extent.get(extent.bits()).copied()
    }

    pub fn concept_with_intent(&self, intent: &Subset) -> Option<usize> {
        self.by_intent.get(intent.bits()).copied()
    }

    /// The smallest concept whose extent contains `x`.
    pub fn iota(&self, x: &Subset) -> usize {
        self.extent.left().apply(x.mask() as usize)
    }

    /// The largest concept whose intent contains `y`.
    pub fn tau(&self, y: &Subset) -> usize {
        self.intent.right().apply(y.mask() as usize)
    }

    /// `extent ; intent`, the derivation of the underlying classification.
    pub fn derivation(&self) -> Adjunction {
        self.extent.compose(&self.intent).expect("shared lattice")
    }

    /// The Hasse covering pairs of the concept order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        hasse_covers(&self.lattice)
    }

    pub fn to_json(&self) -> LatticeJson {
        let indices = |s: &Subset| s.indices();
        LatticeJson {
            objects: self.instances.labels(),
            attributes: self.types.labels(),
            concepts: self
                .concepts
                .iter()
                .map(|c| ConceptJson {
                    extent: indices(&c.extent),
                    intent: indices(&c.intent),
                })
                .collect(),
            cover: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Graphviz Hasse diagram with nodes labelled `extent|intent`.
    pub fn to_dot(&self) -> String {
        let join = |s: &Subset| s.labels().join(",");
        hasse_dot(&self.lattice, |c| {
            let concept = &self.concepts[c];
            format!("{}|{}", join(&concept.extent), join(&concept.intent))
        })
    }
}

/// JSON export of a concept lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub concepts: Vec<ConceptJson>,
    pub cover: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub extent: Vec<usize>,
    pub intent: Vec<usize>,
}

/// The classification `⊨ = ι ∘ τ`: `i ⊨ t` iff `iota(i) ≤ tau(t)`.
pub fn classification_of(l: &ConceptLattice) -> Classification {
    Classification::from_relation(Relation::from_fn(&l.instances, &l.types, |i, t| {
        l.lattice.leq(l.iota.apply(i), l.tau.apply(t))
    }))
}

/// An order isomorphism with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIso {
    pub forward: MonotoneMap,
    pub backward: MonotoneMap,
}

/// The isomorphism `L ≅ clg(clsn(L))`, matching concepts by extent and
/// verified in both directions.
pub fn lattice_roundtrip_iso(l: &ConceptLattice) -> Result<LatticeIso> {
    let rebuilt = concept_lattice(&classification_of(l))?;
    if rebuilt.len() != l.len() {
        return Err(Error::NotConceptLattice(format!(
            "{} concepts rebuilt from {}",
            rebuilt.len(),
            l.len()
        )));
    }
    let forward = l
        .concepts
        .iter()
        .map(|c| {
            rebuilt
                .concept_with_extent(&c.extent)
                .ok_or_else(|| Error::NotConceptLattice("an extent is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut backward = vec![usize::MAX; l.len()];
    for (c, &d) in forward.iter().enumerate() {
        backward[d] = c;
    }
    if backward.contains(&usize::MAX) {
        return Err(Error::NotConceptLattice("extents are not distinct".into()));
    }
    let forward = MonotoneMap::new(&l.lattice, &rebuilt.lattice, forward)?;
    let backward = MonotoneMap::new(&rebuilt.lattice, &l.lattice, backward)?;
    Ok(LatticeIso { forward, backward })
}

/// Join and meet of a set of concepts: the join's extent is the closure of
/// the union of extents, and the meet's intent the closure of the union of
/// intents.
pub fn lattice_joins_meets(l: &ConceptLattice, concepts: &Bits) -> Result<(usize, usize)> {
    if concepts.len() != l.len() {
        return Err(Error::mismatch("concept set has the wrong length"));
    }
    let mut extents = Bits::new(l.instances.len());
    let mut intents = Bits::new(l.types.len());
    for c in concepts.iter() {
        extents.union_with(l.concepts[c].extent.bits());
        intents.union_with(l.concepts[c].intent.bits());
    }
    let join = l.extent.left().apply(extents.to_mask() as usize);
    let meet = l.intent.right().apply(intents.to_mask() as usize);
    Ok((join, meet))
}
