use std::sync::Arc;

use super::{concept_lattice, ConceptLattice};
use crate::bits::Bits;
use crate::clsn::Infomorphism;
use crate::error::{Error, Result};
use crate::finrel::FinFunction;
use crate::galois::Adjunction;
use crate::order::MonotoneMap;

/// A concept morphism `h : L₁ ⇌ L₂`: a connection `L₂ ⇌ L₁`, an instance
/// map `inst(L₂) → inst(L₁)` and a type map `typ(L₁) → typ(L₂)`.
#[derive(Clone, Debug)]
pub struct ConceptMorphism {
    source: Arc<ConceptLattice>,
    target: Arc<ConceptLattice>,
    connection: Adjunction,
    inst: FinFunction,
    typ: FinFunction,
}

/// Verdicts of the conditions a concept morphism must meet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConceptMorphismReport {
    /// `ι₁(inst(x), c) ⇔ ι₂(x, right(c))`.
    pub extensional: bool,
    /// `τ₁(left(c), y) ⇔ τ₂(c, typ(y))`.
    pub intensional: bool,
    /// `right · ext₂ = ext₁ · inst⁻¹`.
    pub extent: bool,
    /// `iota₂ · left = ∃inst · iota₁`.
    pub iota: bool,
    /// `left · int₁ = int₂ · typ⁻¹`.
    pub intent: bool,
    /// `tau₁ · right = ∃typ · tau₂`.
    pub tau: bool,
}

impl ConceptMorphismReport {
    pub fn passed(&self) -> bool {
        self.extensional && self.intensional && self.extent && self.iota && self.intent && self.tau
    }

    /// Whether the extensional and intensional verdicts each agree
    /// across their versions.
    pub fn consistent(&self) -> bool {
        self.extensional == self.extent
            && self.extent == self.iota
            && self.intensional == self.intent
            && self.intent == self.tau
    }
}

/// A concept morphism from its components, checked against every condition.
pub fn concept_morphism_between(
    source: Arc<ConceptLattice>,
    target: Arc<ConceptLattice>,
    connection: Adjunction,
    inst: FinFunction,
    typ: FinFunction,
) -> Result<ConceptMorphism> {
    connection.source().same(target.lattice(), "connection source")?;
    connection.target().same(source.lattice(), "connection target")?;
    target.instances().same(inst.source(), "instance map source")?;
    source.instances().same(inst.target(), "instance map target")?;
    source.types().same(typ.source(), "type map source")?;
    target.types().same(typ.target(), "type map target")?;
    let h = ConceptMorphism {
        source,
        target,
        connection,
        inst,
        typ,
    };
    let report = h.check();
    if !report.passed() {
        return Err(Error::Invalid(format!("not a concept morphism: {report:?}")));
    }
    Ok(h)
}

/// `clg(f) : clg(A) ⇌ clg(B)` for `f : A ⇌ B`, whose connection
/// `clg(B) ⇌ clg(A)` has left adjoint
/// `int_B · ĝ⁻¹ · tau_A = ext_B · ∃ǧ · iota_A` and right adjoint
/// `ext_A · ǧ⁻¹ · iota_B = int_A · ∃ĝ · tau_B`.
pub fn concept_morphism_of(f: &Infomorphism) -> Result<ConceptMorphism> {
    let la = Arc::new(concept_lattice(f.source())?);
    let lb = Arc::new(concept_lattice(f.target())?);
    concept_morphism_on(f, la, lb)
}

fn concept_morphism_on(f: &Infomorphism, la: Arc<ConceptLattice>, lb: Arc<ConceptLattice>) -> Result<ConceptMorphism> {
    let (inst, typ) = (f.inst_map(), f.typ_map());
    let left_by_intent: Vec<usize> = lb
        .concepts()
        .iter()
        .map(|c| la.intent.right().apply(typ.inverse_bits(c.intent.bits()).to_mask() as usize))
        .collect();
    let left_by_extent: Vec<usize> = lb
        .concepts()
        .iter()
        .map(|c| la.extent.left().apply(inst.existential_bits(c.extent.bits()).to_mask() as usize))
        .collect();
    let right_by_extent: Vec<usize> = la
        .concepts()
        .iter()
        .map(|c| lb.extent.left().apply(inst.inverse_bits(c.extent.bits()).to_mask() as usize))
        .collect();
    let right_by_intent: Vec<usize> = la
        .concepts()
        .iter()
        .map(|c| lb.intent.right().apply(typ.existential_bits(c.intent.bits()).to_mask() as usize))
        .collect();
    if left_by_intent != left_by_extent || right_by_extent != right_by_intent {
        return Err(Error::Invalid("concept adjunction formulas disagree".into()));
    }
    let connection = Adjunction::new(
        MonotoneMap::new(lb.lattice(), la.lattice(), left_by_intent)?,
        MonotoneMap::new(la.lattice(), lb.lattice(), right_by_extent)?,
    )?;
    concept_morphism_between(la, lb, connection, inst.clone(), typ.clone())
}

impl ConceptMorphism {
    pub fn source(&self) -> &ConceptLattice {
        &self.source
    }

    pub fn target(&self) -> &ConceptLattice {
        &self.target
    }

    /// `L₂ ⇌ L₁`.
    pub fn connection(&self) -> &Adjunction {
        &self.connection
    }

    pub fn inst_map(&self) -> &FinFunction {
        &self.inst
    }

    pub fn typ_map(&self) -> &FinFunction {
        &self.typ
    }

    pub fn check(&self) -> ConceptMorphismReport {
        let (l1, l2) = (&*self.source, &*self.target);
        let (left, right) = (self.connection.left(), self.connection.right());
        let (k1, k2) = (l1.len(), l2.len());
        let extensional = (0..l2.instances().len()).all(|x| {
            (0..k1).all(|c| l1.concept(c).extent.contains(self.inst.apply(x)) == l2.concept(right.apply(c)).extent.contains(x))
        });
        let intensional = (0..k2).all(|c| {
            (0..l1.types().len()).all(|y| {
                l1.concept(left.apply(c)).intent.contains(y) == l2.concept(c).intent.contains(self.typ.apply(y))
            })
        });
        let extent = (0..k1).all(|c| {
            *l2.concept(right.apply(c)).extent.bits() == self.inst.inverse_bits(l1.concept(c).extent.bits())
        });
        let intent = (0..k2).all(|c| {
            *l1.concept(left.apply(c)).intent.bits() == self.typ.inverse_bits(l2.concept(c).intent.bits())
        });
        let n2 = l2.instances().len();
        let iota = (0..1u64 << n2).all(|x| {
            let xs = Bits::from_mask(n2, x);
            left.apply(l2.extent.left().apply(x as usize))
                == l1.extent.left().apply(self.inst.existential_bits(&xs).to_mask() as usize)
        });
        let m1 = l1.types().len();
        let tau = (0..1u64 << m1).all(|y| {
            let ys = Bits::from_mask(m1, y);
            right.apply(l1.intent.right().apply(y as usize))
                == l2.intent.right().apply(self.typ.existential_bits(&ys).to_mask() as usize)
        });
        ConceptMorphismReport {
            extensional,
            intensional,
            extent,
            iota,
            intent,
            tau,
        }
    }

    /// `self ; next : L₁ ⇌ L₃`, with connection `next.connection ; self.connection`.
    pub fn compose(&self, next: &ConceptMorphism) -> Result<ConceptMorphism> {
        self.target.lattice().same(next.source.lattice(), "composed concept morphisms")?;
        Ok(ConceptMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            connection: next.connection.compose(&self.connection)?,
            inst: next.inst.then(&self.inst)?,
            typ: self.typ.then(&next.typ)?,
        })
    }

    /// Agreement of components with another morphism between the same lattices.
    pub fn same_components(&self, other: &ConceptMorphism) -> bool {
        self.connection == other.connection && self.inst == other.inst && self.typ == other.typ
    }
}

impl ConceptLattice {
    /// `clg(f)` for an infomorphism out of this lattice's classification into
    /// the classification of `target`.
    pub fn morphism_to(self: &Arc<Self>, target: &Arc<ConceptLattice>, f: &Infomorphism) -> Result<ConceptMorphism> {
        concept_morphism_on(f, self.clone(), target.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clsn::{infomorphisms, Classification};

    fn worked() -> Classification {
        Classification::from_labels(&["1", "2"], &["a", "b"], &[("1", "a"), ("1", "b"), ("2", "b")]).unwrap()
    }

    #[test]
    fn identity_gives_identity_connection() {
        let a = worked();
        let h = concept_morphism_of(&Infomorphism::identity(&a)).unwrap();
        assert_eq!(h.connection(), &Adjunction::identity(h.source().lattice()));
        assert!(h.check().passed());
    }

    #[test]
    fn every_infomorphism_gives_a_concept_morphism() {
        let a = worked();
        let la = Arc::new(concept_lattice(&a).unwrap());
        for f in infomorphisms(&a, &a).unwrap() {
            let h = la.morphism_to(&la, &f).unwrap();
            let report = h.check();
            assert!(report.passed() && report.consistent());
        }
    }

    #[test]
    fn broken_instance_map_is_caught() {
        let a = worked();
        let h = concept_morphism_of(&Infomorphism::identity(&a)).unwrap();
        let swapped = FinFunction::new(a.instances(), a.instances(), vec![1, 0]).unwrap();
        let broken = ConceptMorphism { inst: swapped, ..h };
        let report = broken.check();
        assert!(!report.extensional && !report.extent && !report.iota);
        assert!(report.consistent());
    }
}
