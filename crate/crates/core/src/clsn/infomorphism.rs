use super::Classification;
use crate::config;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, Relation};
use crate::galois::{direct_image_adjunction, opposite_image_adjunction};

/// An infomorphism `f : A ⇌ B`: `inst : inst(B) → inst(A)` and
/// `typ : typ(A) → typ(B)` with `A(ǧ(x), y) ⇔ B(x, ĝ(y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infomorphism {
    source: Classification,
    target: Classification,
    inst: FinFunction,
    typ: FinFunction,
}

/// The verdicts of the three versions of the fundamental condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfomorphismReport {
    pub fundamental: bool,
    /// Extent and intent squares between sets and power sets.
    pub morphism: bool,
    /// Both extended identities between relations.
    pub relations: bool,
    /// `None` when the power sets exceed the carrier bound.
    pub adjunction: Option<bool>,
    /// First `(instance of B, type of A)` violating the condition.
    pub witness: Option<(String, String)>,
}

impl InfomorphismReport {
    pub fn valid(&self) -> bool {
        self.fundamental
    }

    /// Whether every computed version gave the same verdict.
    pub fn consistent(&self) -> bool {
        self.morphism == self.fundamental
            && self.relations == self.fundamental
            && self.adjunction.map_or(true, |v| v == self.fundamental)
    }
}

impl Infomorphism {
    pub fn new(source: &Classification, target: &Classification, inst: FinFunction, typ: FinFunction) -> Result<Self> {
        let f = Self::new_unchecked(source, target, inst, typ)?;
        if let Some((x, y)) = f.witness() {
            return Err(Error::NotInfomorphism {
                instance: target.instances().label(x).into_owned(),
                ty: source.types().label(y).into_owned(),
            });
        }
        Ok(f)
    }

    /// Checks carriers only.
    pub fn new_unchecked(
        source: &Classification,
        target: &Classification,
        inst: FinFunction,
        typ: FinFunction,
    ) -> Result<Self> {
        target.instances().same(inst.source(), "instance map source")?;
        source.instances().same(inst.target(), "instance map target")?;
        source.types().same(typ.source(), "type map source")?;
        target.types().same(typ.target(), "type map target")?;
        Ok(Infomorphism {
            source: source.clone(),
            target: target.clone(),
            inst,
            typ,
        })
    }

    pub fn identity(a: &Classification) -> Self {
        Infomorphism {
            source: a.clone(),
            target: a.clone(),
            inst: FinFunction::identity(a.instances()),
            typ: FinFunction::identity(a.types()),
        }
    }

    pub fn source(&self) -> &Classification {
        &self.source
    }

    pub fn target(&self) -> &Classification {
        &self.target
    }

    /// `ǧ : inst(B) → inst(A)`.
    pub fn inst_map(&self) -> &FinFunction {
        &self.inst
    }

    /// `ĝ : typ(A) → typ(B)`.
    pub fn typ_map(&self) -> &FinFunction {
        &self.typ
    }

    /// `self ; g : A ⇌ C` for `g : B ⇌ C`.
    pub fn compose(&self, g: &Infomorphism) -> Result<Infomorphism> {
        if self.target != g.source {
            return Err(Error::mismatch("infomorphisms are not composable"));
        }
        Ok(Infomorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            inst: g.inst.then(&self.inst)?,
            typ: self.typ.then(&g.typ)?,
        })
    }

    fn witness(&self) -> Option<(usize, usize)> {
        (0..self.target.instances().len()).find_map(|x| {
            (0..self.source.types().len())
                .find(|&y| self.source.holds(self.inst.apply(x), y) != self.target.holds(x, self.typ.apply(y)))
                .map(|y| (x, y))
        })
    }

    /// `ext_A · ǧ⁻¹ = ĝ · ext_B` and `int_B · ĝ⁻¹ = ǧ · int_A`.
    pub fn morphism_version(&self) -> bool {
        let extents = (0..self.source.types().len()).all(|y| {
            self.inst.inverse_bits(self.source.ext(y).bits()) == *self.target.ext(self.typ.apply(y)).bits()
        });
        let intents = (0..self.target.instances().len()).all(|x| {
            self.typ.inverse_bits(self.target.int(x).bits()) == *self.source.int(self.inst.apply(x)).bits()
        });
        extents && intents
    }

    /// `ǧ▷ ∘ ⊨_A = ⊨_B ∘ ĝ◁` and `⊨_A^∝ ∘ ǧ◁ = ĝ▷ ∘ ⊨_B^∝`.
    pub fn relation_version(&self) -> Result<bool> {
        let (a, b) = (self.source.incidence(), self.target.incidence());
        let first = self.inst.forward_relation().compose(a)? == b.compose(&self.typ.reverse_relation())?;
        let second: Relation = a.transpose().compose(&self.inst.reverse_relation())?;
        let second = second == self.typ.forward_relation().compose(&b.transpose())?;
        Ok(first && second)
    }

    /// `dir(ǧ) ; deriv_A = deriv_B ; inv(ĝ)`, comparing both adjoints.
    pub fn adjunction_version(&self) -> Result<bool> {
        let lhs = direct_image_adjunction(&self.inst)?.compose(&self.source.derivation()?)?;
        let rhs = self.target.derivation()?.compose(&opposite_image_adjunction(&self.typ)?)?;
        Ok(lhs == rhs)
    }
}

/// Evaluates every version of the fundamental condition. The adjunction
/// version is skipped when a power set would exceed the carrier bound.
pub fn check_infomorphism(f: &Infomorphism) -> InfomorphismReport {
    let witness = f.witness();
    let limit = config::max_carrier();
    let small = [
        f.source.instances(),
        f.source.types(),
        f.target.instances(),
        f.target.types(),
    ]
    .iter()
    .all(|s| s.len() <= limit);
    InfomorphismReport {
        fundamental: witness.is_none(),
        morphism: f.morphism_version(),
        relations: f.relation_version().expect("carriers checked at construction"),
        adjunction: if small { f.adjunction_version().ok() } else { None },
        witness: witness.map(|(x, y)| {
            (
                f.target.instances().label(x).into_owned(),
                f.source.types().label(y).into_owned(),
            )
        }),
    }
}
