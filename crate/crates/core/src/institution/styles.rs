use super::{classification_of_signature, Institution, SignatureMorphism};
use crate::clg::{concept_lattice, ConceptLattice};
use crate::clsn::{Classification, Infomorphism};
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, Subset};
use crate::galois::{direct_image_adjunction, opposite_image_adjunction, Adjunction};
use crate::order::MonotoneMap;

/// Verdicts of the four presentation styles for one signature morphism.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StyleReport {
    /// Satisfaction condition, pointwise.
    pub class_rel: bool,
    /// Derivation condition on the power-set adjunctions.
    pub class_adj: bool,
    pub conc_adj_extent: bool,
    pub conc_adj_intent: bool,
    pub conc_adj: bool,
    /// Satisfaction through closure then sentence image.
    pub conc_rel: bool,
    /// The of-type relations of both concept lattices are reverse membership.
    pub of_type_trivial: bool,
    pub witnesses: Vec<String>,
}

impl StyleReport {
    /// The four styles give the same verdict.
    pub fn agree(&self) -> bool {
        self.class_rel == self.class_adj && self.class_rel == self.conc_adj && self.class_rel == self.conc_rel
    }

    pub fn passed(&self) -> bool {
        self.agree() && self.class_rel && self.of_type_trivial
    }
}

/// Builds the reduct and sentence maps of `σ` as functions between the
/// carriers of the two signature classifications.
fn tables<I: Institution>(
    inst: &I,
    sigma: &SignatureMorphism,
    c1: &Classification,
    c2: &Classification,
    depth: usize,
) -> Result<(FinFunction, FinFunction)> {
    let (s1, s2) = (sigma.source(), sigma.target());
    let (models1, models2) = (inst.models(s1)?, inst.models(s2)?);
    let red = models2
        .iter()
        .map(|m| {
            let r = inst.reduct(sigma, m);
            models1
                .iter()
                .position(|x| *x == r)
                .ok_or_else(|| Error::Invalid(format!("reduct of {} is not a model", inst.model_label(s2, m))))
        })
        .collect::<Result<Vec<_>>>()?;
    let columns: Vec<_> = (0..c2.types().len()).map(|j| c2.ext(j)).collect();
    let sen = inst
        .sentences(s1, depth)?
        .iter()
        .map(|phi| {
            let image = inst.translate(sigma, phi);
            let column = Subset::from_indices(
                c2.instances(),
                (0..models2.len()).filter(|&i| inst.satisfies(s2, &models2[i], &image)),
            )?;
            columns
                .iter()
                .position(|c| *c == column)
                .ok_or_else(|| Error::Invalid(format!("no sentence over the target matches {}", inst.sentence_label(s2, &image))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        FinFunction::new(c2.instances(), c1.instances(), red)?,
        FinFunction::new(c1.types(), c2.types(), sen)?,
    ))
}

/// Reads the Class-Rel data of `σ` at the sentence depth bound and checks
/// the Class-Rel, Class-Adj, Conc-Adj and Conc-Rel conditions.
pub fn style_interconvert<I: Institution>(inst: &I, sigma: &SignatureMorphism, depth: usize) -> Result<StyleReport> {
    let c1 = classification_of_signature(inst, sigma.source(), depth)?;
    let c2 = classification_of_signature(inst, sigma.target(), depth)?;
    let (red, sen) = tables(inst, sigma, &c1, &c2, depth)?;
    let mut report = StyleReport::default();

    report.class_rel = true;
    'rel: for m in 0..c2.instances().len() {
        for phi in 0..c1.types().len() {
            if c1.holds(red.apply(m), phi) != c2.holds(m, sen.apply(phi)) {
                report.class_rel = false;
                report.witnesses.push(format!(
                    "class-rel: {} against {}",
                    c2.instances().label(m),
                    c1.types().label(phi)
                ));
                break 'rel;
            }
        }
    }

    let f = Infomorphism::new_unchecked(&c1, &c2, red.clone(), sen.clone())?;
    report.class_adj = f.adjunction_version()?;
    if !report.class_adj {
        report.witnesses.push("class-adj: derivation squares differ".into());
    }

    let l1 = concept_lattice(&c1)?;
    let l2 = concept_lattice(&c2)?;
    let th = theory_connection(&l1, &l2, &red);
    match &th {
        Ok(th) => {
            report.conc_adj_extent = l2.extent_reflection().compose(th)? == direct_image_adjunction(&red)?.compose(l1.extent_reflection())?;
            let lhs = th.compose(l1.intent_coreflection())?;
            let rhs = l2.intent_coreflection().compose(&opposite_image_adjunction(&sen)?)?;
            report.conc_adj_intent = lhs == rhs;
            if let Some(c) = (0..l2.len()).find(|&c| lhs.left().apply(c) != rhs.left().apply(c)) {
                report.witnesses.push(format!("conc-adj intent: concept {}", concept_label(&l2, c)));
            }
        }
        Err(e) => report.witnesses.push(format!("conc-adj: {e}")),
    }
    report.conc_adj = report.conc_adj_extent && report.conc_adj_intent;

    report.conc_rel = true;
    'conc: for t in 0..l1.len() {
        let concept = l1.concept(t);
        let moved = l2.concept(l2.tau(&sen.existential(&concept.intent)?)).extent.clone();
        for m in 0..c2.instances().len() {
            if concept.extent.contains(red.apply(m)) != moved.contains(m) {
                report.conc_rel = false;
                report.witnesses.push(format!(
                    "conc-rel: {} against concept {}",
                    c2.instances().label(m),
                    concept_label(&l1, t)
                ));
                break 'conc;
            }
        }
    }

    report.of_type_trivial = of_type_trivial(&l1) && of_type_trivial(&l2);
    Ok(report)
}

/// `th(σ) : L₂ ⇌ L₁`, closing reduct images and pulling extents back.
fn theory_connection(l1: &ConceptLattice, l2: &ConceptLattice, red: &FinFunction) -> Result<Adjunction> {
    let left = (0..l2.len())
        .map(|t| Ok(l1.iota(&red.existential(&l2.concept(t).extent)?)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..l1.len())
        .map(|t| Ok(l2.iota(&red.inverse(&l1.concept(t).extent)?)))
        .collect::<Result<Vec<_>>>()?;
    Adjunction::new(
        MonotoneMap::new(l2.lattice(), l1.lattice(), left)?,
        MonotoneMap::new(l1.lattice(), l2.lattice(), right)?,
    )
}

/// `t ≤ τ(φ) ⇔ φ ∈ int(t)` for every concept and type.
fn of_type_trivial(l: &ConceptLattice) -> bool {
    let tau = l.tau_embed();
    (0..l.len()).all(|t| {
        (0..l.types().len()).all(|phi| l.lattice().leq(t, tau.apply(phi)) == l.concept(t).intent.contains(phi))
    })
}

fn concept_label(l: &ConceptLattice, c: usize) -> String {
    l.concept(c).extent.to_string()
}
