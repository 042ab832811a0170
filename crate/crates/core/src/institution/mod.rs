//! Institutions: signatures, sentences, models and satisfaction, with a
//! finite propositional instance, fibers of theories, the flattened theory
//! category and theory merging along pushouts.

mod flatten;
mod merge;
mod propositional;
mod sentence;
mod styles;
mod theory;

pub use flatten::{flatten, FlattenReport, FlattenedTheoryCategory, TheoryArrow};
pub use merge::{merge_theories, pushout, verify_pushout, CoconeReport, Merge, MergeJson, Pushout, Span, SpanFile, SpanSide};
pub use propositional::{FlippedReduct, Model, PropositionalLogic};
pub use sentence::{enumerate_sentences, Sentence};
pub use styles::{style_interconvert, StyleReport};
pub use theory::{
    inverse_transport, reduct_function, theory_fiber, transport, transport_adjunction, Theory, TheoryFiber, TheoryJson,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clsn::Classification;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Relation};

/// Largest signature whose sentences are enumerated by truth table.
pub const MAX_VARS: usize = 5;

/// Largest signature whose fiber of theories is materialized.
pub const MAX_FIBER_VARS: usize = 4;

/// A finite set of propositional variables.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature {
    vars: FinSet,
}

impl Signature {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Signature { vars: FinSet::new(vars)? })
    }

    pub fn from_vars(vars: FinSet) -> Self {
        Signature { vars }
    }

    pub fn empty() -> Self {
        Signature { vars: FinSet::empty() }
    }

    pub fn vars(&self) -> &FinSet {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature{:?}", self.vars.labels())
    }
}

/// A renaming of variables `σ : Σ₁ → Σ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureMorphism {
    source: Signature,
    target: Signature,
    map: FinFunction,
}

impl SignatureMorphism {
    pub fn new(source: &Signature, target: &Signature, map: FinFunction) -> Result<Self> {
        source.vars.same(map.source(), "signature morphism source")?;
        target.vars.same(map.target(), "signature morphism target")?;
        Ok(SignatureMorphism {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn from_table(source: &Signature, target: &Signature, table: Vec<usize>) -> Result<Self> {
        Self::new(source, target, FinFunction::new(&source.vars, &target.vars, table)?)
    }

    /// From `(source variable, target variable)` label pairs covering the source.
    pub fn from_labels<S: AsRef<str>>(source: &Signature, target: &Signature, pairs: &[(S, S)]) -> Result<Self> {
        Self::new(source, target, FinFunction::from_labels(&source.vars, &target.vars, pairs)?)
    }

    pub fn identity(sig: &Signature) -> Self {
        SignatureMorphism {
            source: sig.clone(),
            target: sig.clone(),
            map: FinFunction::identity(&sig.vars),
        }
    }

    /// The inclusion of `source` into `target` by label.
    pub fn inclusion(source: &Signature, target: &Signature) -> Result<Self> {
        let table = (0..source.len())
            .map(|v| target.vars.require(&source.vars.label(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(source, target, table)
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn map(&self) -> &FinFunction {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map.apply(v)
    }

    /// `self ; next`.
    pub fn then(&self, next: &SignatureMorphism) -> Result<SignatureMorphism> {
        if self.target != next.source {
            return Err(Error::mismatch("signature morphisms are not composable"));
        }
        Ok(SignatureMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.then(&next.map)?,
        })
    }
}

/// An institution over finite signatures, presented by its satisfaction
/// relations.
pub trait Institution {
    type Sentence: Clone + fmt::Debug;
    type Model: Clone + PartialEq + fmt::Debug;

    /// `|mod|(Σ)`.
    fn models(&self, sig: &Signature) -> Result<Vec<Self::Model>>;
    /// `sen(Σ)` up to a depth bound.
    fn sentences(&self, sig: &Signature, depth: usize) -> Result<Vec<Self::Sentence>>;
    /// `sen(σ)`.
    fn translate(&self, sigma: &SignatureMorphism, phi: &Self::Sentence) -> Self::Sentence;
    /// `|mod|(σ)`, from `Σ₂`-models to `Σ₁`-models.
    fn reduct(&self, sigma: &SignatureMorphism, m: &Self::Model) -> Self::Model;
    /// `m ⊨_Σ φ`.
    fn satisfies(&self, sig: &Signature, m: &Self::Model, phi: &Self::Sentence) -> bool;
    fn model_label(&self, sig: &Signature, m: &Self::Model) -> String;
    fn sentence_label(&self, sig: &Signature, phi: &Self::Sentence) -> String;
}

/// The classification of `Σ`-models by `Σ`-sentences up to `depth`.
pub fn classification_of_signature<I: Institution>(inst: &I, sig: &Signature, depth: usize) -> Result<Classification> {
    let models = inst.models(sig)?;
    let sentences = inst.sentences(sig, depth)?;
    let m = FinSet::new(models.iter().map(|x| inst.model_label(sig, x)))?;
    let s = FinSet::new(sentences.iter().map(|x| inst.sentence_label(sig, x)))?;
    Ok(Classification::from_relation(Relation::from_fn(&m, &s, |i, j| {
        inst.satisfies(sig, &models[i], &sentences[j])
    })))
}

/// Outcome of checking `red(m) ⊨ φ ⇔ m ⊨ σ(φ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SatisfactionReport {
    pub checked: usize,
    /// `(Σ₂-model, Σ₁-sentence)` pairs where the condition fails.
    pub failures: Vec<(String, String)>,
}

impl SatisfactionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The satisfaction condition for `σ`, over every `Σ₂`-model and every
/// `Σ₁`-sentence up to `depth`.
pub fn check_satisfaction_condition<I: Institution>(
    inst: &I,
    sigma: &SignatureMorphism,
    depth: usize,
) -> Result<SatisfactionReport> {
    let (s1, s2) = (sigma.source(), sigma.target());
    let models = inst.models(s2)?;
    let sentences = inst.sentences(s1, depth)?;
    let mut report = SatisfactionReport::default();
    for phi in &sentences {
        let translated = inst.translate(sigma, phi);
        for m in &models {
            report.checked += 1;
            if inst.satisfies(s1, &inst.reduct(sigma, m), phi) != inst.satisfies(s2, m, &translated) {
                report
                    .failures
                    .push((inst.model_label(s2, m), inst.sentence_label(s1, phi)));
            }
        }
    }
    Ok(report)
}
