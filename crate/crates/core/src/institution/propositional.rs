use super::{enumerate_sentences, Institution, Sentence, Signature, SignatureMorphism, MAX_VARS};
use crate::error::{Error, Result};
use crate::finrel::Subset;

/// A valuation: the set of true variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub valuation: Subset,
}

impl Model {
    pub fn new(sig: &Signature, mask: u64) -> Self {
        Model {
            valuation: Subset::from_mask(sig.vars(), mask),
        }
    }

    pub fn mask(&self) -> u64 {
        self.valuation.mask()
    }
}

/// Propositional logic over finite variable sets with truth-table
/// satisfaction. Models of `Σ` are listed by bitmask.
#[derive(Clone, Copy, Debug, Default)]
pub struct PropositionalLogic;

impl PropositionalLogic {
    pub(crate) fn reduct_mask(sigma: &SignatureMorphism, mask: u64) -> u64 {
        (0..sigma.source().len())
            .filter(|&v| mask >> sigma.apply(v) & 1 == 1)
            .fold(0, |acc, v| acc | 1 << v)
    }
}

fn check_vars(sig: &Signature) -> Result<()> {
    if sig.len() > MAX_VARS {
        return Err(Error::SizeLimit {
            what: "signature variables".into(),
            size: sig.len(),
            limit: MAX_VARS,
        });
    }
    Ok(())
}

impl Institution for PropositionalLogic {
    type Sentence = Sentence;
    type Model = Model;

    fn models(&self, sig: &Signature) -> Result<Vec<Model>> {
        check_vars(sig)?;
        Ok((0..1u64 << sig.len()).map(|m| Model::new(sig, m)).collect())
    }

    fn sentences(&self, sig: &Signature, depth: usize) -> Result<Vec<Sentence>> {
        enumerate_sentences(sig.len(), depth)
    }

    fn translate(&self, sigma: &SignatureMorphism, phi: &Sentence) -> Sentence {
        phi.translate(sigma.map().table())
    }

    fn reduct(&self, sigma: &SignatureMorphism, m: &Model) -> Model {
        Model::new(sigma.source(), Self::reduct_mask(sigma, m.mask()))
    }

    fn satisfies(&self, _: &Signature, m: &Model, phi: &Sentence) -> bool {
        phi.eval(m.mask())
    }

    fn model_label(&self, _: &Signature, m: &Model) -> String {
        m.valuation.to_string()
    }

    fn sentence_label(&self, sig: &Signature, phi: &Sentence) -> String {
        phi.display(sig).to_string()
    }
}

/// Propositional logic with a deliberately wrong reduct that flips one
/// source variable. A negative control for the satisfaction-style checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlippedReduct {
    pub var: usize,
}

impl Institution for FlippedReduct {
    type Sentence = Sentence;
    type Model = Model;

    fn models(&self, sig: &Signature) -> Result<Vec<Model>> {
        PropositionalLogic.models(sig)
    }

    fn sentences(&self, sig: &Signature, depth: usize) -> Result<Vec<Sentence>> {
        PropositionalLogic.sentences(sig, depth)
    }

    fn translate(&self, sigma: &SignatureMorphism, phi: &Sentence) -> Sentence {
        PropositionalLogic.translate(sigma, phi)
    }

    fn reduct(&self, sigma: &SignatureMorphism, m: &Model) -> Model {
        let mask = PropositionalLogic::reduct_mask(sigma, m.mask());
        let flip = if self.var < sigma.source().len() { 1 << self.var } else { 0 };
        Model::new(sigma.source(), mask ^ flip)
    }

    fn satisfies(&self, sig: &Signature, m: &Model, phi: &Sentence) -> bool {
        PropositionalLogic.satisfies(sig, m, phi)
    }

    fn model_label(&self, sig: &Signature, m: &Model) -> String {
        PropositionalLogic.model_label(sig, m)
    }

    fn sentence_label(&self, sig: &Signature, phi: &Sentence) -> String {
        PropositionalLogic.sentence_label(sig, phi)
    }
}
