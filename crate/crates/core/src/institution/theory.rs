use serde::{Deserialize, Serialize};

use super::{PropositionalLogic, Sentence, Signature, SignatureMorphism, MAX_FIBER_VARS};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Subset};
use crate::galois::{opposite_image_adjunction, Adjunction};
use crate::order::{power_order_with_limit, Poset};

/// A closed theory, represented by its class of models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    signature: Signature,
    models: Subset,
}

fn models_carrier(sig: &Signature) -> Result<FinSet> {
    FinSet::power_with_limit(sig.vars(), super::MAX_VARS)
}

impl Theory {
    /// The theory whose models are the given valuations (bitmasks).
    pub fn from_masks(sig: &Signature, masks: impl IntoIterator<Item = u64>) -> Result<Theory> {
        let carrier = models_carrier(sig)?;
        let n = carrier.len();
        let mut bits = Bits::new(n);
        for m in masks {
            let m = m as usize;
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, size: n });
            }
            bits.insert(m);
        }
        Ok(Theory {
            signature: sig.clone(),
            models: Subset::from_bits(&carrier, bits)?,
        })
    }

    /// The models of a set of axioms.
    pub fn from_axioms(sig: &Signature, axioms: &[Sentence]) -> Result<Theory> {
        if let Some(bad) = axioms.iter().find(|a| !a.within(sig.len())) {
            return Err(Error::Invalid(format!("axiom {bad:?} uses a foreign variable")));
        }
        Theory::from_masks(
            sig,
            (0..1u64 << sig.len()).filter(|&m| axioms.iter().all(|a| a.eval(m))),
        )
    }

    /// The weakest theory, satisfied by every model.
    pub fn trivial(sig: &Signature) -> Result<Theory> {
        Theory::from_masks(sig, 0..1u64 << sig.len())
    }

    /// The inconsistent theory, with no models.
    pub fn inconsistent(sig: &Signature) -> Result<Theory> {
        Theory::from_masks(sig, std::iter::empty())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn models(&self) -> &Subset {
        &self.models
    }

    /// Model valuations as bitmasks, ascending.
    pub fn masks(&self) -> Vec<u64> {
        self.models.indices().into_iter().map(|m| m as u64).collect()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.models.is_empty()
    }

    /// Entailment: `self ≤ other` when every model of `other` is a model of `self`.
    pub fn leq(&self, other: &Theory) -> Result<bool> {
        other.models.is_subset(&self.models)
    }

    /// Intersection of model classes.
    pub fn combine(&self, other: &Theory) -> Result<Theory> {
        Ok(Theory {
            signature: self.signature.clone(),
            models: self.models.intersection(&other.models)?,
        })
    }

    pub fn to_json(&self) -> TheoryJson {
        TheoryJson {
            signature: self.signature.vars().labels(),
            models: self
                .masks()
                .into_iter()
                .map(|m| Subset::from_mask(self.signature.vars(), m).labels())
                .collect(),
            axioms: None,
        }
    }

    pub fn from_json(json: &TheoryJson) -> Result<Theory> {
        let sig = Signature::new(json.signature.iter().cloned())?;
        match (&json.axioms, json.models.is_empty()) {
            (Some(axioms), true) => {
                let parsed = axioms
                    .iter()
                    .map(|a| Sentence::parse(a, &sig))
                    .collect::<Result<Vec<_>>>()?;
                Theory::from_axioms(&sig, &parsed)
            }
            (Some(_), false) => Err(Error::Invalid("a theory gives either models or axioms".into())),
            (None, _) => {
                let masks = json
                    .models
                    .iter()
                    .map(|m| Ok(Subset::from_labels(sig.vars(), m)?.mask()))
                    .collect::<Result<Vec<_>>>()?;
                Theory::from_masks(&sig, masks)
            }
        }
    }
}

/// Theory file: `{"signature":[vars],"models":[[true vars],...]}`, or
/// `"axioms":[sentences]` in place of the models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryJson {
    pub signature: Vec<String>,
    #[serde(default)]
    pub models: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<String>>,
}

/// All theories over a signature, indexed by model-class bitmask and
/// ordered by entailment (reverse inclusion of model classes).
#[derive(Clone, Debug)]
pub struct TheoryFiber {
    pub signature: Signature,
    pub models: FinSet,
    pub order: Poset,
}

impl TheoryFiber {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theory(&self, index: usize) -> Theory {
        Theory {
            signature: self.signature.clone(),
            models: Subset::from_mask(&self.models, index as u64),
        }
    }

    pub fn index(&self, t: &Theory) -> Result<usize> {
        self.signature.vars().same(t.signature.vars(), "theory signature")?;
        Ok(t.models.mask() as usize)
    }
}

pub fn theory_fiber(sig: &Signature) -> Result<TheoryFiber> {
    if sig.len() > MAX_FIBER_VARS {
        return Err(Error::SizeLimit {
            what: "theory fiber variables".into(),
            size: sig.len(),
            limit: MAX_FIBER_VARS,
        });
    }
    let models = models_carrier(sig)?;
    let power = power_order_with_limit(&models, 1 << MAX_FIBER_VARS)?;
    Ok(TheoryFiber {
        signature: sig.clone(),
        models,
        order: power.order().opposite(),
    })
}

/// `|mod|(σ)` as a function from `Σ₂`-models to `Σ₁`-models.
pub fn reduct_function(sigma: &SignatureMorphism) -> Result<FinFunction> {
    let m1 = models_carrier(sigma.source())?;
    let m2 = models_carrier(sigma.target())?;
    let table = (0..m2.len() as u64)
        .map(|m| PropositionalLogic::reduct_mask(sigma, m) as usize)
        .collect();
    FinFunction::new(&m2, &m1, table)
}

/// `{m₂ | reduct(m₂) ∈ t}`: the theory over `Σ₂` generated by `t`.
pub fn transport(sigma: &SignatureMorphism, t: &Theory) -> Result<Theory> {
    sigma.source().vars().same(t.signature.vars(), "transported theory")?;
    let red = reduct_function(sigma)?;
    Ok(Theory {
        signature: sigma.target().clone(),
        models: red.inverse(&t.models)?,
    })
}

/// `{reduct(m₂) | m₂ ∈ t}`: the restriction of a `Σ₂`-theory to `Σ₁`.
pub fn inverse_transport(sigma: &SignatureMorphism, t: &Theory) -> Result<Theory> {
    sigma.target().vars().same(t.signature.vars(), "restricted theory")?;
    let red = reduct_function(sigma)?;
    Ok(Theory {
        signature: sigma.source().clone(),
        models: red.existential(&t.models)?,
    })
}

/// `⟨transport, inverse_transport⟩ : fiber(Σ₁) ⇌ fiber(Σ₂)`.
pub fn transport_adjunction(sigma: &SignatureMorphism) -> Result<Adjunction> {
    theory_fiber(sigma.source())?;
    theory_fiber(sigma.target())?;
    opposite_image_adjunction(&reduct_function(sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::check_adjunction;

    #[test]
    fn fiber_sizes() {
        for (n, size) in [(0, 2), (1, 4), (2, 16)] {
            let sig = Signature::new((0..n).map(|i| format!("v{i}"))).unwrap();
            let f = theory_fiber(&sig).unwrap();
            assert_eq!(f.len(), size);
            assert!(f.order.is_complete_lattice());
        }
    }

    #[test]
    fn inclusion_transport() {
        let s1 = Signature::new(["q"]).unwrap();
        let s2 = Signature::new(["p", "q"]).unwrap();
        let sigma = SignatureMorphism::inclusion(&s1, &s2).unwrap();
        let q = Theory::from_axioms(&s1, &[Sentence::var(0)]).unwrap();
        let t = transport(&sigma, &q).unwrap();
        assert_eq!(t.masks(), vec![0b10, 0b11]);
        assert_eq!(inverse_transport(&sigma, &t).unwrap(), q);
        let adj = transport_adjunction(&sigma).unwrap();
        assert!(check_adjunction(adj.left(), adj.right()).is_ok());
        assert_eq!(adj.left().apply(q.models().mask() as usize), 0b1100);
    }

    #[test]
    fn identity_transport() {
        let s = Signature::new(["p"]).unwrap();
        let id = SignatureMorphism::identity(&s);
        let t = Theory::from_masks(&s, [1]).unwrap();
        assert_eq!(transport(&id, &t).unwrap(), t);
        assert_eq!(inverse_transport(&id, &t).unwrap(), t);
    }

    #[test]
    fn json_roundtrip() {
        let s = Signature::new(["p", "q"]).unwrap();
        let t = Theory::from_axioms(&s, &[Sentence::var(1)]).unwrap();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(text, r#"{"signature":["p","q"],"models":[["q"],["p","q"]]}"#);
        let back: TheoryJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Theory::from_json(&back).unwrap(), t);
        let axioms: TheoryJson = serde_json::from_str(r#"{"signature":["p","q"],"axioms":["(var q)"]}"#).unwrap();
        assert_eq!(Theory::from_json(&axioms).unwrap(), t);
    }
}
