use std::collections::HashMap;

use super::{require_posets, Adjunction};
use crate::error::{Error, Result};
use crate::finrel::FinSet;
use crate::order::{MonotoneMap, Poset, Preorder};

/// An adjunction split through a middle poset, `source ⇌ axis ⇌ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub extent: Adjunction,
    pub intent: Adjunction,
}

impl Factorization {
    pub fn new(extent: Adjunction, intent: Adjunction) -> Result<Self> {
        extent.target().same(intent.source(), "factorization axis")?;
        Ok(Factorization { extent, intent })
    }

    pub fn axis(&self) -> &Preorder {
        self.extent.target()
    }

    pub fn compose(&self) -> Adjunction {
        self.extent.compose_unchecked(&self.intent)
    }
}

/// The polar factorization of an adjunction between posets: an extent
/// reflection onto the axis of bipoles followed by an intent coreflection.
#[derive(Clone, Debug)]
pub struct PolarFactorization {
    original: Adjunction,
    bipoles: Vec<(usize, usize)>,
    axis: Poset,
    parts: Factorization,
}

/// Factors `g : A₀ ⇌ A₁` through its bipoles `(a, b)` with `a` closed,
/// `b` open and `ǧ(a) = b`, ordered by the source component.
pub fn polar_factorize(g: &Adjunction) -> Result<PolarFactorization> {
    require_posets(g)?;
    let (a0, a1) = (g.source(), g.target());
    let closure = g.closure();
    let mut bipoles = Vec::new();
    let mut by_closed = HashMap::new();
    for a in 0..a0.len() {
        if closure.apply(a) == a {
            by_closed.insert(a, bipoles.len());
            bipoles.push((a, g.left().apply(a)));
        }
    }
    let carrier = FinSet::new(
        bipoles
            .iter()
            .map(|&(a, b)| format!("({},{})", a0.carrier().label(a), a1.carrier().label(b))),
    )
    .map_err(|e| Error::Invalid(format!("bipole labels: {e}")))?;
    let closed: Vec<usize> = bipoles.iter().map(|&(a, _)| a).collect();
    let axis = Poset::new_unchecked(Preorder::kernel_unchecked(&carrier, a0, closed.clone()));

    let xi0: Vec<usize> = (0..a0.len()).map(|a| by_closed[&closure.apply(a)]).collect();
    let pi0 = closed;
    let xi1: Vec<usize> = (0..a1.len()).map(|b| by_closed[&g.right().apply(b)]).collect();
    let pi1: Vec<usize> = bipoles.iter().map(|&(_, b)| b).collect();

    let extent = Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(a0, &axis, xi0),
        MonotoneMap::new_unchecked(&axis, a0, pi0),
    );
    let intent = Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&axis, a1, pi1),
        MonotoneMap::new_unchecked(a1, &axis, xi1),
    );
    Ok(PolarFactorization {
        original: g.clone(),
        bipoles,
        axis,
        parts: Factorization { extent, intent },
    })
}

impl PolarFactorization {
    pub fn original(&self) -> &Adjunction {
        &self.original
    }

    /// `(closed source element, open target element)` per axis element.
    pub fn bipoles(&self) -> &[(usize, usize)] {
        &self.bipoles
    }

    pub fn axis(&self) -> &Poset {
        &self.axis
    }

    /// `⟨ξ₀, π₀⟩ : source ⇌ axis`.
    pub fn extent_reflection(&self) -> &Adjunction {
        &self.parts.extent
    }

    /// `⟨π₁, ξ₁⟩ : axis ⇌ target`.
    pub fn intent_coreflection(&self) -> &Adjunction {
        &self.parts.intent
    }

    pub fn factorization(&self) -> &Factorization {
        &self.parts
    }

    pub fn compose(&self) -> Adjunction {
        self.parts.compose()
    }
}
