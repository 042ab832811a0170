//! Finite sets, subsets, functions and relations with composition,
//! residuation, image triples and derivation.
//!
//! Composition is written diagrammatically: `r.compose(s)` is "first `r`, then `s`".

mod function;
mod relation;
mod set;

pub use function::{FinFunction, Images};
pub use relation::Relation;
pub use set::{FinSet, Subset};


use crate::error::Result;

pub fn compose(r: &Relation, s: &Relation) -> Result<Relation> {
    r.compose(s)
}

pub fn transpose(r: &Relation) -> Relation {
    r.transpose()
}

/// `r\s` for `r : A ⇀ B`, `s : A ⇀ C`.
pub fn residuate_left(r: &Relation, s: &Relation) -> Result<Relation> {
    r.residuate_left(s)
}

/// `s/r` for `r : A ⇀ B`, `s : C ⇀ B`.
pub fn residuate_right(r: &Relation, s: &Relation) -> Result<Relation> {
    r.residuate_right(s)
}

pub fn images(f: &FinFunction) -> Images<'_> {
    Images::new(f)
}

pub fn derive_forward(r: &Relation, x: &Subset) -> Result<Subset> {
    r.derive_forward(x)
}

pub fn derive_reverse(r: &Relation, y: &Subset) -> Result<Subset> {
    r.derive_reverse(y)
}

pub fn image_factorize(f: &FinFunction) -> (FinFunction, FinFunction) {
    f.image_factorize()
}
