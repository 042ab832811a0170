//! Order adjunctions, closure and interior, reflections, polar
//! factorization and diagonalization.

mod diagonal;
mod factorization;
mod polar;

pub use diagonal::{all_adjunctions, diagonalize, mediating_adjunctions, DEFAULT_SEARCH_BOUND};
pub use factorization::{
    check_factorization_of, factorization_equivalence_check, ArrowMorphism, EquivalenceReport,
    FactorizationSystem, PolarSystem,
};
pub use polar::{polar_factorize, Factorization, PolarFactorization};

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::finrel::FinFunction;
use crate::order::{power_order, MonotoneMap, Poset, Preorder};

/// A Galois connection `⟨ǧ, ĝ⟩ : A₀ ⇌ A₁` with `ǧ(a) ≤ b ⇔ a ≤ ĝ(b)`.
///
/// Equality is pointwise equality of both adjoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Adjunction {
    left: MonotoneMap,
    right: MonotoneMap,
}

/// Validates the pair, reporting the first pair `(a, b)` that violates the
/// fundamental condition.
pub fn check_adjunction(left: &MonotoneMap, right: &MonotoneMap) -> Result<Adjunction> {
    Adjunction::new(left.clone(), right.clone())
}

pub fn compose_adjunctions(f: &Adjunction, g: &Adjunction) -> Result<Adjunction> {
    f.compose(g)
}

pub fn closure_interior(g: &Adjunction) -> Result<ClosureInterior> {
    g.closure_interior()
}

pub fn is_reflection(g: &Adjunction) -> bool {
    g.is_reflection()
}

pub fn is_coreflection(g: &Adjunction) -> bool {
    g.is_coreflection()
}

impl Adjunction {
    pub fn new(left: MonotoneMap, right: MonotoneMap) -> Result<Self> {
        left.source().same(right.target(), "adjoint boundaries")?;
        left.target().same(right.source(), "adjoint boundaries")?;
        let (a0, a1) = (left.source(), left.target());
        for (map, name) in [(&left, "left"), (&right, "right")] {
            if let Some((x, y)) = map.monotonicity_witness() {
                return Err(Error::NotMonotone(format!(
                    "{name} adjoint at {} <= {}",
                    map.source().label(x),
                    map.source().label(y)
                )));
            }
        }
        for a in 0..a0.len() {
            for b in 0..a1.len() {
                let lhs = a1.leq(left.apply(a), b);
                let rhs = a0.leq(a, right.apply(b));
                if lhs != rhs {
                    return Err(Error::NotAdjunction {
                        a: a0.label(a),
                        b: a1.label(b),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        let g = Adjunction { left, right };
        debug_assert!(g.unit_counit_hold());
        Ok(g)
    }

    /// Builds an adjunction without checking the law. For orders too large
    /// to validate; [`check_adjunction`] validates.
    pub fn new_unchecked(left: MonotoneMap, right: MonotoneMap) -> Self {
        Adjunction { left, right }
    }

    fn unit_counit_hold(&self) -> bool {
        let (a0, a1) = (self.source(), self.target());
        (0..a0.len()).all(|a| a0.leq(a, self.right.apply(self.left.apply(a))))
            && (0..a1.len()).all(|b| a1.leq(self.left.apply(self.right.apply(b)), b))
    }

    pub fn identity(p: &Preorder) -> Self {
        let id = MonotoneMap::identity(p);
        Adjunction {
            left: id.clone(),
            right: id,
        }
    }

    pub fn source(&self) -> &Preorder {
        self.left.source()
    }

    pub fn target(&self) -> &Preorder {
        self.left.target()
    }

    pub fn left(&self) -> &MonotoneMap {
        &self.left
    }

    pub fn right(&self) -> &MonotoneMap {
        &self.right
    }

    /// `self : A ⇌ B` followed by `g : B ⇌ C`. Left adjoints compose
    /// forwards, right adjoints backwards.
    pub fn compose(&self, g: &Adjunction) -> Result<Adjunction> {
        self.target().same(g.source(), "adjunction composite")?;
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &Adjunction) -> Adjunction {
        Adjunction {
            left: self.left.then_unchecked(&g.left),
            right: g.right.then_unchecked(&self.right),
        }
    }

    /// `g^∝ = ⟨ĝ, ǧ⟩ : A₁^op ⇌ A₀^op`.
    pub fn involution(&self) -> Adjunction {
        Adjunction {
            left: self.right.opposite(),
            right: self.left.opposite(),
        }
    }

    /// Left then right, on the source.
    pub fn closure(&self) -> MonotoneMap {
        self.left.then_unchecked(&self.right)
    }

    /// Right then left, on the target.
    pub fn interior(&self) -> MonotoneMap {
        self.right.then_unchecked(&self.left)
    }

    pub fn closed_elements(&self) -> Vec<usize> {
        let c = self.closure();
        (0..self.source().len()).filter(|&a| c.apply(a) == a).collect()
    }

    pub fn open_elements(&self) -> Vec<usize> {
        let i = self.interior();
        (0..self.target().len()).filter(|&b| i.apply(b) == b).collect()
    }

    pub fn closure_interior(&self) -> Result<ClosureInterior> {
        require_posets(self)?;
        let closed_points = self.closed_elements();
        let open_points = self.open_elements();
        let (closed, closed_inclusion) = suborder(self.source(), closed_points);
        let (open, open_inclusion) = suborder(self.target(), open_points);
        Ok(ClosureInterior {
            closure: self.closure(),
            interior: self.interior(),
            closed,
            open,
            closed_inclusion,
            open_inclusion,
        })
    }

    /// The interior is the identity on the target.
    pub fn is_reflection(&self) -> bool {
        let i = self.interior();
        (0..self.target().len()).all(|b| i.apply(b) == b)
    }

    /// The closure is the identity on the source.
    pub fn is_coreflection(&self) -> bool {
        let c = self.closure();
        (0..self.source().len()).all(|a| c.apply(a) == a)
    }

    /// Left adjoint is an order isomorphism with the right adjoint as inverse.
    pub fn is_isomorphism(&self) -> bool {
        self.is_reflection() && self.is_coreflection()
    }
}

impl fmt::Debug for Adjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Adjunction {{ left: {:?}, right: {:?} }}", self.left, self.right)
    }
}

pub(crate) fn require_posets(g: &Adjunction) -> Result<()> {
    if !g.source().is_antisymmetric() {
        return Err(Error::NotPoset("adjunction source".into()));
    }
    if !g.target().is_antisymmetric() {
        return Err(Error::NotPoset("adjunction target".into()));
    }
    Ok(())
}

fn suborder(p: &Preorder, points: Vec<usize>) -> (Poset, MonotoneMap) {
    let carrier = crate::finrel::FinSet::new(points.iter().map(|&a| p.label(a))).expect("distinct labels");
    let order = Preorder::kernel_unchecked(&carrier, p, points.clone());
    let inclusion = MonotoneMap::new_unchecked(&order, p, points);
    (Poset::new_unchecked(order), inclusion)
}

/// Closure and interior of an adjunction with the fixed-point suborders.
#[derive(Clone, Debug)]
pub struct ClosureInterior {
    pub closure: MonotoneMap,
    pub interior: MonotoneMap,
    pub closed: Poset,
    pub open: Poset,
    pub closed_inclusion: MonotoneMap,
    pub open_inclusion: MonotoneMap,
}

/// Upper and lower bounds `⟨⇑, ⇓⟩ : ℘A ⇌ (℘A)^op`.
pub fn bounds_adjunction(p: &Preorder) -> Result<Adjunction> {
    let pw = power_order(p.carrier())?;
    let source = pw.order().preorder().clone();
    let target = source.opposite();
    let n = p.len();
    let upper = (0..pw.len())
        .map(|x| p.upper_bounds_bits(&Bits::from_mask(n, x as u64)).to_mask() as usize)
        .collect();
    let lower = (0..pw.len())
        .map(|y| p.lower_bounds_bits(&Bits::from_mask(n, y as u64)).to_mask() as usize)
        .collect();
    Ok(Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&source, &target, upper),
        MonotoneMap::new_unchecked(&target, &source, lower),
    ))
}

/// `dir(f) = ⟨∃f, f⁻¹⟩ : ℘A ⇌ ℘B`.
pub fn direct_image_adjunction(f: &FinFunction) -> Result<Adjunction> {
    let pa = power_order(f.source())?.order().preorder().clone();
    let pb = power_order(f.target())?.order().preorder().clone();
    let (exists, inverse) = image_tables(f);
    Ok(Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&pa, &pb, exists),
        MonotoneMap::new_unchecked(&pb, &pa, inverse),
    ))
}

/// `inv(f) = ⟨f⁻¹, ∀f⟩ : ℘B ⇌ ℘A`.
pub fn inverse_image_adjunction(f: &FinFunction) -> Result<Adjunction> {
    let pa = power_order(f.source())?.order().preorder().clone();
    let pb = power_order(f.target())?.order().preorder().clone();
    let (_, inverse) = image_tables(f);
    let n = f.source().len();
    let forall = (0..pa.len())
        .map(|x| f.universal_bits(&Bits::from_mask(n, x as u64)).to_mask() as usize)
        .collect();
    Ok(Adjunction::new_unchecked(
        MonotoneMap::new_unchecked(&pb, &pa, inverse),
        MonotoneMap::new_unchecked(&pa, &pb, forall),
    ))
}

/// `⟨f⁻¹, ∃f⟩ : (℘B)^op ⇌ (℘A)^op`, the involution of [`direct_image_adjunction`].
pub fn opposite_image_adjunction(f: &FinFunction) -> Result<Adjunction> {
    Ok(direct_image_adjunction(f)?.involution())
}

fn image_tables(f: &FinFunction) -> (Vec<usize>, Vec<usize>) {
    let (n, m) = (f.source().len(), f.target().len());
    let exists = (0..1usize << n)
        .map(|x| {
            (0..n)
                .filter(|&a| x >> a & 1 == 1)
                .fold(0usize, |acc, a| acc | 1 << f.apply(a))
        })
        .collect();
    let inverse = (0..1usize << m)
        .map(|y| {
            (0..n)
                .filter(|&a| y >> f.apply(a) & 1 == 1)
                .fold(0usize, |acc, a| acc | 1 << a)
        })
        .collect();
    (exists, inverse)
}

/// Join and meet in the target of a reflection `g : A ⇌ B` out of a
/// complete lattice, computed as `ǧ(⋁ ĝ[Y])` and `ǧ(⋀ ĝ[Y])`.
pub fn lattice_through_reflection(g: &Adjunction, ys: &Bits) -> Result<(usize, usize)> {
    if !g.is_reflection() {
        return Err(Error::NotReflection("lattice transfer needs a reflection".into()));
    }
    let a = g.source();
    let image = Bits::from_indices(a.len(), ys.iter().map(|y| g.right().apply(y)));
    let join = a
        .least_upper_bound(&image)
        .ok_or_else(|| Error::Invalid("source lacks a join".into()))?;
    let meet = a
        .greatest_lower_bound(&image)
        .ok_or_else(|| Error::Invalid("source lacks a meet".into()))?;
    Ok((g.left().apply(join), g.left().apply(meet)))
}
