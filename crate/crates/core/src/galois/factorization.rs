use super::{diagonalize, polar_factorize, Adjunction, Factorization};
use crate::error::{Error, Result};
use crate::order::{isomorphisms, MonotoneMap, Preorder};

/// A factorization system on adjunctions with a chosen factorization.
pub trait FactorizationSystem {
    fn is_left_class(&self, g: &Adjunction) -> bool;
    fn is_right_class(&self, g: &Adjunction) -> bool;
    fn factor(&self, g: &Adjunction) -> Result<Factorization>;
}

/// Reflections followed by coreflections, factored through bipoles.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolarSystem;

impl FactorizationSystem for PolarSystem {
    fn is_left_class(&self, g: &Adjunction) -> bool {
        g.is_reflection()
    }

    fn is_right_class(&self, g: &Adjunction) -> bool {
        g.is_coreflection()
    }

    fn factor(&self, g: &Adjunction) -> Result<Factorization> {
        Ok(polar_factorize(g)?.factorization().clone())
    }
}

/// A commuting square `top;to = from;bottom` between adjunctions
/// `from : A₁ ⇌ B₁` and `to : A₂ ⇌ B₂`, with `top : A₁ ⇌ A₂` and
/// `bottom : B₁ ⇌ B₂`.
#[derive(Clone, Debug)]
pub struct ArrowMorphism {
    pub from: Adjunction,
    pub to: Adjunction,
    pub top: Adjunction,
    pub bottom: Adjunction,
}

impl ArrowMorphism {
    pub fn new(from: Adjunction, to: Adjunction, top: Adjunction, bottom: Adjunction) -> Result<Self> {
        from.source().same(top.source(), "square")?;
        from.target().same(bottom.source(), "square")?;
        to.source().same(top.target(), "square")?;
        to.target().same(bottom.target(), "square")?;
        if top.compose_unchecked(&to) != from.compose_unchecked(&bottom) {
            return Err(Error::SquareDoesNotCommute("top;to differs from from;bottom".into()));
        }
        Ok(ArrowMorphism { from, to, top, bottom })
    }

    pub fn identity(g: &Adjunction) -> Self {
        ArrowMorphism {
            from: g.clone(),
            to: g.clone(),
            top: Adjunction::identity(g.source()),
            bottom: Adjunction::identity(g.target()),
        }
    }

    /// Pastes `self` and then `next` horizontally.
    pub fn then(&self, next: &ArrowMorphism) -> Result<ArrowMorphism> {
        if self.to != next.from {
            return Err(Error::mismatch("squares do not share an edge"));
        }
        Ok(ArrowMorphism {
            from: self.from.clone(),
            to: next.to.clone(),
            top: self.top.compose(&next.top)?,
            bottom: self.bottom.compose(&next.bottom)?,
        })
    }

    /// The induced adjunction between the polar axes.
    /// Left: `π₁·b̌·ξ₁ = π₀·ǎ·ξ₀`; right: `π₀·â·ξ₀ = π₁·b̂·ξ₁`. Both
    /// forms, and the diagonal of the pasted square, are checked to agree.
    pub fn axis_map(&self) -> Result<Adjunction> {
        let p1 = polar_factorize(&self.from)?;
        let p2 = polar_factorize(&self.to)?;
        let (e1, m1) = (p1.extent_reflection(), p1.intent_coreflection());
        let (e2, m2) = (p2.extent_reflection(), p2.intent_coreflection());
        let left = m1
            .left()
            .then_unchecked(self.bottom.left())
            .then_unchecked(m2.right());
        let left_alt = e1
            .right()
            .then_unchecked(self.top.left())
            .then_unchecked(e2.left());
        let right = e2
            .right()
            .then_unchecked(self.top.right())
            .then_unchecked(e1.left());
        let right_alt = m2
            .left()
            .then_unchecked(self.bottom.right())
            .then_unchecked(m1.right());
        if left != left_alt || right != right_alt {
            return Err(Error::Invalid("axis map formulas disagree".into()));
        }
        let d = Adjunction::new(left, right)?;
        let s = m1.compose_unchecked(&self.bottom);
        let r = self.top.compose_unchecked(e2);
        if diagonalize(e1, &s, &r, m2)? != d {
            return Err(Error::Invalid("axis map differs from the diagonal".into()));
        }
        Ok(d)
    }
}

/// Outcome of the round-trip checks between adjunctions and their factorizations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each case: factoring then composing gives the same adjunction; a
/// relabelled copy of the factorization recomposes and refactors onto an
/// axis isomorphic to it by exactly one embedding-commuting isomorphism;
/// and the identity square induces the identity on the axis.
pub fn factorization_equivalence_check(cases: &[Adjunction]) -> EquivalenceReport {
    let mut report = EquivalenceReport::default();
    for (k, g) in cases.iter().enumerate() {
        report.cases += 1;
        if let Err(e) = check_case(g) {
            report.failures.push(format!("case {k}: {e}"));
        }
    }
    report
}

fn check_case(g: &Adjunction) -> Result<()> {
    let polar = polar_factorize(g)?;
    if polar.compose() != *g {
        return Err(Error::Invalid("factor then compose changed the adjunction".into()));
    }
    let system = PolarSystem;
    if !system.is_left_class(polar.extent_reflection()) || !system.is_right_class(polar.intent_coreflection()) {
        return Err(Error::Invalid("polar parts are not a reflection and a coreflection".into()));
    }
    check_factorization_of(g, &reversed(polar.factorization()))?;
    let id = ArrowMorphism::identity(g).axis_map()?;
    if id != Adjunction::identity(polar.axis()) {
        return Err(Error::Invalid("identity square does not induce the identity".into()));
    }
    Ok(())
}

/// Checks that `f` factors `g` and that refactoring `f`'s composite yields
/// an axis related to `f`'s by exactly one isomorphism commuting with both
/// embeddings.
pub fn check_factorization_of(g: &Adjunction, f: &Factorization) -> Result<MonotoneMap> {
    if f.compose() != *g {
        return Err(Error::Invalid("factorization does not recompose to the adjunction".into()));
    }
    if !f.extent.is_reflection() || !f.intent.is_coreflection() {
        return Err(Error::Invalid("factorization parts have the wrong classes".into()));
    }
    let polar = polar_factorize(&f.compose())?;
    let (e, ep) = (&f.extent, polar.extent_reflection());
    let mut forced = vec![None; f.axis().len()];
    for a in 0..e.source().len() {
        let c = e.left().apply(a);
        let target = ep.left().apply(a);
        match forced[c] {
            Some(t) if t != target => return Err(Error::Invalid("embeddings force no function".into())),
            _ => forced[c] = Some(target),
        }
    }
    let isos = isomorphisms(f.axis(), polar.axis(), &forced, 2)?;
    let commuting: Vec<MonotoneMap> = isos
        .into_iter()
        .filter(|h| {
            let e_h = e.left().then_unchecked(h);
            let h_m = h.then_unchecked(polar.intent_coreflection().left());
            e_h == *ep.left() && h_m == *f.intent.left()
        })
        .collect();
    match commuting.len() {
        1 => Ok(commuting.into_iter().next().expect("one element")),
        n => Err(Error::Invalid(format!("{n} embedding-commuting isomorphisms"))),
    }
}

/// The same factorization with the axis carrier listed in reverse.
fn reversed(f: &Factorization) -> Factorization {
    let axis = f.axis();
    let n = axis.len();
    let flip = |i: usize| n - 1 - i;
    let carrier = crate::finrel::FinSet::new((0..n).map(|i| axis.label(flip(i)))).expect("distinct labels");
    let order = Preorder::kernel_unchecked(&carrier, axis, (0..n).map(flip).collect());
    let relabel = |m: &MonotoneMap, to_axis: bool| -> MonotoneMap {
        if to_axis {
            MonotoneMap::new_unchecked(m.source(), &order, m.table().iter().map(|&c| flip(c)).collect())
        } else {
            MonotoneMap::new_unchecked(&order, m.target(), (0..n).map(|i| m.apply(flip(i))).collect())
        }
    };
    Factorization {
        extent: Adjunction::new_unchecked(relabel(f.extent.left(), true), relabel(f.extent.right(), false)),
        intent: Adjunction::new_unchecked(relabel(f.intent.left(), false), relabel(f.intent.right(), true)),
    }
}
