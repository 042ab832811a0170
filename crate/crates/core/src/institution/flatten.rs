use std::collections::HashMap;

use super::{theory_fiber, transport, Signature, SignatureMorphism, Theory};
use crate::config::check_enumeration;
use crate::error::{Error, Result};

/// `(σ, t₁, t₂)` with `transport(σ, t₁) ≤ t₂`, indexing morphisms and objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TheoryArrow {
    pub morphism: usize,
    pub from: usize,
    pub to: usize,
}

/// Results of the category-law checks run at construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlattenReport {
    pub identities: usize,
    pub pairs: usize,
    pub triples: usize,
    pub failures: Vec<String>,
}

impl FlattenReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The flattened category of theories over a diagram of signatures.
/// Objects are `(signature index, theory)`; arrows are theory morphisms
/// along signature morphisms of the composition-closed diagram.
#[derive(Clone, Debug)]
pub struct FlattenedTheoryCategory {
    pub signatures: Vec<Signature>,
    /// `(source index, target index, σ)`, closed under composition and identities.
    pub morphisms: Vec<(usize, usize, SignatureMorphism)>,
    pub objects: Vec<(usize, Theory)>,
    pub arrows: Vec<TheoryArrow>,
    pub report: FlattenReport,
    index: HashMap<TheoryArrow, usize>,
}

/// Flattens the fibers of theories over `signatures` along `morphisms`,
/// given as `(source index, target index, σ)`.
pub fn flatten(
    signatures: &[Signature],
    morphisms: &[(usize, usize, SignatureMorphism)],
) -> Result<FlattenedTheoryCategory> {
    for (k, (i, j, sigma)) in morphisms.iter().enumerate() {
        let (Some(si), Some(sj)) = (signatures.get(*i), signatures.get(*j)) else {
            return Err(Error::Invalid(format!("morphism {k} refers to a missing signature")));
        };
        if sigma.source() != si || sigma.target() != sj {
            return Err(Error::Invalid(format!("morphism {k} is ill-typed")));
        }
    }
    let closed = close(signatures, morphisms)?;
    let fibers = signatures.iter().map(theory_fiber).collect::<Result<Vec<_>>>()?;
    let mut objects = Vec::new();
    let mut first_object = Vec::new();
    for (s, fiber) in fibers.iter().enumerate() {
        first_object.push(objects.len());
        objects.extend((0..fiber.len()).map(|t| (s, fiber.theory(t))));
    }
    check_enumeration("flattened objects", objects.len())?;
    let mut arrows = Vec::new();
    for (k, (i, j, sigma)) in closed.iter().enumerate() {
        for a in 0..fibers[*i].len() {
            let moved = transport(sigma, &objects[first_object[*i] + a].1)?;
            for b in 0..fibers[*j].len() {
                let to = first_object[*j] + b;
                if moved.leq(&objects[to].1)? {
                    arrows.push(TheoryArrow {
                        morphism: k,
                        from: first_object[*i] + a,
                        to,
                    });
                }
            }
            check_enumeration("flattened arrows", arrows.len())?;
        }
    }
    let index = arrows.iter().enumerate().map(|(n, a)| (*a, n)).collect();
    let mut category = FlattenedTheoryCategory {
        signatures: signatures.to_vec(),
        morphisms: closed,
        objects,
        arrows,
        report: FlattenReport::default(),
        index,
    };
    category.report = category.check_laws();
    Ok(category)
}

fn close(
    signatures: &[Signature],
    morphisms: &[(usize, usize, SignatureMorphism)],
) -> Result<Vec<(usize, usize, SignatureMorphism)>> {
    let mut closed: Vec<(usize, usize, SignatureMorphism)> = signatures
        .iter()
        .enumerate()
        .map(|(i, s)| (i, i, SignatureMorphism::identity(s)))
        .collect();
    for m in morphisms {
        if !closed.contains(m) {
            closed.push(m.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = closed.clone();
        for (i, j, f) in &snapshot {
            for (j2, k, g) in &snapshot {
                if j != j2 {
                    continue;
                }
                let h = (*i, *k, f.then(g)?);
                if !closed.contains(&h) {
                    closed.push(h);
                    changed = true;
                }
            }
        }
        if closed.len() > 1024 {
            return Err(Error::SizeLimit {
                what: "composition closure".into(),
                size: closed.len(),
                limit: 1024,
            });
        }
    }
    Ok(closed)
}

impl FlattenedTheoryCategory {
    fn composite_morphism(&self, f: usize, g: usize) -> Option<usize> {
        let (i, j, a) = &self.morphisms[f];
        let (j2, k, b) = &self.morphisms[g];
        if j != j2 {
            return None;
        }
        let h = a.then(b).ok()?;
        self.morphisms
            .iter()
            .position(|(x, y, m)| x == i && y == k && *m == h)
    }

    fn identity_morphism(&self, s: usize) -> usize {
        self.morphisms
            .iter()
            .position(|(i, j, m)| *i == s && *j == s && *m == SignatureMorphism::identity(&self.signatures[s]))
            .expect("identities were added")
    }

    /// The identity arrow on an object.
    pub fn identity(&self, object: usize) -> Option<usize> {
        let s = self.objects[object].0;
        self.find(TheoryArrow {
            morphism: self.identity_morphism(s),
            from: object,
            to: object,
        })
    }

    pub fn find(&self, arrow: TheoryArrow) -> Option<usize> {
        self.index.get(&arrow).copied()
    }

    /// `a ; b`, if composable.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (self.arrows[a], self.arrows[b]);
        if x.to != y.from {
            return None;
        }
        let m = self.composite_morphism(x.morphism, y.morphism)?;
        self.find(TheoryArrow {
            morphism: m,
            from: x.from,
            to: y.to,
        })
    }

    fn check_laws(&self) -> FlattenReport {
        let mut report = FlattenReport::default();
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for (n, a) in self.arrows.iter().enumerate() {
            outgoing[a.from].push(n);
        }
        for o in 0..self.objects.len() {
            report.identities += 1;
            if self.identity(o).is_none() {
                report.failures.push(format!("object {o} has no identity"));
            }
        }
        for (a, arrow) in self.arrows.iter().enumerate() {
            let (Some(l), Some(r)) = (self.identity(arrow.from), self.identity(arrow.to)) else {
                continue;
            };
            if self.compose(l, a) != Some(a) || self.compose(a, r) != Some(a) {
                report.failures.push(format!("unit law fails at arrow {a}"));
            }
            for &b in &outgoing[arrow.to] {
                report.pairs += 1;
                let Some(ab) = self.compose(a, b) else {
                    report.failures.push(format!("arrows {a} and {b} do not compose"));
                    continue;
                };
                for &c in &outgoing[self.arrows[b].to] {
                    report.triples += 1;
                    let left = self.compose(ab, c);
                    let right = self.compose(b, c).and_then(|bc| self.compose(a, bc));
                    if left.is_none() || left != right {
                        report.failures.push(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_signature_is_the_fiber() {
        let s = Signature::new(["p"]).unwrap();
        let c = flatten(&[s], &[]).unwrap();
        assert_eq!(c.objects.len(), 4);
        // One arrow per pair t₁ ≤ t₂ in the four-element Boolean fiber.
        assert_eq!(c.arrows.len(), 9);
        assert!(c.report.passed());
    }

    #[test]
    fn inclusion_adds_transported_comparisons() {
        let s0 = Signature::empty();
        let s1 = Signature::new(["p"]).unwrap();
        let incl = SignatureMorphism::inclusion(&s0, &s1).unwrap();
        let c = flatten(&[s0.clone(), s1.clone()], &[(0, 1, incl.clone())]).unwrap();
        let mut expected = 3 + 9;
        for a in 0..2u64 {
            let t = transport(&incl, &Theory::from_masks(&s0, (0..1).filter(|_| a == 1)).unwrap()).unwrap();
            for b in 0..4u64 {
                let u = Theory::from_masks(&s1, (0..2).filter(|m| b >> m & 1 == 1)).unwrap();
                expected += usize::from(t.leq(&u).unwrap());
            }
        }
        assert_eq!(c.arrows.len(), expected);
        assert!(c.report.passed() && c.report.triples > 0);
    }

    #[test]
    fn ill_typed_rejected() {
        let s0 = Signature::empty();
        let s1 = Signature::new(["p"]).unwrap();
        let incl = SignatureMorphism::inclusion(&s0, &s1).unwrap();
        assert!(flatten(&[s0, s1], &[(1, 0, incl)]).is_err());
    }
}
