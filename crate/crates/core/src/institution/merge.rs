use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{transport, Signature, SignatureMorphism, Theory, TheoryJson};
use crate::error::{Error, Result};
use crate::finrel::FinSet;

/// A span `Σ₁ ← Σ₀ → Σ₂` of signature morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub base: Signature,
    pub left: SignatureMorphism,
    pub right: SignatureMorphism,
}

impl Span {
    pub fn new(left: SignatureMorphism, right: SignatureMorphism) -> Result<Span> {
        if left.source() != right.source() {
            return Err(Error::mismatch("span legs have different sources"));
        }
        Ok(Span {
            base: left.source().clone(),
            left,
            right,
        })
    }
}

/// A pushout of signatures with its coprojections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub signature: Signature,
    pub inl: SignatureMorphism,
    pub inr: SignatureMorphism,
}

/// `(Σ₁ ⊎ Σ₂)/(σ₁(v) ~ σ₂(v))`. Classes are ordered by first member,
/// scanning `Σ₁` then `Σ₂`, and labelled `L.v`, `R.v`, or `C.v` with `v`
/// the first `Σ₁` member of an identified class.
pub fn pushout(span: &Span) -> Result<Pushout> {
    let (s1, s2) = (span.left.target(), span.right.target());
    let (n1, n2) = (s1.len(), s2.len());
    let mut parent: Vec<usize> = (0..n1 + n2).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in 0..span.base.len() {
        let a = find(&mut parent, span.left.apply(v));
        let b = find(&mut parent, n1 + span.right.apply(v));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of_root = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut class = vec![0; n1 + n2];
    for (x, slot) in class.iter_mut().enumerate() {
        let root = find(&mut parent, x);
        let c = *class_of_root.entry(root).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[c].push(x);
        *slot = c;
    }
    let labels = members.iter().map(|m| match m.as_slice() {
        [x] if *x < n1 => format!("L.{}", s1.vars().label(*x)),
        [x] => format!("R.{}", s2.vars().label(*x - n1)),
        m => format!("C.{}", s1.vars().label(m[0])),
    });
    let signature = Signature::new(labels)?;
    let inl = SignatureMorphism::from_table(s1, &signature, class[..n1].to_vec())?;
    let inr = SignatureMorphism::from_table(s2, &signature, class[n1..].to_vec())?;
    Ok(Pushout { signature, inl, inr })
}

/// A merged theory over the pushout signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub pushout: Pushout,
    pub theory: Theory,
    /// Set when the merged model class is empty.
    pub inconsistent: bool,
}

impl Merge {
    pub fn to_json(&self) -> MergeJson {
        let theory = self.theory.to_json();
        MergeJson {
            signature: theory.signature,
            models: theory.models,
            inconsistent: self.inconsistent,
        }
    }
}

/// A theory file with the inconsistency flag appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeJson {
    pub signature: Vec<String>,
    pub models: Vec<Vec<String>>,
    pub inconsistent: bool,
}

/// Transports `t₁` and `t₂` along the coprojections and intersects
/// their model classes.
pub fn merge_theories(span: &Span, t1: &Theory, t2: &Theory) -> Result<Merge> {
    let pushout = pushout(span)?;
    let theory = transport(&pushout.inl, t1)?.combine(&transport(&pushout.inr, t2)?)?;
    Ok(Merge {
        inconsistent: theory.is_inconsistent(),
        pushout,
        theory,
    })
}

/// Outcome of the mediating-morphism search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoconeReport {
    pub cocones: usize,
    pub commutes: bool,
    /// Cocones without exactly one mediating morphism, with the count found.
    pub failures: Vec<(String, usize)>,
}

impl CoconeReport {
    pub fn passed(&self) -> bool {
        self.commutes && self.failures.is_empty()
    }
}

/// Largest number of candidate triples `(f₁, f₂, u)` searched per target.
pub const MAX_COCONE_SEARCH: usize = 1 << 22;

fn tables(from: usize, to: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if from == 0 { 1 } else { to.pow(from as u32) };
    (0..total).map(move |mut code| {
        (0..from)
            .map(|_| {
                let d = code % to;
                code /= to;
                d
            })
            .collect()
    })
}

/// Checks the universal property against every cocone into the signatures
/// `{q0, ..}` with at most `max_target` variables.
pub fn verify_pushout(span: &Span, pushout: &Pushout, max_target: usize) -> Result<CoconeReport> {
    let (n0, n1, n2) = (span.base.len(), span.left.target().len(), span.right.target().len());
    let np = pushout.signature.len();
    let mut report = CoconeReport {
        commutes: span.left.then(&pushout.inl)? == span.right.then(&pushout.inr)?,
        ..CoconeReport::default()
    };
    for k in 0..=max_target {
        let size = k.saturating_pow((n1 + n2 + np) as u32);
        if size > MAX_COCONE_SEARCH {
            return Err(Error::SizeLimit {
                what: "cocone search".into(),
                size,
                limit: MAX_COCONE_SEARCH,
            });
        }
        for f1 in tables(n1, k) {
            for f2 in tables(n2, k) {
                if (0..n0).any(|v| f1[span.left.apply(v)] != f2[span.right.apply(v)]) {
                    continue;
                }
                report.cocones += 1;
                let mediating = tables(np, k)
                    .filter(|u| {
                        (0..n1).all(|x| u[pushout.inl.apply(x)] == f1[x])
                            && (0..n2).all(|x| u[pushout.inr.apply(x)] == f2[x])
                    })
                    .count();
                if mediating != 1 {
                    report.failures.push((format!("Q={k} f1={f1:?} f2={f2:?}"), mediating));
                }
            }
        }
    }
    Ok(report)
}

/// One leg of a span file: a signature, the base-to-leg variable map and
/// a theory given by models or axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanSide {
    pub signature: Vec<String>,
    pub map: BTreeMap<String, String>,
    #[serde(default)]
    pub models: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<String>>,
}

/// `{"base":[vars],"left":SpanSide,"right":SpanSide}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanFile {
    pub base: Vec<String>,
    pub left: SpanSide,
    pub right: SpanSide,
}

impl SpanSide {
    fn load(&self, base: &Signature) -> Result<(SignatureMorphism, Theory)> {
        let sig = Signature::new(self.signature.iter().cloned())?;
        let known: FinSet = base.vars().clone();
        if let Some(extra) = self.map.keys().find(|k| known.index_of(k).is_none()) {
            return Err(Error::Invalid(format!("map key {extra} is not a base variable")));
        }
        let pairs: Vec<(&str, &str)> = self.map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let sigma = SignatureMorphism::from_labels(base, &sig, &pairs)?;
        let theory = Theory::from_json(&TheoryJson {
            signature: self.signature.clone(),
            models: self.models.clone(),
            axioms: self.axioms.clone(),
        })?;
        Ok((sigma, theory))
    }
}

impl SpanFile {
    /// The span and its two theories.
    pub fn load(&self) -> Result<(Span, Theory, Theory)> {
        let base = Signature::new(self.base.iter().cloned())?;
        let (left, t1) = self.left.load(&base)?;
        let (right, t2) = self.right.load(&base)?;
        Ok((Span::new(left, right)?, t1, t2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::institution::Sentence;

    fn demo() -> (Span, Theory, Theory) {
        let s0 = Signature::new(["q"]).unwrap();
        let s1 = Signature::new(["p", "q"]).unwrap();
        let s2 = Signature::new(["q", "r"]).unwrap();
        let span = Span::new(
            SignatureMorphism::inclusion(&s0, &s1).unwrap(),
            SignatureMorphism::inclusion(&s0, &s2).unwrap(),
        )
        .unwrap();
        let t1 = Theory::from_axioms(&s1, &[Sentence::var(1)]).unwrap();
        let t2 = Theory::from_axioms(&s2, &[Sentence::and(Sentence::var(0), Sentence::var(1))]).unwrap();
        (span, t1, t2)
    }

    #[test]
    fn demo_merge() {
        let (span, t1, t2) = demo();
        let m = merge_theories(&span, &t1, &t2).unwrap();
        assert_eq!(m.pushout.signature.vars().labels(), ["L.p", "C.q", "R.r"]);
        // Models containing q and r, with p free.
        assert_eq!(m.theory.masks(), vec![0b110, 0b111]);
        assert!(!m.inconsistent);
        assert!(verify_pushout(&span, &m.pushout, 3).unwrap().passed());
    }

    #[test]
    fn disjoint() {
        let s0 = Signature::empty();
        let p = Signature::new(["p"]).unwrap();
        let r = Signature::new(["r"]).unwrap();
        let span = Span::new(
            SignatureMorphism::inclusion(&s0, &p).unwrap(),
            SignatureMorphism::inclusion(&s0, &r).unwrap(),
        )
        .unwrap();
        let m = merge_theories(
            &span,
            &Theory::from_axioms(&p, &[Sentence::var(0)]).unwrap(),
            &Theory::from_axioms(&r, &[Sentence::var(0)]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.pushout.signature.vars().labels(), ["L.p", "R.r"]);
        assert_eq!(m.theory.masks(), vec![0b11]);
    }

    #[test]
    fn identity_span() {
        let s = Signature::new(["p", "q"]).unwrap();
        let id = SignatureMorphism::identity(&s);
        let span = Span::new(id.clone(), id).unwrap();
        let t = Theory::from_masks(&s, [1, 3]).unwrap();
        let m = merge_theories(&span, &t, &t).unwrap();
        assert_eq!(m.pushout.signature.vars().labels(), ["C.p", "C.q"]);
        assert_eq!(m.theory.masks(), t.masks());
    }

    #[test]
    fn contradiction_is_flagged() {
        let s = Signature::new(["p"]).unwrap();
        let id = SignatureMorphism::identity(&s);
        let span = Span::new(id.clone(), id).unwrap();
        let m = merge_theories(
            &span,
            &Theory::from_masks(&s, [1]).unwrap(),
            &Theory::from_masks(&s, [0]).unwrap(),
        )
        .unwrap();
        assert!(m.inconsistent && m.theory.is_inconsistent());
    }

    #[test]
    fn wrong_pushout_fails_search() {
        let (span, _, _) = demo();
        let good = pushout(&span).unwrap();
        // Collapsing everything to one variable still commutes but is not universal.
        let one = Signature::new(["x"]).unwrap();
        let bad = Pushout {
            inl: SignatureMorphism::from_table(span.left.target(), &one, vec![0, 0]).unwrap(),
            inr: SignatureMorphism::from_table(span.right.target(), &one, vec![0, 0]).unwrap(),
            signature: one,
        };
        assert!(verify_pushout(&span, &good, 2).unwrap().passed());
        let r = verify_pushout(&span, &bad, 2).unwrap();
        assert!(r.commutes && !r.passed());
    }

    #[test]
    fn span_file() {
        let text = r#"{"base":["q"],
            "left":{"signature":["p","q"],"map":{"q":"q"},"axioms":["(var q)"]},
            "right":{"signature":["q","r"],"map":{"q":"q"},"models":[["q","r"]]}}"#;
        let file: SpanFile = serde_json::from_str(text).unwrap();
        let (span, t1, t2) = file.load().unwrap();
        let (d, e1, e2) = demo();
        assert_eq!((span, t1, t2), (d, e1, e2));
    }
}
