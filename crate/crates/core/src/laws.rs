//! Seeded law suites over random desk-scale instances, with corrupted
//! fixtures as negative controls.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clg::{classification_of, concept_lattice, lattice_roundtrip_iso};
use crate::clsn::{check_infomorphism, exponent, infomorphisms, Classification, Infomorphism};
use crate::error::{Error, Result};
use crate::finrel::{FinFunction, FinSet, Relation, Subset};
use crate::galois::{
    check_adjunction, direct_image_adjunction, factorization_equivalence_check, inverse_image_adjunction,
};
use crate::institution::{
    check_satisfaction_condition, flatten, merge_theories, style_interconvert, transport_adjunction,
    verify_pushout, FlippedReduct, PropositionalLogic, Sentence, Signature, SignatureMorphism, Span, Theory,
};
use crate::order::{hasse_covers, power_order, quotient, MonotoneMap, Preorder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Finrel,
    Order,
    Galois,
    Clsn,
    Clg,
    Institution,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Finrel,
        Suite::Order,
        Suite::Galois,
        Suite::Clsn,
        Suite::Clg,
        Suite::Institution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Finrel => "finrel",
            Suite::Order => "order",
            Suite::Galois => "galois",
            Suite::Clsn => "clsn",
            Suite::Clg => "clg",
            Suite::Institution => "institution",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawConfig {
    pub seed: u64,
    /// Random instances per suite.
    pub cases: usize,
    /// Run against deliberately broken fixtures.
    pub corrupt: bool,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: 0,
            cases: 100,
            corrupt: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: String,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub suite: Suite,
    /// Individual law checks evaluated.
    pub cases: usize,
    pub failures: Vec<LawFailure>,
    pub elapsed: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Deterministic for a fixed seed; the wall time is left out.
impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {} checks, {} failures, {verdict}",
            self.suite,
            self.cases,
            self.failures.len()
        )?;
        for x in self.failures.iter().take(10) {
            write!(f, "\n  {}: {}", x.law, x.witness)?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n  ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

struct Runner {
    cases: usize,
    failures: Vec<LawFailure>,
}

impl Runner {
    fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(LawFailure {
                law: law.to_string(),
                witness: witness(),
            });
        }
    }

    fn ok<T>(&mut self, law: &str, r: Result<T>) -> Option<T> {
        self.cases += 1;
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(LawFailure {
                    law: law.to_string(),
                    witness: e.to_string(),
                });
                None
            }
        }
    }
}

pub fn run_suite(suite: Suite, config: &LawConfig) -> LawReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (suite as u64) << 32);
    let mut run = Runner {
        cases: 0,
        failures: Vec::new(),
    };
    let body: fn(&mut ChaCha8Rng, &LawConfig, &mut Runner) = match suite {
        Suite::Finrel => finrel_suite,
        Suite::Order => order_suite,
        Suite::Galois => galois_suite,
        Suite::Clsn => clsn_suite,
        Suite::Clg => clg_suite,
        Suite::Institution => institution_suite,
    };
    body(&mut rng, config, &mut run);
    LawReport {
        suite,
        cases: run.cases,
        failures: run.failures,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(config: &LawConfig) -> Vec<LawReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, config)).collect()
}

/// Random instances with numbered labels.
pub mod gen {
    use super::*;

    pub fn set(prefix: &str, n: usize) -> FinSet {
        FinSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("numbered labels are distinct")
    }

    pub fn relation(rng: &mut impl Rng, a: &FinSet, b: &FinSet) -> Relation {
        let cells: Vec<bool> = (0..a.len() * b.len()).map(|_| rng.gen_bool(0.5)).collect();
        Relation::from_fn(a, b, |i, j| cells[i * b.len() + j])
    }

    pub fn subset(rng: &mut impl Rng, a: &FinSet) -> Subset {
        Subset::from_indices(a, (0..a.len()).filter(|_| rng.gen_bool(0.5))).expect("indices in range")
    }

    /// A function `a → b`; `b` must be inhabited when `a` is.
    pub fn function(rng: &mut impl Rng, a: &FinSet, b: &FinSet) -> FinFunction {
        let table = (0..a.len()).map(|_| rng.gen_range(0..b.len())).collect();
        FinFunction::new(a, b, table).expect("table in range")
    }

    /// A context with between 1 and the given numbers of objects and attributes.
    pub fn classification(rng: &mut impl Rng, max_objects: usize, max_attributes: usize) -> Classification {
        let g = set("g", rng.gen_range(1..=max_objects));
        let m = set("m", rng.gen_range(1..=max_attributes));
        Classification::from_relation(relation(rng, &g, &m))
    }

    pub fn preorder(rng: &mut impl Rng, max: usize) -> Preorder {
        let p = set("p", rng.gen_range(0..=max));
        let n = p.len();
        let k = if n == 0 { 0 } else { rng.gen_range(0..=n) };
        let pairs: Vec<_> = (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        Preorder::generated(&p, pairs).expect("pairs in range")
    }
}

/// `a` with the incidence of its first cell flipped.
fn flipped(a: &Classification) -> Classification {
    Classification::from_relation(Relation::from_fn(a.instances(), a.types(), |i, j| {
        a.holds(i, j) != (i == 0 && j == 0)
    }))
}

fn finrel_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    for case in 0..config.cases {
        let size = |rng: &mut ChaCha8Rng| if case == 0 { 2 } else { rng.gen_range(0..=3) };
        let (a, b, c, d) = (
            gen::set("a", size(rng)),
            gen::set("b", size(rng)),
            gen::set("c", size(rng)),
            gen::set("d", size(rng)),
        );
        let r = if case == 0 {
            Relation::empty(&a, &b)
        } else {
            gen::relation(rng, &a, &b)
        };
        let s = gen::relation(rng, &a, &c);
        let mut residual = r.residuate_left(&s).expect("shared source");
        if config.corrupt {
            if let Some(&(x, y)) = residual.pairs().first() {
                residual = Relation::from_fn(&b, &c, |i, j| residual.get(i, j) && (i, j) != (x, y));
            }
        }
        for x in [gen::relation(rng, &b, &c), r.residuate_left(&s).expect("shared source")] {
            let lhs = r.compose(&x).and_then(|rx| rx.is_subset(&s)).expect("typed");
            let rhs = x.is_subset(&residual).expect("typed");
            run.check("r;x <= s iff x <= r\\s", lhs == rhs, || format!("r={r:?} s={s:?} x={x:?}"));
        }
        let t = gen::relation(rng, &c, &b);
        let y = gen::relation(rng, &c, &a);
        let lhs = y.compose(&r).and_then(|yr| yr.is_subset(&t)).expect("typed");
        let rhs = y.is_subset(&r.residuate_right(&t).expect("shared target")).expect("typed");
        run.check("y;r <= t iff y <= t/r", lhs == rhs, || format!("r={r:?} t={t:?} y={y:?}"));
        let x = gen::relation(rng, &b, &c);
        let z = gen::relation(rng, &c, &d);
        let left = r.compose(&x).and_then(|rx| rx.compose(&z)).expect("typed");
        let right = x.compose(&z).and_then(|xz| r.compose(&xz)).expect("typed");
        run.check("composition is associative", left == right, || format!("r={r:?} x={x:?} z={z:?}"));
        let swapped = x.transpose().compose(&r.transpose()).expect("typed");
        run.check("(r;x)^T = x^T;r^T", r.compose(&x).expect("typed").transpose() == swapped, || {
            format!("r={r:?} x={x:?}")
        });
        if b.is_empty() && !a.is_empty() {
            continue;
        }
        let f = gen::function(rng, &a, &b);
        let (xs, ys) = (gen::subset(rng, &a), gen::subset(rng, &b));
        let exists = f.existential(&xs).and_then(|e| e.is_subset(&ys)).expect("typed");
        let pulled = f.inverse(&ys).expect("typed");
        run.check("image -| preimage", exists == xs.is_subset(&pulled).expect("typed"), || {
            format!("f={:?} X={xs} Y={ys}", f.table())
        });
        let forall = f.universal(&xs).expect("typed");
        run.check(
            "preimage -| universal image",
            pulled.is_subset(&xs).expect("typed") == ys.is_subset(&forall).expect("typed"),
            || format!("f={:?} X={xs} Y={ys}", f.table()),
        );
    }
}

fn order_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    for n in 0..=3 {
        let power = power_order(&gen::set("a", n)).expect("small base");
        let leq = |x, y| power.order().leq(x, y);
        for x in 0..power.len() {
            for y in 0..power.len() {
                let imp = if config.corrupt { power.implies(y, x) } else { power.implies(x, y) };
                for z in 0..power.len() {
                    run.check(
                        "z meet x <= y iff z <= x => y",
                        leq(power.meet(z, x), y) == leq(z, imp),
                        || format!("|A|={n} x={x:b} y={y:b} z={z:b}"),
                    );
                }
            }
        }
    }
    for _ in 0..config.cases {
        let p = gen::preorder(rng, 5);
        let n = p.len();
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(p.leq(a, b) && p.leq(b, c)) || p.leq(a, c))));
        run.check("generated orders are preorders", transitive && (0..n).all(|a| p.leq(a, a)), || {
            format!("{p:?}")
        });
        let q = quotient(&p);
        let reflects = (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == q.order.leq(q.canon.apply(a), q.canon.apply(b))));
        run.check("quotient reflects and preserves order", reflects, || format!("{p:?}"));
        run.check("quotient is antisymmetric", q.order.is_antisymmetric(), || format!("{p:?}"));
        let covers = hasse_covers(&q.order);
        let regenerated = Preorder::generated(q.order.carrier(), covers).expect("covers in range");
        run.check("covers generate the order", regenerated.relation() == q.order.relation(), || {
            format!("{p:?}")
        });
        if n > 0 {
            let table = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let f = MonotoneMap::new_unchecked(&p, &p, table);
            let monotone = (0..n).all(|a| (0..n).all(|b| !p.leq(a, b) || p.leq(f.apply(a), f.apply(b))));
            run.check("monotonicity witness is exact", monotone == f.monotonicity_witness().is_none(), || {
                format!("{p:?} f={:?}", f.table())
            });
        }
    }
}

fn galois_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    let mut cases = Vec::new();
    for _ in 0..config.cases {
        let a = gen::classification(rng, 4, 4);
        let Some(g) = run.ok("derivation is an adjunction", a.derivation()) else {
            continue;
        };
        let mut right = g.right().table().to_vec();
        if config.corrupt {
            let k = rng.gen_range(0..right.len());
            right[k] = (right[k] + 1) % g.source().len();
        }
        let right = MonotoneMap::new_unchecked(g.target(), g.source(), right);
        run.ok("derivation passes the adjunction check", check_adjunction(g.left(), &right));
        let cl = g.closure();
        let n = g.source().len();
        run.check(
            "closure is extensive and idempotent",
            (0..n).all(|x| g.source().leq(x, cl.apply(x)) && cl.apply(cl.apply(x)) == cl.apply(x)),
            || format!("{a:?}"),
        );
        cases.push(g);
        let (x, y) = (gen::set("x", rng.gen_range(1..=3)), gen::set("y", rng.gen_range(1..=3)));
        let f = gen::function(rng, &x, &y);
        run.ok("image adjunction", direct_image_adjunction(&f));
        run.ok("inverse image adjunction", inverse_image_adjunction(&f));
    }
    let report = factorization_equivalence_check(&cases);
    run.cases += report.cases;
    for witness in report.failures {
        run.failures.push(LawFailure {
            law: "polar factorization round trip".into(),
            witness,
        });
    }
}

fn clsn_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    for _ in 0..config.cases {
        let a = gen::classification(rng, 3, 3);
        let b = gen::classification(rng, 3, 3);
        if config.corrupt {
            let f = Infomorphism::new_unchecked(
                &a,
                &flipped(&a),
                FinFunction::identity(a.instances()),
                FinFunction::identity(a.types()),
            )
            .expect("same carriers");
            let report = check_infomorphism(&f);
            run.check("identity into a perturbed copy", report.valid(), || {
                format!("{:?}", report.witness)
            });
            continue;
        }
        let Some(all) = run.ok("infomorphism enumeration", infomorphisms(&a, &b)) else {
            continue;
        };
        for f in &all {
            let report = check_infomorphism(f);
            run.check("enumerated maps are infomorphisms", report.valid() && report.consistent(), || {
                format!("{report:?}")
            });
            let id = Infomorphism::identity(&b);
            run.check("identity is a unit", f.compose(&id).ok().as_ref() == Some(f), || format!("{f:?}"));
        }
        if let Some(e) = run.ok("exponent", exponent(&a, &b)) {
            run.check("exponent instances are infomorphisms", e.classification.instances().len() == all.len(), || {
                format!("{a:?} {b:?}")
            });
        }
        let id = Infomorphism::identity(&a);
        run.check("identity infomorphism", check_infomorphism(&id).valid(), || format!("{a:?}"));
    }
}

/// Closed extents by brute force over all object subsets.
fn closed_extent_count(a: &Classification) -> usize {
    let r = a.incidence();
    (0..1u64 << a.instances().len())
        .filter(|&x| {
            let x = Subset::from_mask(a.instances(), x);
            let closed = r
                .derive_forward(&x)
                .and_then(|y| r.derive_reverse(&y))
                .expect("typed");
            closed == x
        })
        .count()
}

fn clg_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    for _ in 0..config.cases {
        let a = gen::classification(rng, 5, 5);
        let Some(l) = run.ok("concept lattice", concept_lattice(&a)) else {
            continue;
        };
        let expected = if config.corrupt { flipped(&a) } else { a.clone() };
        run.check("clsn(clg(A)) = A", classification_of(&l) == expected, || format!("{a:?}"));
        run.ok("clg(clsn(L)) is isomorphic to L", lattice_roundtrip_iso(&l));
        let n = closed_extent_count(&a);
        run.check("concept count matches closed extents", l.len() == n, || {
            format!("{a:?}: {} concepts, {n} closed extents", l.len())
        });
        run.check("concepts form a complete lattice", l.lattice().is_complete_lattice(), || {
            format!("{a:?}")
        });
    }
}

fn institution_suite(rng: &mut ChaCha8Rng, config: &LawConfig, run: &mut Runner) {
    for case in 0..config.cases {
        let n1 = if case == 0 { 1 } else { rng.gen_range(0..=3) };
        let n2 = if n1 == 0 { rng.gen_range(0..=3) } else { rng.gen_range(1..=3) };
        let s1 = Signature::from_vars(gen::set("u", n1));
        let s2 = Signature::from_vars(gen::set("v", n2));
        let table = (0..n1).map(|_| rng.gen_range(0..n2)).collect();
        let sigma = SignatureMorphism::from_table(&s1, &s2, table).expect("table in range");
        let report = if config.corrupt {
            check_satisfaction_condition(&FlippedReduct::default(), &sigma, 3)
        } else {
            check_satisfaction_condition(&PropositionalLogic, &sigma, 3)
        };
        if let Some(r) = run.ok("satisfaction check", report) {
            run.check("satisfaction condition", r.passed(), || {
                format!("{:?}: {:?}", sigma.map().table(), r.failures.first())
            });
        }
        if let Some(adj) = run.ok("transport", transport_adjunction(&sigma)) {
            run.ok("transports are adjoint", check_adjunction(adj.left(), adj.right()));
        }
        if case % 10 == 0 && n1 <= 2 && n2 <= 2 {
            if let Some(r) = run.ok("style interconversion", style_interconvert(&PropositionalLogic, &sigma, 3)) {
                run.check("four styles pass", r.passed(), || format!("{r:?}"));
            }
        }
    }
    if let Some(ok) = run.ok("diagram", law_diagram()) {
        run.check("flattened category laws and pushout universality", ok, || "fixed diagram".into());
    }
}

fn law_diagram() -> Result<bool> {
    let s0 = Signature::new(["q"])?;
    let s1 = Signature::new(["p", "q"])?;
    let s2 = Signature::new(["q", "r"])?;
    let left = SignatureMorphism::inclusion(&s0, &s1)?;
    let right = SignatureMorphism::inclusion(&s0, &s2)?;
    let category = flatten(&[s0, s1.clone(), s2.clone()], &[(0, 1, left.clone()), (0, 2, right.clone())])?;
    let span = Span::new(left, right)?;
    let merged = merge_theories(
        &span,
        &Theory::from_axioms(&s1, &[Sentence::var(1)])?,
        &Theory::from_axioms(&s2, &[Sentence::var(1)])?,
    )?;
    Ok(category.report.passed() && verify_pushout(&span, &merged.pushout, 3)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suites_pass() {
        let config = LawConfig {
            cases: 20,
            ..LawConfig::default()
        };
        for r in run_all(&config) {
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn corrupted_suites_fail() {
        let config = LawConfig {
            cases: 20,
            corrupt: true,
            ..LawConfig::default()
        };
        for r in run_all(&config) {
            assert!(!r.passed(), "{} passed on a corrupted fixture", r.suite);
            assert!(!r.failures[0].witness.is_empty());
        }
    }

    #[test]
    fn deterministic() {
        let config = LawConfig {
            seed: 7,
            cases: 10,
            corrupt: true,
        };
        let a: Vec<String> = run_all(&config).iter().map(|r| r.to_string()).collect();
        let b: Vec<String> = run_all(&config).iter().map(|r| r.to_string()).collect();
        assert_eq!(a, b);
    }
}
