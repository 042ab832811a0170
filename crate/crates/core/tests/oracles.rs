//! Library results against independent brute-force oracles.

mod common;

use common::*;
use conceptua::clg::{concept_lattice, concept_morphism_of};
use conceptua::clsn::{exponent, infomorphisms, multiply, order_as_classification};
use conceptua::finrel::Subset;
use conceptua::galois::{bounds_adjunction, diagonalize, mediating_adjunctions, polar_factorize, Adjunction};
use conceptua::institution::{
    classification_of_signature, enumerate_sentences, flatten, merge_theories, theory_fiber, transport,
    verify_pushout, PropositionalLogic, Sentence, Signature, SignatureMorphism, Span, Theory,
};
use conceptua::order::{isomorphisms, order_isomorphism, Preorder, MAX_SEARCH};
use rand::Rng;

#[test]
fn residuals_match_their_definitions() {
    let mut rng = rng(1);
    for _ in 0..300 {
        let (a, b, c) = (
            numbered("a", rng.gen_range(0..=4)),
            numbered("b", rng.gen_range(0..=4)),
            numbered("c", rng.gen_range(0..=4)),
        );
        let r = random_relation(&mut rng, &a, &b);
        let s = random_relation(&mut rng, &a, &c);
        let left = r.residuate_left(&s).unwrap();
        for y in 0..b.len() {
            for z in 0..c.len() {
                let expected = (0..a.len()).all(|x| !r.get(x, y) || s.get(x, z));
                assert_eq!(left.get(y, z), expected);
            }
        }
        let t = random_relation(&mut rng, &c, &b);
        let right = r.residuate_right(&t).unwrap();
        for z in 0..c.len() {
            for x in 0..a.len() {
                let expected = (0..b.len()).all(|y| !r.get(x, y) || t.get(z, y));
                assert_eq!(right.get(z, x), expected);
            }
        }
    }
}

#[test]
fn derivations_match_their_definitions() {
    let mut rng = rng(2);
    for _ in 0..200 {
        let a = small_context(&mut rng, 5, 5);
        let r = a.incidence();
        let x = Subset::from_mask(a.instances(), rng.gen_range(0..1u64 << a.instances().len()));
        let up = r.derive_forward(&x).unwrap();
        for j in 0..a.types().len() {
            assert_eq!(up.contains(j), x.indices().iter().all(|&i| a.holds(i, j)));
        }
        let y = Subset::from_mask(a.types(), rng.gen_range(0..1u64 << a.types().len()));
        let down = r.derive_reverse(&y).unwrap();
        for i in 0..a.instances().len() {
            assert_eq!(down.contains(i), y.indices().iter().all(|&j| a.holds(i, j)));
        }
    }
}

fn lattice_masks(a: &conceptua::clsn::Classification) -> Vec<(u64, u64)> {
    let l = concept_lattice(a).unwrap();
    let mut got: Vec<_> = l.concepts().iter().map(|c| (c.extent.mask(), c.intent.mask())).collect();
    got.sort();
    got
}

#[test]
fn concept_lattices_match_brute_force() {
    let mut rng = rng(3);
    for _ in 0..300 {
        let a = small_context(&mut rng, 6, 6);
        assert_eq!(lattice_masks(&a), concepts(&a), "{a:?}");
        let l = concept_lattice(&a).unwrap();
        for p in 0..l.len() {
            for q in 0..l.len() {
                let (ep, eq) = (l.concept(p).extent.mask(), l.concept(q).extent.mask());
                assert_eq!(l.lattice().leq(p, q), ep & !eq == 0);
            }
        }
        let covers = l.covers();
        for p in 0..l.len() {
            for q in 0..l.len() {
                let strict = |x: usize, y: usize| x != y && l.lattice().leq(x, y);
                let expected = strict(p, q) && !(0..l.len()).any(|z| strict(p, z) && strict(z, q));
                assert_eq!(covers.contains(&(p, q)), expected);
            }
        }
    }
}

#[test]
fn known_concept_counts() {
    for n in 1..=5 {
        assert_eq!(concept_lattice(&contranominal(n)).unwrap().len(), 1 << n);
        assert_eq!(concepts(&contranominal(n)).len(), 1 << n);
    }
    for n in 2..=5 {
        assert_eq!(concept_lattice(&nominal(n)).unwrap().len(), n + 2);
        assert_eq!(concepts(&nominal(n)).len(), n + 2);
    }
    let worked = context(&["XX", ".X"]);
    assert_eq!(lattice_masks(&worked), vec![(0b01, 0b11), (0b11, 0b10)]);
}

#[test]
fn infomorphisms_match_brute_force() {
    let mut rng = rng(4);
    for _ in 0..150 {
        let a = small_context(&mut rng, 3, 3);
        let b = small_context(&mut rng, 3, 3);
        let mut got: Vec<_> = infomorphisms(&a, &b)
            .unwrap()
            .iter()
            .map(|f| (f.inst_map().table().to_vec(), f.typ_map().table().to_vec()))
            .collect();
        got.sort();
        let mut expected = common::infomorphisms(&a, &b);
        expected.sort();
        assert_eq!(got, expected);

        let e = exponent(&a, &b).unwrap();
        let ta = a.types().len();
        for (k, f) in e.infomorphisms.iter().enumerate() {
            for x in 0..b.instances().len() {
                for y in 0..ta {
                    let expected = a.holds(f.inst_map().apply(x), y);
                    assert_eq!(e.classification.holds(k, x * ta + y), expected);
                }
            }
        }
        let product = multiply(&a, &b).unwrap();
        assert_eq!(product.instances().len(), a.instances().len() * b.instances().len());
        assert_eq!(product.types().len(), common::infomorphisms(&a.transpose(), &b).len());
    }
}

#[test]
fn order_classifications_derive_bounds() {
    let mut rng = rng(5);
    for _ in 0..100 {
        let n = rng.gen_range(0..=4);
        let pairs: Vec<_> = (0..n).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let p = Preorder::generated(&numbered("p", n), pairs).unwrap();
        let derived = order_as_classification(&p).derivation().unwrap();
        let bounds = bounds_adjunction(&p).unwrap();
        assert_eq!(derived.left().table(), bounds.left().table());
        assert_eq!(derived.right().table(), bounds.right().table());
    }
}

#[test]
fn bounds_of_complete_lattices_factor_through_themselves() {
    let diamond = Preorder::generated(&numbered("d", 4), [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    for p in [Preorder::chain(1), Preorder::chain(3), diamond, contranominal_order(3)] {
        let polar = polar_factorize(&bounds_adjunction(&p).unwrap()).unwrap();
        assert!(order_isomorphism(polar.axis(), &p).unwrap().is_some());
    }
}

/// Subsets of an `n`-set under inclusion.
fn contranominal_order(n: usize) -> Preorder {
    let size = 1usize << n;
    let pairs = (0..size).flat_map(|x| (0..size).filter(move |y| x & !y == 0).map(move |y| (x, y)));
    Preorder::generated(&numbered("s", size), pairs).unwrap()
}

#[test]
fn sentence_enumeration_covers_every_truth_table() {
    for n in 0..=3 {
        for depth in 0..=3 {
            let got: std::collections::BTreeSet<u64> =
                enumerate_sentences(n, depth).unwrap().iter().map(|s| s.truth_table(n)).collect();
            assert_eq!(got, truth_tables(n, depth), "n={n} depth={depth}");
            assert_eq!(got.len(), enumerate_sentences(n, depth).unwrap().len());
        }
    }
    assert_eq!(enumerate_sentences(2, 3).unwrap().len(), 16);
}

#[test]
fn inclusion_reduct_against_truth_tables() {
    let s1 = Signature::new(["q"]).unwrap();
    let s2 = Signature::new(["p", "q"]).unwrap();
    let sigma = SignatureMorphism::inclusion(&s1, &s2).unwrap();
    let q = Theory::from_axioms(&s1, &[Sentence::var(0)]).unwrap();
    let moved = transport(&sigma, &q).unwrap();
    // Valuations of {p, q} by bitmask with q at bit 1.
    let expected: Vec<u64> = (0..4).filter(|m| m & 0b10 != 0).collect();
    assert_eq!(moved.masks(), expected);
}

#[test]
fn fibers_are_dual_to_signature_concept_lattices() {
    for (n, size) in [(0, 2), (1, 4), (2, 16), (3, 256)] {
        let sig = Signature::new((0..n).map(|i| format!("v{i}"))).unwrap();
        let fiber = theory_fiber(&sig).unwrap();
        assert_eq!(fiber.len(), size);
        assert!(fiber.order.is_complete_lattice());
        if n > 2 {
            continue;
        }
        let c = classification_of_signature(&PropositionalLogic, &sig, 3).unwrap();
        let l = concept_lattice(&c).unwrap();
        assert_eq!(l.len(), size);
        let index: Vec<usize> = l.concepts().iter().map(|c| c.extent.mask() as usize).collect();
        for p in 0..l.len() {
            for q in 0..l.len() {
                assert_eq!(l.lattice().leq(p, q), fiber.order.leq(index[q], index[p]));
            }
        }
        // Complementing extents turns the antitone bijection into an isomorphism.
        let full = (1usize << (1 << n)) - 1;
        let forced: Vec<_> = index.iter().map(|&e| Some(full & !e)).collect();
        assert_eq!(isomorphisms(l.lattice(), &fiber.order, &forced, 1).unwrap().len(), 1);
        if l.len() <= MAX_SEARCH {
            assert!(order_isomorphism(l.lattice(), &fiber.order).unwrap().is_some());
        }
    }
}

/// Models of the pushout signature whose restrictions lie in both theories.
fn merged_oracle(inl: &[usize], inr: &[usize], t1: &[u64], t2: &[u64], np: usize) -> Vec<u64> {
    let restrict = |m: u64, map: &[usize]| map.iter().enumerate().fold(0u64, |acc, (v, &w)| acc | (m >> w & 1) << v);
    (0..1u64 << np)
        .filter(|&m| t1.contains(&restrict(m, inl)) && t2.contains(&restrict(m, inr)))
        .collect()
}

#[test]
fn merges_match_model_intersection() {
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
        &Theory::from_masks(&p, [1]).unwrap(),
        &Theory::from_masks(&r, [1]).unwrap(),
    )
    .unwrap();
    assert_eq!(m.pushout.signature.vars().labels(), ["L.p", "R.r"]);
    assert_eq!(m.theory.masks(), vec![0b11]);

    let mut rng = rng(6);
    for _ in 0..60 {
        let sig = |prefix: &str, n| Signature::from_vars(numbered(prefix, n));
        let (n0, n1, n2) = (rng.gen_range(0..=2), rng.gen_range(1..=2), rng.gen_range(1..=3));
        let (s0, s1, s2) = (sig("b", n0), sig("l", n1), sig("r", n2));
        let left = SignatureMorphism::from_table(&s0, &s1, (0..n0).map(|_| rng.gen_range(0..n1)).collect()).unwrap();
        let right = SignatureMorphism::from_table(&s0, &s2, (0..n0).map(|_| rng.gen_range(0..n2)).collect()).unwrap();
        let span = Span::new(left, right).unwrap();
        let t1: Vec<u64> = (0..1u64 << n1).filter(|_| rng.gen_bool(0.6)).collect();
        let t2: Vec<u64> = (0..1u64 << n2).filter(|_| rng.gen_bool(0.6)).collect();
        let m = merge_theories(
            &span,
            &Theory::from_masks(&s1, t1.clone()).unwrap(),
            &Theory::from_masks(&s2, t2.clone()).unwrap(),
        )
        .unwrap();
        let p = &m.pushout;
        let np = p.signature.len();
        let expected = merged_oracle(p.inl.map().table(), p.inr.map().table(), &t1, &t2, np);
        assert_eq!(m.theory.masks(), expected);
        assert_eq!(m.inconsistent, expected.is_empty());
        assert!(verify_pushout(&span, p, 3).unwrap().passed());
    }
}

#[test]
fn three_signature_diagram_obeys_category_laws() {
    let a = Signature::new(["p"]).unwrap();
    let b = Signature::new(["p", "q"]).unwrap();
    let c = Signature::new(["p", "q", "r"]).unwrap();
    let ab = SignatureMorphism::inclusion(&a, &b).unwrap();
    let bc = SignatureMorphism::inclusion(&b, &c).unwrap();
    let cat = flatten(&[a, b, c], &[(0, 1, ab), (1, 2, bc)]).unwrap();
    assert!(cat.report.passed(), "{:?}", cat.report.failures.first());
    assert!(cat.report.triples > 0);
    // The composite inclusion was added by the closure.
    assert_eq!(cat.morphisms.len(), 6);
}

#[test]
fn diagonals_are_the_unique_mediators() {
    let mut rng = rng(7);
    let mut squares = 0;
    while squares < 40 {
        let a = small_context(&mut rng, 2, 2);
        let b = small_context(&mut rng, 2, 2);
        let maps = infomorphisms(&a, &b).unwrap();
        for f in maps.iter().take(3) {
            let sq = infomorphism_square(f);
            if sq.e.target().len() > 4 || sq.m.source().len() > 4 {
                continue;
            }
            let d = diagonalize(&sq.e, &sq.s, &sq.r, &sq.m).unwrap();
            assert_eq!(mediating_adjunctions(&sq.e, &sq.s, &sq.r, &sq.m, 4).unwrap(), vec![d.clone()]);
            let conn = concept_morphism_of(f).unwrap();
            let (lb, la) = (concept_lattice(&b).unwrap(), concept_lattice(&a).unwrap());
            let top = |i: usize| lb.concept_with_extent(&Subset::from_mask(b.instances(), sq.top_extents[i])).unwrap();
            let bottom = |i: usize| la.concept_with_extent(&Subset::from_mask(a.instances(), sq.bottom_extents[i])).unwrap();
            for i in 0..sq.top_extents.len() {
                assert_eq!(conn.connection().left().apply(top(i)), bottom(d.left().apply(i)));
            }
            for j in 0..sq.bottom_extents.len() {
                assert_eq!(conn.connection().right().apply(bottom(j)), top(d.right().apply(j)));
            }
            squares += 1;
        }
    }
}

#[test]
fn identity_squares_on_chains() {
    for n in 1..=4 {
        let polar = polar_factorize(&bounds_adjunction(&Preorder::chain(n)).unwrap()).unwrap();
        let (e, m) = (polar.extent_reflection(), polar.intent_coreflection());
        let id = Adjunction::identity(e.target());
        let d = diagonalize(e, m, e, m).unwrap();
        assert_eq!(d, id);
        assert_eq!(mediating_adjunctions(e, m, e, m, 4).unwrap(), vec![id]);
    }
}
