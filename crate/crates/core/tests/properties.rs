//! Algebraic laws as property tests over small random structures.

mod common;

use common::*;
use conceptua::bits::Bits;
use conceptua::clg::{classification_of, concept_lattice, concept_morphism_of, lattice_roundtrip_iso};
use conceptua::clsn::{check_infomorphism, infomorphisms, order_as_classification, Classification, Infomorphism};
use conceptua::finrel::{FinFunction, FinSet, Relation, Subset};
use conceptua::formats::{parse_csv, parse_cxt, parse_json, write_csv, write_cxt, write_json};
use conceptua::galois::{
    bounds_adjunction, check_adjunction, factorization_equivalence_check, lattice_through_reflection,
    polar_factorize,
};
use conceptua::institution::{
    check_satisfaction_condition, inverse_transport, pushout, theory_fiber, transport, transport_adjunction,
    verify_pushout, Institution, PropositionalLogic, Sentence, Signature, SignatureMorphism, Span, Theory,
};
use conceptua::order::{bimodule_of_map, equalizer, product, quotient, Direction, MonotoneMap, Preorder};
use proptest::collection::vec;
use proptest::prelude::*;

fn cells(n: usize) -> impl Strategy<Value = Vec<bool>> {
    vec(any::<bool>(), n)
}

fn relation_on(a: &FinSet, b: &FinSet, cells: &[bool]) -> Relation {
    Relation::from_fn(a, b, |i, j| cells[i * b.len() + j])
}

/// Carrier sizes plus enough cells for `k` relations between any pair of them.
fn shapes(k: usize, max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<Vec<bool>>)> {
    vec(0..=max, 4).prop_flat_map(move |sizes| {
        let n = max * max;
        (Just(sizes), vec(cells(n), k))
    })
}

fn sets(sizes: &[usize]) -> Vec<FinSet> {
    sizes.iter().enumerate().map(|(i, &n)| numbered(&format!("s{i}."), n)).collect()
}

fn context_strategy(max_g: usize, max_m: usize) -> impl Strategy<Value = Classification> {
    (0..=max_g, 0..=max_m).prop_flat_map(|(g, m)| {
        cells(g * m).prop_map(move |c| Classification::from_relation(relation_on(&numbered("g", g), &numbered("m", m), &c)))
    })
}

fn preorder_strategy(max: usize) -> impl Strategy<Value = Preorder> {
    (0..=max).prop_flat_map(|n| {
        cells(n * n).prop_map(move |c| {
            let pairs = (0..n * n).filter(|&k| c[k]).map(|k| (k / n, k % n));
            Preorder::generated(&numbered("p", n), pairs).unwrap()
        })
    })
}

fn subset_of(carrier: &FinSet, mask: u64) -> Subset {
    let n = carrier.len();
    Subset::from_mask(carrier, if n == 0 { 0 } else { mask & ((1u64 << n) - 1) })
}

/// Every monotone map `p → q`, by brute force over tables.
fn monotone_maps(p: &Preorder, q: &Preorder) -> Vec<MonotoneMap> {
    tables(p.len(), q.len())
        .into_iter()
        .filter_map(|t| MonotoneMap::new(p, q, t).ok())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn residuals_are_adjoint_to_composition((sizes, c) in shapes(3, 4)) {
        let s = sets(&sizes);
        let r = relation_on(&s[0], &s[1], &c[0]);
        let x = relation_on(&s[1], &s[2], &c[1]);
        let t = relation_on(&s[0], &s[2], &c[2]);
        let composed_in_t = r.compose(&x).unwrap().is_subset(&t).unwrap();
        prop_assert_eq!(composed_in_t, x.is_subset(&r.residuate_left(&t).unwrap()).unwrap());
        prop_assert_eq!(composed_in_t, r.is_subset(&x.residuate_right(&t).unwrap()).unwrap());
    }

    #[test]
    fn residuation_preserves_composition((sizes, c) in shapes(3, 3)) {
        let s = sets(&sizes);
        let (r1, r2, t) = (
            relation_on(&s[0], &s[1], &c[0]),
            relation_on(&s[1], &s[2], &c[1]),
            relation_on(&s[0], &s[3], &c[2]),
        );
        prop_assert_eq!(
            r1.compose(&r2).unwrap().residuate_left(&t).unwrap(),
            r2.residuate_left(&r1.residuate_left(&t).unwrap()).unwrap()
        );
        let (s1, s2, u) = (
            relation_on(&s[1], &s[2], &c[0]),
            relation_on(&s[2], &s[3], &c[1]),
            relation_on(&s[0], &s[3], &c[2]),
        );
        prop_assert_eq!(
            s1.compose(&s2).unwrap().residuate_right(&u).unwrap(),
            s1.residuate_right(&s2.residuate_right(&u).unwrap()).unwrap()
        );
    }

    #[test]
    fn residuals_associate((sizes, c) in shapes(3, 4)) {
        let s = sets(&sizes);
        let r = relation_on(&s[0], &s[1], &c[0]);
        let t = relation_on(&s[0], &s[3], &c[1]);
        let x = relation_on(&s[2], &s[3], &c[2]);
        let lhs = x.residuate_right(&r.residuate_left(&t).unwrap()).unwrap();
        let rhs = r.residuate_left(&x.residuate_right(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn functions_residuate_by_composition(
        (sizes, c) in shapes(2, 4),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let s = sets(&sizes);
        prop_assume!(s[1].len() > 0);
        let mut rng = rng(seed);
        let f = FinFunction::new(&s[0], &s[1], (0..s[0].len()).map(|_| rng.gen_range(0..s[1].len())).collect()).unwrap();
        let r = relation_on(&s[1], &s[2], &c[0]);
        prop_assert_eq!(
            f.reverse_relation().residuate_left(&r).unwrap(),
            f.forward_relation().compose(&r).unwrap()
        );
        let g = FinFunction::new(&s[2], &s[1], (0..s[2].len()).map(|_| rng.gen_range(0..s[1].len())).collect()).unwrap();
        let u = relation_on(&s[3], &s[1], &c[1]);
        prop_assert_eq!(
            g.forward_relation().residuate_right(&u).unwrap(),
            u.compose(&g.reverse_relation()).unwrap()
        );
    }

    #[test]
    fn derivations_form_a_closure(a in context_strategy(5, 5), mask in any::<u64>()) {
        let r = a.incidence();
        let x = subset_of(a.instances(), mask);
        let up = r.derive_forward(&x).unwrap();
        let closed = r.derive_reverse(&up).unwrap();
        prop_assert!(x.is_subset(&closed).unwrap());
        prop_assert_eq!(r.derive_forward(&closed).unwrap(), up);
    }

    #[test]
    fn image_triple_is_adjoint(
        n in 0..=4usize,
        m in 1..=4usize,
        table in vec(0..4usize, 4),
        xm in any::<u64>(),
        ym in any::<u64>(),
    ) {
        let (a, b) = (numbered("a", n), numbered("b", m));
        let f = FinFunction::new(&a, &b, table[..n].iter().map(|&v| v % m).collect()).unwrap();
        let (x, y) = (subset_of(&a, xm), subset_of(&b, ym));
        prop_assert_eq!(
            f.existential(&x).unwrap().is_subset(&y).unwrap(),
            x.is_subset(&f.inverse(&y).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.inverse(&y).unwrap().is_subset(&x).unwrap(),
            y.is_subset(&f.universal(&x).unwrap()).unwrap()
        );
    }

    #[test]
    fn power_sets_are_heyting(n in 0..=6usize, masks in vec(any::<u64>(), 3)) {
        let a = numbered("a", n);
        let (x, y, z) = (subset_of(&a, masks[0]), subset_of(&a, masks[1]), subset_of(&a, masks[2]));
        let xy = x.implies(&y).unwrap();
        prop_assert_eq!(
            z.is_subset(&xy).unwrap(),
            z.intersection(&x).unwrap().is_subset(&y).unwrap()
        );
        prop_assert_eq!(
            x.intersection(&y.union(&z).unwrap()).unwrap(),
            x.intersection(&y).unwrap().union(&x.intersection(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.implies(&Subset::empty(&a)).unwrap(), x.complement());
    }

    #[test]
    fn quotients_are_posets_reflecting_order(p in preorder_strategy(5)) {
        let q = quotient(&p);
        prop_assert!(q.order.is_antisymmetric());
        prop_assert!(q.canon.func().is_surjective());
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), q.order.leq(q.canon.apply(a), q.canon.apply(b)));
            }
        }
    }

    #[test]
    fn products_mediate_uniquely(
        p in preorder_strategy(2),
        q in preorder_strategy(2),
        r in preorder_strategy(2),
    ) {
        let prod = product(&p, &q);
        let candidates = monotone_maps(&r, &prod.order);
        for f in monotone_maps(&r, &p) {
            for g in monotone_maps(&r, &q) {
                let mediators: Vec<_> = candidates
                    .iter()
                    .filter(|h| h.then(&prod.first).unwrap() == f && h.then(&prod.second).unwrap() == g)
                    .collect();
                prop_assert_eq!(mediators.len(), 1);
                prop_assert_eq!(mediators[0], &prod.pair(&f, &g).unwrap());
            }
        }
    }

    #[test]
    fn equalizers_mediate_uniquely(
        p in preorder_strategy(3),
        q in preorder_strategy(2),
        r in preorder_strategy(2),
        picks in vec(any::<prop::sample::Index>(), 2),
    ) {
        let maps = monotone_maps(&p, &q);
        prop_assume!(!maps.is_empty());
        let (f, g) = (picks[0].get(&maps), picks[1].get(&maps));
        let eq = equalizer(f, g).unwrap();
        let candidates = monotone_maps(&r, &eq.order);
        for h in monotone_maps(&r, &p) {
            if h.then(f).unwrap() != h.then(g).unwrap() {
                prop_assert!(eq.factor(&h).is_err());
                continue;
            }
            let mediators: Vec<_> = candidates.iter().filter(|k| k.then(&eq.inclusion).unwrap() == h).collect();
            prop_assert_eq!(mediators.len(), 1);
            prop_assert_eq!(mediators[0], &eq.factor(&h).unwrap());
        }
    }

    #[test]
    fn map_bimodules_are_closed(
        p in preorder_strategy(3),
        q in preorder_strategy(3),
        pick in any::<prop::sample::Index>(),
    ) {
        let maps = monotone_maps(&p, &q);
        prop_assume!(!maps.is_empty());
        let f = pick.get(&maps);
        for direction in [Direction::Forward, Direction::Reverse] {
            let m = bimodule_of_map(f, direction);
            let rel = m.relation();
            let (before, after) = match direction {
                Direction::Forward => (p.relation(), q.relation()),
                Direction::Reverse => (q.relation(), p.relation()),
            };
            prop_assert!(before.compose(rel).unwrap().is_subset(rel).unwrap());
            prop_assert!(rel.compose(&after).unwrap().is_subset(rel).unwrap());
            for a in 0..p.len() {
                for b in 0..q.len() {
                    match direction {
                        Direction::Forward => prop_assert_eq!(rel.get(a, b), q.leq(f.apply(a), b)),
                        Direction::Reverse => prop_assert_eq!(rel.get(b, a), q.leq(b, f.apply(a))),
                    }
                }
            }
        }
    }

    #[test]
    fn adjunctions_satisfy_triangle_identities(a in context_strategy(4, 4), p in preorder_strategy(4)) {
        let mut adjunctions = vec![a.derivation().unwrap()];
        if let Ok(poset) = p.clone().into_poset() {
            adjunctions.push(bounds_adjunction(poset.preorder()).unwrap());
        }
        for g in adjunctions {
            let (l, r) = (g.left(), g.right());
            prop_assert_eq!(&l.then(r).unwrap().then(l).unwrap(), l);
            prop_assert_eq!(&r.then(l).unwrap().then(r).unwrap(), r);
        }
    }

    #[test]
    fn polar_parts_are_isotonic(a in context_strategy(4, 4)) {
        let polar = polar_factorize(&a.derivation().unwrap()).unwrap();
        prop_assert!(polar.extent_reflection().is_reflection());
        prop_assert!(polar.extent_reflection().right().is_isotonic());
        prop_assert!(polar.intent_coreflection().is_coreflection());
        prop_assert!(polar.intent_coreflection().left().is_isotonic());
        prop_assert_eq!(&polar.compose(), polar.original());
        prop_assert!(factorization_equivalence_check(&[a.derivation().unwrap()]).passed());
    }

    #[test]
    fn reflections_carry_lattice_structure(a in context_strategy(5, 5), mask in any::<u64>()) {
        let l = concept_lattice(&a).unwrap();
        let ys = Bits::from_indices(l.len(), (0..l.len()).filter(|&i| mask >> (i % 64) & 1 == 1));
        let (join, meet) = lattice_through_reflection(l.extent_reflection(), &ys).unwrap();
        prop_assert_eq!(Some(join), l.lattice().least_upper_bound(&ys));
        prop_assert_eq!(Some(meet), l.lattice().greatest_lower_bound(&ys));
    }

    #[test]
    fn order_classifications_derive_bounds(p in preorder_strategy(4)) {
        let derived = order_as_classification(&p).derivation().unwrap();
        prop_assert_eq!(derived, bounds_adjunction(&p).unwrap());
    }

    #[test]
    fn infomorphisms_form_a_category(
        a in context_strategy(2, 2),
        b in context_strategy(2, 2),
        c in context_strategy(2, 2),
        picks in vec(any::<prop::sample::Index>(), 3),
    ) {
        let ab = infomorphisms(&a, &b).unwrap();
        let bc = infomorphisms(&b, &c).unwrap();
        let cc = infomorphisms(&c, &c).unwrap();
        prop_assume!(!ab.is_empty() && !bc.is_empty() && !cc.is_empty());
        let (f, g, h) = (picks[0].get(&ab), picks[1].get(&bc), picks[2].get(&cc));
        let fg = f.compose(g).unwrap();
        let report = check_infomorphism(&fg);
        prop_assert!(report.valid() && report.consistent() && report.relations);
        prop_assert_eq!(fg.compose(h).unwrap(), f.compose(&g.compose(h).unwrap()).unwrap());
        prop_assert_eq!(&Infomorphism::identity(&a).compose(f).unwrap(), f);
        prop_assert_eq!(&f.compose(&Infomorphism::identity(&b)).unwrap(), f);

        let composite = concept_morphism_of(&fg).unwrap();
        let chained = concept_morphism_of(f).unwrap().compose(&concept_morphism_of(g).unwrap()).unwrap();
        prop_assert!(composite.same_components(&chained));
    }

    #[test]
    fn concept_lattices_round_trip(a in context_strategy(6, 6)) {
        let l = concept_lattice(&a).unwrap();
        prop_assert_eq!(classification_of(&l), a.clone());
        prop_assert!(lattice_roundtrip_iso(&l).is_ok());
        let r = a.incidence();
        for c in l.concepts() {
            prop_assert_eq!(&r.derive_forward(&c.extent).unwrap(), &c.intent);
            prop_assert_eq!(&r.derive_reverse(&c.intent).unwrap(), &c.extent);
        }
        for p in l.concepts() {
            for q in l.concepts() {
                let meet = p.extent.intersection(&q.extent).unwrap();
                prop_assert!(l.concept_with_extent(&meet).is_some());
                let common = p.intent.intersection(&q.intent).unwrap();
                prop_assert!(l.concept_with_intent(&common).is_some());
            }
        }
        for i in 0..l.len() {
            for j in 0..l.len() {
                if l.lattice().leq(i, j) {
                    prop_assert!(l.concept(i).extent.is_subset(&l.concept(j).extent).unwrap());
                    prop_assert!(l.concept(j).intent.is_subset(&l.concept(i).intent).unwrap());
                }
            }
        }
    }

    #[test]
    fn satisfaction_is_invariant_under_translation(
        n1 in 0..=3usize,
        n2 in 1..=3usize,
        table in vec(0..3usize, 3),
    ) {
        let (s1, s2) = (Signature::from_vars(numbered("u", n1)), Signature::from_vars(numbered("v", n2)));
        let sigma = SignatureMorphism::from_table(&s1, &s2, table[..n1].iter().map(|&v| v % n2).collect()).unwrap();
        let report = check_satisfaction_condition(&PropositionalLogic, &sigma, 2).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn translation_and_reduct_are_functorial(
        sizes in vec(1..=3usize, 3),
        tables in vec(vec(0..3usize, 3), 2),
        depth in 0..=2usize,
    ) {
        let sigs: Vec<_> = sizes.iter().enumerate().map(|(i, &n)| Signature::from_vars(numbered(&format!("x{i}."), n))).collect();
        let morphism = |k: usize| {
            let table = tables[k][..sizes[k]].iter().map(|&v| v % sizes[k + 1]).collect();
            SignatureMorphism::from_table(&sigs[k], &sigs[k + 1], table).unwrap()
        };
        let (sigma, tau) = (morphism(0), morphism(1));
        let both = sigma.then(&tau).unwrap();
        let logic = PropositionalLogic;
        for phi in logic.sentences(&sigs[0], depth).unwrap() {
            let stepwise = logic.translate(&tau, &logic.translate(&sigma, &phi));
            prop_assert_eq!(logic.translate(&both, &phi).truth_table(sizes[2]), stepwise.truth_table(sizes[2]));
        }
        for m in logic.models(&sigs[2]).unwrap() {
            prop_assert_eq!(logic.reduct(&both, &m), logic.reduct(&sigma, &logic.reduct(&tau, &m)));
        }
        let id = SignatureMorphism::identity(&sigs[0]);
        for phi in logic.sentences(&sigs[0], depth).unwrap() {
            prop_assert_eq!(logic.translate(&id, &phi).truth_table(sizes[0]), phi.truth_table(sizes[0]));
        }
    }

    #[test]
    fn transports_are_adjoint(
        n1 in 0..=2usize,
        n2 in 1..=2usize,
        table in vec(0..2usize, 2),
        masks in vec(any::<u64>(), 2),
    ) {
        let (s1, s2) = (Signature::from_vars(numbered("u", n1)), Signature::from_vars(numbered("v", n2)));
        let sigma = SignatureMorphism::from_table(&s1, &s2, table[..n1].iter().map(|&v| v % n2).collect()).unwrap();
        let adj = transport_adjunction(&sigma).unwrap();
        prop_assert!(check_adjunction(adj.left(), adj.right()).is_ok());
        let (f1, f2) = (theory_fiber(&s1).unwrap(), theory_fiber(&s2).unwrap());
        prop_assert!(f1.order.is_complete_lattice() && f2.order.is_complete_lattice());
        let theory = |sig: &Signature, mask: u64| {
            let size = 1usize << sig.len();
            Theory::from_masks(sig, (0..size as u64).filter(|&m| mask >> m & 1 == 1)).unwrap()
        };
        let (t1, t2) = (theory(&s1, masks[0]), theory(&s2, masks[1]));
        let (up, down) = (transport(&sigma, &t1).unwrap(), inverse_transport(&sigma, &t2).unwrap());
        prop_assert_eq!(up.leq(&t2), t1.leq(&down));
        prop_assert_eq!(f2.index(&up).unwrap(), adj.left().apply(f1.index(&t1).unwrap()));
        prop_assert_eq!(f1.index(&down).unwrap(), adj.right().apply(f2.index(&t2).unwrap()));
    }

    #[test]
    fn pushouts_commute_and_are_universal(
        n0 in 0..=2usize,
        n1 in 1..=3usize,
        n2 in 1..=3usize,
        tables in vec(vec(0..3usize, 2), 2),
    ) {
        let (s0, s1, s2) = (
            Signature::from_vars(numbered("b", n0)),
            Signature::from_vars(numbered("l", n1)),
            Signature::from_vars(numbered("r", n2)),
        );
        let left = SignatureMorphism::from_table(&s0, &s1, tables[0][..n0].iter().map(|&v| v % n1).collect()).unwrap();
        let right = SignatureMorphism::from_table(&s0, &s2, tables[1][..n0].iter().map(|&v| v % n2).collect()).unwrap();
        let span = Span::new(left.clone(), right.clone()).unwrap();
        let p = pushout(&span).unwrap();
        prop_assert_eq!(left.then(&p.inl).unwrap(), right.then(&p.inr).unwrap());
        prop_assert!(verify_pushout(&span, &p, 2).unwrap().passed());
    }

    #[test]
    fn context_formats_round_trip(a in context_strategy(5, 5)) {
        let cxt = write_cxt(&a, None);
        let parsed = parse_cxt(&cxt).unwrap();
        prop_assert_eq!(&parsed.classification, &a);
        prop_assert_eq!(write_cxt(&parsed.classification, None), cxt);
        let named = write_cxt(&a, Some("sample"));
        let named = parse_cxt(&named).unwrap();
        prop_assert_eq!(named.name.as_deref(), Some("sample"));
        prop_assert_eq!(&parse_json(&write_json(&a)).unwrap(), &a);
        if a.types().len() > 0 {
            prop_assert_eq!(&parse_csv(&write_csv(&a)).unwrap(), &a);
        }
    }

    #[test]
    fn sentences_round_trip_through_text(depth in 0..=2usize, pick in any::<prop::sample::Index>()) {
        let sig = Signature::new(["p", "q"]).unwrap();
        let all = PropositionalLogic.sentences(&sig, depth).unwrap();
        let phi: &Sentence = pick.get(&all);
        let text = phi.display(&sig).to_string();
        prop_assert_eq!(&Sentence::parse(&text, &sig).unwrap(), phi);
    }
}
