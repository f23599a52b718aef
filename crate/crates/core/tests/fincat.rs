mod common;

use std::sync::Arc;

use common::NODES;
use proptest::prelude::*;
use relmonad::fincat::{
    all_functors, enumerate_nat_transformations, is_fully_faithful, is_strict_isomorphism, presheaf_morphisms,
    pullback_category, restrict_distributor, Cone, Distributor, FinCat, Functor, HetElement, Mor,
};
use relmonad::loosemonad::{collapse, LooseMonad};
use relmonad::nervepullback::nerve_presheaf;
use relmonad::report::Item;
use relmonad::zoo;

const DIAMOND: usize = 0;
const LEFT: usize = 1;
const RIGHT: usize = 2;
const W: Mor = 3;
const V: Mor = 4;

#[test]
fn terminal_is_a_category() {
    let c = zoo::terminal();
    assert_eq!(c.size(), (1, 1));
    assert!(c.validate().passed());
}

#[test]
fn span_is_a_category() {
    let v = zoo::span();
    assert_eq!(v.size(), (3, 5));
    assert!(v.validate().passed());
    assert_eq!(v.hom(DIAMOND, LEFT), &[W]);
    assert_eq!(v.hom(DIAMOND, RIGHT), &[V]);
    assert!(v.hom(LEFT, RIGHT).is_empty());
}

#[test]
fn redirected_unit_fails_the_left_unit_law() {
    let r = zoo::broken_unit_span().validate();
    let id_left = zoo::span().identity(LEFT);
    let v = r.first("left-unit").expect("left unit violated");
    assert_eq!(v.witness, vec![Item::Mor(id_left), Item::Mor(W)]);
}

#[test]
fn broken_monoid_fails_associativity() {
    let r = zoo::broken_associativity_monoid().validate();
    assert!(r.violates("associativity"));
    assert!(r.violations.iter().all(|v| v.witness.len() == 3));
}

#[test]
fn functor_examples() {
    let v = zoo::span();
    assert!(Functor::identity(&v).validate().passed());
    let j = zoo::span_root();
    assert!(j.validate().passed());
    assert_eq!(j.ob(0), DIAMOND);
    let bad = Functor::new(zoo::terminal(), v, vec![DIAMOND], vec![W]).unwrap();
    assert!(bad.validate().violates("preserves-identity"));
}

#[test]
fn hom_distributor_of_terminal() {
    let h = Distributor::hom(&zoo::terminal());
    assert_eq!(h.len(), 1);
    assert!(h.validate().passed());
}

#[test]
fn conjoint_of_the_span_root() {
    let j = zoo::span_root();
    let c = Distributor::conjoint(&j);
    assert!(c.validate().passed());
    let v = zoo::span();
    for e in v.objects() {
        let names: Vec<&str> = c.het(0, e).map(|h| c.element(h).name.as_str()).collect();
        let expected: Vec<&str> = v.hom(DIAMOND, e).iter().map(|&m| v.morphism(m).name.as_str()).collect();
        assert_eq!(names, expected);
    }
    for h in 0..c.len() {
        let e = c.element(h).co;
        for &g in v.morphisms_from(e).collect::<Vec<_>>().iter() {
            let m = v.hom(DIAMOND, e)[h - c.het(0, e).start];
            let composite = v.compose(m, g);
            let target = c.post(h, g);
            assert_eq!(c.element(target).name, v.morphism(composite).name);
        }
    }
}

#[test]
fn broken_right_action_has_a_triple_witness() {
    let r = zoo::broken_post_associativity().validate();
    let v = r.first("post-associativity").expect("post action is not associative");
    assert_eq!(v.witness.len(), 3);
}

#[test]
fn nat_examples() {
    let one = zoo::terminal();
    let id = Functor::identity(&one);
    assert_eq!(enumerate_nat_transformations(&id, &id, NODES).unwrap().len(), 1);

    let two = zoo::arrow();
    let at = |o| Functor::constant(&two, &two, o);
    assert_eq!(enumerate_nat_transformations(&at(0), &at(1), NODES).unwrap().len(), 1);
    assert_eq!(enumerate_nat_transformations(&at(1), &at(0), NODES).unwrap().len(), 0);

    assert!(zoo::broken_naturality().validate().violates("naturality"));
}

#[test]
fn nerves_of_the_span_legs_have_one_transformation_but_no_morphism() {
    let j = zoo::span_root();
    let (nl, nr) = (nerve_presheaf(&j, LEFT), nerve_presheaf(&j, RIGHT));
    assert_eq!(nl.value(0), &["w".to_string()]);
    assert_eq!(nr.value(0), &["v".to_string()]);
    assert_eq!(presheaf_morphisms(&nl, &nr, NODES).unwrap().len(), 1);
    assert!(zoo::span().hom(LEFT, RIGHT).is_empty());
}

#[test]
fn opposite_examples() {
    let one = zoo::terminal();
    assert_eq!(one.opposite(), *one);
    let cospan = zoo::span().opposite();
    assert!(cospan.validate().passed());
    assert_eq!(cospan.hom(LEFT, DIAMOND).len(), 1);
    assert_eq!(cospan.hom(RIGHT, DIAMOND).len(), 1);
    assert!(cospan.hom(DIAMOND, LEFT).is_empty());
}

#[test]
fn pullback_examples() {
    let v = zoo::span();
    let id = Functor::identity(&v);
    let pb = pullback_category(&id, &id).unwrap();
    assert!(is_strict_isomorphism(&pb.left));
    assert!(is_strict_isomorphism(&pb.right));

    let two = zoo::arrow();
    let pb = pullback_category(&Functor::point(&two, 0), &Functor::point(&two, 1)).unwrap();
    assert_eq!(pb.apex.size(), (0, 0));
}

#[test]
fn fully_faithful_examples() {
    assert!(is_fully_faithful(&Functor::identity(&zoo::span())));
    assert!(is_fully_faithful(&zoo::span_root()));
    let c = collapse(&z2_promonad()).unwrap();
    assert_eq!(c.category.size(), (1, 2));
    assert!(!is_fully_faithful(&c.projection));
}

#[test]
fn strict_isomorphism_of_identity() {
    assert!(is_strict_isomorphism(&Functor::identity(&zoo::powerset())));
    assert!(!is_strict_isomorphism(&zoo::span_root()));
}

#[test]
fn restriction_examples() {
    let v = zoo::span();
    let j = zoo::span_root();
    let hom = Distributor::hom(&v);
    let jj = restrict_distributor(&hom, &j, &j).unwrap();
    assert_eq!(jj.len(), 1);
    assert_eq!(jj.element(0).name, "id_◊");
    let t = Functor::point(&v, RIGHT);
    let jt = restrict_distributor(&hom, &j, &t).unwrap();
    assert_eq!(jt.len(), 1);
    assert_eq!(jt.element(0).name, "v");
}

/// `het = {1, s}` over the terminal category with `s · s = 1`.
pub fn z2_promonad() -> LooseMonad {
    let one = zoo::terminal();
    let el = |name: &str| HetElement {
        contra: 0,
        co: 0,
        name: name.into(),
    };
    let p = Distributor::new(one.clone(), one, vec![el("1"), el("s")], [(0, 0, 0), (0, 1, 1)], [(0, 0, 0), (1, 0, 1)])
        .unwrap();
    LooseMonad::new(p, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)], vec![0]).unwrap()
}

/// Component families by brute force, filtered by naturality.
fn nat_oracle(f: &Functor, g: &Functor) -> Vec<Vec<Mor>> {
    let (a, c) = (f.source(), f.target());
    let mut families: Vec<Vec<Mor>> = vec![Vec::new()];
    for x in a.objects() {
        families = families
            .into_iter()
            .flat_map(|fam| {
                c.hom(f.ob(x), g.ob(x)).iter().map(move |&m| {
                    let mut next = fam.clone();
                    next.push(m);
                    next
                })
            })
            .collect();
    }
    families
        .into_iter()
        .filter(|fam| {
            a.morphism_ids()
                .all(|m| c.compose(f.mor(m), fam[a.tgt(m)]) == c.compose(fam[a.src(m)], g.mor(m)))
        })
        .collect()
}

fn two_functors_into(e: Arc<FinCat>) -> impl Strategy<Value = (Functor, Functor)> {
    common::category(3, 3).prop_filter_map("no functors", move |a| {
        let all = all_functors(&a, &e, NODES, 64).ok()?;
        (!all.is_empty()).then(|| (all[0].clone(), all[all.len() - 1].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_categories_validate(c in common::category(4, 4)) {
        prop_assert!(c.validate().passed());
        for f in all_functors(&zoo::arrow(), &c, NODES, 256).unwrap() {
            prop_assert!(f.validate().passed());
        }
        prop_assert!(Distributor::hom(&c).validate().passed());
    }

    #[test]
    fn opposite_is_an_involution(c in common::category(4, 3)) {
        let op = c.opposite();
        prop_assert!(op.validate().passed());
        prop_assert_eq!(op.opposite(), (*c).clone());
        let hom = Distributor::hom(&c);
        prop_assert_eq!(hom.opposite().opposite(), hom);
        let id = Functor::identity(&c);
        prop_assert_eq!(id.opposite().opposite(), id);
    }

    #[test]
    fn nat_enumeration_matches_oracle((f, g) in common::category(3, 3).prop_flat_map(|e| two_functors_into(e))) {
        let found: Vec<Vec<Mor>> = enumerate_nat_transformations(&f, &g, NODES)
            .unwrap()
            .iter()
            .map(|n| n.components().to_vec())
            .collect();
        prop_assert_eq!(found, nat_oracle(&f, &g));
    }

    #[test]
    fn restriction_is_strict(
        (f, f2, g, g2) in common::category(3, 3)
            .prop_flat_map(|e| (common::functor_into(e.clone(), 2), common::functor_into(e, 2)))
            .prop_flat_map(|(f, g)| {
                let (fs, gs) = (f.source().clone(), g.source().clone());
                (Just(f), common::functor_into(fs, 2), Just(g), common::functor_into(gs, 2))
            })
    ) {
        let p = Distributor::hom(f.target());
        let once = restrict_distributor(&p, &f2.then(&f).unwrap(), &g2.then(&g).unwrap()).unwrap();
        let twice = restrict_distributor(&restrict_distributor(&p, &f, &g).unwrap(), &f2, &g2).unwrap();
        prop_assert!(once.validate().passed());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn pullback_mediators_are_unique(
        (f, g) in common::category(3, 3).prop_flat_map(|c| (common::functor_into(c.clone(), 3), common::functor_into(c, 3)))
    ) {
        let pb = pullback_category(&f, &g).unwrap();
        prop_assert!(pb.apex.validate().passed());
        let mut cones = vec![Cone { left: pb.left.clone(), right: pb.right.clone() }];
        for p in pb.apex.objects() {
            let point = Functor::point(&pb.apex, p);
            cones.push(Cone { left: point.then(&pb.left).unwrap(), right: point.then(&pb.right).unwrap() });
        }
        let cert = pb.check_universal(&cones, 2, NODES).unwrap();
        prop_assert!(cert.passed(), "{:?}", cert);
    }
}
