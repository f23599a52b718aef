mod common;

use common::NODES;
use proptest::prelude::*;
use relmonad::constructions::{
    algebras_on, build_kleisli, check_algebra, check_opalgebra, comparison_functor, enumerate_algebras, free_algebra,
    opalgebra_factorization, opalgebra_factorization_via_collapse, Algebra, Opalgebra,
};
use relmonad::fincat::{all_functors, is_strict_isomorphism, Functor, Mor, Obj};
use relmonad::nervepullback::is_dense;
use relmonad::relmonad::{carrier_functor, identity_monad, RelativeMonad};
use relmonad::{zoo, Caps};

fn caps() -> Caps {
    Caps::default()
}

/// Every table `g ↦ g^α` on carrier `c`, filtered by the two algebra laws.
fn algebra_oracle(t: &RelativeMonad, c: Obj) -> Vec<Algebra> {
    let (a, e, j) = (t.base(), t.ambient(), t.root());
    let slots: Vec<(Obj, Mor)> = a.objects().flat_map(|x| e.hom(j.ob(x), c).iter().map(move |&g| (x, g))).collect();
    let mut tables: Vec<Vec<Mor>> = vec![Vec::new()];
    for &(x, _) in &slots {
        tables = tables
            .into_iter()
            .flat_map(|tab| {
                e.hom(t.t(x), c).iter().map(move |&h| {
                    let mut next = tab.clone();
                    next.push(h);
                    next
                })
            })
            .collect();
    }
    let alpha = |tab: &[Mor], x: Obj, g: Mor| tab[slots.iter().position(|&s| s == (x, g)).unwrap()];
    tables
        .into_iter()
        .filter(|tab| {
            let unit = slots.iter().all(|&(x, g)| e.compose(t.eta(x), alpha(tab, x, g)) == g);
            let assoc = slots.iter().all(|&(y, g)| {
                let ga = alpha(tab, y, g);
                a.objects().all(|x| {
                    e.hom(j.ob(x), t.t(y))
                        .iter()
                        .all(|&f| alpha(tab, x, e.compose(f, ga)) == e.compose(t.extend(x, y, f), ga))
                })
            });
            unit && assoc
        })
        .map(|aop| Algebra { carrier: c, aop })
        .collect()
}

/// `(t, †)` into `E`.
fn carrier_opalgebra(t: &RelativeMonad) -> Opalgebra {
    let (tf, _) = carrier_functor(t).unwrap();
    Opalgebra::new(t, tf, t.extension_table().to_vec()).unwrap()
}

#[test]
fn kleisli_of_the_identity_monad_is_the_base() {
    let t = zoo::identity_monad_on_span();
    let kl = build_kleisli(&t).unwrap();
    assert!(kl.category.validate().passed());
    assert!(is_strict_isomorphism(&kl.free));
    assert!(is_strict_isomorphism(&kl.forget));
    assert!(kl.resolution.passed());
}

#[test]
fn kleisli_of_a_trivial_monad_on_a_fully_faithful_root_is_the_base() {
    let kl = build_kleisli(&zoo::fully_faithful_trivial_monad()).unwrap();
    assert!(is_strict_isomorphism(&kl.free));
}

#[test]
fn kleisli_of_the_span_monad_is_terminal() {
    let kl = build_kleisli(&zoo::span_monad()).unwrap();
    assert_eq!(kl.category.size(), (1, 1));
    assert_eq!(kl.category.morphism(0).name, "v");
    assert_eq!(kl.category.identity(0), 0);
    assert_eq!(kl.category.compose(0, 0), 0);
    assert_eq!(kl.forget.mor(0), zoo::span().identity(2));
}

#[test]
fn algebra_examples() {
    let t = zoo::span_monad();
    let alg = enumerate_algebras(&t, &caps()).unwrap();
    assert_eq!(alg.algebras.len(), 1);
    assert_eq!(alg.algebras[0].carrier, 2);
    assert!(alg.resolution.passed());

    let id = zoo::identity_monad_on_span();
    let alg = enumerate_algebras(&id, &caps()).unwrap();
    assert_eq!(alg.category.size(), zoo::span().size());
    assert!(is_strict_isomorphism(&alg.free));

    let tr = zoo::fully_faithful_trivial_monad();
    let alg = enumerate_algebras(&tr, &caps()).unwrap();
    assert!(is_strict_isomorphism(&alg.forget));
}

#[test]
fn comparison_examples() {
    let id = zoo::identity_monad_on_span();
    let kl = build_kleisli(&id).unwrap();
    let alg = enumerate_algebras(&id, &caps()).unwrap();
    let c = comparison_functor(&id, &kl, &alg, &caps()).unwrap();
    assert!(c.passed());
    assert!(is_strict_isomorphism(&c.functor));

    let t = zoo::span_monad();
    let kl = build_kleisli(&t).unwrap();
    let alg = enumerate_algebras(&t, &caps()).unwrap();
    let c = comparison_functor(&t, &kl, &alg, &caps()).unwrap();
    assert!(is_strict_isomorphism(&c.functor));
    assert!(c.triangles.passed());
    assert!(c.density.is_none());
}

#[test]
fn opalgebra_examples() {
    let t = zoo::span_monad();
    let kl = build_kleisli(&t).unwrap();
    let universal = Opalgebra::universal(&t, &kl.free).unwrap();
    let check = check_opalgebra(&t, &universal).unwrap();
    assert!(check.passed() && check.agree());
    let f = opalgebra_factorization(&t, &kl.free, &universal, &caps()).unwrap();
    assert!(f.unique());
    assert_eq!(f.functor, Functor::identity(&kl.category));

    let tf = carrier_opalgebra(&t);
    let check = check_opalgebra(&t, &tf).unwrap();
    assert!(check.passed() && check.agree());
    let f = opalgebra_factorization(&t, &kl.free, &tf, &caps()).unwrap();
    assert!(f.unique());
    assert_eq!(f.functor, kl.forget);
}

#[test]
fn opalgebra_breaking_the_unit_law_fails() {
    let t = zoo::enlarged_span_monad();
    let e = t.ambient();
    let idem = *e.hom(2, 2).iter().find(|&&m| m != e.identity(2)).unwrap();
    let good = carrier_opalgebra(&t);
    let bad = Opalgebra::new(&t, good.a.clone(), vec![idem]).unwrap();
    let check = check_opalgebra(&t, &bad).unwrap();
    let v = check.laws.first("opalgebra-unit").expect("unit law violated");
    assert!(!v.witness.is_empty());
    assert!(check.agree());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kleisli_homs_are_the_heteromorphisms(t in common::monad(4, 3)) {
        let kl = build_kleisli(&t).unwrap();
        let (e, j) = (t.ambient(), t.root());
        prop_assert!(kl.category.validate().passed());
        prop_assert!(kl.resolution.passed());
        for x in t.base().objects() {
            for y in t.base().objects() {
                let het = e.hom(j.ob(x), t.t(y));
                let hom = kl.category.hom(x, y);
                prop_assert_eq!(hom.len(), het.len());
                for (&k, &f) in hom.iter().zip(het) {
                    prop_assert_eq!(t.kleisli_index().entry(k), (x, y, f));
                    prop_assert_eq!(&kl.category.morphism(k).name, &e.morphism(f).name);
                }
            }
        }
        for (k, &(x, y, f)) in t.kleisli_index().entries().iter().enumerate() {
            for z in t.base().objects() {
                for k2 in t.kleisli_index().range(y, z) {
                    let composite = kl.category.compose(k, k2);
                    prop_assert_eq!(t.kleisli_index().entry(composite).2, e.compose(f, t.extend_at(k2)));
                }
            }
            prop_assert_eq!(kl.forget.mor(k), t.extend(x, y, f));
        }
    }

    #[test]
    fn algebra_enumeration_matches_oracle(t in common::monad(3, 3)) {
        for c in t.ambient().objects() {
            prop_assert_eq!(algebras_on(&t, c, &caps()).unwrap(), algebra_oracle(&t, c));
        }
    }

    #[test]
    fn free_algebras_are_algebras(t in common::monad(4, 3)) {
        let alg = enumerate_algebras(&t, &caps()).unwrap();
        prop_assert!(alg.category.validate().passed());
        prop_assert!(alg.free.validate().passed());
        prop_assert!(alg.forget.validate().passed());
        for x in t.base().objects() {
            let free = free_algebra(&t, x);
            prop_assert!(check_algebra(&t, &free).passed());
            prop_assert_eq!(alg.index_of(&free), Some(alg.free.ob(x)));
        }
        let mut sorted = alg.algebras.clone();
        sorted.sort();
        prop_assert_eq!(sorted, alg.algebras.clone());
    }

    #[test]
    fn comparison_is_fully_faithful_and_dense_for_dense_roots(t in common::monad(4, 3)) {
        let kl = build_kleisli(&t).unwrap();
        let alg = enumerate_algebras(&t, &caps()).unwrap();
        let c = comparison_functor(&t, &kl, &alg, &caps()).unwrap();
        prop_assert!(c.is_fully_faithful());
        prop_assert!(c.triangles.passed());
        let dense = is_dense(t.root(), &caps()).unwrap().dense;
        prop_assert_eq!(c.density.is_some(), dense);
        if let Some(d) = &c.density {
            prop_assert!(d.dense, "{:?}", d);
        }
    }

    #[test]
    fn opalgebra_factorizations_are_unique(t in common::monad(3, 3)) {
        let kl = build_kleisli(&t).unwrap();
        for o in [Opalgebra::universal(&t, &kl.free).unwrap(), carrier_opalgebra(&t)] {
            let check = check_opalgebra(&t, &o).unwrap();
            prop_assert!(check.passed() && check.agree());
            let f = opalgebra_factorization(&t, &kl.free, &o, &caps()).unwrap();
            prop_assert!(f.unique());
            let oracle: Vec<Functor> = all_functors(&kl.category, o.a.target(), NODES, 1 << 16)
                .unwrap()
                .into_iter()
                .filter(|h| kl.free.then(h).unwrap() == o.a && h.morphism_map() == o.oop.as_slice())
                .collect();
            prop_assert_eq!(&oracle, &vec![f.functor.clone()]);
            let via = opalgebra_factorization_via_collapse(&t, &o, &caps()).unwrap();
            prop_assert!(via.unique());
            prop_assert_eq!(via.functor.morphism_map(), f.functor.morphism_map());
        }
    }

    #[test]
    fn identity_monad_constructions_are_trivial(a in common::category(3, 3)) {
        let t = identity_monad(&a);
        let kl = build_kleisli(&t).unwrap();
        prop_assert!(is_strict_isomorphism(&kl.free));
        let alg = enumerate_algebras(&t, &caps()).unwrap();
        prop_assert_eq!(alg.algebras.len(), a.object_count());
        prop_assert!(is_strict_isomorphism(&alg.free));
    }
}
