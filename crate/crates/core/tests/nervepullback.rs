mod common;

use std::sync::Arc;

use proptest::prelude::*;
use relmonad::constructions::{build_kleisli, enumerate_algebras};
use relmonad::fincat::{full_inclusion, is_strict_isomorphism, FinCat, Functor, Mor, Obj};
use relmonad::nervepullback::{
    build_nerve_pullback, check_conerve_theorem, check_nerve_theorem, check_relative_comonad, comparison_to_pullback,
    dualize_comonad, dualize_monad, is_dense, nerve_presheaf, presheaf_pullback_agrees,
};
use relmonad::relmonad::{identity_monad, RelativeMonad};
use relmonad::{zoo, Caps};

const DIAMOND: Obj = 0;
const LEFT: Obj = 1;
const RIGHT: Obj = 2;

fn caps() -> Caps {
    Caps::default()
}

/// Every action table on carrier `c` that is a presheaf on `Kl(T)` and
/// restricts along `k_T` to the nerve, as `(carrier, table)` pairs.
fn pullback_oracle(t: &RelativeMonad, c: Obj) -> Vec<(Obj, Vec<Vec<usize>>)> {
    let (a, e, j) = (t.base(), t.ambient(), t.root());
    let idx = t.kleisli_index();
    let value = |x: Obj| e.hom(j.ob(x), c).to_vec();
    let mut tables: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &(x, x2, _) in idx.entries() {
        let (from, to) = (value(x2).len(), value(x).len());
        let mut maps: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..from {
            maps = maps.into_iter().flat_map(|m| (0..to).map(move |v| { let mut n = m.clone(); n.push(v); n })).collect();
        }
        tables = tables.into_iter().flat_map(|tab| maps.iter().map(move |m| { let mut n = tab.clone(); n.push(m.clone()); n })).collect();
    }
    tables
        .into_iter()
        .filter(|tab| {
            let free = a.morphism_ids().all(|p| {
                let (x, y) = (a.src(p), a.tgt(p));
                let k = idx.position(x, y, e.compose(j.mor(p), t.eta(y))).unwrap();
                value(y).iter().enumerate().all(|(i, &g)| value(x)[tab[k][i]] == e.compose(j.mor(p), g))
            });
            let composite = idx.entries().iter().enumerate().all(|(k1, &(x, y, f))| {
                a.objects().all(|z| {
                    idx.range(y, z).all(|k2| {
                        let k = idx.position(x, z, e.compose(f, t.extend_at(k2))).unwrap();
                        (0..value(z).len()).all(|i| tab[k][i] == tab[k1][tab[k2][i]])
                    })
                })
            });
            free && composite
        })
        .map(|tab| (c, tab))
        .collect()
}

/// In a preorder, `j` is dense iff `e ≤ e'` exactly when every object of
/// `A` below `e` is below `e'`.
fn preorder_density_oracle(leq: &[Vec<bool>], kept: &[usize]) -> bool {
    let n = leq.len();
    (0..n).all(|e| (0..n).all(|e2| leq[e][e2] == kept.iter().all(|&s| !leq[s][e] || leq[s][e2])))
}

fn preorder(relation: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = relation.len();
    let mut leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b || relation[a][b]).collect()).collect();
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                leq[a][b] |= leq[a][k] && leq[k][b];
            }
        }
    }
    leq
}

#[test]
fn nerve_examples() {
    let span = zoo::span();
    let id = Functor::identity(&span);
    for e in span.objects() {
        let n = nerve_presheaf(&id, e);
        assert!(n.validate().passed());
        for a in span.objects() {
            let names: Vec<&str> = span.hom(a, e).iter().map(|&m| span.morphism(m).name.as_str()).collect();
            assert_eq!(n.value(a), names.as_slice());
        }
    }
    let j = zoo::span_root();
    assert_eq!(nerve_presheaf(&j, LEFT).value(0), &["w".to_string()]);
    assert_eq!(nerve_presheaf(&j, DIAMOND).value(0), &["id_◊".to_string()]);
}

#[test]
fn density_examples() {
    let span = zoo::span();
    assert!(is_dense(&Functor::identity(&span), &caps()).unwrap().dense);

    let d = is_dense(&zoo::span_root(), &caps()).unwrap();
    assert!(!d.dense);
    let w = d.failures.iter().find(|w| (w.from, w.to) == (LEFT, RIGHT)).expect("(▽, ▽̄) fails");
    assert_eq!((w.hom_count, w.nat_count), (0, 1));
    assert_eq!(d.witness.as_ref(), d.failures.first());

    assert!(is_dense(zoo::powerset_monad().root(), &caps()).unwrap().dense);
}

#[test]
fn pullback_examples() {
    let t = zoo::span_monad();
    let kl = build_kleisli(&t).unwrap();
    let np = build_nerve_pullback(&t, &kl, &caps()).unwrap();
    assert_eq!(np.category.size(), (3, 5));
    assert!(is_strict_isomorphism(&np.forget));

    for t in [zoo::identity_monad_on_span(), zoo::fully_faithful_trivial_monad()] {
        let kl = build_kleisli(&t).unwrap();
        let np = build_nerve_pullback(&t, &kl, &caps()).unwrap();
        assert!(np.category.validate().passed());
        assert!(is_strict_isomorphism(&np.forget));
    }
}

#[test]
fn empty_root_gives_the_ambient_category() {
    let span = zoo::span();
    let j = Functor::new(Arc::new(FinCat::empty()), span.clone(), vec![], vec![]).unwrap();
    let t = RelativeMonad::new(j, vec![], vec![], vec![]).unwrap();
    let kl = build_kleisli(&t).unwrap();
    assert_eq!(kl.category.size(), (0, 0));
    let np = build_nerve_pullback(&t, &kl, &caps()).unwrap();
    assert!(is_strict_isomorphism(&np.forget));
}

#[test]
fn comparison_to_pullback_examples() {
    let t = zoo::identity_monad_on_span();
    let alg = enumerate_algebras(&t, &caps()).unwrap();
    let np = build_nerve_pullback(&t, &build_kleisli(&t).unwrap(), &caps()).unwrap();
    assert!(is_strict_isomorphism(&comparison_to_pullback(&t, &alg, &np).unwrap()));

    let t = zoo::span_monad();
    let alg = enumerate_algebras(&t, &caps()).unwrap();
    let np = build_nerve_pullback(&t, &build_kleisli(&t).unwrap(), &caps()).unwrap();
    let c = comparison_to_pullback(&t, &alg, &np).unwrap();
    assert!(c.validate().passed());
    assert_eq!(c.source().object_count(), 1);
    assert_eq!(np.forget.ob(c.ob(0)), RIGHT);
    assert!(!is_strict_isomorphism(&c));
}

#[test]
fn nerve_theorem_examples() {
    let r = check_nerve_theorem(&zoo::span_monad(), &caps()).unwrap();
    assert_eq!((r.dense, r.comparison_iso, r.nerve_of_comparison_ok), (false, false, true));
    assert!(r.theorem_holds());

    let r = check_nerve_theorem(&zoo::identity_monad_on_span(), &caps()).unwrap();
    assert_eq!((r.dense, r.comparison_iso, r.nerve_of_comparison_ok), (true, true, true));

    let r = check_nerve_theorem(&zoo::fully_faithful_trivial_monad(), &caps()).unwrap();
    assert!(r.comparison_iso);
}

#[test]
fn conerve_theorem_examples() {
    let c = dualize_monad(&zoo::identity_monad_on_span());
    assert!(check_relative_comonad(&c).passed());
    let r = check_conerve_theorem(&c, &caps()).unwrap();
    assert_eq!((r.codense, r.comparison_iso, r.conerve_of_comparison_ok), (true, true, true));

    let c = dualize_monad(&zoo::span_monad());
    assert!(check_relative_comonad(&c).passed());
    assert!(c.root().target().hom(LEFT, DIAMOND).len() == 1);
    let r = check_conerve_theorem(&c, &caps()).unwrap();
    assert_eq!((r.codense, r.comparison_iso), (false, false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_objects_match_oracle(t in common::monad(3, 2)) {
        let kl = build_kleisli(&t).unwrap();
        let np = build_nerve_pullback(&t, &kl, &caps()).unwrap();
        prop_assert!(np.category.validate().passed());
        prop_assert!(np.forget.validate().passed());
        prop_assert!(presheaf_pullback_agrees(&t, &kl, &np, &caps()).unwrap());
        let mut oracle = Vec::new();
        for c in t.ambient().objects() {
            oracle.extend(pullback_oracle(&t, c));
        }
        let found: Vec<(Obj, Vec<Vec<usize>>)> = np.objects.iter().map(|o| (o.carrier, o.action.clone())).collect();
        prop_assert_eq!(found, oracle);
        for src in np.category.objects() {
            for dst in np.category.objects() {
                let over: Vec<Mor> = np.category.hom(src, dst).iter().map(|&m| np.forget.mor(m)).collect();
                let mut sorted = over.clone();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), over.len());
            }
        }
    }

    #[test]
    fn dense_roots_satisfy_the_nerve_theorem(t in common::monad(4, 3)) {
        let r = check_nerve_theorem(&t, &caps()).unwrap();
        prop_assert!(r.nerve_of_comparison_ok, "{:?}", r);
        if r.dense {
            prop_assert!(r.comparison_iso, "{:?}", r);
        }
        prop_assert_eq!(r.dense, r.density_witness.is_none());
    }

    #[test]
    fn dualization_commutes_with_the_checker(t in common::monad(3, 3)) {
        let c = dualize_monad(&t);
        prop_assert!(check_relative_comonad(&c).passed());
        prop_assert_eq!(&dualize_comonad(&c), &t);
        let dual = check_conerve_theorem(&c, &caps()).unwrap();
        let direct = check_nerve_theorem(&t, &caps()).unwrap().relabel();
        prop_assert_eq!(format!("{dual:?}"), format!("{direct:?}"));
    }

    #[test]
    fn preorder_density_matches_oracle(
        (relation, keep) in (1..=4usize).prop_flat_map(|n| (
            prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.3), n), n),
            prop::collection::vec(any::<bool>(), n),
        ))
    ) {
        let leq = preorder(&relation);
        let names: Vec<String> = (0..leq.len()).map(|i| format!("p{i}")).collect();
        let e = Arc::new(FinCat::from_preorder(&names, &leq).unwrap());
        let kept: Vec<usize> = (0..leq.len()).filter(|&i| keep[i]).collect();
        let j = full_inclusion(&e, &kept).unwrap();
        prop_assert_eq!(is_dense(&j, &caps()).unwrap().dense, preorder_density_oracle(&leq, &kept));
    }

    #[test]
    fn identity_roots_are_dense(a in common::category(4, 3)) {
        prop_assert!(is_dense(&Functor::identity(&a), &caps()).unwrap().dense);
        let r = check_nerve_theorem(&identity_monad(&a), &caps()).unwrap();
        prop_assert!(r.dense && r.comparison_iso && r.nerve_of_comparison_ok);
    }
}
