use itertools::Itertools;
use proptest::prelude::*;
use relmonad::quantale::{
    check_classification, check_right_lifts, check_v_loose_monad, check_yoneda, dense_subsets, is_v_presheaf, labelled_vcats,
    preorders_up_to_iso, quantale_bases, quantale_corpus, restrict_values, v_algebra_carriers, v_check_nerve_theorem,
    v_distributors, v_kleisli, v_loose_monads, v_monads, v_nerve, v_presheaf_object, v_yo_monad_bijection, validate_quantale,
    validate_v_monad, validate_vcat, validate_vfunctor, vcats_up_to_iso, yo_monads, Quantale, VCat, VRelMonad, Value,
};
use relmonad::Caps;

fn caps() -> Caps {
    Caps::default()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("o{i}")).collect()
}

fn chain_order(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
}

fn two_chain() -> VCat {
    VCat::from_preorder(&Quantale::boolean(), names(2), &chain_order(2)).unwrap()
}

fn discrete(n: usize) -> VCat {
    let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
    VCat::from_preorder(&Quantale::boolean(), names(n), &leq).unwrap()
}

/// `∅, {x}, {y}, {x, y}` ordered by inclusion.
fn powerset() -> VCat {
    let sets = [0b00u8, 0b01, 0b10, 0b11];
    let leq: Vec<Vec<bool>> = sets.iter().map(|&a| sets.iter().map(|&b| a & !b == 0).collect()).collect();
    VCat::from_preorder(&Quantale::boolean(), vec!["∅".into(), "x".into(), "y".into(), "xy".into()], &leq).unwrap()
}

/// The chain `0 < 1 < … < n-1` with truncated addition.
fn lukasiewicz(n: usize) -> Quantale {
    let top = n - 1;
    let tensor = (0..n).map(|a| (0..n).map(|b| (a + b).saturating_sub(top)).collect()).collect();
    Quantale::new((0..n).map(|i| i.to_string()).collect(), chain_order(n), tensor, top).unwrap()
}

/// Binary relations on a 2-element set under relational composition.
fn relations() -> Quantale {
    let compose = |r: usize, s: usize| {
        let mut out = 0;
        for (i, j, k) in itertools::iproduct!(0..2, 0..2, 0..2) {
            if r >> (2 * i + j) & 1 == 1 && s >> (2 * j + k) & 1 == 1 {
                out |= 1 << (2 * i + k);
            }
        }
        out
    };
    let leq = (0..16).map(|a| (0..16).map(|b| a & !b == 0).collect()).collect();
    let tensor = (0..16).map(|a| (0..16).map(|b| compose(a, b)).collect()).collect();
    Quantale::new((0..16).map(|i| format!("{i:04b}")).collect(), leq, tensor, 0b1001).unwrap()
}

/// Labelled V-categories on `n` objects by filtering every hom table.
fn vcat_oracle(q: &Quantale, n: usize) -> Vec<Vec<Vec<Value>>> {
    (0..n * n)
        .map(|_| q.elements())
        .multi_cartesian_product()
        .map(|flat| flat.chunks(n.max(1)).take(n).map(<[_]>::to_vec).collect::<Vec<_>>())
        .filter(|hom: &Vec<Vec<Value>>| {
            (0..n).all(|x| q.leq(q.unit(), hom[x][x]))
                && itertools::iproduct!(0..n, 0..n, 0..n).all(|(x, y, z)| q.leq(q.tensor(hom[x][y], hom[y][z]), hom[x][z]))
        })
        .collect()
}

fn sorted(mut tables: Vec<Vec<Vec<Value>>>) -> Vec<Vec<Vec<Value>>> {
    tables.sort();
    tables
}

/// Orbits of a labelled family under relabelling, by Burnside's lemma.
fn orbit_count(labelled: &[Vec<Vec<Value>>], n: usize) -> usize {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let fixed: usize = perms
        .iter()
        .map(|p| labelled.iter().filter(|h| (0..n).all(|x| (0..n).all(|y| h[p[x]][p[y]] == h[x][y]))).count())
        .sum();
    assert_eq!(fixed % perms.len(), 0);
    fixed / perms.len()
}

/// Preorders on `n` points by filtering every relation.
fn preorder_count(n: usize) -> usize {
    (0u32..1 << (n * n))
        .filter(|&r| {
            let rel = |a: usize, b: usize| r >> (a * n + b) & 1 == 1;
            (0..n).all(|a| rel(a, a)) && itertools::iproduct!(0..n, 0..n, 0..n).all(|(a, b, c)| !rel(a, b) || !rel(b, c) || rel(a, c))
        })
        .count()
}

fn presheaf_oracle(q: &Quantale, a: &VCat) -> Vec<Vec<Value>> {
    (0..a.len())
        .map(|_| q.elements())
        .multi_cartesian_product()
        .filter(|p| itertools::iproduct!(a.objects(), a.objects()).all(|(x, x2)| q.leq(q.tensor(a.hom(x2, x), p[x]), p[x2])))
        .collect()
}

#[test]
fn quantale_examples() {
    assert!(validate_quantale(&Quantale::boolean()).passed());
    assert!(validate_quantale(&Quantale::three_chain()).passed());
    let tensor = vec![vec![0, 0], vec![0, 1]];
    let bad = Quantale::new(vec!["0".into(), "1".into()], chain_order(2), tensor, 0).unwrap();
    let r = validate_quantale(&bad);
    assert!(r.violates("unit-left") && r.violates("unit-right"));
}

#[test]
fn supplied_residuals_are_compared() {
    let q = Quantale::boolean();
    let right = vec![vec![1, 1], vec![0, 1]];
    assert!(validate_quantale(&q.clone().with_residuals(right.clone(), right.clone()).unwrap()).passed());
    let wrong = vec![vec![1, 1], vec![1, 1]];
    let r = validate_quantale(&q.with_residuals(right, wrong).unwrap());
    assert!(r.violates("residual-table-right") && !r.violates("residual-table-left"));
}

#[test]
fn noncommutative_quantales_keep_both_residuals() {
    let q = relations();
    assert!(validate_quantale(&q).passed());
    assert_ne!(q.tensor(0b0010, 0b0100), q.tensor(0b0100, 0b0010));
    assert_ne!(q.rres(0b0010, 0b0001), q.lres(0b0010, 0b0001));
    for (a, c) in itertools::iproduct!(q.elements(), q.elements()) {
        let rres = (0..16).filter(|&b| q.tensor(a, b) & !c == 0).fold(0, |acc, b| acc | b);
        assert_eq!(q.rres(a, c), rres);
        let lres = (0..16).filter(|&b| q.tensor(b, a) & !c == 0).fold(0, |acc, b| acc | b);
        assert_eq!(q.lres(a, c), lres);
    }
}

#[test]
fn malformed_orders_are_refused() {
    let tensor = vec![vec![0, 0], vec![0, 1]];
    let discrete = vec![vec![true, false], vec![false, true]];
    assert!(Quantale::new(vec!["a".into(), "b".into()], discrete, tensor, 1).is_err());
    assert!(Quantale::new(vec![], vec![], vec![], 0).is_err());
}

#[test]
fn presheaf_object_examples() {
    let two = Quantale::boolean();
    let one = discrete(1);
    let pa = v_presheaf_object(&two, &one, &caps()).unwrap();
    assert_eq!(pa.presheaves, vec![vec![0], vec![1]]);
    assert_eq!(pa.category.hom(0, 1), 1);
    assert_eq!(pa.category.hom(1, 0), 0);

    let pa = v_presheaf_object(&two, &two_chain(), &caps()).unwrap();
    assert_eq!(pa.presheaves, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    assert!(validate_vcat(&two, &pa.category).passed());
    assert_eq!(pa.yoneda, vec![1, 2]);
    for (i, k) in itertools::iproduct!(0..3, 0..3) {
        assert_eq!(pa.category.hom(i, k) == 1, i <= k);
    }
}

#[test]
fn capacity_is_enforced_for_presheaf_objects() {
    let small = Caps {
        max_search_nodes: 3,
        ..Caps::default()
    };
    assert!(v_presheaf_object(&Quantale::boolean(), &two_chain(), &small).is_err());
}

#[test]
fn nerve_examples() {
    let two = Quantale::boolean();
    let e = powerset();
    let pe = v_presheaf_object(&two, &e, &caps()).unwrap();
    let id: Vec<usize> = e.objects().collect();
    let n = v_nerve(&two, &e, &e, &id, &pe).unwrap();
    assert_eq!(n.map, pe.yoneda);
    assert!(n.dense && n.certificate.passed());

    let root = [1, 2];
    let a = e.full_subcategory(&root);
    let pa = v_presheaf_object(&two, &a, &caps()).unwrap();
    let n = v_nerve(&two, &a, &e, &root, &pa).unwrap();
    assert!(n.map.iter().all_unique());
    assert!(n.dense && n.certificate.passed());

    let chain = VCat::from_preorder(&two, names(3), &chain_order(3)).unwrap();
    let root = [0, 2];
    let a = chain.full_subcategory(&root);
    let pa = v_presheaf_object(&two, &a, &caps()).unwrap();
    let n = v_nerve(&two, &a, &chain, &root, &pa).unwrap();
    assert!(!n.dense);
    assert_eq!(n.witness, Some((1, 0)));
    assert_eq!(n.map[0], n.map[1]);
}

#[test]
fn powerset_monad_algebras() {
    let two = Quantale::boolean();
    let e = powerset();
    let root = vec![1, 2];
    let a = e.full_subcategory(&root);
    let t = VRelMonad {
        root,
        carrier: vec![3, 2],
    };
    assert!(validate_v_monad(&two, &a, &e, &t).passed());
    assert_eq!(v_algebra_carriers(&two, &a, &e, &t), vec![0, 2, 3]);
    let r = v_check_nerve_theorem(&two, &a, &e, &t, &caps()).unwrap();
    assert!(r.dense && r.comparison_iso && r.semanticiser_matches_pullback);
    assert_eq!((r.algebra_count, r.pullback_count), (3, 3));
}

#[test]
fn identity_monads_on_preorders() {
    let two = Quantale::boolean();
    for n in 0..=3 {
        for leq in preorders_up_to_iso(n) {
            let e = VCat::from_preorder(&two, names(n), &leq).unwrap();
            let id: Vec<usize> = e.objects().collect();
            let t = VRelMonad {
                root: id.clone(),
                carrier: id,
            };
            let r = v_check_nerve_theorem(&two, &e, &e, &t, &caps()).unwrap();
            assert!(r.dense && r.comparison_iso && r.semanticiser_matches_pullback);
            assert_eq!((r.algebra_count, r.pullback_count), (n, n));
        }
    }
}

#[test]
fn non_dense_root_on_the_three_chain() {
    let two = Quantale::boolean();
    let e = VCat::from_preorder(&two, names(3), &chain_order(3)).unwrap();
    let root = vec![0, 2];
    let a = e.full_subcategory(&root);
    let t = VRelMonad {
        root,
        carrier: vec![1, 2],
    };
    assert!(validate_v_monad(&two, &a, &e, &t).passed());
    let r = v_check_nerve_theorem(&two, &a, &e, &t, &caps()).unwrap();
    assert!(!r.dense);
    assert!(r.semanticiser_matches_pullback);
    assert_eq!((r.algebra_count, r.pullback_count), (2, 3));
    assert!(!r.comparison_iso);
}

#[test]
fn invalid_monads_are_refused() {
    let two = Quantale::boolean();
    let e = two_chain();
    let t = VRelMonad {
        root: vec![1],
        carrier: vec![0],
    };
    let a = e.full_subcategory(&t.root);
    assert!(validate_v_monad(&two, &a, &e, &t).violates("v-unit"));
    assert!(v_check_nerve_theorem(&two, &a, &e, &t, &caps()).is_err());
}

#[test]
fn yo_bijection_examples() {
    let two = Quantale::boolean();
    let b = v_yo_monad_bijection(&two, &two_chain(), &caps()).unwrap();
    assert!(b.passed(), "{:?}", b.report);
    assert_eq!((b.monad_count, b.loose_monad_count), (2, 2));

    let relations: Vec<Vec<Vec<Value>>> = (0u8..16)
        .map(|r| (0..2).map(|x| (0..2).map(|y| usize::from(r >> (2 * x + y) & 1)).collect()).collect())
        .collect();
    let chain = two_chain();
    let loose: Vec<_> = relations.iter().filter(|c| check_v_loose_monad(&two, &chain, c).passed()).collect();
    assert_eq!(loose, vec![&vec![vec![1, 1], vec![0, 1]], &vec![vec![1, 1], vec![1, 1]]]);

    let b = v_yo_monad_bijection(&two, &discrete(1), &caps()).unwrap();
    assert!(b.passed());
    assert_eq!((b.monad_count, b.loose_monad_count), (1, 1));

    let b = v_yo_monad_bijection(&two, &discrete(2), &caps()).unwrap();
    assert!(b.passed());
    assert_eq!((b.monad_count, b.loose_monad_count), (4, 4));
}

#[test]
fn preorder_counts() {
    let two = Quantale::boolean();
    let labelled: Vec<usize> = (0..=4).map(|n| labelled_vcats(&two, n).len()).collect();
    assert_eq!(labelled, vec![1, 1, 4, 29, 355]);
    for n in 0..=3 {
        assert_eq!(labelled[n], preorder_count(n));
        assert_eq!(sorted(labelled_vcats(&two, n)), vcat_oracle(&two, n));
    }
    let up_to_iso: Vec<usize> = (0..=5).map(|n| preorders_up_to_iso(n).len()).collect();
    assert_eq!(up_to_iso, vec![1, 1, 3, 9, 33, 139]);
    for n in 0..=5 {
        assert_eq!(up_to_iso[n], orbit_count(&labelled_vcats(&two, n), n));
    }
}

#[test]
fn three_chain_vcat_counts() {
    let q = Quantale::three_chain();
    let counts: Vec<usize> = (0..=3).map(|n| vcats_up_to_iso(&q, n).len()).collect();
    assert_eq!(counts, vec![1, 1, 6, 44]);
    for n in 0..=3 {
        let labelled = vcat_oracle(&q, n);
        assert_eq!(sorted(labelled_vcats(&q, n)), labelled);
        assert_eq!(counts[n], orbit_count(&labelled, n));
    }
}

#[test]
fn quantale_corpus_satisfies_the_nerve_theorem() {
    let q = Quantale::three_chain();
    let bases = quantale_bases(&q, 3, 2);
    let corpus = quantale_corpus(&q, &bases, &caps()).unwrap();
    assert!(!corpus.is_empty());
    for inst in &corpus {
        let a = inst.domain();
        let r = v_check_nerve_theorem(&q, &a, &inst.base, &inst.monad, &caps()).unwrap();
        assert!(r.dense && r.comparison_iso && r.semanticiser_matches_pullback, "{inst:?}");
    }
}

fn small_quantale() -> impl Strategy<Value = Quantale> {
    prop_oneof![
        Just(Quantale::boolean()),
        Just(Quantale::three_chain()),
        (2..=4usize).prop_map(lukasiewicz),
    ]
}

fn vcat_in(q: Quantale, max_objects: usize) -> impl Strategy<Value = (Quantale, VCat)> {
    (0..=max_objects).prop_flat_map(move |n| {
        let all = labelled_vcats(&q, n);
        let q = q.clone();
        (0..all.len()).prop_map(move |i| (q.clone(), VCat::new(names(n), all[i].clone()).unwrap()))
    })
}

fn quantale_and_vcat(max_objects: usize) -> impl Strategy<Value = (Quantale, VCat)> {
    small_quantale().prop_flat_map(move |q| vcat_in(q, max_objects))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residuation_holds(n in 1..=6usize, lukas in any::<bool>()) {
        let q = if lukas { lukasiewicz(n) } else { Quantale::min_chain(&(0..n).map(|_| "e").collect::<Vec<_>>()) };
        prop_assert!(validate_quantale(&q).passed());
        for (a, b, c) in itertools::iproduct!(q.elements(), q.elements(), q.elements()) {
            let below = q.leq(q.tensor(a, b), c);
            prop_assert_eq!(below, q.leq(b, q.rres(a, c)));
            prop_assert_eq!(below, q.leq(a, q.lres(b, c)));
        }
    }

    #[test]
    fn presheaf_objects_match_oracle((q, a) in quantale_and_vcat(3)) {
        let pa = v_presheaf_object(&q, &a, &caps()).unwrap();
        prop_assert_eq!(&pa.presheaves, &presheaf_oracle(&q, &a));
        prop_assert!(validate_vcat(&q, &pa.category).passed());
        prop_assert!(check_yoneda(&a, &pa).passed());
        prop_assert!(check_right_lifts(&q, &pa).passed());
        for (x, p) in itertools::iproduct!(a.objects(), 0..pa.presheaves.len()) {
            prop_assert_eq!(pa.category.hom(pa.yoneda[x], p), pa.presheaves[p][x]);
        }
    }

    #[test]
    fn presheaves_classify_distributors((q, a) in quantale_and_vcat(2), x_objects in 0..=2usize) {
        let identity: Vec<Vec<bool>> = (0..x_objects).map(|i| (0..x_objects).map(|k| i == k).collect()).collect();
        let x = VCat::from_preorder(&q, names(x_objects), &identity).unwrap();
        let pa = v_presheaf_object(&q, &a, &caps()).unwrap();
        prop_assert!(check_classification(&q, &a, &x, &pa, &caps()).unwrap().passed());
        prop_assert!(check_classification(&q, &a, &a, &pa, &caps()).unwrap().passed());
        let d = v_distributors(&q, &a, &x, &caps()).unwrap();
        prop_assert_eq!(d.len(), pa.presheaves.len().pow(x_objects as u32));
    }

    #[test]
    fn restriction_of_presheaves_is_functorial((q, a) in quantale_and_vcat(3), seed in any::<u64>()) {
        let pa = v_presheaf_object(&q, &a, &caps()).unwrap();
        let n = a.len();
        let f: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i)) as usize) % n.max(1)).collect();
        let g: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i + 20)) as usize) % n.max(1)).collect();
        prop_assume!(n > 0 && validate_vfunctor(&q, &a, &a, &f).passed() && validate_vfunctor(&q, &a, &a, &g).passed());
        let fg: Vec<usize> = g.iter().map(|&y| f[y]).collect();
        for p in &pa.presheaves {
            let restricted = restrict_values(p, &f);
            prop_assert!(is_v_presheaf(&q, &a, &restricted));
            prop_assert_eq!(restrict_values(&restricted, &g), restrict_values(p, &fg));
        }
    }

    #[test]
    fn nerves_are_relative_right_adjoints((q, e) in quantale_and_vcat(3), mask in any::<u8>()) {
        let root: Vec<usize> = e.objects().filter(|&i| mask >> i & 1 == 1).collect();
        let a = e.full_subcategory(&root);
        let pa = v_presheaf_object(&q, &a, &caps()).unwrap();
        let n = v_nerve(&q, &a, &e, &root, &pa).unwrap();
        prop_assert!(n.certificate.passed());
        let dense = itertools::iproduct!(e.objects(), e.objects())
            .all(|(c, c2)| e.hom(c, c2) == pa.category.hom(n.map[c], n.map[c2]));
        prop_assert_eq!(n.dense, dense);
        prop_assert_eq!(dense_subsets(&q, &e, &caps()).unwrap().contains(&root), dense);
    }

    #[test]
    fn enriched_nerve_theorem((q, e) in quantale_and_vcat(3), mask in any::<u8>()) {
        let root: Vec<usize> = e.objects().filter(|&i| mask >> i & 1 == 1).collect();
        let a = e.full_subcategory(&root);
        for t in v_monads(&q, &a, &e, &root, &caps()).unwrap() {
            let r = v_check_nerve_theorem(&q, &a, &e, &t, &caps()).unwrap();
            prop_assert!(r.semanticiser_matches_pullback, "{:?}", t);
            if r.dense {
                prop_assert!(r.comparison_iso, "{:?}", t);
            }
            let kl = v_kleisli(&a, &e, &t);
            prop_assert!(validate_vcat(&q, &kl).passed());
            let presheaf_carriers = e.objects().filter(|&c| {
                let p: Vec<Value> = root.iter().map(|&x| e.hom(x, c)).collect();
                presheaf_oracle(&q, &kl).contains(&p)
            }).count();
            prop_assert_eq!(r.pullback_count, presheaf_carriers);
        }
    }

    #[test]
    fn yo_monads_correspond_to_loose_monads((q, a) in quantale_and_vcat(2)) {
        let b = v_yo_monad_bijection(&q, &a, &caps()).unwrap();
        prop_assert!(b.passed(), "{:?}", b.report);
        let pa = v_presheaf_object(&q, &a, &caps()).unwrap();
        prop_assert_eq!(b.monad_count, yo_monads(&q, &a, &pa, &caps()).unwrap().len());
        let oracle = (0..a.len() * a.len())
            .map(|_| q.elements())
            .multi_cartesian_product()
            .filter(|flat| {
                let c: Vec<Vec<Value>> = flat.chunks(a.len().max(1)).take(a.len()).map(<[_]>::to_vec).collect();
                check_v_loose_monad(&q, &a, &c).passed()
            })
            .count();
        prop_assert_eq!(b.loose_monad_count, oracle);
        prop_assert_eq!(v_loose_monads(&q, &a, &caps()).unwrap().len(), b.loose_monad_count);
    }
}
