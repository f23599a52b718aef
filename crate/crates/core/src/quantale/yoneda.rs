use std::ops::ControlFlow;

use crate::error::{Caps, Result};
use crate::quantale::lattice::{Quantale, Value};
use crate::quantale::nerve::{v_algebra_carriers, v_kleisli, validate_v_monad, VRelMonad};
use crate::quantale::presheaf::{is_v_presheaf, v_presheaf_object, value_maps, PresheafObject};
use crate::quantale::vcat::VCat;
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A loose-monad on `A` in thin V: `c(x, y)` with `A(x, y) ≤ c(x, y)`,
/// `c(x, y) ⊗ c(y, z) ≤ c(x, z)` and both `A`-actions.
pub fn check_v_loose_monad(q: &Quantale, a: &VCat, c: &[Vec<Value>]) -> LawReport {
    let mut r = LawReport::new();
    for x in a.objects() {
        for y in a.objects() {
            r.require(q.leq(a.hom(x, y), c[x][y]), "loose-unit", || vec![Item::Obj(x), Item::Obj(y)]);
            for z in a.objects() {
                let w = || vec![Item::Obj(x), Item::Obj(y), Item::Obj(z)];
                r.require(q.leq(q.tensor(c[x][y], c[y][z]), c[x][z]), "loose-multiplication", w);
                r.require(q.leq(q.tensor(a.hom(x, y), c[y][z]), c[x][z]), "loose-left-action", w);
                r.require(q.leq(q.tensor(c[x][y], a.hom(y, z)), c[x][z]), "loose-right-action", w);
            }
        }
    }
    r
}

fn loose_monad_search<'a>(q: &'a Quantale, a: &'a VCat, caps: &Caps) -> Search<'a> {
    let n = a.len();
    let mut s = Search::new(caps.max_search_nodes);
    for x in a.objects() {
        for y in a.objects() {
            s.var(q.elements().filter(|&v| q.leq(a.hom(x, y), v)).collect());
        }
    }
    let at = move |x: usize, y: usize| x * n + y;
    for x in a.objects() {
        for y in a.objects() {
            for z in a.objects() {
                s.constrain(&[at(x, y), at(y, z), at(x, z)], move |p| match (p.get(at(x, y)), p.get(at(y, z)), p.get(at(x, z))) {
                    (Some(u), Some(v), Some(w)) => q.leq(q.tensor(u, v), w),
                    _ => true,
                });
                s.constrain(&[at(y, z), at(x, z)], move |p| match (p.get(at(y, z)), p.get(at(x, z))) {
                    (Some(v), Some(w)) => q.leq(q.tensor(a.hom(x, y), v), w),
                    _ => true,
                });
                s.constrain(&[at(x, y), at(x, z)], move |p| match (p.get(at(x, y)), p.get(at(x, z))) {
                    (Some(u), Some(w)) => q.leq(q.tensor(u, a.hom(y, z)), w),
                    _ => true,
                });
            }
        }
    }
    s
}

fn unflatten(n: usize, flat: &[Value]) -> Vec<Vec<Value>> {
    flat.chunks(n.max(1)).take(n).map(<[_]>::to_vec).collect()
}

pub fn v_loose_monads(q: &Quantale, a: &VCat, caps: &Caps) -> Result<Vec<Vec<Vec<Value>>>> {
    Ok(loose_monad_search(q, a, caps)
        .all(caps.max_search_nodes)?
        .iter()
        .map(|flat| unflatten(a.len(), flat))
        .collect())
}

fn yo_monad_search<'a>(q: &'a Quantale, a: &VCat, pa: &'a PresheafObject, caps: &Caps) -> Search<'a> {
    let ph = &pa.category;
    let yo = &pa.yoneda;
    let mut s = Search::new(caps.max_search_nodes);
    for x in a.objects() {
        s.var(ph.objects().filter(|&p| q.leq(q.unit(), ph.hom(yo[x], p))).collect());
    }
    for x in a.objects() {
        for y in a.objects() {
            s.constrain(&[x, y], move |p| match (p.get(x), p.get(y)) {
                (Some(tx), Some(ty)) => q.leq(ph.hom(yo[x], ty), ph.hom(tx, ty)),
                _ => true,
            });
        }
    }
    s
}

/// `よ_A`-relative monads as carrier maps `A → P A`.
pub fn yo_monads(q: &Quantale, a: &VCat, pa: &PresheafObject, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    yo_monad_search(q, a, pa, caps).all(caps.max_search_nodes)
}

/// Counts on both sides and the certificate.
#[derive(Debug, Clone)]
pub struct YoBijection {
    pub monad_count: usize,
    pub loose_monad_count: usize,
    pub report: LawReport,
}

impl YoBijection {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// `T ↦ (x, y) ↦ P A(よ x, t y)` with inverse `c ↦ y ↦ c(−, y)`.
///
/// Both maps must land and round-trip, so with equal counts they are
/// inverse bijections. Both maps act column by column, so the order
/// isomorphism reduces to `I ≤ P A(p, p')` iff `p ≤ p'` pointwise on `P A`.
/// For each pair, `Kl(T)` must equal the collapse of `c`, and the carriers of
/// `Alg(T)` must be exactly the `Kl(T)`-presheaves. Homs of `Alg(T)` are
/// those of `P A`, and `P A` and `P(Kl T)` both take `⋀_x rres(p x, p' x)`
/// over the objects of `A`, so equal object sets give the isomorphism over
/// `P A`.
pub fn v_yo_monad_bijection(q: &Quantale, a: &VCat, caps: &Caps) -> Result<YoBijection> {
    let pa = v_presheaf_object(q, a, caps)?;
    let ph = &pa.category;
    let all_maps = value_maps("value maps", q.len(), a.len(), caps, |_| true)?;
    let mut r = LawReport::new();
    for (i, p) in pa.presheaves.iter().enumerate() {
        for (k, p2) in pa.presheaves.iter().enumerate() {
            let below = p.iter().zip(p2).all(|(&u, &v)| q.leq(u, v));
            r.require(q.leq(q.unit(), ph.hom(i, k)) == below, "order-iso", || vec![Item::Obj(i), Item::Obj(k)]);
        }
    }
    let to_loose = |t: &[usize]| -> Vec<Vec<Value>> {
        a.objects()
            .map(|x| a.objects().map(|y| ph.hom(pa.yoneda[x], t[y])).collect())
            .collect()
    };
    let to_monad = |c: &[Vec<Value>]| -> Option<Vec<usize>> {
        a.objects()
            .map(|y| pa.index_of(&a.objects().map(|x| c[x][y]).collect::<Vec<_>>()))
            .collect()
    };
    let mut monad_count = 0;
    yo_monad_search(q, a, &pa, caps).run(|t| {
        let i = monad_count;
        monad_count += 1;
        let c = to_loose(t);
        if !check_v_loose_monad(q, a, &c).passed() {
            r.push("bijection-lands-loose", vec![Item::Elem(i)]);
            return ControlFlow::Continue(());
        }
        r.require(to_monad(&c).as_deref() == Some(t), "round-trip-monad", || vec![Item::Elem(i)]);
        let monad = VRelMonad {
            root: pa.yoneda.clone(),
            carrier: t.to_vec(),
        };
        let kl = v_kleisli(a, ph, &monad);
        let collapse = VCat::new(a.objects.clone(), c).expect("square");
        r.require(kl == collapse, "opalgebra-is-collapse", || vec![Item::Elem(i)]);
        let carriers = v_algebra_carriers(q, a, ph, &monad);
        let kl_presheaves: Vec<&Vec<Value>> = all_maps.iter().filter(|p| is_v_presheaf(q, &kl, p)).collect();
        let same_objects = carriers.len() == kl_presheaves.len()
            && carriers.iter().zip(&kl_presheaves).all(|(&p, v)| &&pa.presheaves[p] == v);
        r.require(same_objects, "algebras-are-presheaves", || vec![Item::Elem(i)]);
        ControlFlow::Continue(())
    })?;
    let mut loose_monad_count = 0;
    loose_monad_search(q, a, caps).run(|flat| {
        let k = loose_monad_count;
        loose_monad_count += 1;
        let c = unflatten(a.len(), flat);
        let lands = to_monad(&c).filter(|t| {
            let monad = VRelMonad {
                root: pa.yoneda.clone(),
                carrier: t.clone(),
            };
            validate_v_monad(q, a, ph, &monad).passed()
        });
        match lands {
            Some(t) => r.require(to_loose(&t) == c, "round-trip-loose", || vec![Item::Elem(k)]),
            None => r.push("bijection-lands-monad", vec![Item::Elem(k)]),
        }
        ControlFlow::Continue(())
    })?;
    r.require(monad_count == loose_monad_count, "bijection-count", || {
        vec![Item::Elem(monad_count), Item::Elem(loose_monad_count)]
    });
    Ok(YoBijection {
        monad_count,
        loose_monad_count,
        report: r,
    })
}
