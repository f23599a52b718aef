use std::sync::Arc;

use crate::constructions::{check_algebra, Algebra};
use crate::error::{Caps, Error, Result};
use crate::fincat::{restrict_distributor, Distributor, FinCat, Functor, Het, Obj};
use crate::loosemonad::monad::{associated_loose_monad, loose_identity, LooseMonad};
use crate::relmonad::RelativeMonad;
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A module `p : M ⇸ L` between loose-monads, with `λ(l, q) = l ⨾ q` and
/// `ρ(q, m) = q ⨾ m`.
///
/// `p` has contra the base of `L` and co the base of `M`; `lambda` is keyed
/// by `(l, q)` and `rho` by `(q, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseMonadModule {
    pub left: LooseMonad,
    pub right: LooseMonad,
    pub carrier: Distributor,
    lambda: Vec<Option<Het>>,
    rho: Vec<Option<Het>>,
}

impl LooseMonadModule {
    pub fn new(
        left: LooseMonad,
        right: LooseMonad,
        carrier: Distributor,
        lambda: impl IntoIterator<Item = (Het, Het, Het)>,
        rho: impl IntoIterator<Item = (Het, Het, Het)>,
    ) -> Result<Self> {
        if carrier.contra() != left.base() || carrier.co() != right.base() {
            return Err(Error::Mismatch("module carrier does not sit between the loose-monads' bases".into()));
        }
        let (nl, nq, nm) = (left.carrier().len(), carrier.len(), right.carrier().len());
        let (lp, q, mp) = (left.carrier(), &carrier, right.carrier());
        let mut lt = vec![None; nl * nq];
        for (l, h, out) in lambda {
            if l >= nl || h >= nq || out >= nq {
                return Err(Error::malformed("module", "left action entry is dangling"));
            }
            let (le, he, oe) = (lp.element(l), q.element(h), q.element(out));
            if le.co != he.contra || oe.contra != le.contra || oe.co != he.co {
                return Err(Error::malformed("module", format!("left action ({l}, {h}) has wrong endpoints")));
            }
            lt[l * nq + h] = Some(out);
        }
        let mut rt = vec![None; nq * nm];
        for (h, m, out) in rho {
            if h >= nq || m >= nm || out >= nq {
                return Err(Error::malformed("module", "right action entry is dangling"));
            }
            let (he, me, oe) = (q.element(h), mp.element(m), q.element(out));
            if he.co != me.contra || oe.contra != he.contra || oe.co != me.co {
                return Err(Error::malformed("module", format!("right action ({h}, {m}) has wrong endpoints")));
            }
            rt[h * nm + m] = Some(out);
        }
        for l in 0..nl {
            for h in 0..nq {
                if lp.element(l).co == q.element(h).contra && lt[l * nq + h].is_none() {
                    return Err(Error::malformed("module", "left action is not total"));
                }
            }
        }
        for h in 0..nq {
            for m in 0..nm {
                if q.element(h).co == mp.element(m).contra && rt[h * nm + m].is_none() {
                    return Err(Error::malformed("module", "right action is not total"));
                }
            }
        }
        Ok(LooseMonadModule {
            left,
            right,
            carrier,
            lambda: lt,
            rho: rt,
        })
    }

    pub fn lambda(&self, l: Het, q: Het) -> Het {
        self.lambda[l * self.carrier.len() + q].expect("composable")
    }

    pub fn rho(&self, q: Het, m: Het) -> Het {
        self.rho[q * self.right.carrier().len() + m].expect("composable")
    }

    /// The five module laws plus agreement of `λ`, `ρ` with the carrier's
    /// actions along the units.
    pub fn check(&self) -> LawReport {
        let mut r = LawReport::new();
        r.merge_scoped("carrier", self.carrier.validate());
        if !r.passed() {
            return r;
        }
        let (lm, rm, q) = (&self.left, &self.right, &self.carrier);
        let (lp, mp) = (lm.carrier(), rm.carrier());
        let (a, b) = (lm.base(), rm.base());
        let into = |p: &Distributor, cat: &FinCat, x: Obj| -> Vec<Het> {
            cat.objects().flat_map(|x2| p.het(x2, x)).collect()
        };
        let out_of = |p: &Distributor, cat: &FinCat, y: Obj| -> Vec<Het> {
            cat.objects().flat_map(|y2| p.het(y, y2)).collect()
        };
        for h in 0..q.len() {
            let (x, y) = (q.element(h).contra, q.element(h).co);
            r.require(self.lambda(lm.eta(a.identity(x)), h) == h, "lambda-unit", || vec![Item::Het(h)]);
            r.require(self.rho(h, rm.eta(b.identity(y))) == h, "rho-unit", || vec![Item::Het(h)]);
            for l2 in into(lp, a, x) {
                let x1 = lp.element(l2).contra;
                for l1 in into(lp, a, x1) {
                    r.require(
                        self.lambda(lm.mu(l1, l2), h) == self.lambda(l1, self.lambda(l2, h)),
                        "lambda-associativity",
                        || vec![Item::Het(l1), Item::Het(l2), Item::Het(h)],
                    );
                }
                for m in out_of(mp, b, y) {
                    r.require(
                        self.lambda(l2, self.rho(h, m)) == self.rho(self.lambda(l2, h), m),
                        "actions-commute",
                        || vec![Item::Het(l2), Item::Het(h), Item::Het(m)],
                    );
                }
            }
            for m1 in out_of(mp, b, y) {
                let y1 = mp.element(m1).co;
                for m2 in out_of(mp, b, y1) {
                    r.require(
                        self.rho(self.rho(h, m1), m2) == self.rho(h, rm.mu(m1, m2)),
                        "rho-associativity",
                        || vec![Item::Het(h), Item::Het(m1), Item::Het(m2)],
                    );
                }
            }
            for x2 in a.objects() {
                for &f in a.hom(x2, x) {
                    r.require(self.lambda(lm.eta(f), h) == q.pre(f, h), "lambda-eta", || {
                        vec![Item::Mor(f), Item::Het(h)]
                    });
                }
            }
            for g in b.morphisms_from(y) {
                r.require(self.rho(h, rm.eta(g)) == q.post(h, g), "rho-eta", || vec![Item::Het(h), Item::Mor(g)]);
            }
        }
        r
    }
}

/// `E(j, e)` as a distributor `A ⇸ 1`.
pub fn representable_carrier(t: &RelativeMonad, e: Obj) -> Result<Distributor> {
    let one = Arc::new(FinCat::terminal());
    restrict_distributor(&Distributor::hom(t.ambient()), t.root(), &Functor::constant(&one, t.ambient(), e))
}

/// The module `E(j, e) : 1(1, 1) ⇸ E(j, T)` of an algebra, `λ(f, g) = f ⨾ g^α`.
pub fn algebra_module(t: &RelativeMonad, alg: &Algebra) -> Result<LooseMonadModule> {
    check_algebra(t, alg).into_result("algebra")?;
    let e = t.ambient();
    let assoc = associated_loose_monad(t)?;
    let carrier = representable_carrier(t, alg.carrier)?;
    let one = carrier.co().clone();
    let unit = loose_identity(&one);
    let kl = t.kleisli_index();
    let mut lambda = Vec::new();
    for (k, &(x, y, f)) in kl.entries().iter().enumerate() {
        for (i, h) in carrier.het(y, 0).enumerate() {
            let g = e.hom(t.root().ob(y), alg.carrier)[i];
            let out = e.compose(f, alg.extend(t, y, g));
            let pos = e.hom(t.root().ob(x), alg.carrier).iter().position(|&m| m == out).expect("f ⨾ g^α : j x → e");
            lambda.push((k, h, carrier.het(x, 0).start + pos));
        }
    }
    let rho: Vec<(Het, Het, Het)> = (0..carrier.len()).map(|h| (h, 0, h)).collect();
    LooseMonadModule::new(assoc, unit, carrier, lambda, rho)
}

/// Reads `g^α` off a module on `E(j, e)` as the unique `h : t y → e` with
/// `λ(f, g) = f ⨾ h` for all `f : j x → t y`. `None` if some `h` is not unique
/// or the result is not an algebra.
pub fn module_to_algebra(t: &RelativeMonad, carrier: Obj, m: &LooseMonadModule) -> Result<Option<Algebra>> {
    let e = t.ambient();
    let j = t.root();
    let q = &m.carrier;
    if q != &representable_carrier(t, carrier)? {
        return Err(Error::Mismatch("module is not carried by E(j, e)".into()));
    }
    let kl = t.kleisli_index();
    let mut aop = Vec::new();
    for y in t.base().objects() {
        for g_het in q.het(y, 0) {
            let fits = |h| {
                t.base().objects().all(|x| {
                    kl.range(x, y).all(|k| {
                        let f = kl.entry(k).2;
                        let out = m.lambda(k, g_het) - q.het(x, 0).start;
                        e.hom(j.ob(x), carrier)[out] == e.compose(f, h)
                    })
                })
            };
            let candidates: Vec<usize> = e.hom(t.t(y), carrier).iter().copied().filter(|&h| fits(h)).collect();
            match candidates.as_slice() {
                [h] => aop.push(*h),
                _ => return Ok(None),
            }
        }
    }
    let alg = Algebra::new(t, carrier, aop)?;
    Ok(check_algebra(t, &alg).passed().then_some(alg))
}

/// All module structures `1(1, 1) ⇸ E(j, T)` on `E(j, e)`, keyed by `λ` tables.
pub fn enumerate_modules(t: &RelativeMonad, e: Obj, caps: &Caps) -> Result<Vec<LooseMonadModule>> {
    let assoc = associated_loose_monad(t)?;
    let carrier = representable_carrier(t, e)?;
    let one = carrier.co().clone();
    let unit = loose_identity(&one);
    let lp = assoc.carrier();
    let a = t.base();
    let mut keys = Vec::new();
    for l in 0..lp.len() {
        let (x, y) = (lp.element(l).contra, lp.element(l).co);
        for h in carrier.het(y, 0) {
            keys.push((l, h, x));
        }
    }
    let position = |l: Het, h: Het| keys.iter().position(|&(l2, h2, _)| (l2, h2) == (l, h));
    let n_keys = keys.len();
    let table: Vec<Vec<Option<usize>>> = (0..lp.len())
        .map(|l| (0..carrier.len()).map(|h| position(l, h)).collect())
        .collect();
    let table = &table;
    let assoc_ref = &assoc;
    let mut search = Search::new(caps.max_search_nodes);
    for &(l, h, x) in &keys {
        let mut domain: Vec<usize> = carrier.het(x, 0).collect();
        let y = lp.element(l).co;
        for &f in a.hom(x, y) {
            if assoc.eta(f) == l {
                let forced = carrier.pre(f, h);
                domain.retain(|&v| v == forced);
            }
        }
        search.var(domain);
    }
    for (i, &(l2, h, x1)) in keys.iter().enumerate() {
        for x0 in a.objects() {
            for l1 in lp.het(x0, x1) {
                let outer = table[assoc_ref.mu(l1, l2)][h].expect("key exists");
                let row: Vec<usize> = (0..n_keys).filter(|&k| keys[k].0 == l1).collect();
                let mut scope = row;
                scope.push(i);
                scope.push(outer);
                search.constrain(&scope, move |s| {
                    let (Some(inner), Some(lhs)) = (s.get(i), s.get(outer)) else { return true };
                    let Some(k) = table[l1][inner] else { return false };
                    s.get(k).is_none_or(|v| v == lhs)
                });
            }
        }
    }
    let rho: Vec<(Het, Het, Het)> = (0..carrier.len()).map(|h| (h, 0, h)).collect();
    search
        .all(usize::MAX)?
        .into_iter()
        .map(|sol| {
            let lambda = keys.iter().zip(&sol).map(|(&(l, h, _), &v)| (l, h, v));
            LooseMonadModule::new(assoc.clone(), unit.clone(), carrier.clone(), lambda, rho.clone())
        })
        .collect()
}
