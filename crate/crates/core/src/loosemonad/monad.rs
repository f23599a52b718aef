use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{restrict_distributor, Distributor, FinCat, Functor, Het, Mor, Morphism};
use crate::relmonad::{carrier_functor, require_valid, RelativeMonad};
use crate::report::{Item, LawReport};

/// A loose-monad (promonad) on `A`: a distributor `A ⇸ A` with
/// `μ(h₁, h₂) : x ⇝ z` for `h₁ : x ⇝ y`, `h₂ : y ⇝ z`, and `η : A(x, y) → het(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseMonad {
    carrier: Distributor,
    mu: Vec<Option<Het>>,
    eta: Vec<Het>,
}

impl LooseMonad {
    /// `mu` lists `(h₁, h₂, μ(h₁, h₂))`; every composable pair must appear.
    pub fn new(
        carrier: Distributor,
        mu: impl IntoIterator<Item = (Het, Het, Het)>,
        eta: Vec<Het>,
    ) -> Result<LooseMonad> {
        if carrier.contra() != carrier.co() {
            return Err(Error::Mismatch("loose-monad carrier is not an endo-distributor".into()));
        }
        let a = carrier.contra().clone();
        let n = carrier.len();
        let el = carrier.elements();
        let mut table = vec![None; n * n];
        for (h1, h2, h) in mu {
            if h1 >= n || h2 >= n || h >= n {
                return Err(Error::malformed("loose-monad", "multiplication entry is dangling"));
            }
            if el[h1].co != el[h2].contra || el[h].contra != el[h1].contra || el[h].co != el[h2].co {
                return Err(Error::malformed("loose-monad", format!("multiplication ({h1}, {h2}) has wrong endpoints")));
            }
            if table[h1 * n + h2].replace(h).is_some_and(|prev| prev != h) {
                return Err(Error::malformed("loose-monad", format!("multiplication ({h1}, {h2}) given twice")));
            }
        }
        for h1 in 0..n {
            for h2 in 0..n {
                if el[h1].co == el[h2].contra && table[h1 * n + h2].is_none() {
                    return Err(Error::malformed("loose-monad", format!("multiplication ({h1}, {h2}) is missing")));
                }
            }
        }
        if eta.len() != a.morphism_count() {
            return Err(Error::malformed("loose-monad", "unit is not total"));
        }
        for (f, &h) in eta.iter().enumerate() {
            if h >= n || el[h].contra != a.src(f) || el[h].co != a.tgt(f) {
                return Err(Error::malformed("loose-monad", format!("unit at morphism {f} has wrong endpoints")));
            }
        }
        Ok(LooseMonad { carrier, mu: table, eta })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.carrier.contra()
    }

    pub fn carrier(&self) -> &Distributor {
        &self.carrier
    }

    pub fn mu(&self, h1: Het, h2: Het) -> Het {
        self.mu[h1 * self.carrier.len() + h2].expect("composable heteromorphisms")
    }

    pub fn eta(&self, f: Mor) -> Het {
        self.eta[f]
    }

    pub fn eta_table(&self) -> &[Het] {
        &self.eta
    }

    /// `(h₁, h₂, μ(h₁, h₂))` for all composable pairs, in id order.
    pub fn mu_entries(&self) -> impl Iterator<Item = (Het, Het, Het)> + '_ {
        let n = self.carrier.len();
        (0..n * n).filter_map(move |i| self.mu[i].map(|h| (i / n, i % n, h)))
    }

    fn composable_from(&self, y: usize) -> impl Iterator<Item = Het> + '_ {
        let a = self.base();
        a.objects().flat_map(move |z| self.carrier.het(y, z))
    }
}

/// Carrier laws (scoped `carrier/`), associativity, units, naturality of
/// `η`, and naturality of `μ` in all three positions.
pub fn check_loose_monad(l: &LooseMonad) -> LawReport {
    let mut r = LawReport::new();
    r.merge_scoped("carrier", l.carrier.validate());
    if !r.passed() {
        return r;
    }
    let a = l.base();
    let p = &l.carrier;
    let n = p.len();
    for h1 in 0..n {
        let y = p.element(h1).co;
        for h2 in l.composable_from(y) {
            let z = p.element(h2).co;
            for h3 in l.composable_from(z) {
                r.require(l.mu(l.mu(h1, h2), h3) == l.mu(h1, l.mu(h2, h3)), "associativity", || {
                    vec![Item::Het(h1), Item::Het(h2), Item::Het(h3)]
                });
            }
        }
    }
    for h in 0..n {
        let (x, y) = (p.element(h).contra, p.element(h).co);
        r.require(l.mu(l.eta(a.identity(x)), h) == h, "left-unit", || vec![Item::Het(h)]);
        r.require(l.mu(h, l.eta(a.identity(y))) == h, "right-unit", || vec![Item::Het(h)]);
    }
    for (f, g, fg) in a.composite_entries() {
        r.require(p.pre(f, l.eta(g)) == l.eta(fg), "eta-natural-pre", || vec![Item::Mor(f), Item::Mor(g)]);
        r.require(p.post(l.eta(f), g) == l.eta(fg), "eta-natural-post", || vec![Item::Mor(f), Item::Mor(g)]);
    }
    for h1 in 0..n {
        let (x, y) = (p.element(h1).contra, p.element(h1).co);
        for h2 in l.composable_from(y) {
            let z = p.element(h2).co;
            let m = l.mu(h1, h2);
            for x2 in a.objects() {
                for &f in a.hom(x2, x) {
                    r.require(l.mu(p.pre(f, h1), h2) == p.pre(f, m), "mu-natural-pre", || {
                        vec![Item::Mor(f), Item::Het(h1), Item::Het(h2)]
                    });
                }
            }
            for g in a.morphisms_from(z) {
                r.require(l.mu(h1, p.post(h2, g)) == p.post(m, g), "mu-natural-post", || {
                    vec![Item::Het(h1), Item::Het(h2), Item::Mor(g)]
                });
            }
        }
        for g in a.morphisms_from(y) {
            let y2 = a.tgt(g);
            for h2 in l.composable_from(y2) {
                r.require(l.mu(p.post(h1, g), h2) == l.mu(h1, p.pre(g, h2)), "mu-balanced", || {
                    vec![Item::Het(h1), Item::Mor(g), Item::Het(h2)]
                });
            }
        }
    }
    r
}

/// Position of morphism `m` in the hom-distributor of `c`.
pub fn hom_het(c: &FinCat, d: &Distributor, m: Mor) -> Het {
    let (x, y) = (c.src(m), c.tgt(m));
    d.het(x, y).start + c.hom(x, y).iter().position(|&k| k == m).expect("m ∈ C(x, y)")
}

/// The loose-identity `A(1, 1)`: hom-distributor, composition, and `η(f) = f`.
pub fn loose_identity(a: &Arc<FinCat>) -> LooseMonad {
    let d = Distributor::hom(a);
    let mu: Vec<(Het, Het, Het)> = a
        .composite_entries()
        .map(|(f, g, fg)| (hom_het(a, &d, f), hom_het(a, &d, g), hom_het(a, &d, fg)))
        .collect();
    let eta = a.morphism_ids().map(|f| hom_het(a, &d, f)).collect();
    LooseMonad::new(d, mu, eta).expect("loose-identity tables are total")
}

/// `E(j, T)`: carrier `E(j, t)`, `μ(f, g) = f ⨾ g†`, `η(p) = j p ⨾ η_y`.
pub fn associated_loose_monad(t: &RelativeMonad) -> Result<LooseMonad> {
    require_valid(t)?;
    let e = t.ambient();
    let a = t.base();
    let j = t.root();
    let (tf, _) = carrier_functor(t)?;
    let carrier = restrict_distributor(&Distributor::hom(e), j, &tf)?;
    let idx = t.kleisli_index();
    let mut mu = Vec::new();
    for (k1, &(x, y, f)) in idx.entries().iter().enumerate() {
        for z in a.objects() {
            for k2 in idx.range(y, z) {
                let h = e.compose(f, t.extend_at(k2));
                mu.push((k1, k2, idx.position(x, z, h).expect("f ⨾ g† : j x → t z")));
            }
        }
    }
    let eta = a
        .morphism_ids()
        .map(|p| {
            let (x, y) = (a.src(p), a.tgt(p));
            idx.position(x, y, e.compose(j.mor(p), t.eta(y))).expect("j p ⨾ η_y")
        })
        .collect();
    LooseMonad::new(carrier, mu, eta)
}

/// The collapse of a loose-monad, its projection, and the cartesian check.
#[derive(Debug, Clone)]
pub struct Collapse {
    pub category: Arc<FinCat>,
    /// `π : A → collapse`, identity on objects and `η` on morphisms.
    pub projection: Functor,
    /// Passes iff `hom_collapse(π, π)` equals the carrier bit-exactly.
    pub certificate: LawReport,
}

/// Objects of `A`, morphisms the heteromorphisms, composition `μ`, identities `η(id)`.
pub fn collapse(l: &LooseMonad) -> Result<Collapse> {
    check_loose_monad(l).into_result("loose-monad")?;
    let a = l.base();
    let p = &l.carrier;
    let morphisms = p
        .elements()
        .iter()
        .map(|el| Morphism {
            name: el.name.clone(),
            src: el.contra,
            tgt: el.co,
        })
        .collect();
    let identities = a.objects().map(|x| l.eta(a.identity(x))).collect();
    let category = Arc::new(FinCat::new(a.object_names().to_vec(), morphisms, identities, l.mu_entries())?);
    let projection = Functor::new(a.clone(), category.clone(), a.objects().collect(), l.eta.clone())?;
    let mut certificate = LawReport::new();
    let restricted = restrict_distributor(&Distributor::hom(&category), &projection, &projection)?;
    certificate.require(&restricted == p, "cartesian", Vec::new);
    Ok(Collapse {
        category,
        projection,
        certificate,
    })
}
