use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, Mor, Obj};
use crate::relmonad::index::PairIndex;
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A monad relative to a root functor `j : A → E`.
///
/// Holds the carrier object map `t`, the unit `η_x : j x → t x`, and the
/// extension `f ↦ f† : t x → t y` for every `f : j x → t y`, stored in the
/// order of [`RelativeMonad::kleisli_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeMonad {
    root: Functor,
    carrier: Vec<Obj>,
    unit: Vec<Mor>,
    extension: Vec<Mor>,
    index: PairIndex,
}

impl RelativeMonad {
    /// Checks shapes and endpoints; laws are checked by [`check_relative_monad`].
    pub fn new(root: Functor, carrier: Vec<Obj>, unit: Vec<Mor>, extension: Vec<Mor>) -> Result<Self> {
        let a = root.source().clone();
        let e = root.target().clone();
        if carrier.len() != a.object_count() || carrier.iter().any(|&o| o >= e.object_count()) {
            return Err(Error::malformed("relative monad", "carrier map is not total"));
        }
        if unit.len() != a.object_count() {
            return Err(Error::malformed("relative monad", "unit is not total"));
        }
        for x in a.objects() {
            let u = unit[x];
            if u >= e.morphism_count() || e.src(u) != root.ob(x) || e.tgt(u) != carrier[x] {
                return Err(Error::malformed("relative monad", format!("unit at {} has wrong endpoints", a.object_name(x))));
            }
        }
        let index = PairIndex::new(&e, root.object_map(), &carrier);
        if extension.len() != index.len() {
            return Err(Error::malformed("relative monad", "extension is not total"));
        }
        for (k, &(x, y, f)) in index.entries().iter().enumerate() {
            let d = extension[k];
            if d >= e.morphism_count() || e.src(d) != carrier[x] || e.tgt(d) != carrier[y] {
                return Err(Error::malformed(
                    "relative monad",
                    format!("extension of morphism {f} at ({x}, {y}) lies outside E(t x, t y)"),
                ));
            }
        }
        Ok(RelativeMonad {
            root,
            carrier,
            unit,
            extension,
            index,
        })
    }

    /// Builds the extension table from a function of `(x, y, f)`.
    pub fn from_fn(
        root: Functor,
        carrier: Vec<Obj>,
        unit: Vec<Mor>,
        extension: impl Fn(Obj, Obj, Mor) -> Mor,
    ) -> Result<Self> {
        let index = PairIndex::new(root.target(), root.object_map(), &carrier);
        let table = index.entries().iter().map(|&(x, y, f)| extension(x, y, f)).collect();
        RelativeMonad::new(root, carrier, unit, table)
    }

    /// Builds the extension table from `(x, y, f, f†)` entries, each triple once.
    pub fn from_entries(
        root: Functor,
        carrier: Vec<Obj>,
        unit: Vec<Mor>,
        entries: &[(Obj, Obj, Mor, Mor)],
    ) -> Result<Self> {
        let n = root.source().object_count();
        if carrier.len() != n || carrier.iter().any(|&o| o >= root.target().object_count()) {
            return Err(Error::malformed("relative monad", "carrier map is not total"));
        }
        let index = PairIndex::new(root.target(), root.object_map(), &carrier);
        let mut table = vec![None; index.len()];
        for &(x, y, f, d) in entries {
            if x >= n || y >= n {
                return Err(Error::malformed("relative monad", "extension entry has a dangling object"));
            }
            let k = index.position(x, y, f).ok_or_else(|| {
                Error::malformed("relative monad", format!("morphism {f} is not in E(j x, t y) for ({x}, {y})"))
            })?;
            if table[k].replace(d).is_some_and(|prev| prev != d) {
                return Err(Error::malformed("relative monad", format!("extension of ({x}, {y}, {f}) given twice")));
            }
        }
        let table: Option<Vec<Mor>> = table.into_iter().collect();
        let table = table.ok_or_else(|| Error::malformed("relative monad", "extension is not total"))?;
        RelativeMonad::new(root, carrier, unit, table)
    }

    pub fn root(&self) -> &Functor {
        &self.root
    }

    /// The domain `A` of the root.
    pub fn base(&self) -> &Arc<FinCat> {
        self.root.source()
    }

    /// The codomain `E` of the root.
    pub fn ambient(&self) -> &Arc<FinCat> {
        self.root.target()
    }

    pub fn t(&self, x: Obj) -> Obj {
        self.carrier[x]
    }

    pub fn carrier(&self) -> &[Obj] {
        &self.carrier
    }

    pub fn eta(&self, x: Obj) -> Mor {
        self.unit[x]
    }

    pub fn unit(&self) -> &[Mor] {
        &self.unit
    }

    /// Numbering of the triples `(x, y, f : j x → t y)`.
    pub fn kleisli_index(&self) -> &PairIndex {
        &self.index
    }

    pub fn extension_table(&self) -> &[Mor] {
        &self.extension
    }

    /// `f†` for the `k`-th triple.
    pub fn extend_at(&self, k: usize) -> Mor {
        self.extension[k]
    }

    /// `f†` for `f : j x → t y`.
    ///
    /// # Panics
    /// If `f` is not in `E(j x, t y)`.
    pub fn extend(&self, x: Obj, y: Obj, f: Mor) -> Mor {
        let k = self.index.position(x, y, f).expect("morphism lies in E(j x, t y)");
        self.extension[k]
    }

    /// A copy with one extension entry replaced; endpoints are rechecked.
    pub fn with_extension_at(&self, k: usize, value: Mor) -> Result<RelativeMonad> {
        let mut table = self.extension.clone();
        table[k] = value;
        RelativeMonad::new(self.root.clone(), self.carrier.clone(), self.unit.clone(), table)
    }
}

/// Verdicts of [`check_relative_monad`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadCheck {
    /// Laws 1–3.
    pub laws: LawReport,
    /// `(η_x ⨾ f† ⨾ g†)† = f† ⨾ g†` for all composable `f`, `g`.
    pub alternative_associativity: LawReport,
}

impl MonadCheck {
    pub fn passed(&self) -> bool {
        self.laws.passed()
    }

    pub fn law3_holds(&self) -> bool {
        !self.laws.violates(LAW_3)
    }

    /// Whether law 3 and the alternative form give the same verdict.
    ///
    /// Under law 1 both sides rewrite to the same equation, so they always
    /// agree when law 1 holds.
    pub fn formulations_agree(&self) -> bool {
        self.law3_holds() == self.alternative_associativity.passed()
    }
}

pub const LAW_1: &str = "law-1-unit";
pub const LAW_2: &str = "law-2-extension-of-unit";
pub const LAW_3: &str = "law-3-associativity";
pub const ALT_ASSOC: &str = "alternative-associativity";

/// Checks the three relative monad laws and, separately, the alternative
/// associativity equation.
pub fn check_relative_monad(t: &RelativeMonad) -> MonadCheck {
    let e = t.ambient();
    let a = t.base();
    let idx = t.kleisli_index();
    let mut laws = LawReport::new();
    let mut alt = LawReport::new();
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        laws.require(e.compose(t.eta(x), t.extend_at(k)) == f, LAW_1, || {
            vec![Item::Obj(x), Item::Obj(y), Item::Mor(f)]
        });
    }
    for x in a.objects() {
        laws.require(t.extend(x, x, t.eta(x)) == e.identity(t.t(x)), LAW_2, || vec![Item::Obj(x)]);
    }
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        let fd = t.extend_at(k);
        for z in a.objects() {
            for kg in idx.range(y, z) {
                let g = idx.entry(kg).2;
                let gd = t.extend_at(kg);
                let rhs = e.compose(fd, gd);
                let lhs = t.extend(x, z, e.compose(f, gd));
                laws.require(lhs == rhs, LAW_3, || {
                    vec![Item::Obj(x), Item::Obj(y), Item::Obj(z), Item::Mor(f), Item::Mor(g)]
                });
                let alt_lhs = t.extend(x, z, e.compose(t.eta(x), rhs));
                alt.require(alt_lhs == rhs, ALT_ASSOC, || {
                    vec![Item::Obj(x), Item::Obj(y), Item::Obj(z), Item::Mor(f), Item::Mor(g)]
                });
            }
        }
    }
    MonadCheck {
        laws,
        alternative_associativity: alt,
    }
}

/// Fails with the law report unless `t` satisfies laws 1–3.
pub fn require_valid(t: &RelativeMonad) -> Result<()> {
    check_relative_monad(t).laws.into_result("relative monad")
}

/// The carrier functor `t(f) = (j f ⨾ η_y)†`, with a report on the
/// naturality of `η` and `†`.
pub fn carrier_functor(t: &RelativeMonad) -> Result<(Functor, LawReport)> {
    require_valid(t)?;
    let a = t.base();
    let e = t.ambient();
    let j = t.root();
    let mor: Vec<Mor> = a
        .morphism_ids()
        .map(|f| {
            let (x, y) = (a.src(f), a.tgt(f));
            t.extend(x, y, e.compose(j.mor(f), t.eta(y)))
        })
        .collect();
    let functor = Functor::new(a.clone(), e.clone(), t.carrier().to_vec(), mor)?;
    let mut r = functor.validate();
    if !r.passed() {
        return Ok((functor, r));
    }
    for f in a.morphism_ids() {
        let (x, y) = (a.src(f), a.tgt(f));
        r.require(
            e.compose(j.mor(f), t.eta(y)) == e.compose(t.eta(x), functor.mor(f)),
            "unit-naturality",
            || vec![Item::Mor(f)],
        );
    }
    let idx = t.kleisli_index();
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        let fd = t.extend_at(k);
        for x2 in a.objects() {
            for &p in a.hom(x2, x) {
                for y2 in a.objects() {
                    for &q in a.hom(y, y2) {
                        let moved = e.compose_path(&[j.mor(p), f, functor.mor(q)]);
                        let lhs = t.extend(x2, y2, moved);
                        let rhs = e.compose_path(&[functor.mor(p), fd, functor.mor(q)]);
                        r.require(lhs == rhs, "extension-naturality", || {
                            vec![Item::Mor(p), Item::Mor(f), Item::Mor(q)]
                        });
                    }
                }
            }
        }
    }
    Ok((functor, r))
}

/// The identity monad on `A`: root and carrier the identity, `η = id`, `f† = f`.
pub fn identity_monad(a: &Arc<FinCat>) -> RelativeMonad {
    trivial_monad(&Functor::identity(a))
}

/// The trivial `j`-monad: `t = j`, `η = id`, `f† = f`.
pub fn trivial_monad(j: &Functor) -> RelativeMonad {
    let e = j.target().clone();
    let carrier = j.object_map().to_vec();
    let unit = carrier.iter().map(|&o| e.identity(o)).collect();
    RelativeMonad::from_fn(j.clone(), carrier, unit, |_, _, f| f).expect("trivial monad tables are well formed")
}

/// `S` restricted along `j`, for a monad `S` on `E` with identity root.
pub fn restrict_monad(s: &RelativeMonad, j: &Functor) -> Result<RelativeMonad> {
    let e = s.ambient();
    if s.root() != &Functor::identity(e) {
        return Err(Error::Mismatch("restriction needs a monad with identity root".into()));
    }
    if j.target() != e {
        return Err(Error::Mismatch("root does not land in the monad's category".into()));
    }
    require_valid(s)?;
    let carrier: Vec<Obj> = j.object_map().iter().map(|&o| s.t(o)).collect();
    let unit = j.object_map().iter().map(|&o| s.eta(o)).collect();
    RelativeMonad::from_fn(j.clone(), carrier, unit, |x, y, f| s.extend(j.ob(x), j.ob(y), f))
}

/// Extension tables completing `(j, t, η)` to a relative monad, found by
/// search. `order` may permute each candidate list `E(t x, t y)` first, so
/// that the solutions come out in a chosen order; at most `limit` are
/// returned.
pub fn search_extensions(
    root: &Functor,
    carrier: &[Obj],
    unit: &[Mor],
    node_limit: usize,
    limit: usize,
    mut order: impl FnMut(&mut Vec<Mor>),
) -> Result<Vec<RelativeMonad>> {
    let e = root.target().as_ref();
    let n = root.source().object_count();
    if carrier.len() != n || unit.len() != n {
        return Err(Error::malformed("relative monad", "carrier or unit is not total"));
    }
    let idx = PairIndex::new(e, root.object_map(), carrier);
    let mut search = Search::new(node_limit);
    for &(x, y, _) in idx.entries() {
        let mut domain = e.hom(carrier[x], carrier[y]).to_vec();
        order(&mut domain);
        search.var(domain);
    }
    let idx_ref = &idx;
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        let ex = unit[x];
        search.constrain(&[k], move |p| p.get(k).is_none_or(|d| e.try_compose(ex, d) == Some(f)));
        if x == y && f == ex {
            let id = e.identity(carrier[x]);
            search.constrain(&[k], move |p| p.get(k).is_none_or(|d| d == id));
        }
    }
    for (kf, &(x, y, f)) in idx.entries().iter().enumerate() {
        for z in 0..n {
            for kg in idx.range(y, z) {
                let mut scope: Vec<usize> = idx.range(x, z).collect();
                scope.extend([kf, kg]);
                search.constrain(&scope, move |p| {
                    let (Some(fd), Some(gd)) = (p.get(kf), p.get(kg)) else {
                        return true;
                    };
                    let Some(k) = idx_ref.position(x, z, e.compose(f, gd)) else {
                        return false;
                    };
                    p.get(k).is_none_or(|lhs| lhs == e.compose(fd, gd))
                });
            }
        }
    }
    let mut found = Vec::new();
    search.run(|table| {
        found.push(table.to_vec());
        if found.len() == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    found
        .into_iter()
        .map(|table| RelativeMonad::new(root.clone(), carrier.to_vec(), unit.to_vec(), table))
        .collect()
}
