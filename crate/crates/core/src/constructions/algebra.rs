use std::sync::Arc;

use crate::constructions::kleisli::Resolution;
use crate::error::{Caps, Error, Result};
use crate::fincat::{FinCat, Functor, Mor, Morphism, Obj};
use crate::relmonad::{carrier_functor, require_valid, RelativeAdjunction, RelativeMonad};
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A `T`-algebra: a carrier `e` and `g ↦ g^α : t x → e` for `g : j x → e`.
///
/// `aop` lists `g^α` for `x` in object order and `g` in id order within
/// `E(j x, e)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Algebra {
    pub carrier: Obj,
    pub aop: Vec<Mor>,
}

/// Flat positions of `(x, g)` with `g ∈ E(j x, e)`.
#[derive(Debug, Clone)]
pub(crate) struct CarrierIndex {
    offsets: Vec<usize>,
    entries: Vec<(Obj, Mor)>,
    homs: Vec<Vec<Mor>>,
}

impl CarrierIndex {
    pub(crate) fn new(t: &RelativeMonad, e: Obj) -> CarrierIndex {
        let cat = t.ambient();
        let mut offsets = Vec::new();
        let mut entries = Vec::new();
        let mut homs = Vec::new();
        for x in t.base().objects() {
            offsets.push(entries.len());
            let hom = cat.hom(t.root().ob(x), e).to_vec();
            entries.extend(hom.iter().map(|&g| (x, g)));
            homs.push(hom);
        }
        offsets.push(entries.len());
        CarrierIndex { offsets, entries, homs }
    }

    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn entries(&self) -> &[(Obj, Mor)] {
        &self.entries
    }

    pub(crate) fn position(&self, x: Obj, g: Mor) -> Option<usize> {
        self.homs[x].iter().position(|&m| m == g).map(|i| self.offsets[x] + i)
    }
}

impl Algebra {
    /// Checks shapes and endpoints against `T`.
    pub fn new(t: &RelativeMonad, carrier: Obj, aop: Vec<Mor>) -> Result<Algebra> {
        let e = t.ambient();
        if carrier >= e.object_count() {
            return Err(Error::malformed("algebra", "carrier is dangling"));
        }
        let idx = CarrierIndex::new(t, carrier);
        if aop.len() != idx.len() {
            return Err(Error::malformed("algebra", "extension table is not total"));
        }
        for (&(x, _), &h) in idx.entries().iter().zip(&aop) {
            if h >= e.morphism_count() || e.src(h) != t.t(x) || e.tgt(h) != carrier {
                return Err(Error::malformed("algebra", "extension lies outside E(t x, e)"));
            }
        }
        Ok(Algebra { carrier, aop })
    }

    /// `g^α` for `g : j x → e`.
    pub fn extend(&self, t: &RelativeMonad, x: Obj, g: Mor) -> Mor {
        let idx = CarrierIndex::new(t, self.carrier);
        self.aop[idx.position(x, g).expect("g : j x → e")]
    }
}

/// The free algebra `(t x, f ↦ f†)`.
pub fn free_algebra(t: &RelativeMonad, x: Obj) -> Algebra {
    let tx = t.t(x);
    let idx = CarrierIndex::new(t, tx);
    let aop = idx.entries().iter().map(|&(y, g)| t.extend(y, x, g)).collect();
    Algebra { carrier: tx, aop }
}

/// Unit `η_x ⨾ g^α = g` and associativity `(f ⨾ g^α)^α = f† ⨾ g^α`.
pub fn check_algebra(t: &RelativeMonad, alg: &Algebra) -> LawReport {
    let e = t.ambient();
    let idx = CarrierIndex::new(t, alg.carrier);
    let mut r = LawReport::new();
    if alg.aop.len() != idx.len() {
        r.push("algebra-total", vec![Item::Obj(alg.carrier)]);
        return r;
    }
    for (p, &(x, g)) in idx.entries().iter().enumerate() {
        r.require(e.compose(t.eta(x), alg.aop[p]) == g, "algebra-unit", || vec![Item::Obj(x), Item::Mor(g)]);
    }
    let kl = t.kleisli_index();
    for (k, &(x, y, f)) in kl.entries().iter().enumerate() {
        for (p, &(y2, g)) in idx.entries().iter().enumerate() {
            if y2 != y {
                continue;
            }
            let ga = alg.aop[p];
            let inner = idx.position(x, e.compose(f, ga)).expect("f ⨾ g^α : j x → e");
            r.require(alg.aop[inner] == e.compose(t.extend_at(k), ga), "algebra-associativity", || {
                vec![Item::Mor(f), Item::Mor(g)]
            });
        }
    }
    r
}

/// Whether `ε : e → e'` satisfies `g^α ⨾ ε = (g ⨾ ε)^α'` for all `g`.
pub fn is_algebra_morphism(t: &RelativeMonad, from: &Algebra, to: &Algebra, eps: Mor) -> bool {
    let e = t.ambient();
    let src = CarrierIndex::new(t, from.carrier);
    let tgt = CarrierIndex::new(t, to.carrier);
    src.entries().iter().enumerate().all(|(p, &(x, g))| {
        let moved = tgt.position(x, e.compose(g, eps)).expect("g ⨾ ε : j x → e'");
        e.compose(from.aop[p], eps) == to.aop[moved]
    })
}

/// All algebras on carrier `e`, in lexicographic order of tables.
pub fn algebras_on(t: &RelativeMonad, e: Obj, caps: &Caps) -> Result<Vec<Algebra>> {
    let cat = t.ambient().as_ref();
    let idx = CarrierIndex::new(t, e);
    let mut search = Search::new(caps.max_search_nodes);
    let vars: Vec<usize> = idx
        .entries()
        .iter()
        .map(|&(x, g)| {
            let domain = cat
                .hom(t.t(x), e)
                .iter()
                .copied()
                .filter(|&h| cat.compose(t.eta(x), h) == g)
                .collect();
            search.var(domain)
        })
        .collect();
    let kl = t.kleisli_index();
    let idx_ref = &idx;
    for (k, &(x, y, f)) in kl.entries().iter().enumerate() {
        let fd = t.extend_at(k);
        let row: Vec<usize> = idx.entries().iter().enumerate().filter(|(_, p)| p.0 == x).map(|(i, _)| vars[i]).collect();
        for (p, &(y2, _)) in idx.entries().iter().enumerate() {
            if y2 != y {
                continue;
            }
            let vg = vars[p];
            let mut scope = row.clone();
            scope.push(vg);
            search.constrain(&scope, move |s| {
                let Some(ga) = s.get(vg) else { return true };
                let inner = idx_ref.position(x, cat.compose(f, ga)).expect("f ⨾ g^α : j x → e");
                s.get(inner).is_none_or(|v| v == cat.compose(fd, ga))
            });
        }
    }
    search
        .all(usize::MAX)?
        .into_iter()
        .map(|aop| Ok(Algebra { carrier: e, aop }))
        .collect()
}

/// `Alg(T)` with `f_T ⊣_j u_T`.
#[derive(Debug, Clone)]
pub struct Algebras {
    pub category: Arc<FinCat>,
    /// Object `i` of the category.
    pub algebras: Vec<Algebra>,
    /// `u_T : Alg(T) → E`.
    pub forget: Functor,
    /// `f_T : A → Alg(T)`.
    pub free: Functor,
    pub resolution: Resolution,
}

impl Algebras {
    pub fn index_of(&self, alg: &Algebra) -> Option<Obj> {
        self.algebras.binary_search(alg).ok()
    }

    /// The morphism `ε : a → b` of `Alg(T)` over `eps`, if it is one.
    pub fn morphism_over(&self, a: Obj, b: Obj, eps: Mor) -> Option<Mor> {
        self.category.hom(a, b).iter().copied().find(|&m| self.forget.mor(m) == eps)
    }
}

pub fn enumerate_algebras(t: &RelativeMonad, caps: &Caps) -> Result<Algebras> {
    require_valid(t)?;
    let e = t.ambient();
    let a = t.base();
    let mut algebras = Vec::new();
    for c in e.objects() {
        algebras.extend(algebras_on(t, c, caps)?);
    }
    if algebras.len() > caps.max_objects * caps.max_objects {
        return Err(Error::Capacity {
            what: "algebras",
            needed: algebras.len(),
            limit: caps.max_objects * caps.max_objects,
        });
    }
    let mut counter = vec![0usize; e.object_count()];
    let names: Vec<String> = algebras
        .iter()
        .map(|alg| {
            let k = counter[alg.carrier];
            counter[alg.carrier] += 1;
            format!("{}#{k}", e.object_name(alg.carrier))
        })
        .collect();
    let mut morphisms = Vec::new();
    let mut over = Vec::new();
    for (i, from) in algebras.iter().enumerate() {
        for (k, to) in algebras.iter().enumerate() {
            for &eps in e.hom(from.carrier, to.carrier) {
                if is_algebra_morphism(t, from, to, eps) {
                    morphisms.push(Morphism {
                        name: e.morphism(eps).name.clone(),
                        src: i,
                        tgt: k,
                    });
                    over.push(eps);
                }
            }
        }
    }
    let find = |src: usize, tgt: usize, eps: Mor| {
        (0..morphisms.len()).find(|&m| morphisms[m].src == src && morphisms[m].tgt == tgt && over[m] == eps)
    };
    let mut identities = Vec::with_capacity(algebras.len());
    for (i, alg) in algebras.iter().enumerate() {
        identities.push(find(i, i, e.identity(alg.carrier)).expect("identities are algebra morphisms"));
    }
    let mut composites = Vec::new();
    for (m1, f) in morphisms.iter().enumerate() {
        for (m2, g) in morphisms.iter().enumerate() {
            if f.tgt == g.src {
                let h = find(f.src, g.tgt, e.compose(over[m1], over[m2]))
                    .ok_or_else(|| Error::Mismatch("algebra morphisms are not closed under composition".into()))?;
                composites.push((m1, m2, h));
            }
        }
    }
    let category = Arc::new(FinCat::new(names, morphisms, identities, composites)?);
    let forget = Functor::new(category.clone(), e.clone(), algebras.iter().map(|a| a.carrier).collect(), over)?;
    let lookup = |alg: &Algebra| algebras.binary_search(alg).expect("free algebras are algebras");
    let free_objects: Vec<Obj> = a.objects().map(|x| lookup(&free_algebra(t, x))).collect();
    let (tf, _) = carrier_functor(t)?;
    let mut free_mor = Vec::with_capacity(a.morphism_count());
    for p in a.morphism_ids() {
        let (x, y) = (a.src(p), a.tgt(p));
        let m = category
            .hom(free_objects[x], free_objects[y])
            .iter()
            .copied()
            .find(|&m| forget.mor(m) == tf.mor(p))
            .ok_or_else(|| Error::Mismatch("t(p) is not an algebra morphism between free algebras".into()))?;
        free_mor.push(m);
    }
    let free = Functor::new(a.clone(), category.clone(), free_objects.clone(), free_mor)?;
    let phi = a
        .objects()
        .map(|x| {
            category
                .objects()
                .map(|d| {
                    category
                        .hom(free_objects[x], d)
                        .iter()
                        .map(|&m| e.compose(t.eta(x), forget.mor(m)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let adjunction = RelativeAdjunction::new(t.root().clone(), free.clone(), forget.clone(), phi)?;
    let resolution = Resolution::certify(adjunction, t);
    Ok(Algebras {
        category,
        algebras,
        forget,
        free,
        resolution,
    })
}
