use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{build_kleisli, enumerate_algebras, Algebras};
use crate::error::{Caps, Error, Result};
use crate::fincat::{is_strict_isomorphism, DensityWitness, FinCat, Functor, Mor, Obj};
use crate::nervepullback::nerve::is_dense;
use crate::nervepullback::pullback::{build_nerve_pullback, comparison_to_pullback};
use crate::relmonad::{require_valid, PairIndex, RelativeMonad};
use crate::report::{Item, LawReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveTheoremReport {
    pub dense: bool,
    pub comparison_iso: bool,
    pub nerve_of_comparison_ok: bool,
    pub density_witness: Option<DensityWitness>,
    pub nerve_of_comparison: LawReport,
}

impl NerveTheoremReport {
    /// Density implies the comparison is an isomorphism.
    pub fn theorem_holds(&self) -> bool {
        !self.dense || self.comparison_iso
    }

    pub fn relabel(self) -> ConerveTheoremReport {
        ConerveTheoremReport {
            codense: self.dense,
            comparison_iso: self.comparison_iso,
            conerve_of_comparison_ok: self.nerve_of_comparison_ok,
            codensity_witness: self.density_witness,
            conerve_of_comparison: self.nerve_of_comparison,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConerveTheoremReport {
    pub codense: bool,
    pub comparison_iso: bool,
    pub conerve_of_comparison_ok: bool,
    pub codensity_witness: Option<DensityWitness>,
    pub conerve_of_comparison: LawReport,
}

impl ConerveTheoremReport {
    pub fn theorem_holds(&self) -> bool {
        !self.codense || self.comparison_iso
    }
}

/// `g ↦ g^α` is a natural bijection `E(j x, e) ≅ Alg(T)(i_T x, (e, α))`.
pub fn check_nerve_of_comparison(t: &RelativeMonad, alg: &Algebras) -> LawReport {
    let e = t.ambient();
    let j = t.root();
    let cat = &alg.category;
    let idx = t.kleisli_index();
    let mut r = LawReport::new();
    for (d, a) in alg.algebras.iter().enumerate() {
        for x in t.base().objects() {
            let free = alg.free.ob(x);
            let mut hit = vec![false; cat.hom(free, d).len()];
            for &g in e.hom(j.ob(x), a.carrier) {
                match alg.morphism_over(free, d, a.extend(t, x, g)) {
                    Some(m) => {
                        let pos = cat.hom(free, d).iter().position(|&q| q == m).expect("in hom");
                        r.require(!std::mem::replace(&mut hit[pos], true), "nerve-comparison-injective", || {
                            vec![Item::Obj(d), Item::Obj(x), Item::Mor(g)]
                        });
                    }
                    None => r.push("nerve-comparison-lands", vec![Item::Obj(d), Item::Obj(x), Item::Mor(g)]),
                }
            }
            r.require(hit.iter().all(|&h| h), "nerve-comparison-surjective", || vec![Item::Obj(d), Item::Obj(x)]);
        }
        for (k, &(x, x2, f)) in idx.entries().iter().enumerate() {
            for &g in e.hom(j.ob(x2), a.carrier) {
                let ga = a.extend(t, x2, g);
                let lhs = a.extend(t, x, e.compose(f, ga));
                r.require(lhs == e.compose(t.extend_at(k), ga), "nerve-comparison-natural", || {
                    vec![Item::Obj(d), Item::Mor(f), Item::Mor(g)]
                });
            }
        }
    }
    r
}

pub fn check_nerve_theorem(t: &RelativeMonad, caps: &Caps) -> Result<NerveTheoremReport> {
    let density = is_dense(t.root(), caps)?;
    let kl = build_kleisli(t)?;
    let alg = enumerate_algebras(t, caps)?;
    let np = build_nerve_pullback(t, &kl, caps)?;
    let cmp = comparison_to_pullback(t, &alg, &np)?;
    let nerve_of_comparison = check_nerve_of_comparison(t, &alg);
    Ok(NerveTheoremReport {
        dense: density.dense,
        comparison_iso: is_strict_isomorphism(&cmp),
        nerve_of_comparison_ok: nerve_of_comparison.passed(),
        density_witness: density.witness,
        nerve_of_comparison,
    })
}

/// A comonad relative to `i : Z → U`: `d`, counit `ε_x : d x → i x` and
/// coextension `f ↦ f‡ : d x → d y` for `f : d x → i y`, in
/// `PairIndex(d, i)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeComonad {
    root: Functor,
    carrier: Vec<Obj>,
    counit: Vec<Mor>,
    coextension: Vec<Mor>,
    index: PairIndex,
}

impl RelativeComonad {
    pub fn new(root: Functor, carrier: Vec<Obj>, counit: Vec<Mor>, coextension: Vec<Mor>) -> Result<Self> {
        let (z, u) = (root.source(), root.target());
        if carrier.len() != z.object_count() || carrier.iter().any(|&o| o >= u.object_count()) {
            return Err(Error::malformed("relative comonad", "carrier map is not total"));
        }
        if counit.len() != z.object_count() {
            return Err(Error::malformed("relative comonad", "counit is not total"));
        }
        for x in z.objects() {
            let c = counit[x];
            if c >= u.morphism_count() || u.src(c) != carrier[x] || u.tgt(c) != root.ob(x) {
                return Err(Error::malformed("relative comonad", "counit has wrong endpoints"));
            }
        }
        let index = PairIndex::new(u, &carrier, root.object_map());
        if coextension.len() != index.len() {
            return Err(Error::malformed("relative comonad", "coextension is not total"));
        }
        for (&(x, y, _), &m) in index.entries().iter().zip(&coextension) {
            if m >= u.morphism_count() || u.src(m) != carrier[x] || u.tgt(m) != carrier[y] {
                return Err(Error::malformed("relative comonad", "coextension lies outside U(d x, d y)"));
            }
        }
        Ok(RelativeComonad {
            root,
            carrier,
            counit,
            coextension,
            index,
        })
    }

    pub fn root(&self) -> &Functor {
        &self.root
    }

    pub fn carrier(&self) -> &[Obj] {
        &self.carrier
    }

    pub fn counit(&self, x: Obj) -> Mor {
        self.counit[x]
    }

    pub fn index(&self) -> &PairIndex {
        &self.index
    }

    /// `f‡` for `f : d x → i y`.
    pub fn coextend(&self, x: Obj, y: Obj, f: Mor) -> Mor {
        self.coextension[self.index.position(x, y, f).expect("morphism lies in U(d x, i y)")]
    }
}

/// `f‡ ⨾ ε_y = f`, `ε_x‡ = id`, and `(f‡ ⨾ g)‡ = f‡ ⨾ g‡` for `g : d y → i z`.
pub fn check_relative_comonad(c: &RelativeComonad) -> LawReport {
    let u = c.root.target();
    let idx = &c.index;
    let mut r = LawReport::new();
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        r.require(u.compose(c.coextension[k], c.counit[y]) == f, "colaw-1-counit", || {
            vec![Item::Obj(x), Item::Obj(y), Item::Mor(f)]
        });
    }
    for x in c.root.source().objects() {
        r.require(c.coextend(x, x, c.counit[x]) == u.identity(c.carrier[x]), "colaw-2-coextension-of-counit", || {
            vec![Item::Obj(x)]
        });
    }
    for (k, &(x, y, f)) in idx.entries().iter().enumerate() {
        let fd = c.coextension[k];
        for z in c.root.source().objects() {
            for kg in idx.range(y, z) {
                let g = idx.entry(kg).2;
                let lhs = c.coextend(x, z, u.compose(fd, g));
                r.require(lhs == u.compose(fd, c.coextension[kg]), "colaw-3-coassociativity", || {
                    vec![Item::Mor(f), Item::Mor(g)]
                });
            }
        }
    }
    r
}

/// The comonad on `j^op : A^op → E^op` with the monad's tables.
pub fn dualize_monad(t: &RelativeMonad) -> RelativeComonad {
    let a_op = Arc::new(t.base().opposite());
    let e_op = Arc::new(t.ambient().opposite());
    let root = t.root().opposite_between(&a_op, &e_op);
    let index = PairIndex::new(&e_op, t.carrier(), root.object_map());
    let coextension = index.entries().iter().map(|&(x, y, f)| t.extend(y, x, f)).collect();
    RelativeComonad::new(root, t.carrier().to_vec(), t.unit().to_vec(), coextension)
        .expect("dual tables are well formed")
}

/// The monad on `i^op : Z^op → U^op` with the comonad's tables.
pub fn dualize_comonad(c: &RelativeComonad) -> RelativeMonad {
    let z_op: Arc<FinCat> = Arc::new(c.root.source().opposite());
    let u_op = Arc::new(c.root.target().opposite());
    let root = c.root.opposite_between(&z_op, &u_op);
    RelativeMonad::from_fn(root, c.carrier.clone(), c.counit.clone(), |x, y, f| c.coextend(y, x, f))
        .expect("dual tables are well formed")
}

/// The nerve theorem for the dual monad, relabelled.
pub fn check_conerve_theorem(c: &RelativeComonad, caps: &Caps) -> Result<ConerveTheoremReport> {
    let r = check_relative_comonad(c);
    r.into_result("relative comonad")?;
    let t = dualize_comonad(c);
    require_valid(&t)?;
    Ok(check_nerve_theorem(&t, caps)?.relabel())
}
