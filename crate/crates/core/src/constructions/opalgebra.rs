use crate::error::{Caps, Error, Result};
use crate::fincat::{functors_within, Functor, Mor};
use crate::loosemonad::{associated_loose_monad, factor_through_collapse, Factorization, LooseMonadMorphism};
use crate::relmonad::{require_valid, RelativeMonad};
use crate::report::{Item, LawReport};

/// An opalgebra `(a, ⋉)`: a functor `a : A → B` and `f ↦ ⋉f : a x → a y` for
/// Kleisli morphisms `f : j x → t y`, listed in Kleisli-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Opalgebra {
    pub a: Functor,
    pub oop: Vec<Mor>,
}

impl Opalgebra {
    pub fn new(t: &RelativeMonad, a: Functor, oop: Vec<Mor>) -> Result<Opalgebra> {
        if a.source() != t.base() {
            return Err(Error::Mismatch("opalgebra carrier does not start at the base of the monad".into()));
        }
        let kl = t.kleisli_index();
        if oop.len() != kl.len() {
            return Err(Error::malformed("opalgebra", "action table is not total"));
        }
        let b = a.target();
        for (&(x, y, _), &m) in kl.entries().iter().zip(&oop) {
            if m >= b.morphism_count() || b.src(m) != a.ob(x) || b.tgt(m) != a.ob(y) {
                return Err(Error::malformed("opalgebra", "action lies outside B(a x, a y)"));
            }
        }
        Ok(Opalgebra { a, oop })
    }

    /// The universal opalgebra `(k_T, f ↦ f)` into `Kl(T)`.
    pub fn universal(t: &RelativeMonad, free: &Functor) -> Result<Opalgebra> {
        Opalgebra::new(t, free.clone(), (0..t.kleisli_index().len()).collect())
    }
}

/// The opalgebra laws next to the loose-monad morphism check of the induced
/// 2-cell `E(j, T) ⇒ B(a, a)`; the two verdicts must agree.
#[derive(Debug, Clone)]
pub struct OpalgebraCheck {
    pub laws: LawReport,
    pub loose_morphism: LawReport,
}

impl OpalgebraCheck {
    pub fn passed(&self) -> bool {
        self.laws.passed()
    }

    pub fn agree(&self) -> bool {
        self.laws.passed() == self.loose_morphism.passed()
    }
}

/// `⋉(j p ⨾ η_y) = a p` and `⋉(f ⨾ g†) = ⋉f ⨾ ⋉g`.
pub fn check_opalgebra(t: &RelativeMonad, o: &Opalgebra) -> Result<OpalgebraCheck> {
    require_valid(t)?;
    let (a, e, j) = (t.base(), t.ambient(), t.root());
    let b = o.a.target();
    let kl = t.kleisli_index();
    let mut laws = LawReport::new();
    for p in a.morphism_ids() {
        let (x, y) = (a.src(p), a.tgt(p));
        let k = kl.position(x, y, e.compose(j.mor(p), t.eta(y))).expect("j p ⨾ η_y");
        laws.require(o.oop[k] == o.a.mor(p), "opalgebra-unit", || vec![Item::Mor(p)]);
    }
    for (k1, &(x, y, f)) in kl.entries().iter().enumerate() {
        for z in a.objects() {
            for k2 in kl.range(y, z) {
                let k = kl.position(x, z, e.compose(f, t.extend_at(k2))).expect("f ⨾ g† : j x → t z");
                laws.require(o.oop[k] == b.compose(o.oop[k1], o.oop[k2]), "opalgebra-multiplication", || {
                    vec![Item::Mor(f), Item::Mor(kl.entry(k2).2)]
                });
            }
        }
    }
    let assoc = associated_loose_monad(t)?;
    let loose_morphism = LooseMonadMorphism::into_loose_identity(assoc, o.a.clone(), &o.oop)?.check();
    Ok(OpalgebraCheck { laws, loose_morphism })
}

/// `[]_(a, ⋉) : Kl(T) → B`, `x ↦ a x`, `f ↦ ⋉f`, with the number of functors
/// satisfying `k_T ⨾ h = a` and `h f = ⋉f`.
pub fn opalgebra_factorization(t: &RelativeMonad, kleisli: &Functor, o: &Opalgebra, caps: &Caps) -> Result<Factorization> {
    let check = check_opalgebra(t, o)?;
    check.laws.into_result("opalgebra")?;
    let kl_cat = kleisli.target();
    let b = o.a.target();
    let functor = Functor::new(kl_cat.clone(), b.clone(), o.a.object_map().to_vec(), o.oop.clone())?;
    let found = functors_within(
        kl_cat,
        b,
        o.a.object_map().iter().map(|&x| vec![x]).collect(),
        o.oop.iter().map(|&m| vec![m]).collect(),
        caps.max_search_nodes,
        2,
    );
    let uniqueness_count = match found {
        Ok(v) => Some(v.iter().filter(|h| kleisli.then(h).is_ok_and(|c| &c == &o.a)).count()),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Factorization {
        functor,
        uniqueness_count,
    })
}

/// The same factorization computed through `collapse(E(j, T))`.
pub fn opalgebra_factorization_via_collapse(t: &RelativeMonad, o: &Opalgebra, caps: &Caps) -> Result<Factorization> {
    let assoc = associated_loose_monad(t)?;
    let m = LooseMonadMorphism::into_loose_identity(assoc, o.a.clone(), &o.oop)?;
    factor_through_collapse(&m, caps)
}
