use crate::error::{Caps, Error, Result};
use crate::fincat::{functors_within, Functor, Het};
use crate::loosemonad::monad::{collapse, hom_het, loose_identity, LooseMonad};
use crate::relmonad::{carrier_functor, RelativeMonad};
use crate::report::{Item, LawReport};

/// A loose-monad morphism `(f, φ) : L → M` over `f : A → B`, with
/// `φ : het_L(x, y) → het_M(f x, f y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseMonadMorphism {
    pub source: LooseMonad,
    pub target: LooseMonad,
    pub functor: Functor,
    pub phi: Vec<Het>,
}

impl LooseMonadMorphism {
    pub fn new(source: LooseMonad, target: LooseMonad, functor: Functor, phi: Vec<Het>) -> Result<Self> {
        if functor.source() != source.base() || functor.target() != target.base() {
            return Err(Error::Mismatch("functor does not connect the loose-monads' bases".into()));
        }
        let (p, q) = (source.carrier(), target.carrier());
        if phi.len() != p.len() {
            return Err(Error::malformed("loose-monad morphism", "phi is not total"));
        }
        for (h, &k) in phi.iter().enumerate() {
            let (x, y) = (p.element(h).contra, p.element(h).co);
            if k >= q.len() || q.element(k).contra != functor.ob(x) || q.element(k).co != functor.ob(y) {
                return Err(Error::malformed("loose-monad morphism", format!("phi({h}) has wrong endpoints")));
            }
        }
        Ok(LooseMonadMorphism {
            source,
            target,
            functor,
            phi,
        })
    }

    /// Into the loose-identity `B(1, 1)`, with `φ` given by morphisms of `B`.
    pub fn into_loose_identity(source: LooseMonad, functor: Functor, phi_morphisms: &[usize]) -> Result<Self> {
        let b = functor.target().clone();
        let target = loose_identity(&b);
        if phi_morphisms.iter().any(|&m| m >= b.morphism_count()) {
            return Err(Error::malformed("loose-monad morphism", "phi is dangling"));
        }
        let phi = phi_morphisms.iter().map(|&m| hom_het(&b, target.carrier(), m)).collect();
        LooseMonadMorphism::new(source, target, functor, phi)
    }

    /// Functor laws (scoped `functor/`), and preservation of `η`, `μ` and both actions.
    pub fn check(&self) -> LawReport {
        let mut r = LawReport::new();
        r.merge_scoped("functor", self.functor.validate());
        if !r.passed() {
            return r;
        }
        let (l, m, f) = (&self.source, &self.target, &self.functor);
        let a = l.base();
        let (p, q) = (l.carrier(), m.carrier());
        for g in a.morphism_ids() {
            r.require(self.phi[l.eta(g)] == m.eta(f.mor(g)), "phi-unit", || vec![Item::Mor(g)]);
        }
        for (h1, h2, h) in l.mu_entries() {
            r.require(self.phi[h] == m.mu(self.phi[h1], self.phi[h2]), "phi-multiplication", || {
                vec![Item::Het(h1), Item::Het(h2)]
            });
        }
        for h in 0..p.len() {
            let (x, y) = (p.element(h).contra, p.element(h).co);
            for x2 in a.objects() {
                for &g in a.hom(x2, x) {
                    r.require(self.phi[p.pre(g, h)] == q.pre(f.mor(g), self.phi[h]), "phi-pre", || {
                        vec![Item::Mor(g), Item::Het(h)]
                    });
                }
            }
            for g in a.morphisms_from(y) {
                r.require(self.phi[p.post(h, g)] == q.post(self.phi[h], f.mor(g)), "phi-post", || {
                    vec![Item::Het(h), Item::Mor(g)]
                });
            }
        }
        r
    }
}

/// `(t, †) : E(j, T) → E(1, 1)`, with `t` the carrier functor.
pub fn dagger_morphism(t: &RelativeMonad, assoc: &LooseMonad) -> Result<LooseMonadMorphism> {
    let (tf, _) = carrier_functor(t)?;
    LooseMonadMorphism::into_loose_identity(assoc.clone(), tf, t.extension_table())
}

/// A factorization through a collapse, with the number of functors found
/// satisfying the factorization equations (`None` when the search hit a cap).
#[derive(Debug, Clone)]
pub struct Factorization {
    pub functor: Functor,
    pub uniqueness_count: Option<usize>,
}

impl Factorization {
    pub fn unique(&self) -> bool {
        self.uniqueness_count == Some(1)
    }
}

/// `[]_f : collapse(L) → B` for `(f, φ) : L → B(1, 1)`: `x ↦ f x`, `h ↦ φ h`.
///
/// Uniqueness is counted by a functor search whose candidates are exactly
/// the values the two factorization equations allow.
pub fn factor_through_collapse(m: &LooseMonadMorphism, caps: &Caps) -> Result<Factorization> {
    m.check().into_result("loose-monad morphism")?;
    let b = m.functor.target().clone();
    if m.target != loose_identity(&b) {
        return Err(Error::Mismatch("factorization needs a morphism into a loose-identity".into()));
    }
    let cl = collapse(&m.source)?;
    let q = m.target.carrier();
    let as_morphism = |k: Het| {
        let el = q.element(k);
        b.hom(el.contra, el.co)[k - q.het(el.contra, el.co).start]
    };
    let mor: Vec<usize> = m.phi.iter().map(|&k| as_morphism(k)).collect();
    let functor = Functor::new(cl.category.clone(), b.clone(), m.functor.object_map().to_vec(), mor.clone())?;
    let found = functors_within(
        &cl.category,
        &b,
        m.functor.object_map().iter().map(|&o| vec![o]).collect(),
        mor.iter().map(|&g| vec![g]).collect(),
        caps.max_search_nodes,
        2,
    );
    let uniqueness_count = match found {
        Ok(v) => Some(v.len()),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Factorization {
        functor,
        uniqueness_count,
    })
}
