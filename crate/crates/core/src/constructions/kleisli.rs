use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{FinCat, Functor, Morphism};
use crate::relmonad::{carrier_functor, monad_from_adjunction, require_valid, RelativeAdjunction, RelativeMonad};
use crate::report::LawReport;

/// A `j`-adjunction together with the check that it induces the given monad.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub adjunction: RelativeAdjunction,
    /// Passes iff `monad_from_adjunction` reproduces the monad bit-exactly.
    pub certificate: LawReport,
}

impl Resolution {
    pub fn certify(adjunction: RelativeAdjunction, t: &RelativeMonad) -> Resolution {
        let mut certificate = LawReport::new();
        match monad_from_adjunction(&adjunction) {
            Ok(induced) => certificate.require(&induced == t, "resolution-round-trip", Vec::new),
            Err(crate::Error::Invalid { report, .. }) => certificate.merge_scoped("adjunction", report),
            Err(_) => certificate.push("resolution-round-trip", Vec::new()),
        }
        Resolution { adjunction, certificate }
    }

    pub fn passed(&self) -> bool {
        self.certificate.passed()
    }
}

/// `Kl(T)` with `k_T ⊣_j v_T`.
#[derive(Debug, Clone)]
pub struct Kleisli {
    pub category: Arc<FinCat>,
    /// `k_T : A → Kl(T)`.
    pub free: Functor,
    /// `v_T : Kl(T) → E`.
    pub forget: Functor,
    pub resolution: Resolution,
}

/// Morphism `k` of `Kl(T)` is the `k`-th triple of the monad's Kleisli index,
/// named after its underlying morphism of `E`.
pub fn build_kleisli(t: &RelativeMonad) -> Result<Kleisli> {
    require_valid(t)?;
    let a = t.base();
    let e = t.ambient();
    let j = t.root();
    let idx = t.kleisli_index();
    let morphisms = idx
        .entries()
        .iter()
        .map(|&(x, y, f)| Morphism {
            name: e.morphism(f).name.clone(),
            src: x,
            tgt: y,
        })
        .collect();
    let identities = a
        .objects()
        .map(|x| idx.position(x, x, t.eta(x)).expect("η_x : j x → t x"))
        .collect();
    let mut composites = Vec::new();
    for (k1, &(x, y, f)) in idx.entries().iter().enumerate() {
        for z in a.objects() {
            for k2 in idx.range(y, z) {
                let h = e.compose(f, t.extend_at(k2));
                composites.push((k1, k2, idx.position(x, z, h).expect("f ⨾ g† : j x → t z")));
            }
        }
    }
    let category = Arc::new(FinCat::new(a.object_names().to_vec(), morphisms, identities, composites)?);
    let free_mor = a
        .morphism_ids()
        .map(|p| {
            let (x, y) = (a.src(p), a.tgt(p));
            idx.position(x, y, e.compose(j.mor(p), t.eta(y))).expect("j p ⨾ η_y")
        })
        .collect();
    let free = Functor::new(a.clone(), category.clone(), a.objects().collect(), free_mor)?;
    let forget = Functor::new(category.clone(), e.clone(), t.carrier().to_vec(), t.extension_table().to_vec())?;
    let phi = a
        .objects()
        .map(|x| a.objects().map(|y| idx.range(x, y).map(|k| idx.entry(k).2).collect()).collect())
        .collect();
    let adjunction = RelativeAdjunction::new(j.clone(), free.clone(), forget.clone(), phi)?;
    let resolution = Resolution::certify(adjunction, t);
    Ok(Kleisli {
        category,
        free,
        forget,
        resolution,
    })
}

/// `v_T` as a functor restricted to the image of `k_T` is the carrier functor.
pub fn kleisli_carrier_agrees(t: &RelativeMonad, kl: &Kleisli) -> Result<bool> {
    let (tf, report) = carrier_functor(t)?;
    Ok(report.passed() && kl.free.then(&kl.forget)? == tf)
}
