use crate::constructions::algebra::Algebras;
use crate::constructions::kleisli::Kleisli;
use crate::error::{Caps, Error, Result};
use crate::fincat::{fully_faithful_failure, DensityVerdict, FaithfulnessFailure, Functor};
use crate::nervepullback::is_dense;
use crate::relmonad::RelativeMonad;
use crate::report::LawReport;

/// `i_T : Kl(T) → Alg(T)` with its checks.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub functor: Functor,
    pub fully_faithful: Option<FaithfulnessFailure>,
    /// `k_T ⨾ i_T = f_T` and `i_T ⨾ u_T = v_T`.
    pub triangles: LawReport,
    /// Density of `i_T`, computed only when the root is dense.
    pub density: Option<DensityVerdict>,
}

impl Comparison {
    pub fn is_fully_faithful(&self) -> bool {
        self.fully_faithful.is_none()
    }

    pub fn passed(&self) -> bool {
        self.is_fully_faithful() && self.triangles.passed() && self.density.as_ref().is_none_or(|d| d.dense)
    }
}

/// `x ↦ (t x, †)`, `f ↦ f†`.
pub fn comparison_functor(t: &RelativeMonad, kl: &Kleisli, alg: &Algebras, caps: &Caps) -> Result<Comparison> {
    let idx = t.kleisli_index();
    let objects = alg.free.object_map().to_vec();
    let morphisms = idx
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &(x, y, _))| {
            alg.morphism_over(objects[x], objects[y], t.extend_at(k))
                .ok_or_else(|| Error::Mismatch("f† is not a morphism of free algebras".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let functor = Functor::new(kl.category.clone(), alg.category.clone(), objects, morphisms)?;
    let mut triangles = LawReport::new();
    triangles.merge_scoped("functor", functor.validate());
    triangles.require(kl.free.then(&functor)? == alg.free, "free-triangle", Vec::new);
    triangles.require(functor.then(&alg.forget)? == kl.forget, "forget-triangle", Vec::new);
    let density = if is_dense(t.root(), caps)?.dense {
        Some(is_dense(&functor, caps)?)
    } else {
        None
    };
    Ok(Comparison {
        fully_faithful: fully_faithful_failure(&functor),
        functor,
        triangles,
        density,
    })
}
