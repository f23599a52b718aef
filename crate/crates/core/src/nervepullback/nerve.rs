use crate::error::{Caps, Result};
use crate::fincat::{canonical_map_bijective, DensityVerdict, Functor, Obj, Presheaf, PresheafMorphism};

/// `a ↦ E(j a, e)`, acting by precomposition with `j`-images.
pub fn nerve_presheaf(j: &Functor, e: Obj) -> Presheaf {
    let a = j.source();
    let cat = j.target();
    let values = a
        .objects()
        .map(|x| cat.hom(j.ob(x), e).iter().map(|&m| cat.morphism(m).name.clone()).collect())
        .collect();
    let action = a
        .morphism_ids()
        .map(|f| {
            let (x, y) = (a.src(f), a.tgt(f));
            let target = cat.hom(j.ob(x), e);
            cat.hom(j.ob(y), e)
                .iter()
                .map(|&z| {
                    let m = cat.compose(j.mor(f), z);
                    target.iter().position(|&c| c == m).expect("j f ⨾ z : j x → e")
                })
                .collect()
        })
        .collect();
    Presheaf::new(a.clone(), values, action).expect("nerve tables are well formed")
}

/// The natural family `E(j −, e) ⇒ E(j −, e')` given by postcomposition with `eps`.
pub fn nerve_morphism(j: &Functor, eps: usize) -> PresheafMorphism {
    let cat = j.target();
    let (e, e2) = (cat.src(eps), cat.tgt(eps));
    let components = j
        .source()
        .objects()
        .map(|x| {
            let target = cat.hom(j.ob(x), e2);
            cat.hom(j.ob(x), e)
                .iter()
                .map(|&z| {
                    let m = cat.compose(z, eps);
                    target.iter().position(|&c| c == m).expect("z ⨾ ε : j x → e'")
                })
                .collect()
        })
        .collect();
    PresheafMorphism { components }
}

/// Whether `n_j` is fully faithful, with the first failing pair as witness.
pub fn is_dense(j: &Functor, caps: &Caps) -> Result<DensityVerdict> {
    canonical_map_bijective(j.target(), |e| nerve_presheaf(j, e), |eps| nerve_morphism(j, eps), caps.max_search_nodes)
}
