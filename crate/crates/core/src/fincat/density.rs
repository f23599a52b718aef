use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fincat::category::{FinCat, Mor, Obj};
use crate::fincat::presheaf::{presheaf_morphisms, Presheaf, PresheafMorphism};

/// A pair `(c, c')` on which `C(c, c') → Nat(N c, N c')` is not a bijection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityWitness {
    pub from: Obj,
    pub to: Obj,
    pub hom_count: usize,
    /// Distinct natural families hit by the canonical map.
    pub image_count: usize,
    pub nat_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub dense: bool,
    /// The first failing pair in lexicographic order.
    pub witness: Option<DensityWitness>,
    pub failures: Vec<DensityWitness>,
}

/// Checks that `m ↦ induced(m)` is a bijection `C(c, c') → Nat(N c, N c')`
/// for every pair, collecting the failing pairs in lexicographic order.
pub fn canonical_map_bijective(
    c: &FinCat,
    nerve: impl Fn(Obj) -> Presheaf,
    induced: impl Fn(Mor) -> PresheafMorphism,
    node_limit: usize,
) -> Result<DensityVerdict> {
    let presheaves: Vec<Presheaf> = c.objects().map(&nerve).collect();
    let mut failures = Vec::new();
    for from in c.objects() {
        for to in c.objects() {
            let nats = presheaf_morphisms(&presheaves[from], &presheaves[to], node_limit)?;
            let mut images: Vec<PresheafMorphism> = c.hom(from, to).iter().map(|&m| induced(m)).collect();
            images.sort_unstable();
            images.dedup();
            let hom_count = c.hom(from, to).len();
            if images.len() != hom_count || nats.len() != hom_count {
                failures.push(DensityWitness {
                    from,
                    to,
                    hom_count,
                    image_count: images.len(),
                    nat_count: nats.len(),
                });
            }
        }
    }
    Ok(DensityVerdict {
        dense: failures.is_empty(),
        witness: failures.first().copied(),
        failures,
    })
}
