use serde::{Deserialize, Serialize};

use crate::error::{Caps, Error, Result};
use crate::quantale::lattice::{Quantale, Value};
use crate::quantale::presheaf::{is_v_presheaf, v_presheaf_object, value_maps, PresheafObject};
use crate::quantale::vcat::{is_vcat_isomorphism, validate_vfunctor, VCat};
use crate::report::{Item, LawReport};

/// `n_j : E → P A`, `n_j(e)(a) = E(j a, e)`, with the relative adjunction
/// certificate `E(j a, e) = P A(よ a, n_j e)` and the density verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VNerve {
    pub map: Vec<usize>,
    pub certificate: LawReport,
    pub dense: bool,
    /// First `(e, e')` with `E(e, e') ≠ P A(n_j e, n_j e')`.
    pub witness: Option<(usize, usize)>,
}

pub fn nerve_values(a: &VCat, e: &VCat, j: &[usize], c: usize) -> Vec<Value> {
    a.objects().map(|x| e.hom(j[x], c)).collect()
}

pub fn v_nerve(q: &Quantale, a: &VCat, e: &VCat, j: &[usize], pa: &PresheafObject) -> Result<VNerve> {
    validate_vfunctor(q, a, e, j).into_result("root V-functor")?;
    let map = e
        .objects()
        .map(|c| {
            pa.index_of(&nerve_values(a, e, j, c))
                .ok_or_else(|| Error::Mismatch("nerve value is not a presheaf".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut certificate = LawReport::new();
    for x in a.objects() {
        for c in e.objects() {
            certificate.require(e.hom(j[x], c) == pa.category.hom(pa.yoneda[x], map[c]), "nerve-relative-adjunction", || {
                vec![Item::Obj(x), Item::Obj(c)]
            });
        }
    }
    let mut witness = None;
    'scan: for c in e.objects() {
        for c2 in e.objects() {
            if e.hom(c, c2) != pa.category.hom(map[c], map[c2]) {
                witness = Some((c, c2));
                break 'scan;
            }
        }
    }
    Ok(VNerve {
        map,
        certificate,
        dense: witness.is_none(),
        witness,
    })
}

/// A relative monad in thin V: root `j`, carrier `t`, with
/// `I ≤ E(j x, t x)` and `E(j x, t y) ≤ E(t x, t y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRelMonad {
    pub root: Vec<usize>,
    pub carrier: Vec<usize>,
}

pub fn validate_v_monad(q: &Quantale, a: &VCat, e: &VCat, t: &VRelMonad) -> LawReport {
    let mut r = LawReport::new();
    r.merge_scoped("root", validate_vfunctor(q, a, e, &t.root));
    if t.carrier.len() != a.len() || t.carrier.iter().any(|&y| y >= e.len()) {
        r.push("carrier-total", Vec::new());
    }
    if !r.passed() {
        return r;
    }
    let (j, tc) = (&t.root, &t.carrier);
    for x in a.objects() {
        r.require(q.leq(q.unit(), e.hom(j[x], tc[x])), "v-unit", || vec![Item::Obj(x)]);
        for y in a.objects() {
            r.require(q.leq(e.hom(j[x], tc[y]), e.hom(tc[x], tc[y])), "v-extension", || {
                vec![Item::Obj(x), Item::Obj(y)]
            });
        }
    }
    r
}

/// `Kl(T)`: objects of `A`, `hom(x, y) = E(j x, t y)`.
pub fn v_kleisli(a: &VCat, e: &VCat, t: &VRelMonad) -> VCat {
    let hom = a
        .objects()
        .map(|x| a.objects().map(|y| e.hom(t.root[x], t.carrier[y])).collect())
        .collect();
    VCat::new(a.objects.clone(), hom).expect("square")
}

/// Carriers `e` with `E(j x, e) ≤ E(t x, e)` for all `x`.
pub fn v_algebra_carriers(q: &Quantale, a: &VCat, e: &VCat, t: &VRelMonad) -> Vec<usize> {
    e.objects()
        .filter(|&c| a.objects().all(|x| q.leq(e.hom(t.root[x], c), e.hom(t.carrier[x], c))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VNerveTheoremReport {
    pub dense: bool,
    pub comparison_iso: bool,
    pub semanticiser_matches_pullback: bool,
    pub algebra_count: usize,
    pub pullback_count: usize,
}

/// A V-category whose objects are pairs `(e, index)` with their homs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedVCat {
    pub objects: Vec<(usize, usize)>,
    pub hom: Vec<Vec<Value>>,
}

/// `n_j ×_{P A} P(Kl T)`: pairs `(e, q)` with `n_j e = k^* q`, homs meets.
pub fn v_pullback(q: &Quantale, e: &VCat, nerve: &VNerve, pa: &PresheafObject, pkl: &PresheafObject) -> PairedVCat {
    let restricted: Vec<Option<usize>> = pkl.presheaves.iter().map(|p| pa.index_of(p)).collect();
    let mut objects = Vec::new();
    for c in e.objects() {
        for (k, r) in restricted.iter().enumerate() {
            if *r == Some(nerve.map[c]) {
                objects.push((c, k));
            }
        }
    }
    let hom = objects
        .iter()
        .map(|&(c, k)| {
            objects
                .iter()
                .map(|&(c2, k2)| q.meet([e.hom(c, c2), pkl.category.hom(k, k2)]))
                .collect()
        })
        .collect();
    PairedVCat { objects, hom }
}

/// The semanticiser apex computed directly: cones `(e, p)` on `1` with
/// `p(k, 1) = n(1, e)` a `Kl(T)`-presheaf, and homs the largest `v ≤ E(e, e')`
/// with `p(x) ⊗ v ≤ p'(x)`, found by search.
pub fn v_semanticiser_apex(q: &Quantale, a: &VCat, e: &VCat, t: &VRelMonad, kl: &VCat, pkl: &PresheafObject) -> Result<PairedVCat> {
    let mut objects = Vec::new();
    let mut values = Vec::new();
    for c in e.objects() {
        let p = nerve_values(a, e, &t.root, c);
        if is_v_presheaf(q, kl, &p) {
            let k = pkl.index_of(&p).ok_or_else(|| Error::Mismatch("Kleisli presheaf missing from P(Kl T)".into()))?;
            objects.push((c, k));
            values.push(p);
        }
    }
    let mut hom = Vec::with_capacity(objects.len());
    for (i, &(c, _)) in objects.iter().enumerate() {
        let mut row = Vec::with_capacity(objects.len());
        for (k, &(c2, _)) in objects.iter().enumerate() {
            let ok: Vec<Value> = q
                .elements()
                .filter(|&v| {
                    q.leq(v, e.hom(c, c2))
                        && values[i].iter().zip(&values[k]).all(|(&p, &p2)| q.leq(q.tensor(p, v), p2))
                })
                .collect();
            let top = ok
                .iter()
                .copied()
                .find(|&v| ok.iter().all(|&w| q.leq(w, v)))
                .ok_or_else(|| Error::Mismatch("semanticiser hom has no largest element".into()))?;
            row.push(top);
        }
        hom.push(row);
    }
    Ok(PairedVCat { objects, hom })
}

pub fn v_check_nerve_theorem(q: &Quantale, a: &VCat, e: &VCat, t: &VRelMonad, caps: &Caps) -> Result<VNerveTheoremReport> {
    validate_v_monad(q, a, e, t).into_result("V-relative monad")?;
    let pa = v_presheaf_object(q, a, caps)?;
    let nerve = v_nerve(q, a, e, &t.root, &pa)?;
    let kl = v_kleisli(a, e, t);
    let pkl = v_presheaf_object(q, &kl, caps)?;
    let pb = v_pullback(q, e, &nerve, &pa, &pkl);
    let carriers = v_algebra_carriers(q, a, e, t);
    let alg = e.full_subcategory(&carriers);
    let pb_cat = VCat::new(vec![String::new(); pb.objects.len()], pb.hom.clone())?;
    let cmp: Option<Vec<usize>> = carriers
        .iter()
        .map(|&c| {
            let k = pkl.index_of(&nerve_values(a, e, &t.root, c))?;
            pb.objects.iter().position(|&o| o == (c, k))
        })
        .collect();
    let comparison_iso = cmp.is_some_and(|m| is_vcat_isomorphism(&alg, &pb_cat, &m));
    let apex = v_semanticiser_apex(q, a, e, t, &kl, &pkl)?;
    Ok(VNerveTheoremReport {
        dense: nerve.dense,
        comparison_iso,
        semanticiser_matches_pullback: apex == pb,
        algebra_count: carriers.len(),
        pullback_count: pb.objects.len(),
    })
}

/// All V-monads on the root `j`, carriers in lexicographic order.
pub fn v_monads(q: &Quantale, a: &VCat, e: &VCat, j: &[usize], caps: &Caps) -> Result<Vec<VRelMonad>> {
    Ok(value_maps("carrier maps", e.len(), a.len(), caps, |t| {
        validate_v_monad(q, a, e, &VRelMonad { root: j.to_vec(), carrier: t.to_vec() }).passed()
    })?
    .into_iter()
    .map(|carrier| VRelMonad { root: j.to_vec(), carrier })
    .collect())
}
