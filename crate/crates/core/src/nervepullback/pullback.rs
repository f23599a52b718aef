use std::collections::HashMap;
use std::sync::Arc;

use crate::constructions::{Algebras, Kleisli};
use crate::error::{Caps, Error, Result};
use crate::fincat::{
    is_strict_isomorphism, pair_object, presheaf_morphisms, pullback_category, Distributor, FinCat, Functor, Mor,
    Morphism, Obj, Presheaf, PresheafMorphism,
};
use crate::loosemonad::fibred_distributor;
use crate::nervepullback::nerve::{nerve_morphism, nerve_presheaf};
use crate::relmonad::RelativeMonad;
use crate::search::Search;

/// An object of `n_j ×_{[A^op, Set]} [Kl(T)^op, Set]`: a carrier `e` and, for
/// each Kleisli morphism `k : x → x'`, a function `E(j x', e) → E(j x, e)`
/// on hom positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PullbackObject {
    pub carrier: Obj,
    pub action: Vec<Vec<usize>>,
}

/// The finite presentation `P` of the nerve pullback.
#[derive(Debug, Clone)]
pub struct NervePullback {
    pub category: Arc<FinCat>,
    pub objects: Vec<PullbackObject>,
    /// `P → E`.
    pub forget: Functor,
    /// `Kl(T)^op × P → Set`, `het(x, o) = E(j x, e)` acting by the tables.
    pub het: Distributor,
}

impl NervePullback {
    pub fn index_of(&self, o: &PullbackObject) -> Option<Obj> {
        self.objects.binary_search(o).ok()
    }

    /// The presheaf on `Kl(T)` carried by object `o`.
    pub fn kleisli_presheaf(&self, o: Obj) -> Presheaf {
        self.het.column(o)
    }
}

/// Functorial action tables on `Kl(T)` with values `E(j −, e)`; `restricted`
/// additionally forces `k_T`-images to act by precomposition.
fn actions_on(t: &RelativeMonad, kl: &Kleisli, e: Obj, restricted: bool, caps: &Caps) -> Result<Vec<PullbackObject>> {
    let cat = t.ambient();
    let j = t.root();
    let kc = kl.category.as_ref();
    let homs: Vec<Vec<Mor>> = kc.objects().map(|x| cat.hom(j.ob(x), e).to_vec()).collect();
    let mut offsets = Vec::with_capacity(kc.morphism_count() + 1);
    let mut search = Search::new(caps.max_search_nodes);
    for k in kc.morphism_ids() {
        offsets.push(search.var_count());
        let (x, x2) = (kc.src(k), kc.tgt(k));
        for &z in &homs[x2] {
            let mut domain: Vec<usize> = (0..homs[x].len()).collect();
            if restricted {
                for p in t.base().morphism_ids().filter(|&p| kl.free.mor(p) == k) {
                    let forced = cat.compose(j.mor(p), z);
                    domain.retain(|&v| homs[x][v] == forced);
                }
            } else if k == kc.identity(x) {
                let own = homs[x].iter().position(|&m| m == z).expect("z : j x → e");
                domain.retain(|&v| v == own);
            }
            search.var(domain);
        }
    }
    offsets.push(search.var_count());
    let offsets = &offsets;
    for (k1, k2, k3) in kc.composite_entries() {
        let x2 = kc.tgt(k2);
        for zi in 0..homs[x2].len() {
            let (v2, v3) = (offsets[k2] + zi, offsets[k3] + zi);
            let mut scope: Vec<usize> = (offsets[k1]..offsets[k1 + 1]).collect();
            scope.push(v2);
            scope.push(v3);
            search.constrain(&scope, move |s| {
                let (Some(mid), Some(out)) = (s.get(v2), s.get(v3)) else { return true };
                s.get(offsets[k1] + mid).is_none_or(|v| v == out)
            });
        }
    }
    Ok(search
        .all(usize::MAX)?
        .into_iter()
        .map(|flat| PullbackObject {
            carrier: e,
            action: kc.morphism_ids().map(|k| flat[offsets[k]..offsets[k + 1]].to_vec()).collect(),
        })
        .collect())
}

fn commutes(t: &RelativeMonad, kl: &Kleisli, from: &PullbackObject, to: &PullbackObject, eps: Mor) -> bool {
    let cat = t.ambient();
    let j = t.root();
    let kc = &kl.category;
    let hom = |x: Obj, e: Obj| cat.hom(j.ob(x), e);
    kc.morphism_ids().all(|k| {
        let (x, x2) = (kc.src(k), kc.tgt(k));
        hom(x2, from.carrier).iter().enumerate().all(|(zi, &z)| {
            let moved = cat.compose(hom(x, from.carrier)[from.action[k][zi]], eps);
            let zi2 = hom(x2, to.carrier).iter().position(|&m| m == cat.compose(z, eps)).expect("z ⨾ ε");
            hom(x, to.carrier)[to.action[k][zi2]] == moved
        })
    })
}

/// Objects are all `PullbackObject`s ordered by `(carrier, tables)`;
/// morphisms are the `ε : e → e'` commuting with the tables.
pub fn build_nerve_pullback(t: &RelativeMonad, kl: &Kleisli, caps: &Caps) -> Result<NervePullback> {
    let e = t.ambient();
    let mut objects = Vec::new();
    for c in e.objects() {
        objects.extend(actions_on(t, kl, c, true, caps)?);
    }
    let limit = caps.max_objects * caps.max_objects;
    if objects.len() > limit {
        return Err(Error::Capacity {
            what: "pullback objects",
            needed: objects.len(),
            limit,
        });
    }
    let mut counter = vec![0usize; e.object_count()];
    let names = objects
        .iter()
        .map(|o| {
            let k = counter[o.carrier];
            counter[o.carrier] += 1;
            format!("{}#{k}", e.object_name(o.carrier))
        })
        .collect();
    let mut morphisms = Vec::new();
    let mut over = Vec::new();
    let mut index = HashMap::new();
    for (i, from) in objects.iter().enumerate() {
        for (k, to) in objects.iter().enumerate() {
            for &eps in e.hom(from.carrier, to.carrier) {
                if commutes(t, kl, from, to, eps) {
                    index.insert((i, k, eps), morphisms.len());
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
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, o)| index[&(i, i, e.identity(o.carrier))])
        .collect();
    let mut composites = Vec::new();
    for (m1, f) in morphisms.iter().enumerate() {
        for (m2, g) in morphisms.iter().enumerate() {
            if f.tgt == g.src {
                let h = index
                    .get(&(f.src, g.tgt, e.compose(over[m1], over[m2])))
                    .ok_or_else(|| Error::Mismatch("pullback morphisms are not closed under composition".into()))?;
                composites.push((m1, m2, *h));
            }
        }
    }
    let category = Arc::new(FinCat::new(names, morphisms, identities, composites)?);
    let forget = Functor::new(category.clone(), e.clone(), objects.iter().map(|o| o.carrier).collect(), over)?;
    let het = {
        let j = t.root();
        let objs = &objects;
        fibred_distributor(t, &kl.category, &forget, &|k, o, g| {
            let (x, x2) = (kl.category.src(k), kl.category.tgt(k));
            let c = objs[o].carrier;
            let zi = e.hom(j.ob(x2), c).iter().position(|&m| m == g).expect("g : j x' → e");
            e.hom(j.ob(x), c)[objs[o].action[k][zi]]
        })
    };
    Ok(NervePullback {
        category,
        objects,
        forget,
        het,
    })
}

/// `Alg(T) → P`: `(e, α) ↦ (e, k ↦ (g ↦ f ⨾ g^α))` and `ε ↦ ε`.
pub fn comparison_to_pullback(t: &RelativeMonad, alg: &Algebras, np: &NervePullback) -> Result<Functor> {
    let e = t.ambient();
    let j = t.root();
    let idx = t.kleisli_index();
    let mut objects = Vec::with_capacity(alg.algebras.len());
    for a in &alg.algebras {
        let c = a.carrier;
        let action = idx
            .entries()
            .iter()
            .map(|&(x, x2, f)| {
                let target = e.hom(j.ob(x), c);
                e.hom(j.ob(x2), c)
                    .iter()
                    .map(|&g| {
                        let m = e.compose(f, a.extend(t, x2, g));
                        target.iter().position(|&q| q == m).expect("f ⨾ g^α : j x → e")
                    })
                    .collect()
            })
            .collect();
        let o = PullbackObject { carrier: c, action };
        objects.push(np.index_of(&o).ok_or_else(|| Error::Mismatch("algebra image is not a pullback object".into()))?);
    }
    let morphisms = alg
        .category
        .morphism_ids()
        .map(|m| {
            let (s, d) = (objects[alg.category.src(m)], objects[alg.category.tgt(m)]);
            let eps = alg.forget.mor(m);
            np.category
                .hom(s, d)
                .iter()
                .copied()
                .find(|&p| np.forget.mor(p) == eps)
                .ok_or_else(|| Error::Mismatch("algebra morphism does not commute with the tables".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(alg.category.clone(), np.category.clone(), objects, morphisms)
}

/// A full subcategory of presheaves, keyed by their value sets as morphisms
/// of `E` so that equal sets are equal objects.
struct PresheafFamily {
    keys: Vec<(Vec<Vec<Mor>>, Vec<Vec<usize>>)>,
    presheaves: Vec<Presheaf>,
}

impl PresheafFamily {
    fn new() -> Self {
        PresheafFamily {
            keys: Vec::new(),
            presheaves: Vec::new(),
        }
    }

    fn insert(&mut self, values: Vec<Vec<Mor>>, p: Presheaf) -> Obj {
        let key = (values, p.base().morphism_ids().map(|f| p.action(f).to_vec()).collect());
        if let Some(i) = self.keys.iter().position(|k| k == &key) {
            return i;
        }
        self.keys.push(key);
        self.presheaves.push(p);
        self.keys.len() - 1
    }

    fn find(&self, values: &[Vec<Mor>], p: &Presheaf) -> Option<Obj> {
        let action: Vec<Vec<usize>> = p.base().morphism_ids().map(|f| p.action(f).to_vec()).collect();
        self.keys.iter().position(|(v, a)| v.as_slice() == values && a == &action)
    }

    fn category(&self, node_limit: usize) -> Result<FamilyCategory> {
        let n = self.presheaves.len();
        let mut morphisms = Vec::new();
        let mut families = Vec::new();
        let mut index = HashMap::new();
        for s in 0..n {
            for d in 0..n {
                for nu in presheaf_morphisms(&self.presheaves[s], &self.presheaves[d], node_limit)? {
                    index.insert((s, d, nu.clone()), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("ν{}", morphisms.len()),
                        src: s,
                        tgt: d,
                    });
                    families.push(nu);
                }
            }
        }
        let identities = (0..n)
            .map(|s| {
                let p = &self.presheaves[s];
                let id = PresheafMorphism {
                    components: p.base().objects().map(|x| (0..p.size(x)).collect()).collect(),
                };
                index[&(s, s, id)]
            })
            .collect();
        let mut composites = Vec::new();
        for (m1, f) in morphisms.iter().enumerate() {
            for (m2, g) in morphisms.iter().enumerate() {
                if f.tgt == g.src {
                    let components = families[m1]
                        .components
                        .iter()
                        .zip(&families[m2].components)
                        .map(|(c1, c2)| c1.iter().map(|&y| c2[y]).collect())
                        .collect();
                    composites.push((m1, m2, index[&(f.src, g.tgt, PresheafMorphism { components })]));
                }
            }
        }
        let names = (0..n).map(|i| format!("p{i}")).collect();
        Ok(FamilyCategory {
            category: Arc::new(FinCat::new(names, morphisms, identities, composites)?),
            index,
            families,
        })
    }
}

struct FamilyCategory {
    category: Arc<FinCat>,
    index: HashMap<(Obj, Obj, PresheafMorphism), Mor>,
    families: Vec<PresheafMorphism>,
}

impl FamilyCategory {
    fn lookup(&self, s: Obj, d: Obj, nu: PresheafMorphism) -> Result<Mor> {
        self.index
            .get(&(s, d, nu))
            .copied()
            .ok_or_else(|| Error::Mismatch("family is not a presheaf morphism".into()))
    }
}

/// Builds `n_j ×_{[A^op, Set]} [Kl(T)^op, Set]` from the full subcategories on
/// all presheaves on `Kl(T)` valued in `E(j −, e)` and their restrictions and
/// nerves, then checks that `P` is strictly isomorphic to it.
///
/// Fails with a capacity error when the presheaf families outgrow the caps.
pub fn presheaf_pullback_agrees(t: &RelativeMonad, kl: &Kleisli, np: &NervePullback, caps: &Caps) -> Result<bool> {
    let e = t.ambient();
    let j = t.root();
    let a = t.base();
    let kc = &kl.category;
    let limit = caps.max_objects * caps.max_objects;
    let values = |c: Obj| -> Vec<Vec<Mor>> { a.objects().map(|x| e.hom(j.ob(x), c).to_vec()).collect() };
    let kl_presheaf = |o: &PullbackObject| {
        let names = a
            .objects()
            .map(|x| e.hom(j.ob(x), o.carrier).iter().map(|&m| e.morphism(m).name.clone()).collect())
            .collect();
        Presheaf::new(kc.clone(), names, o.action.clone())
    };
    let mut kl_family = PresheafFamily::new();
    for c in e.objects() {
        for o in actions_on(t, kl, c, false, caps)? {
            kl_family.insert(values(c), kl_presheaf(&o)?);
            if kl_family.presheaves.len() > limit {
                return Err(Error::Capacity {
                    what: "presheaves on Kl(T)",
                    needed: kl_family.presheaves.len(),
                    limit,
                });
            }
        }
    }
    let restrict = |p: &Presheaf| {
        let action = a.morphism_ids().map(|f| p.action(kl.free.mor(f)).to_vec()).collect();
        Presheaf::new(a.clone(), a.objects().map(|x| p.value(x).to_vec()).collect(), action)
    };
    let mut a_family = PresheafFamily::new();
    let nerve_objects: Vec<Obj> = e.objects().map(|c| a_family.insert(values(c), nerve_presheaf(j, c))).collect();
    let mut restricted = Vec::with_capacity(kl_family.presheaves.len());
    for i in 0..kl_family.presheaves.len() {
        let r = restrict(&kl_family.presheaves[i])?;
        restricted.push(a_family.insert(kl_family.keys[i].0.clone(), r));
    }
    let a_cat = a_family.category(caps.max_search_nodes)?;
    let k_cat = kl_family.category(caps.max_search_nodes)?;
    let nerve_mor = e
        .morphism_ids()
        .map(|m| a_cat.lookup(nerve_objects[e.src(m)], nerve_objects[e.tgt(m)], nerve_morphism(j, m)))
        .collect::<Result<Vec<_>>>()?;
    let nerve = Functor::new(e.clone(), a_cat.category.clone(), nerve_objects, nerve_mor)?;
    let kc2 = &k_cat.category;
    let restrict_mor = kc2
        .morphism_ids()
        .map(|m| a_cat.lookup(restricted[kc2.src(m)], restricted[kc2.tgt(m)], k_cat.families[m].clone()))
        .collect::<Result<Vec<_>>>()?;
    let restriction = Functor::new(kc2.clone(), a_cat.category.clone(), restricted, restrict_mor)?;
    let pb = pullback_category(&nerve, &restriction)?;
    let mut objects = Vec::with_capacity(np.objects.len());
    for (i, o) in np.objects.iter().enumerate() {
        let q = kl_family
            .find(&values(o.carrier), &np.kleisli_presheaf(i))
            .ok_or_else(|| Error::Mismatch("pullback object is not a presheaf on Kl(T)".into()))?;
        objects.push(pair_object(&pb, o.carrier, q).ok_or_else(|| Error::Mismatch("pair is not in the apex".into()))?);
    }
    let mut morphisms = Vec::with_capacity(np.category.morphism_count());
    for m in np.category.morphism_ids() {
        let eps = np.forget.mor(m);
        let (s, d) = (np.category.src(m), np.category.tgt(m));
        let (ks, kd) = (pb.right.ob(objects[s]), pb.right.ob(objects[d]));
        let km = k_cat.lookup(ks, kd, nerve_morphism(j, eps))?;
        let found = pb
            .apex
            .hom(objects[s], objects[d])
            .iter()
            .copied()
            .find(|&p| pb.left.mor(p) == eps && pb.right.mor(p) == km)
            .ok_or_else(|| Error::Mismatch("pair of morphisms is not in the apex".into()))?;
        morphisms.push(found);
    }
    let embed = Functor::new(np.category.clone(), pb.apex.clone(), objects, morphisms)?;
    Ok(is_strict_isomorphism(&embed))
}
