use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{FinCat, Mor, Morphism, Obj};
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A functor between finite categories, given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
}

impl Functor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        objects: Vec<Obj>,
        morphisms: Vec<Mor>,
    ) -> Result<Functor> {
        if objects.len() != source.object_count() {
            return Err(Error::malformed("functor", "object map is not total"));
        }
        if morphisms.len() != source.morphism_count() {
            return Err(Error::malformed("functor", "morphism map is not total"));
        }
        if objects.iter().any(|&o| o >= target.object_count()) {
            return Err(Error::malformed("functor", "object image is dangling"));
        }
        if morphisms.iter().any(|&m| m >= target.morphism_count()) {
            return Err(Error::malformed("functor", "morphism image is dangling"));
        }
        Ok(Functor {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub fn identity(c: &Arc<FinCat>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            objects: c.objects().collect(),
            morphisms: c.morphism_ids().collect(),
        }
    }

    /// The functor constant at `obj`, sending every morphism to its identity.
    pub fn constant(source: &Arc<FinCat>, target: &Arc<FinCat>, obj: Obj) -> Functor {
        Functor {
            source: source.clone(),
            target: target.clone(),
            objects: vec![obj; source.object_count()],
            morphisms: vec![target.identity(obj); source.morphism_count()],
        }
    }

    /// The functor `1 → c` picking out `obj`.
    pub fn point(c: &Arc<FinCat>, obj: Obj) -> Functor {
        Functor::constant(&Arc::new(FinCat::terminal()), c, obj)
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn ob(&self, a: Obj) -> Obj {
        self.objects[a]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphisms
    }

    /// `self` then `next`.
    pub fn then(&self, next: &Functor) -> Result<Functor> {
        if self.target != next.source {
            return Err(Error::Mismatch("functors are not composable".into()));
        }
        Ok(Functor {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&a| next.ob(a)).collect(),
            morphisms: self.morphisms.iter().map(|&f| next.mor(f)).collect(),
        })
    }

    /// Checks preservation of endpoints, identities and composites.
    pub fn validate(&self) -> LawReport {
        let s = &self.source;
        let t = &self.target;
        let mut r = LawReport::new();
        for f in s.morphism_ids() {
            let m = self.mor(f);
            r.require(
                t.src(m) == self.ob(s.src(f)) && t.tgt(m) == self.ob(s.tgt(f)),
                "preserves-endpoints",
                || vec![Item::Mor(f)],
            );
        }
        for a in s.objects() {
            r.require(
                self.mor(s.identity(a)) == t.identity(self.ob(a)),
                "preserves-identity",
                || vec![Item::Obj(a)],
            );
        }
        for (f, g, fg) in s.composite_entries() {
            if let Some(image) = t.try_compose(self.mor(f), self.mor(g)) {
                r.require(self.mor(fg) == image, "preserves-composition", || {
                    vec![Item::Mor(f), Item::Mor(g)]
                });
            }
        }
        r
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Reuses already-built opposite categories; they must be the opposites of
    /// this functor's source and target.
    pub fn opposite_between(&self, source_op: &Arc<FinCat>, target_op: &Arc<FinCat>) -> Functor {
        debug_assert_eq!(**source_op, self.source.opposite());
        debug_assert_eq!(**target_op, self.target.opposite());
        Functor {
            source: source_op.clone(),
            target: target_op.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Rebinds source and target to equal categories held elsewhere.
    pub fn rebind(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<Functor> {
        if **source != *self.source || **target != *self.target {
            return Err(Error::Mismatch("rebinding to different categories".into()));
        }
        Ok(Functor {
            source: source.clone(),
            target: target.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        })
    }
}

/// Why a functor fails to be fully faithful on some hom-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaithfulnessFailure {
    /// Two morphisms a → a' with the same image.
    NotInjective { a: Obj, b: Obj, first: Mor, second: Mor },
    /// A morphism F a → F a' with no preimage.
    NotSurjective { a: Obj, b: Obj, missing: Mor },
}

impl FaithfulnessFailure {
    pub fn witness(&self) -> Vec<Item> {
        match *self {
            FaithfulnessFailure::NotInjective { a, b, first, second } => {
                vec![Item::Obj(a), Item::Obj(b), Item::Mor(first), Item::Mor(second)]
            }
            FaithfulnessFailure::NotSurjective { a, b, missing } => {
                vec![Item::Obj(a), Item::Obj(b), Item::Mor(missing)]
            }
        }
    }
}

/// First hom-set on which `f` is not bijective, if any.
pub fn fully_faithful_failure(f: &Functor) -> Option<FaithfulnessFailure> {
    let s = f.source();
    let t = f.target();
    for a in s.objects() {
        for b in s.objects() {
            let image_hom = t.hom(f.ob(a), f.ob(b));
            let mut hit = vec![None; image_hom.len()];
            for &m in s.hom(a, b) {
                let pos = image_hom
                    .iter()
                    .position(|&x| x == f.mor(m))
                    .expect("functor preserves endpoints");
                if let Some(first) = hit[pos] {
                    return Some(FaithfulnessFailure::NotInjective {
                        a,
                        b,
                        first,
                        second: m,
                    });
                }
                hit[pos] = Some(m);
            }
            if let Some(pos) = hit.iter().position(Option::is_none) {
                return Some(FaithfulnessFailure::NotSurjective {
                    a,
                    b,
                    missing: image_hom[pos],
                });
            }
        }
    }
    None
}

pub fn is_fully_faithful(f: &Functor) -> bool {
    fully_faithful_failure(f).is_none()
}

/// True iff `f` is a functor that is bijective on objects and on morphisms.
pub fn is_strict_isomorphism(f: &Functor) -> bool {
    let bijective = |map: &[usize], n: usize| {
        if map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    f.validate().passed()
        && bijective(f.object_map(), f.target().object_count())
        && bijective(f.morphism_map(), f.target().morphism_count())
}

/// Enumerates functors `source → target` whose object and morphism images are
/// drawn from the given candidate lists, in lexicographic order of
/// (object map, morphism map).
pub fn functors_within(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    object_candidates: Vec<Vec<Obj>>,
    morphism_candidates: Vec<Vec<Mor>>,
    node_limit: usize,
    solution_limit: usize,
) -> Result<Vec<Functor>> {
    let s = source.as_ref();
    let t = target.as_ref();
    let mut search = Search::new(node_limit);
    let ov: Vec<usize> = object_candidates.into_iter().map(|d| search.var(d)).collect();
    let mv: Vec<usize> = morphism_candidates.into_iter().map(|d| search.var(d)).collect();
    if ov.len() != s.object_count() || mv.len() != s.morphism_count() {
        return Err(Error::malformed("functor search", "candidate lists are not total"));
    }
    for f in s.morphism_ids() {
        let (vs, vt, vf) = (ov[s.src(f)], ov[s.tgt(f)], mv[f]);
        search.constrain(&[vs, vt, vf], move |p| match p.get(vf) {
            Some(m) => {
                p.get(vs).is_none_or(|o| t.src(m) == o) && p.get(vt).is_none_or(|o| t.tgt(m) == o)
            }
            None => true,
        });
    }
    for a in s.objects() {
        let (va, vi) = (ov[a], mv[s.identity(a)]);
        search.constrain(&[va, vi], move |p| match (p.get(va), p.get(vi)) {
            (Some(o), Some(m)) => t.identity(o) == m,
            _ => true,
        });
    }
    for (f, g, fg) in s.composite_entries() {
        let (vf, vg, vfg) = (mv[f], mv[g], mv[fg]);
        search.constrain(&[vf, vg, vfg], move |p| match (p.get(vf), p.get(vg), p.get(vfg)) {
            (Some(x), Some(y), Some(z)) => t.try_compose(x, y) == Some(z),
            _ => true,
        });
    }
    let n_obj = s.object_count();
    search
        .all(solution_limit)?
        .into_iter()
        .map(|sol| {
            Functor::new(
                source.clone(),
                target.clone(),
                sol[..n_obj].to_vec(),
                sol[n_obj..].to_vec(),
            )
        })
        .collect()
}

/// All functors `source → target`.
pub fn all_functors(
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
    node_limit: usize,
    solution_limit: usize,
) -> Result<Vec<Functor>> {
    functors_within(
        source,
        target,
        vec![target.objects().collect(); source.object_count()],
        vec![target.morphism_ids().collect(); source.morphism_count()],
        node_limit,
        solution_limit,
    )
}

/// The full subcategory on `keep`, in the given order, and its inclusion.
pub fn full_inclusion(e: &Arc<FinCat>, keep: &[Obj]) -> Result<Functor> {
    let mut position = vec![None; e.object_count()];
    for (i, &a) in keep.iter().enumerate() {
        if a >= e.object_count() || position[a].replace(i).is_some() {
            return Err(Error::malformed("full subcategory", "objects must be distinct and in range"));
        }
    }
    let mors: Vec<Mor> = e
        .morphism_ids()
        .filter(|&f| position[e.src(f)].is_some() && position[e.tgt(f)].is_some())
        .collect();
    let mut local = vec![usize::MAX; e.morphism_count()];
    for (i, &f) in mors.iter().enumerate() {
        local[f] = i;
    }
    let morphisms = mors
        .iter()
        .map(|&f| Morphism {
            name: e.morphism(f).name.clone(),
            src: position[e.src(f)].expect("kept"),
            tgt: position[e.tgt(f)].expect("kept"),
        })
        .collect();
    let identities = keep.iter().map(|&a| local[e.identity(a)]).collect();
    let composites: Vec<(Mor, Mor, Mor)> = e
        .composite_entries()
        .filter(|&(f, g, _)| local[f] != usize::MAX && local[g] != usize::MAX)
        .map(|(f, g, fg)| (local[f], local[g], local[fg]))
        .collect();
    let names = keep.iter().map(|&a| e.object_name(a).to_string()).collect();
    let sub = Arc::new(FinCat::new(names, morphisms, identities, composites)?);
    Functor::new(sub, e.clone(), keep.to_vec(), mors)
}
