use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{FinCat, Mor, Obj};
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A presheaf on a finite category, with values as named finite sets.
///
/// `action[f][y]` is the position in `value(src f)` of the image of the
/// element at position `y` of `value(tgt f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCat>,
    values: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl Presheaf {
    pub fn new(base: Arc<FinCat>, values: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != base.object_count() {
            return Err(Error::malformed("presheaf", "values are not total"));
        }
        if action.len() != base.morphism_count() {
            return Err(Error::malformed("presheaf", "action is not total"));
        }
        for f in base.morphism_ids() {
            let (a, b) = (base.src(f), base.tgt(f));
            if action[f].len() != values[b].len() || action[f].iter().any(|&y| y >= values[a].len()) {
                return Err(Error::malformed("presheaf", format!("action of morphism {f} is off its sets")));
            }
        }
        Ok(Presheaf { base, values, action })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn value(&self, a: Obj) -> &[String] {
        &self.values[a]
    }

    pub fn size(&self, a: Obj) -> usize {
        self.values[a].len()
    }

    /// Image under `f : a → b` of position `y` in `value(b)`.
    pub fn act(&self, f: Mor, y: usize) -> usize {
        self.action[f][y]
    }

    pub fn action(&self, f: Mor) -> &[usize] {
        &self.action[f]
    }

    pub fn validate(&self) -> LawReport {
        let c = &self.base;
        let mut r = LawReport::new();
        for a in c.objects() {
            let id = c.identity(a);
            for y in 0..self.size(a) {
                r.require(self.act(id, y) == y, "presheaf-identity", || vec![Item::Obj(a), Item::Elem(y)]);
            }
        }
        for (f, g, fg) in c.composite_entries() {
            for y in 0..self.size(c.tgt(g)) {
                r.require(
                    self.act(fg, y) == self.act(f, self.act(g, y)),
                    "presheaf-composition",
                    || vec![Item::Mor(f), Item::Mor(g), Item::Elem(y)],
                );
            }
        }
        r
    }
}

/// A morphism of presheaves: one function per object, as position tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PresheafMorphism {
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn is_bijective(&self, target: &Presheaf) -> bool {
        self.components.iter().enumerate().all(|(a, comp)| {
            let mut seen = vec![false; target.size(a)];
            comp.len() == target.size(a) && comp.iter().all(|&z| !std::mem::replace(&mut seen[z], true))
        })
    }
}

fn check_same_base(p: &Presheaf, q: &Presheaf) -> Result<()> {
    if p.base != q.base {
        return Err(Error::Mismatch("presheaves over different bases".into()));
    }
    Ok(())
}

/// Checks that `m` is a natural family `p ⇒ q`.
pub fn check_presheaf_morphism(p: &Presheaf, q: &Presheaf, m: &PresheafMorphism) -> Result<LawReport> {
    check_same_base(p, q)?;
    let c = &p.base;
    if m.components.len() != c.object_count()
        || c.objects().any(|a| {
            m.components[a].len() != p.size(a) || m.components[a].iter().any(|&z| z >= q.size(a))
        })
    {
        return Err(Error::malformed("presheaf morphism", "components are off their sets"));
    }
    let mut r = LawReport::new();
    for f in c.morphism_ids() {
        let (a, b) = (c.src(f), c.tgt(f));
        for y in 0..p.size(b) {
            let left = m.components[a][p.act(f, y)];
            let right = q.act(f, m.components[b][y]);
            r.require(left == right, "naturality", || vec![Item::Mor(f), Item::Elem(y)]);
        }
    }
    Ok(r)
}

/// All natural families `p ⇒ q`, ordered lexicographically by component
/// values taken object by object.
pub fn presheaf_morphisms(p: &Presheaf, q: &Presheaf, node_limit: usize) -> Result<Vec<PresheafMorphism>> {
    check_same_base(p, q)?;
    let c = p.base.as_ref();
    let mut search = Search::new(node_limit);
    let mut var = Vec::with_capacity(c.object_count());
    for a in c.objects() {
        let row: Vec<usize> = (0..p.size(a)).map(|_| search.var((0..q.size(a)).collect())).collect();
        var.push(row);
    }
    for f in c.morphism_ids() {
        let (a, b) = (c.src(f), c.tgt(f));
        for y in 0..p.size(b) {
            let vb = var[b][y];
            let va = var[a][p.act(f, y)];
            let qf = q.action(f);
            search.constrain(&[va, vb], move |s| match (s.get(va), s.get(vb)) {
                (Some(za), Some(zb)) => za == qf[zb],
                _ => true,
            });
        }
    }
    let sizes: Vec<usize> = c.objects().map(|a| p.size(a)).collect();
    Ok(search
        .all(usize::MAX)?
        .into_iter()
        .map(|flat| {
            let mut it = flat.into_iter();
            PresheafMorphism {
                components: sizes.iter().map(|&n| it.by_ref().take(n).collect()).collect(),
            }
        })
        .collect())
}
