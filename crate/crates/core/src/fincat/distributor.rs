use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{FinCat, Mor, Obj};
use crate::fincat::functor::Functor;
use crate::fincat::presheaf::Presheaf;
use crate::report::{Item, LawReport};

pub type Het = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HetElement {
    pub contra: Obj,
    pub co: Obj,
    pub name: String,
}

/// A distributor (profunctor) given by sets `het(x, y)` of heteromorphisms
/// `x ⇝ y` for `x` in `contra` and `y` in `co`.
///
/// `contra` acts by precomposition (`f ⨾ h` for `f : x' → x`) and `co` by
/// postcomposition (`h ⨾ g` for `g : y → y'`). In right-to-left loose-cell
/// notation this is a cell `co ⇸ contra`: the conjoint `E(j, 1)` has
/// `contra = A`, `co = E` and `het(a, e) = E(j a, e)`.
///
/// Elements are stored grouped by `(contra, co)` in lexicographic order, so
/// each `het(x, y)` is a contiguous id range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distributor {
    contra: Arc<FinCat>,
    co: Arc<FinCat>,
    elements: Vec<HetElement>,
    offsets: Vec<usize>,
    pre: Vec<Option<Het>>,
    post: Vec<Option<Het>>,
}

impl Distributor {
    /// Builds a distributor, regrouping elements into canonical order.
    ///
    /// `pre` lists `(f, h, f ⨾ h)` and `post` lists `(h, g, h ⨾ g)`, with
    /// element ids referring to positions in `elements` as given.
    pub fn new(
        contra: Arc<FinCat>,
        co: Arc<FinCat>,
        elements: Vec<HetElement>,
        pre: impl IntoIterator<Item = (Mor, Het, Het)>,
        post: impl IntoIterator<Item = (Het, Mor, Het)>,
    ) -> Result<Distributor> {
        let n = elements.len();
        if let Some(e) = elements
            .iter()
            .find(|e| e.contra >= contra.object_count() || e.co >= co.object_count())
        {
            return Err(Error::malformed("distributor", format!("element {:?} has a dangling index", e.name)));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (elements[i].contra, elements[i].co));
        let mut renumber = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let sorted: Vec<HetElement> = order.iter().map(|&i| elements[i].clone()).collect();
        let mut d = Distributor::empty_tables(contra, co, sorted);
        let n_contra = d.contra.morphism_count();
        let n_co = d.co.morphism_count();
        for (f, h, fh) in pre {
            if f >= n_contra || h >= n || fh >= n {
                return Err(Error::malformed("distributor", format!("pre-action ({f}, {h}, {fh}) is dangling")));
            }
            set_once(&mut d.pre[f * n + renumber[h]], renumber[fh], "pre-action")?;
        }
        for (h, g, hg) in post {
            if g >= n_co || h >= n || hg >= n {
                return Err(Error::malformed("distributor", format!("post-action ({h}, {g}, {hg}) is dangling")));
            }
            set_once(&mut d.post[renumber[h] * n_co + g], renumber[hg], "post-action")?;
        }
        Ok(d)
    }

    fn empty_tables(contra: Arc<FinCat>, co: Arc<FinCat>, elements: Vec<HetElement>) -> Distributor {
        let n = elements.len();
        let (nx, ny) = (contra.object_count(), co.object_count());
        let mut offsets = vec![0; nx * ny + 1];
        for e in &elements {
            offsets[e.contra * ny + e.co + 1] += 1;
        }
        for i in 0..nx * ny {
            offsets[i + 1] += offsets[i];
        }
        let pre = vec![None; contra.morphism_count() * n];
        let post = vec![None; n * co.morphism_count()];
        Distributor {
            contra,
            co,
            elements,
            offsets,
            pre,
            post,
        }
    }

    /// Builds a distributor from total action functions on canonical data.
    ///
    /// `sets[x][y]` names the elements of `het(x, y)`; the closures receive and
    /// return ids in canonical order.
    pub fn from_fn(
        contra: Arc<FinCat>,
        co: Arc<FinCat>,
        sets: &dyn Fn(Obj, Obj) -> Vec<String>,
        pre: &dyn Fn(Mor, Het) -> Het,
        post: &dyn Fn(Het, Mor) -> Het,
    ) -> Distributor {
        let mut elements = Vec::new();
        for x in contra.objects() {
            for y in co.objects() {
                for name in sets(x, y) {
                    elements.push(HetElement { contra: x, co: y, name });
                }
            }
        }
        let mut d = Distributor::empty_tables(contra, co, elements);
        d.fill_actions(pre, post);
        d
    }

    fn fill_actions(&mut self, pre: &dyn Fn(Mor, Het) -> Het, post: &dyn Fn(Het, Mor) -> Het) {
        let n = self.elements.len();
        let n_co = self.co.morphism_count();
        for h in 0..n {
            let (x, y) = (self.elements[h].contra, self.elements[h].co);
            for x2 in self.contra.objects() {
                for &f in self.contra.hom(x2, x) {
                    self.pre[f * n + h] = Some(pre(f, h));
                }
            }
            for y2 in self.co.objects() {
                for &g in self.co.hom(y, y2) {
                    self.post[h * n_co + g] = Some(post(h, g));
                }
            }
        }
    }

    /// The hom-distributor `C(1, 1)`: `het(x, y) = C(x, y)` in id order.
    pub fn hom(c: &Arc<FinCat>) -> Distributor {
        let order = hom_order(c);
        let mut position = vec![0; c.morphism_count()];
        for (i, &m) in order.iter().enumerate() {
            position[m] = i;
        }
        Distributor::from_fn(
            c.clone(),
            c.clone(),
            &|x, y| c.hom(x, y).iter().map(|&m| c.morphism(m).name.clone()).collect(),
            &|f, h| position[c.compose(f, order[h])],
            &|h, g| position[c.compose(order[h], g)],
        )
    }

    /// The conjoint `E(j, 1)`: contra `A`, co `E`, `het(a, e) = E(j a, e)`.
    pub fn conjoint(j: &Functor) -> Distributor {
        restrict_distributor(&Distributor::hom(j.target()), j, &Functor::identity(j.target()))
            .expect("restriction along a functor into E")
    }

    /// The companion `E(1, j)`: contra `E`, co `A`, `het(e, a) = E(e, j a)`.
    pub fn companion(j: &Functor) -> Distributor {
        restrict_distributor(&Distributor::hom(j.target()), &Functor::identity(j.target()), j)
            .expect("restriction along a functor into E")
    }

    pub fn contra(&self) -> &Arc<FinCat> {
        &self.contra
    }

    pub fn co(&self) -> &Arc<FinCat> {
        &self.co
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HetElement] {
        &self.elements
    }

    pub fn element(&self, h: Het) -> &HetElement {
        &self.elements[h]
    }

    /// Ids of `het(x, y)`.
    pub fn het(&self, x: Obj, y: Obj) -> Range<Het> {
        let i = x * self.co.object_count() + y;
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn try_pre(&self, f: Mor, h: Het) -> Option<Het> {
        self.pre[f * self.elements.len() + h]
    }

    pub fn try_post(&self, h: Het, g: Mor) -> Option<Het> {
        self.post[h * self.co.morphism_count() + g]
    }

    /// `f ⨾ h` in a valid distributor.
    pub fn pre(&self, f: Mor, h: Het) -> Het {
        self.try_pre(f, h).expect("pre-action defined on composable data")
    }

    /// `h ⨾ g` in a valid distributor.
    pub fn post(&self, h: Het, g: Mor) -> Het {
        self.try_post(h, g).expect("post-action defined on composable data")
    }

    /// Largest `het(x, y)`.
    pub fn max_het(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn validate(&self) -> LawReport {
        let x_cat = &self.contra;
        let y_cat = &self.co;
        let n = self.elements.len();
        let mut r = LawReport::new();
        for h in 0..n {
            let (x, y) = (self.elements[h].contra, self.elements[h].co);
            for f in x_cat.morphism_ids() {
                let composable = x_cat.tgt(f) == x;
                match (composable, self.try_pre(f, h)) {
                    (true, None) => r.push("pre-total", vec![Item::Mor(f), Item::Het(h)]),
                    (false, Some(_)) => r.push("pre-domain", vec![Item::Mor(f), Item::Het(h)]),
                    (true, Some(fh)) => r.require(
                        self.elements[fh].contra == x_cat.src(f) && self.elements[fh].co == y,
                        "pre-endpoints",
                        || vec![Item::Mor(f), Item::Het(h)],
                    ),
                    (false, None) => {}
                }
            }
            for g in y_cat.morphism_ids() {
                let composable = y_cat.src(g) == y;
                match (composable, self.try_post(h, g)) {
                    (true, None) => r.push("post-total", vec![Item::Het(h), Item::Mor(g)]),
                    (false, Some(_)) => r.push("post-domain", vec![Item::Het(h), Item::Mor(g)]),
                    (true, Some(hg)) => r.require(
                        self.elements[hg].contra == x && self.elements[hg].co == y_cat.tgt(g),
                        "post-endpoints",
                        || vec![Item::Het(h), Item::Mor(g)],
                    ),
                    (false, None) => {}
                }
            }
        }
        if !r.passed() {
            return r;
        }
        for h in 0..n {
            let (x, y) = (self.elements[h].contra, self.elements[h].co);
            r.require(self.pre(x_cat.identity(x), h) == h, "pre-unit", || vec![Item::Het(h)]);
            r.require(self.post(h, y_cat.identity(y)) == h, "post-unit", || vec![Item::Het(h)]);
            for x1 in x_cat.objects() {
                for &f in x_cat.hom(x1, x) {
                    let fh = self.pre(f, h);
                    for x0 in x_cat.objects() {
                        for &f0 in x_cat.hom(x0, x1) {
                            let left = self.pre(x_cat.compose(f0, f), h);
                            let right = self.pre(f0, fh);
                            r.require(left == right, "pre-associativity", || {
                                vec![Item::Mor(f0), Item::Mor(f), Item::Het(h)]
                            });
                        }
                    }
                    for g in y_cat.morphisms_from(y) {
                        let left = self.post(fh, g);
                        let right = self.pre(f, self.post(h, g));
                        r.require(left == right, "actions-commute", || {
                            vec![Item::Mor(f), Item::Het(h), Item::Mor(g)]
                        });
                    }
                }
            }
            for g in y_cat.morphisms_from(y) {
                let hg = self.post(h, g);
                for g2 in y_cat.morphisms_from(y_cat.tgt(g)) {
                    let left = self.post(h, y_cat.compose(g, g2));
                    let right = self.post(hg, g2);
                    r.require(left == right, "post-associativity", || {
                        vec![Item::Het(h), Item::Mor(g), Item::Mor(g2)]
                    });
                }
            }
        }
        r
    }

    /// The presheaf `het(−, y)` on `contra`.
    pub fn column(&self, y: Obj) -> Presheaf {
        let x_cat = &self.contra;
        let values: Vec<Vec<String>> = x_cat
            .objects()
            .map(|x| self.het(x, y).map(|h| self.elements[h].name.clone()).collect())
            .collect();
        let action: Vec<Vec<usize>> = x_cat
            .morphism_ids()
            .map(|f| {
                let (a, b) = (x_cat.src(f), x_cat.tgt(f));
                let base = self.het(a, y).start;
                self.het(b, y).map(|h| self.pre(f, h) - base).collect()
            })
            .collect();
        Presheaf::new(x_cat.clone(), values, action).expect("columns of a valid distributor")
    }

    /// `op(p)`: contra `co^op`, co `contra^op`, with `het'(y, x) = het(x, y)`.
    pub fn opposite(&self) -> Distributor {
        self.opposite_between(&Arc::new(self.co.opposite()), &Arc::new(self.contra.opposite()))
    }

    /// As [`Distributor::opposite`], reusing prebuilt opposite categories.
    pub fn opposite_between(&self, co_op: &Arc<FinCat>, contra_op: &Arc<FinCat>) -> Distributor {
        let mut elements = Vec::with_capacity(self.elements.len());
        let mut old = Vec::with_capacity(self.elements.len());
        let mut new_of_old = vec![0; self.elements.len()];
        for y in self.co.objects() {
            for x in self.contra.objects() {
                for h in self.het(x, y) {
                    new_of_old[h] = elements.len();
                    old.push(h);
                    elements.push(HetElement {
                        contra: y,
                        co: x,
                        name: self.elements[h].name.clone(),
                    });
                }
            }
        }
        let mut d = Distributor::empty_tables(co_op.clone(), contra_op.clone(), elements);
        d.fill_actions(
            &|g, nh| new_of_old[self.post(old[nh], g)],
            &|nh, f| new_of_old[self.pre(f, old[nh])],
        );
        d
    }
}

fn hom_order(c: &FinCat) -> Vec<Mor> {
    let mut order = Vec::with_capacity(c.morphism_count());
    for x in c.objects() {
        for y in c.objects() {
            order.extend_from_slice(c.hom(x, y));
        }
    }
    order
}

fn set_once(slot: &mut Option<Het>, value: Het, what: &str) -> Result<()> {
    match slot {
        Some(prev) if *prev != value => Err(Error::malformed("distributor", format!("{what} entry given twice"))),
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

/// `p(f, g)`: `het'(x', y') = het(f x', g y')` with actions transported along
/// `f` and `g`. Element names are kept.
pub fn restrict_distributor(p: &Distributor, f: &Functor, g: &Functor) -> Result<Distributor> {
    if f.target() != p.contra() || g.target() != p.co() {
        return Err(Error::Mismatch("restriction functors do not land in the distributor's categories".into()));
    }
    let x_cat = f.source();
    let y_cat = g.source();
    let mut elements = Vec::new();
    let mut old = Vec::new();
    for x in x_cat.objects() {
        for y in y_cat.objects() {
            for h in p.het(f.ob(x), g.ob(y)) {
                elements.push(HetElement {
                    contra: x,
                    co: y,
                    name: p.elements[h].name.clone(),
                });
                old.push(h);
            }
        }
    }
    let mut d = Distributor::empty_tables(x_cat.clone(), y_cat.clone(), elements);
    let local = |x: Obj, y: Obj, h_old: Het| -> Het {
        d.het(x, y).start + (h_old - p.het(f.ob(x), g.ob(y)).start)
    };
    let pre_tab: Vec<(Mor, Het, Het)> = {
        let mut v = Vec::new();
        for nh in 0..d.elements.len() {
            let (x, y) = (d.elements[nh].contra, d.elements[nh].co);
            for x2 in x_cat.objects() {
                for &m in x_cat.hom(x2, x) {
                    let r = p.try_pre(f.mor(m), old[nh]);
                    if let Some(r) = r.filter(|&r| p.het(f.ob(x2), g.ob(y)).contains(&r)) {
                        v.push((m, nh, local(x2, y, r)));
                    }
                }
            }
        }
        v
    };
    let post_tab: Vec<(Het, Mor, Het)> = {
        let mut v = Vec::new();
        for nh in 0..d.elements.len() {
            let (x, y) = (d.elements[nh].contra, d.elements[nh].co);
            for y2 in y_cat.objects() {
                for &m in y_cat.hom(y, y2) {
                    let r = p.try_post(old[nh], g.mor(m));
                    if let Some(r) = r.filter(|&r| p.het(f.ob(x), g.ob(y2)).contains(&r)) {
                        v.push((nh, m, local(x, y2, r)));
                    }
                }
            }
        }
        v
    };
    let n = d.elements.len();
    let n_co = y_cat.morphism_count();
    for (m, nh, r) in pre_tab {
        d.pre[m * n + nh] = Some(r);
    }
    for (nh, m, r) in post_tab {
        d.post[nh * n_co + m] = Some(r);
    }
    Ok(d)
}
