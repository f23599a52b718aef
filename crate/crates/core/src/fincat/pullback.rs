use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::category::{FinCat, Morphism, Obj};
use crate::fincat::functor::{functors_within, Functor};
use crate::fincat::nat::{enumerate_nat_transformations, NatTransformation};
use crate::report::{Item, LawReport};

/// The pullback `A ×_C B` of a cospan of functors, with its projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub apex: Arc<FinCat>,
    pub left: Functor,
    pub right: Functor,
    pub legs: (Functor, Functor),
}

/// Builds `A ×_C B` for `f : A → C` and `g : B → C`.
///
/// Objects are pairs `(a, b)` with `f a = g b` in lexicographic order;
/// morphisms are pairs with equal images, in lexicographic order of ids.
pub fn pullback_category(f: &Functor, g: &Functor) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    let (a_cat, b_cat) = (f.source(), g.source());
    let mut objects = Vec::new();
    let mut names = Vec::new();
    let mut obj_index = HashMap::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            if f.ob(a) == g.ob(b) {
                obj_index.insert((a, b), objects.len());
                objects.push((a, b));
                names.push(format!("({},{})", a_cat.object_name(a), b_cat.object_name(b)));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut mor_index = HashMap::new();
    for m in a_cat.morphism_ids() {
        for n in b_cat.morphism_ids() {
            if f.mor(m) != g.mor(n) {
                continue;
            }
            let src = obj_index.get(&(a_cat.src(m), b_cat.src(n)));
            let tgt = obj_index.get(&(a_cat.tgt(m), b_cat.tgt(n)));
            if let (Some(&src), Some(&tgt)) = (src, tgt) {
                mor_index.insert((m, n), morphisms.len());
                pairs.push((m, n));
                morphisms.push(Morphism {
                    name: format!("({},{})", a_cat.morphism(m).name, b_cat.morphism(n).name),
                    src,
                    tgt,
                });
            }
        }
    }
    let identities = objects
        .iter()
        .map(|&(a, b)| mor_index[&(a_cat.identity(a), b_cat.identity(b))])
        .collect();
    let mut composites = Vec::new();
    for (i, &(m, n)) in pairs.iter().enumerate() {
        for (k, &(m2, n2)) in pairs.iter().enumerate() {
            if a_cat.tgt(m) == a_cat.src(m2) && b_cat.tgt(n) == b_cat.src(n2) {
                let key = (a_cat.compose(m, m2), b_cat.compose(n, n2));
                composites.push((i, k, mor_index[&key]));
            }
        }
    }
    let apex = Arc::new(FinCat::new(names, morphisms, identities, composites)?);
    let left = Functor::new(
        apex.clone(),
        a_cat.clone(),
        objects.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.0).collect(),
    )?;
    let right = Functor::new(
        apex.clone(),
        b_cat.clone(),
        objects.iter().map(|p| p.1).collect(),
        pairs.iter().map(|p| p.1).collect(),
    )?;
    Ok(Pullback {
        apex,
        left,
        right,
        legs: (f.clone(), g.clone()),
    })
}

/// A commuting square into the cospan of a pullback.
#[derive(Debug, Clone)]
pub struct Cone {
    pub left: Functor,
    pub right: Functor,
}

/// Outcome of checking the universal property against a test universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PullbackCertificate {
    /// Number of mediating functors found per cone; each must be 1.
    pub mediator_counts: Vec<usize>,
    /// Number of chained 2-cell pairs checked.
    pub cells_checked: usize,
    pub report: LawReport,
}

impl PullbackCertificate {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.mediator_counts.iter().all(|&c| c == 1)
    }
}

impl Pullback {
    /// Checks the one-dimensional property for every cone and the 2-cell
    /// property for pairs of cones on a common apex, with 2-cells on chains
    /// of hom-distributors of length `0..=chain_bound`.
    ///
    /// A chain 2-cell of length `n` is derived from a natural transformation
    /// `α` by sending a path `m₁ ⨾ … ⨾ mₙ` to `F(m₁ ⨾ … ⨾ mₙ) ⨾ α`; the check
    /// counts apex morphisms projecting onto each pair of components.
    pub fn check_universal(&self, cones: &[Cone], chain_bound: usize, node_limit: usize) -> Result<PullbackCertificate> {
        let (f, g) = &self.legs;
        let mut cert = PullbackCertificate::default();
        let mut mediators = Vec::with_capacity(cones.len());
        for (i, cone) in cones.iter().enumerate() {
            let x = cone.left.source();
            if cone.right.source() != x || cone.left.target() != f.source() || cone.right.target() != g.source() {
                return Err(Error::Mismatch(format!("cone {i} does not sit over the cospan")));
            }
            if cone.left.then(f)? != cone.right.then(g)? {
                return Err(Error::Mismatch(format!("cone {i} does not commute")));
            }
            let object_candidates = x
                .objects()
                .map(|o| {
                    self.apex
                        .objects()
                        .filter(|&p| self.left.ob(p) == cone.left.ob(o) && self.right.ob(p) == cone.right.ob(o))
                        .collect()
                })
                .collect();
            let morphism_candidates = x
                .morphism_ids()
                .map(|m| {
                    self.apex
                        .morphism_ids()
                        .filter(|&p| self.left.mor(p) == cone.left.mor(m) && self.right.mor(p) == cone.right.mor(m))
                        .collect()
                })
                .collect();
            let found = functors_within(x, &self.apex, object_candidates, morphism_candidates, node_limit, 2)?;
            cert.mediator_counts.push(found.len());
            if found.len() != 1 {
                cert.report.push("mediator-unique", vec![Item::Elem(i)]);
            }
            mediators.push(found.into_iter().next());
        }
        for (i, c) in cones.iter().enumerate() {
            for (k, d) in cones.iter().enumerate() {
                let (Some(h), Some(h2)) = (&mediators[i], &mediators[k]) else {
                    continue;
                };
                if c.left.source() != d.left.source() {
                    continue;
                }
                let alphas = enumerate_nat_transformations(&c.left, &d.left, node_limit)?;
                let betas = enumerate_nat_transformations(&c.right, &d.right, node_limit)?;
                for alpha in &alphas {
                    for beta in &betas {
                        if !agree(f, g, alpha, beta) {
                            continue;
                        }
                        for n in 0..=chain_bound {
                            self.check_chain_cell(c, h, h2, alpha, beta, n, &mut cert);
                        }
                    }
                }
            }
        }
        Ok(cert)
    }

    #[allow(clippy::too_many_arguments)]
    fn check_chain_cell(
        &self,
        cone: &Cone,
        h: &Functor,
        h2: &Functor,
        alpha: &NatTransformation,
        beta: &NatTransformation,
        n: usize,
        cert: &mut PullbackCertificate,
    ) {
        let x = cone.left.source();
        let (a_cat, b_cat) = (self.left.target(), self.right.target());
        for path in paths(x, n) {
            let (start, end) = match (path.first(), path.last()) {
                (Some(&m0), Some(&m1)) => (x.src(m0), x.tgt(m1)),
                _ => continue,
            };
            let comp = x.compose_path(&path);
            let ca = a_cat.compose(cone.left.mor(comp), alpha.component(end));
            let cb = b_cat.compose(cone.right.mor(comp), beta.component(end));
            let hom = self.apex.hom(h.ob(start), h2.ob(end));
            let hits = hom
                .iter()
                .filter(|&&p| self.left.mor(p) == ca && self.right.mor(p) == cb)
                .count();
            cert.cells_checked += 1;
            cert.report.require(hits == 1, "two-cell-unique", || {
                path.iter().map(|&m| Item::Mor(m)).collect()
            });
        }
        if n == 0 {
            for o in x.objects() {
                let hom = self.apex.hom(h.ob(o), h2.ob(o));
                let hits = hom
                    .iter()
                    .filter(|&&p| self.left.mor(p) == alpha.component(o) && self.right.mor(p) == beta.component(o))
                    .count();
                cert.cells_checked += 1;
                cert.report.require(hits == 1, "two-cell-unique", || vec![Item::Obj(o)]);
            }
        }
    }
}

fn agree(f: &Functor, g: &Functor, alpha: &NatTransformation, beta: &NatTransformation) -> bool {
    alpha
        .components()
        .iter()
        .zip(beta.components())
        .all(|(&a, &b)| f.mor(a) == g.mor(b))
}

/// Composable paths of exactly `n` morphisms; length 0 yields nothing here
/// since nullary cells are handled object-wise.
fn paths(x: &FinCat, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = x.morphism_ids().map(|m| vec![m]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().expect("nonempty");
                x.morphisms_from(x.tgt(last))
                    .map(|m| {
                        let mut q = p.clone();
                        q.push(m);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Objects `(a, b)` of the apex with the given components.
pub fn pair_object(pb: &Pullback, a: Obj, b: Obj) -> Option<Obj> {
    pb.apex.objects().find(|&p| pb.left.ob(p) == a && pb.right.ob(p) == b)
}
