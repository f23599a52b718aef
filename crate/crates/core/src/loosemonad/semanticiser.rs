use std::sync::Arc;

use crate::constructions::{Algebras, Comparison, Kleisli};
use crate::error::{Caps, Error, Result};
use crate::fincat::{
    canonical_map_bijective, functors_within, presheaf_morphisms, restrict_distributor, DensityVerdict, Distributor,
    FinCat, Functor, Het, Mor, Obj, Presheaf, PresheafMorphism,
};
use crate::relmonad::RelativeMonad;
use crate::report::{Item, LawReport};

/// A square `π₂(k, 1) = n(1, π₁)` with `n : E ⇸ A`, `k : A → K`,
/// `π₁ : D → E` and `π₂ : D ⇸ K`.
#[derive(Debug, Clone)]
pub struct Square {
    pub n: Distributor,
    pub k: Functor,
    pub pi1: Functor,
    pub pi2: Distributor,
}

/// A cone `(e, p)` on apex `X`: `e : X → E` and `p : X ⇸ K` with `p(k, 1) = n(1, e)`.
#[derive(Debug, Clone)]
pub struct SemanticiserCone {
    pub apex: Arc<FinCat>,
    pub leg: Functor,
    pub het: Distributor,
}

impl SemanticiserCone {
    /// The cone `(u ⨾ e, p(1, u))` on `Y` for `u : Y → X`.
    pub fn restrict(&self, u: &Functor) -> Result<SemanticiserCone> {
        Ok(SemanticiserCone {
            apex: u.source().clone(),
            leg: u.then(&self.leg)?,
            het: restrict_distributor(&self.het, &Functor::identity(self.het.contra()), u)?,
        })
    }

    /// Restrictions along every object `1 → X`.
    pub fn points(&self) -> Result<Vec<SemanticiserCone>> {
        self.apex.objects().map(|o| self.restrict(&Functor::point(&self.apex, o))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SemanticiserCertificate {
    pub restriction: bool,
    pub density: DensityVerdict,
    /// Mediators found per cone, capped at 2.
    pub mediator_counts: Vec<usize>,
    pub cells_checked: usize,
    pub two_dim: LawReport,
}

impl SemanticiserCertificate {
    pub fn one_dim(&self) -> bool {
        self.mediator_counts.iter().all(|&c| c == 1)
    }

    pub fn passed(&self) -> bool {
        self.restriction && self.density.dense && self.one_dim() && self.two_dim.passed()
    }
}

impl Square {
    pub fn restriction_holds(&self) -> Result<bool> {
        Ok(restrict_distributor(&self.pi2, &self.k, &Functor::identity(self.pi2.co()))?
            == restrict_distributor(&self.n, &Functor::identity(self.n.contra()), &self.pi1)?)
    }

    /// The identity cone `(π₁, π₂)`.
    pub fn identity_cone(&self) -> SemanticiserCone {
        SemanticiserCone {
            apex: self.pi1.source().clone(),
            leg: self.pi1.clone(),
            het: self.pi2.clone(),
        }
    }

    fn is_cone(&self, c: &SemanticiserCone) -> Result<bool> {
        if c.het.contra() != self.k.target() || c.leg.target() != self.pi1.target() || c.het.co() != &c.apex {
            return Ok(false);
        }
        Ok(restrict_distributor(&c.het, &self.k, &Functor::identity(&c.apex))?
            == restrict_distributor(&self.n, &Functor::identity(self.n.contra()), &c.leg)?)
    }

    /// Functors `m : X → D` with `m ⨾ π₁ = e` and `π₂(1, m) = p`, at most 2.
    pub fn mediators(&self, c: &SemanticiserCone, node_limit: usize) -> Result<Vec<Functor>> {
        let d = self.pi1.source();
        let cols: Vec<Presheaf> = d.objects().map(|o| self.pi2.column(o)).collect();
        let cone_cols: Vec<Presheaf> = c.apex.objects().map(|o| c.het.column(o)).collect();
        let object_candidates = c
            .apex
            .objects()
            .map(|o| d.objects().filter(|&x| self.pi1.ob(x) == c.leg.ob(o) && cols[x] == cone_cols[o]).collect())
            .collect();
        let kcat = self.pi2.contra();
        let morphism_candidates = c
            .apex
            .morphism_ids()
            .map(|chi| {
                let (o, o2) = (c.apex.src(chi), c.apex.tgt(chi));
                d.morphism_ids()
                    .filter(|&delta| {
                        let (x, x2) = (d.src(delta), d.tgt(delta));
                        self.pi1.mor(delta) == c.leg.mor(chi)
                            && cols[x] == cone_cols[o]
                            && cols[x2] == cone_cols[o2]
                            && kcat.objects().all(|y| {
                                c.het.het(y, o).zip(self.pi2.het(y, x)).all(|(h, h2)| {
                                    c.het.post(h, chi) - c.het.het(y, o2).start
                                        == self.pi2.post(h2, delta) - self.pi2.het(y, x2).start
                                })
                            })
                    })
                    .collect()
            })
            .collect();
        functors_within(&c.apex, d, object_candidates, morphism_candidates, node_limit, 2)
    }

    /// `D(d, d') → Nat(π₂(−, d), π₂(−, d'))` is a bijection.
    pub fn density(&self, node_limit: usize) -> Result<DensityVerdict> {
        let p = &self.pi2;
        canonical_map_bijective(self.pi1.source(), |d| p.column(d), |m| post_family(p, m), node_limit)
    }

    /// For chains `d₀ → ⋯ → dₙ`, `n ≤ chain_bound`, and each
    /// `ν : π₂(−, dₙ) ⇒ π₂(−, d')`, exactly one `m : d₀ → d'` realizes
    /// `ν ∘ π₂(−, chain)`.
    pub fn two_dim(&self, chain_bound: usize, node_limit: usize) -> Result<(LawReport, usize)> {
        let d = self.pi1.source();
        let p = &self.pi2;
        let cols: Vec<Presheaf> = d.objects().map(|o| p.column(o)).collect();
        let kcat = p.contra();
        let mut report = LawReport::new();
        let mut checked = 0;
        for n in 0..=chain_bound {
            for chain in chains(d, n) {
                let comp = d.compose_path(&chain);
                let (start, end) = (d.src(comp), d.tgt(comp));
                for target in d.objects() {
                    for nu in presheaf_morphisms(&cols[end], &cols[target], node_limit)? {
                        let expected: Vec<Vec<usize>> = kcat
                            .objects()
                            .map(|y| {
                                p.het(y, start)
                                    .map(|h| nu.components[y][p.post(h, comp) - p.het(y, end).start])
                                    .collect()
                            })
                            .collect();
                        let hits = d
                            .hom(start, target)
                            .iter()
                            .filter(|&&m| post_family(p, m).components == expected)
                            .count();
                        checked += 1;
                        report.require(hits == 1, "two-cell-unique", || {
                            let mut w: Vec<Item> = chain.iter().map(|&m| Item::Mor(m)).collect();
                            w.push(Item::Obj(target));
                            w
                        });
                    }
                }
            }
        }
        Ok((report, checked))
    }

    pub fn check(&self, universe: &[SemanticiserCone], chain_bound: usize, caps: &Caps) -> Result<SemanticiserCertificate> {
        for (i, c) in universe.iter().enumerate() {
            if !self.is_cone(c)? {
                return Err(Error::Mismatch(format!("test cone {i} does not satisfy the restriction equation")));
            }
        }
        let mediator_counts = universe
            .iter()
            .map(|c| self.mediators(c, caps.max_search_nodes).map(|v| v.len()))
            .collect::<Result<Vec<_>>>()?;
        let (two_dim, cells_checked) = self.two_dim(chain_bound, caps.max_search_nodes)?;
        Ok(SemanticiserCertificate {
            restriction: self.restriction_holds()?,
            density: self.density(caps.max_search_nodes)?,
            mediator_counts,
            cells_checked,
            two_dim,
        })
    }
}

fn post_family(p: &Distributor, m: Mor) -> PresheafMorphism {
    let (d, d2) = (p.co().src(m), p.co().tgt(m));
    let components = p
        .contra()
        .objects()
        .map(|y| p.het(y, d).map(|h| p.post(h, m) - p.het(y, d2).start).collect())
        .collect();
    PresheafMorphism { components }
}

/// Composable paths of `n` morphisms; identities when `n = 0`.
fn chains(c: &FinCat, n: usize) -> Vec<Vec<Mor>> {
    let mut out: Vec<Vec<Mor>> = c.objects().map(|o| vec![c.identity(o)]).collect();
    if n == 0 {
        return out;
    }
    out = c.morphism_ids().map(|m| vec![m]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|path| {
                let last = *path.last().expect("nonempty");
                c.morphisms_from(c.tgt(last))
                    .map(|m| {
                        let mut q = path.clone();
                        q.push(m);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// `het(x, d) = E(j x, leg d)` over `Kl(T)`, with Kleisli `k` acting by `act`
/// and morphisms of `D` by postcomposition with their legs.
pub(crate) fn fibred_distributor(
    t: &RelativeMonad,
    kc: &Arc<FinCat>,
    leg: &Functor,
    act: &dyn Fn(usize, Obj, Mor) -> Mor,
) -> Distributor {
    let e = t.ambient();
    let j = t.root();
    let dc = leg.source();
    let mut elems: Vec<(Obj, Obj, Mor)> = Vec::new();
    for x in kc.objects() {
        for d in dc.objects() {
            elems.extend(e.hom(j.ob(x), leg.ob(d)).iter().map(|&g| (x, d, g)));
        }
    }
    let elems = &elems;
    let locate = |x: Obj, d: Obj, g: Mor| -> Het {
        elems.iter().position(|&q| q == (x, d, g)).expect("element of E(j x, leg d)")
    };
    let idx = t.kleisli_index();
    Distributor::from_fn(
        kc.clone(),
        dc.clone(),
        &|x, d| e.hom(j.ob(x), leg.ob(d)).iter().map(|&g| e.morphism(g).name.clone()).collect(),
        &|k, h| {
            let (_, d, g) = elems[h];
            locate(idx.entry(k).0, d, act(k, d, g))
        },
        &|h, m| {
            let (x, _, g) = elems[h];
            locate(x, dc.tgt(m), e.compose(g, leg.mor(m)))
        },
    )
}

/// `π₂ : Alg(T) ⇸ Kl(T)`, `het(x, α) = E(j x, u α)`, with Kleisli `f` acting by
/// `g ↦ f ⨾ g^α` and algebra morphisms by postcomposition.
pub fn em_pi2(t: &RelativeMonad, kl: &Kleisli, alg: &Algebras) -> Distributor {
    let e = t.ambient();
    let idx = t.kleisli_index();
    fibred_distributor(t, &kl.category, &alg.forget, &|k, a, g| {
        let (_, x, f) = idx.entry(k);
        e.compose(f, alg.algebras[a].extend(t, x, g))
    })
}

/// The square `(E(j, 1), k_T, u_T, π₂)`.
pub fn em_square(t: &RelativeMonad, kl: &Kleisli, alg: &Algebras) -> Square {
    Square {
        n: Distributor::conjoint(t.root()),
        k: kl.free.clone(),
        pi1: alg.forget.clone(),
        pi2: em_pi2(t, kl, alg),
    }
}

/// `g ↦ g^α` is an isomorphism `π₂ ≅ Alg(T)(i_T, 1)` commuting with both actions.
pub fn check_pi2_transport(t: &RelativeMonad, alg: &Algebras, cmp: &Comparison, pi2: &Distributor) -> Result<LawReport> {
    let e = t.ambient();
    let hom = restrict_distributor(
        &Distributor::hom(&alg.category),
        &cmp.functor,
        &Functor::identity(&alg.category),
    )?;
    let mut r = LawReport::new();
    let mut map = vec![None; pi2.len()];
    for h in 0..pi2.len() {
        let el = pi2.element(h);
        let (x, a) = (el.contra, el.co);
        let g = e.hom(t.root().ob(x), alg.forget.ob(a))[h - pi2.het(x, a).start];
        let lifted = alg.algebras[a].extend(t, x, g);
        match alg.morphism_over(cmp.functor.ob(x), a, lifted) {
            Some(m) => {
                let pos = alg.category.hom(cmp.functor.ob(x), a).iter().position(|&q| q == m).expect("in hom");
                map[h] = Some(hom.het(x, a).start + pos);
            }
            None => r.push("transport-lands", vec![Item::Het(h)]),
        }
    }
    if !r.passed() {
        return Ok(r);
    }
    let map: Vec<Het> = map.into_iter().map(|m| m.expect("checked")).collect();
    let mut seen = vec![false; hom.len()];
    for &m in &map {
        seen[m] = true;
    }
    r.require(map.len() == hom.len() && seen.iter().all(|&s| s), "transport-bijective", Vec::new);
    let (kc, dc) = (pi2.contra(), pi2.co());
    for h in 0..pi2.len() {
        let (x, a) = (pi2.element(h).contra, pi2.element(h).co);
        for x2 in kc.objects() {
            for &k in kc.hom(x2, x) {
                r.require(map[pi2.pre(k, h)] == hom.pre(k, map[h]), "transport-pre", || {
                    vec![Item::Mor(k), Item::Het(h)]
                });
            }
        }
        for m in dc.morphisms_from(a) {
            r.require(map[pi2.post(h, m)] == hom.post(map[h], m), "transport-post", || {
                vec![Item::Het(h), Item::Mor(m)]
            });
        }
    }
    Ok(r)
}
