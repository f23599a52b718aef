use crate::error::{Error, Result};
use crate::fincat::{Functor, Mor, Obj};
use crate::relmonad::monad::RelativeMonad;
use crate::report::{Item, LawReport};

/// A relative adjunction `ℓ ⊣_j r` with explicit bijections
/// `φ : C(ℓ x, y) → E(j x, r y)`.
///
/// `phi[x][y][i]` is the image of the `i`-th morphism of `C(ℓ x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeAdjunction {
    root: Functor,
    left: Functor,
    right: Functor,
    phi: Vec<Vec<Vec<Mor>>>,
}

impl RelativeAdjunction {
    pub fn new(root: Functor, left: Functor, right: Functor, phi: Vec<Vec<Vec<Mor>>>) -> Result<Self> {
        if left.source() != root.source() || right.target() != root.target() || left.target() != right.source() {
            return Err(Error::Mismatch("adjunction functors do not fit j : A → E, ℓ : A → C, r : C → E".into()));
        }
        let a = root.source();
        let c = left.target();
        let e = root.target();
        if phi.len() != a.object_count() {
            return Err(Error::malformed("adjunction", "phi is not total"));
        }
        for x in a.objects() {
            if phi[x].len() != c.object_count() {
                return Err(Error::malformed("adjunction", "phi is not total"));
            }
            for y in c.objects() {
                let row = &phi[x][y];
                if row.len() != c.hom(left.ob(x), y).len() {
                    return Err(Error::malformed("adjunction", "phi is not total"));
                }
                if row
                    .iter()
                    .any(|&g| g >= e.morphism_count() || e.src(g) != root.ob(x) || e.tgt(g) != right.ob(y))
                {
                    return Err(Error::malformed("adjunction", "phi lands outside E(j x, r y)"));
                }
            }
        }
        Ok(RelativeAdjunction { root, left, right, phi })
    }

    pub fn root(&self) -> &Functor {
        &self.root
    }

    pub fn left(&self) -> &Functor {
        &self.left
    }

    pub fn right(&self) -> &Functor {
        &self.right
    }

    /// `φ(h)` for `h : ℓ x → y`.
    pub fn phi(&self, x: Obj, y: Obj, h: Mor) -> Mor {
        let c = self.left.target();
        let i = c.hom(self.left.ob(x), y).iter().position(|&m| m == h).expect("h : ℓ x → y");
        self.phi[x][y][i]
    }

    /// `φ⁻¹(g)` for `g : j x → r y`, if `φ` hits it.
    pub fn phi_inverse(&self, x: Obj, y: Obj, g: Mor) -> Option<Mor> {
        let c = self.left.target();
        let i = self.phi[x][y].iter().position(|&m| m == g)?;
        Some(c.hom(self.left.ob(x), y)[i])
    }

    /// Checks the three functors, bijectivity, and naturality of `φ` in both variables.
    pub fn validate(&self) -> LawReport {
        let mut r = LawReport::new();
        r.merge_scoped("root", self.root.validate());
        r.merge_scoped("left", self.left.validate());
        r.merge_scoped("right", self.right.validate());
        if !r.passed() {
            return r;
        }
        let a = self.root.source();
        let c = self.left.target();
        let e = self.root.target();
        for x in a.objects() {
            for y in c.objects() {
                let row = &self.phi[x][y];
                let target = e.hom(self.root.ob(x), self.right.ob(y));
                let mut sorted = row.clone();
                sorted.sort_unstable();
                sorted.dedup();
                r.require(sorted.len() == row.len() && row.len() == target.len(), "phi-bijective", || {
                    vec![Item::Obj(x), Item::Obj(y)]
                });
            }
        }
        for x in a.objects() {
            for y in c.objects() {
                for &h in c.hom(self.left.ob(x), y) {
                    let ph = self.phi(x, y, h);
                    for x2 in a.objects() {
                        for &p in a.hom(x2, x) {
                            let lhs = self.phi(x2, y, c.compose(self.left.mor(p), h));
                            let rhs = e.compose(self.root.mor(p), ph);
                            r.require(lhs == rhs, "phi-natural-in-a", || vec![Item::Mor(p), Item::Mor(h)]);
                        }
                    }
                    for q in c.morphisms_from(y) {
                        let lhs = self.phi(x, c.tgt(q), c.compose(h, q));
                        let rhs = e.compose(ph, self.right.mor(q));
                        r.require(lhs == rhs, "phi-natural-in-c", || vec![Item::Mor(h), Item::Mor(q)]);
                    }
                }
            }
        }
        r
    }
}

/// The `j`-monad of an adjunction: `t = r ℓ`, `η_x = φ(id_{ℓx})`, `f† = r(φ⁻¹ f)`.
pub fn monad_from_adjunction(adj: &RelativeAdjunction) -> Result<RelativeMonad> {
    adj.validate().into_result("relative adjunction")?;
    let c = adj.left.target();
    let (l, r) = (&adj.left, &adj.right);
    let a = adj.root.source();
    let carrier: Vec<Obj> = a.objects().map(|x| r.ob(l.ob(x))).collect();
    let unit: Vec<Mor> = a
        .objects()
        .map(|x| adj.phi(x, l.ob(x), c.identity(l.ob(x))))
        .collect();
    RelativeMonad::from_fn(adj.root.clone(), carrier, unit, |x, y, f| {
        r.mor(adj.phi_inverse(x, l.ob(y), f).expect("phi is bijective"))
    })
}

/// Universal arrows `(ℓ x, u : j x → r ℓ x)` for one object `x`.
fn universal_arrows(r: &Functor, j: &Functor, x: Obj) -> Vec<(Obj, Mor)> {
    let c = r.source();
    let e = r.target();
    let mut out = Vec::new();
    for cand in c.objects() {
        'unit: for &u in e.hom(j.ob(x), r.ob(cand)) {
            for y in c.objects() {
                let target = e.hom(j.ob(x), r.ob(y));
                let hom = c.hom(cand, y);
                if hom.len() != target.len() {
                    continue 'unit;
                }
                let mut images: Vec<Mor> = hom.iter().map(|&h| e.compose(u, r.mor(h))).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != target.len() {
                    continue 'unit;
                }
            }
            out.push((cand, u));
        }
    }
    out
}

fn assemble(r: &Functor, j: &Functor, choice: &[(Obj, Mor)]) -> Result<RelativeAdjunction> {
    let a = j.source();
    let c = r.source();
    let e = r.target();
    let mut mor = Vec::with_capacity(a.morphism_count());
    for p in a.morphism_ids() {
        let (x2, x) = (a.src(p), a.tgt(p));
        let want = e.compose(j.mor(p), choice[x].1);
        let h = c
            .hom(choice[x2].0, choice[x].0)
            .iter()
            .copied()
            .find(|&h| e.compose(choice[x2].1, r.mor(h)) == want)
            .expect("universal arrow factors every morphism");
        mor.push(h);
    }
    let left = Functor::new(a.clone(), c.clone(), choice.iter().map(|p| p.0).collect(), mor)?;
    let phi = a
        .objects()
        .map(|x| {
            c.objects()
                .map(|y| c.hom(choice[x].0, y).iter().map(|&h| e.compose(choice[x].1, r.mor(h))).collect())
                .collect()
        })
        .collect();
    RelativeAdjunction::new(j.clone(), left, r.clone(), phi)
}

fn check_inputs(r: &Functor, j: &Functor) -> Result<()> {
    if r.target() != j.target() {
        return Err(Error::Mismatch("r and j have different codomains".into()));
    }
    r.validate().into_result("right adjoint candidate")?;
    j.validate().into_result("root")
}

/// First left `j`-adjoint of `r`, searching objects of `C` in index order and
/// units in id order.
///
/// A left adjoint is determined by a universal arrow `u_x : j x → r ℓ x` per
/// object, so the search runs over those; `ℓ` on morphisms and `φ` follow.
pub fn find_left_relative_adjoint(r: &Functor, j: &Functor) -> Result<Option<RelativeAdjunction>> {
    check_inputs(r, j)?;
    let mut choice = Vec::new();
    for x in j.source().objects() {
        match universal_arrows(r, j, x).first() {
            Some(&c) => choice.push(c),
            None => return Ok(None),
        }
    }
    let adj = assemble(r, j, &choice)?;
    adj.validate().into_result("found adjunction")?;
    Ok(Some(adj))
}

/// Every left `j`-adjoint of `r`, in lexicographic order of choices.
pub fn all_left_relative_adjoints(r: &Functor, j: &Functor, limit: usize) -> Result<Vec<RelativeAdjunction>> {
    check_inputs(r, j)?;
    let per_object: Vec<Vec<(Obj, Mor)>> = j.source().objects().map(|x| universal_arrows(r, j, x)).collect();
    let total = per_object.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
    match total {
        Some(n) if n <= limit => {}
        _ => {
            return Err(Error::Capacity {
                what: "left adjoint candidates",
                needed: total.unwrap_or(usize::MAX),
                limit,
            })
        }
    }
    let mut out = Vec::new();
    let mut cursor = vec![0usize; per_object.len()];
    if per_object.iter().any(|v| v.is_empty()) {
        return Ok(out);
    }
    loop {
        let choice: Vec<(Obj, Mor)> = cursor.iter().enumerate().map(|(x, &i)| per_object[x][i]).collect();
        out.push(assemble(r, j, &choice)?);
        let mut pos = cursor.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            cursor[pos] += 1;
            if cursor[pos] < per_object[pos].len() {
                break;
            }
            cursor[pos] = 0;
        }
    }
}
