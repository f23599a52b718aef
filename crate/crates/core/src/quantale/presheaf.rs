use crate::error::{Caps, Error, Result};
use crate::quantale::lattice::{Quantale, Value};
use crate::quantale::vcat::{validate_vfunctor, VCat};
use crate::report::{Item, LawReport};

/// `P A`: V-presheaves `p` with `A(a', a) ⊗ p(a) ≤ p(a')`, homs
/// `⋀_a rres(p a, q a)`, and the embedding `よ a = A(−, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafObject {
    pub category: VCat,
    /// Object `i` of `category`, as values on the objects of `A`.
    pub presheaves: Vec<Vec<Value>>,
    pub yoneda: Vec<usize>,
}

impl PresheafObject {
    pub fn index_of(&self, p: &[Value]) -> Option<usize> {
        self.presheaves.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    /// `π_A(a, p) = p(a)`.
    pub fn pi(&self, a: usize, p: usize) -> Value {
        self.presheaves[p][a]
    }
}

/// All maps `n → base` in lexicographic order, filtered by `keep`.
pub(crate) fn value_maps(
    what: &'static str,
    base: usize,
    n: usize,
    caps: &Caps,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<Vec<Vec<usize>>> {
    let total = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > caps.max_search_nodes as u128 {
        return Err(Error::Capacity {
            what,
            needed: usize::try_from(total).unwrap_or(usize::MAX),
            limit: caps.max_search_nodes,
        });
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn is_v_presheaf(q: &Quantale, a: &VCat, p: &[Value]) -> bool {
    a.objects().all(|x| a.objects().all(|x2| q.leq(q.tensor(a.hom(x2, x), p[x]), p[x2])))
}

/// `⋀_a rres(p a, r a)`.
pub fn right_lift(q: &Quantale, p: &[Value], r: &[Value]) -> Value {
    q.meet(p.iter().zip(r).map(|(&pa, &ra)| q.rres(pa, ra)))
}

/// The largest `b` with `p(a) ⊗ b ≤ r(a)` for all `a`, found by search.
pub fn right_lift_by_search(q: &Quantale, p: &[Value], r: &[Value]) -> Option<Value> {
    let ok: Vec<Value> = q
        .elements()
        .filter(|&b| p.iter().zip(r).all(|(&pa, &ra)| q.leq(q.tensor(pa, b), ra)))
        .collect();
    ok.iter().copied().find(|&b| ok.iter().all(|&c| q.leq(c, b)))
}

pub fn v_presheaf_object(q: &Quantale, a: &VCat, caps: &Caps) -> Result<PresheafObject> {
    let presheaves = value_maps("presheaves", q.len(), a.len(), caps, |p| is_v_presheaf(q, a, p))?;
    let hom = presheaves
        .iter()
        .map(|p| presheaves.iter().map(|r| right_lift(q, p, r)).collect())
        .collect();
    let names = presheaves
        .iter()
        .map(|p| format!("[{}]", p.iter().map(|&v| q.name(v)).collect::<Vec<_>>().join(",")))
        .collect();
    let category = VCat::new(names, hom)?;
    let mut pa = PresheafObject {
        category,
        presheaves,
        yoneda: Vec::new(),
    };
    pa.yoneda = a
        .objects()
        .map(|x| {
            let col: Vec<Value> = a.objects().map(|x2| a.hom(x2, x)).collect();
            pa.index_of(&col).ok_or_else(|| Error::Mismatch("representable is not a presheaf".into()))
        })
        .collect::<Result<_>>()?;
    Ok(pa)
}

/// `P A(よ a, p) = p(a)` for all `a`, `p`, and `P A(よ a, よ a') = A(a, a')`.
pub fn check_yoneda(a: &VCat, pa: &PresheafObject) -> LawReport {
    let mut r = LawReport::new();
    for x in a.objects() {
        for p in 0..pa.presheaves.len() {
            r.require(pa.category.hom(pa.yoneda[x], p) == pa.pi(x, p), "yoneda", || vec![Item::Obj(x), Item::Obj(p)]);
        }
        for y in a.objects() {
            r.require(pa.category.hom(pa.yoneda[x], pa.yoneda[y]) == a.hom(x, y), "yoneda-fully-faithful", || {
                vec![Item::Obj(x), Item::Obj(y)]
            });
        }
    }
    r
}

/// Homs of `P A` against the searched right lifts.
pub fn check_right_lifts(q: &Quantale, pa: &PresheafObject) -> LawReport {
    let mut r = LawReport::new();
    for (i, p) in pa.presheaves.iter().enumerate() {
        for (k, s) in pa.presheaves.iter().enumerate() {
            r.require(right_lift_by_search(q, p, s) == Some(pa.category.hom(i, k)), "right-lift", || {
                vec![Item::Obj(i), Item::Obj(k)]
            });
        }
    }
    r
}

/// V-distributors `d(a, x)` from `X` to `A`: `A(a', a) ⊗ d(a, x) ≤ d(a', x)`
/// and `d(a, x) ⊗ X(x, x') ≤ d(a, x')`, flattened `a`-major.
pub fn v_distributors(q: &Quantale, a: &VCat, x: &VCat, caps: &Caps) -> Result<Vec<Vec<Value>>> {
    let (na, nx) = (a.len(), x.len());
    value_maps("distributors", q.len(), na * nx, caps, |d| {
        a.objects().all(|i| {
            x.objects().all(|u| {
                let v = d[i * nx + u];
                a.objects().all(|i2| q.leq(q.tensor(a.hom(i2, i), v), d[i2 * nx + u]))
                    && x.objects().all(|u2| q.leq(q.tensor(v, x.hom(u, u2)), d[i * nx + u2]))
            })
        })
    })
}

/// Distributors `X ⇸ A` against V-functors `X → P A`, by counts and by
/// `d ↦ (x ↦ d(−, x))` with inverse `p̆ ↦ π_A(1, p̆)`.
pub fn check_classification(q: &Quantale, a: &VCat, x: &VCat, pa: &PresheafObject, caps: &Caps) -> Result<LawReport> {
    let dists = v_distributors(q, a, x, caps)?;
    let functors = value_maps("functors into P A", pa.presheaves.len(), x.len(), caps, |f| {
        validate_vfunctor(q, x, &pa.category, f).passed()
    })?;
    let mut r = LawReport::new();
    r.require(dists.len() == functors.len(), "classification-count", || {
        vec![Item::Elem(dists.len()), Item::Elem(functors.len())]
    });
    let nx = x.len();
    for (i, d) in dists.iter().enumerate() {
        let classified: Option<Vec<usize>> = x
            .objects()
            .map(|u| pa.index_of(&a.objects().map(|k| d[k * nx + u]).collect::<Vec<_>>()))
            .collect();
        match classified {
            Some(f) if functors.binary_search(&f).is_ok() => {
                let back: Vec<Value> = a.objects().flat_map(|k| f.iter().map(move |&p| pa.pi(k, p))).collect();
                r.require(&back == d, "classification-round-trip", || vec![Item::Elem(i)]);
            }
            _ => r.push("classification-lands", vec![Item::Elem(i)]),
        }
    }
    Ok(r)
}

/// `f^* p = p ∘ f` for an object map `f : A' → A`.
pub fn restrict_values(p: &[Value], f: &[usize]) -> Vec<Value> {
    f.iter().map(|&x| p[x]).collect()
}
