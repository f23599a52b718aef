use crate::error::{Error, Result};
use crate::fincat::category::Mor;
use crate::fincat::functor::Functor;
use crate::report::{Item, LawReport};
use crate::search::Search;

/// A natural transformation between parallel functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    source: Functor,
    target: Functor,
    components: Vec<Mor>,
}

impl NatTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<Mor>) -> Result<Self> {
        check_parallel(&source, &target)?;
        if components.len() != source.source().object_count() {
            return Err(Error::malformed("natural transformation", "components are not total"));
        }
        if components.iter().any(|&m| m >= source.target().morphism_count()) {
            return Err(Error::malformed("natural transformation", "component is dangling"));
        }
        Ok(NatTransformation {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, a: usize) -> Mor {
        self.components[a]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn validate(&self) -> LawReport {
        let (f, g) = (&self.source, &self.target);
        let dom = f.source();
        let cod = f.target();
        let mut r = LawReport::new();
        for a in dom.objects() {
            let c = self.components[a];
            r.require(
                cod.src(c) == f.ob(a) && cod.tgt(c) == g.ob(a),
                "component-endpoints",
                || vec![Item::Obj(a), Item::Mor(c)],
            );
        }
        if !r.passed() {
            return r;
        }
        for m in dom.morphism_ids() {
            let (a, b) = (dom.src(m), dom.tgt(m));
            let left = cod.compose(f.mor(m), self.components[b]);
            let right = cod.compose(self.components[a], g.mor(m));
            r.require(left == right, "naturality", || vec![Item::Mor(m)]);
        }
        r
    }
}

fn check_parallel(f: &Functor, g: &Functor) -> Result<()> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Mismatch("functors are not parallel".into()));
    }
    Ok(())
}

/// All natural transformations `f ⇒ g`, ordered lexicographically by
/// component ids taken in object order.
pub fn enumerate_nat_transformations(
    f: &Functor,
    g: &Functor,
    node_limit: usize,
) -> Result<Vec<NatTransformation>> {
    check_parallel(f, g)?;
    let dom = f.source().clone();
    let cod = f.target().clone();
    let mut search = Search::new(node_limit);
    let vars: Vec<usize> = dom
        .objects()
        .map(|a| search.var(cod.hom(f.ob(a), g.ob(a)).to_vec()))
        .collect();
    for m in dom.morphism_ids() {
        let (va, vb) = (vars[dom.src(m)], vars[dom.tgt(m)]);
        let (fm, gm) = (f.mor(m), g.mor(m));
        let cod = cod.as_ref();
        search.constrain(&[va, vb], move |p| match (p.get(va), p.get(vb)) {
            (Some(ca), Some(cb)) => cod.compose(fm, cb) == cod.compose(ca, gm),
            _ => true,
        });
    }
    let solutions = search.all(usize::MAX)?;
    Ok(solutions
        .into_iter()
        .map(|components| NatTransformation {
            source: f.clone(),
            target: g.clone(),
            components,
        })
        .collect())
}
