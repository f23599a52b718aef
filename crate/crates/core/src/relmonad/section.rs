use crate::error::{Error, Result};
use crate::fincat::{Functor, Mor, Obj};
use crate::relmonad::index::PairIndex;
use crate::relmonad::monad::{require_valid, RelativeMonad};
use crate::report::{Item, LawReport};

/// A candidate section `s : E(j x, t y) → E(t x, t y)` with its retraction
/// `r : E(t x, t y) → E(j x, t y)`.
///
/// `section` follows the Kleisli numbering `(x, y, f : j x → t y)` and
/// `retraction` the numbering `(x, y, h : t x → t y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionData {
    root: Functor,
    carrier: Vec<Obj>,
    section: Vec<Mor>,
    retraction: Vec<Mor>,
    kleisli: PairIndex,
    endo: PairIndex,
}

impl SectionData {
    pub fn new(root: Functor, carrier: Vec<Obj>, section: Vec<Mor>, retraction: Vec<Mor>) -> Result<Self> {
        let e = root.target().clone();
        if carrier.len() != root.source().object_count() || carrier.iter().any(|&o| o >= e.object_count()) {
            return Err(Error::malformed("section data", "carrier map is not total"));
        }
        let kleisli = PairIndex::new(&e, root.object_map(), &carrier);
        let endo = PairIndex::new(&e, &carrier, &carrier);
        if section.len() != kleisli.len() || retraction.len() != endo.len() {
            return Err(Error::malformed("section data", "tables are not total"));
        }
        for (k, &(x, y, _)) in kleisli.entries().iter().enumerate() {
            let s = section[k];
            if s >= e.morphism_count() || e.src(s) != carrier[x] || e.tgt(s) != carrier[y] {
                return Err(Error::malformed("section data", "section lands outside E(t x, t y)"));
            }
        }
        for (k, &(x, y, _)) in endo.entries().iter().enumerate() {
            let r = retraction[k];
            if r >= e.morphism_count() || e.src(r) != root.ob(x) || e.tgt(r) != carrier[y] {
                return Err(Error::malformed("section data", "retraction lands outside E(j x, t y)"));
            }
        }
        Ok(SectionData {
            root,
            carrier,
            section,
            retraction,
            kleisli,
            endo,
        })
    }

    pub fn section_table(&self) -> &[Mor] {
        &self.section
    }

    pub fn retraction_table(&self) -> &[Mor] {
        &self.retraction
    }

    pub fn kleisli_index(&self) -> &PairIndex {
        &self.kleisli
    }

    /// A copy with one section entry replaced.
    pub fn with_section_at(&self, k: usize, value: Mor) -> Result<SectionData> {
        let mut s = self.section.clone();
        s[k] = value;
        SectionData::new(self.root.clone(), self.carrier.clone(), s, self.retraction.clone())
    }

    fn s(&self, x: Obj, y: Obj, f: Mor) -> Mor {
        self.section[self.kleisli.position(x, y, f).expect("f : j x → t y")]
    }

    fn r(&self, x: Obj, y: Obj, h: Mor) -> Mor {
        self.retraction[self.endo.position(x, y, h).expect("h : t x → t y")]
    }

    /// Checks that `r` is `h ↦ η_x ⨾ h` for the `η` read off the unit,
    /// `r ⨾ s` is the identity on `E(j, t)`, and both section squares commute.
    ///
    /// Law names: `retraction-fixed`, `retraction-identity`, `unit-square`,
    /// `multiplication-square`.
    pub fn check(&self) -> LawReport {
        let e = self.root.target();
        let a = self.root.source();
        let mut rep = LawReport::new();
        let eta: Vec<Mor> = a.objects().map(|x| self.r(x, x, e.identity(self.carrier[x]))).collect();
        for (k, &(x, _, h)) in self.endo.entries().iter().enumerate() {
            rep.require(self.retraction[k] == e.compose(eta[x], h), "retraction-fixed", || {
                vec![Item::Obj(x), Item::Mor(h)]
            });
        }
        for (k, &(x, y, f)) in self.kleisli.entries().iter().enumerate() {
            rep.require(self.r(x, y, self.section[k]) == f, "retraction-identity", || {
                vec![Item::Obj(x), Item::Obj(y), Item::Mor(f)]
            });
        }
        for x in a.objects() {
            let id = e.identity(self.carrier[x]);
            rep.require(self.s(x, x, self.r(x, x, id)) == id, "unit-square", || vec![Item::Obj(x)]);
        }
        for (k, &(x, y, f)) in self.kleisli.entries().iter().enumerate() {
            let sf = self.section[k];
            for z in a.objects() {
                for kg in self.kleisli.range(y, z) {
                    let g = self.kleisli.entry(kg).2;
                    let both = e.compose(sf, self.section[kg]);
                    rep.require(self.s(x, z, self.r(x, z, both)) == both, "multiplication-square", || {
                        vec![Item::Obj(x), Item::Obj(y), Item::Obj(z), Item::Mor(f), Item::Mor(g)]
                    });
                }
            }
        }
        rep
    }
}

/// `s = †` and `r = E(η, t)`.
pub fn section_from_monad(t: &RelativeMonad) -> Result<SectionData> {
    require_valid(t)?;
    let e = t.ambient();
    let endo = PairIndex::new(e, t.carrier(), t.carrier());
    let retraction = endo.entries().iter().map(|&(x, _, h)| e.compose(t.eta(x), h)).collect();
    SectionData::new(
        t.root().clone(),
        t.carrier().to_vec(),
        t.extension_table().to_vec(),
        retraction,
    )
}

/// Recovers `η_x = r(id_{t x})` and `† = s`, rejecting data whose
/// retraction or section squares fail.
pub fn monad_from_section(sd: &SectionData) -> Result<RelativeMonad> {
    sd.check().into_result("section data")?;
    let e = sd.root.target();
    let unit = sd
        .root
        .source()
        .objects()
        .map(|x| sd.r(x, x, e.identity(sd.carrier[x])))
        .collect();
    RelativeMonad::new(sd.root.clone(), sd.carrier.clone(), unit, sd.section.clone())
}
