//! The JSON input schema and its conversion to and from core values.
//!
//! Everything is referred to by name: objects, morphisms and lattice
//! elements. Morphism names must be unique within a category.

use std::collections::HashMap;
use std::sync::Arc;

use relmonad::fincat::{FinCat, Functor, Morphism, NatTransformation};
use relmonad::quantale::{Quantale, VCat, VRelMonad};
use relmonad::relmonad::RelativeMonad;
use relmonad::{Caps, Error};
use serde::{Deserialize, Serialize};

use crate::LabError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// Full tables: every morphism, the identities, and every composite `[f, g, f ⨾ g]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<String>,
    pub composites: Vec<[String; 3]>,
}

/// Images of the source's objects and morphisms, in the source's order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeMonadDoc {
    pub base: CategoryDoc,
    pub ambient: CategoryDoc,
    pub root: FunctorDoc,
    pub carrier: Vec<String>,
    pub unit: Vec<String>,
    /// `[x, y, f, f†]` for every `f : j x → t y`.
    pub extension: Vec<[String; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatDoc {
    pub source: CategoryDoc,
    pub target: CategoryDoc,
    pub from: FunctorDoc,
    pub to: FunctorDoc,
    pub components: Vec<String>,
}

/// `leq` lists every related pair `[a, b]` with `a ≤ b`, reflexive pairs included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleDoc {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_residual: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_residual: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VCatDoc {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<String>>,
}

/// A monad on the full inclusion of `root` into `ambient`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VMonadDoc {
    pub quantale: QuantaleDoc,
    pub ambient: VCatDoc,
    pub root: Vec<String>,
    pub carrier: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Category { category: CategoryDoc },
    RelativeMonad(RelativeMonadDoc),
    NaturalTransformation(NatDoc),
    Quantale { quantale: QuantaleDoc },
    VCategory { quantale: QuantaleDoc, category: VCatDoc },
    VMonad(VMonadDoc),
}

/// A parsed document.
#[derive(Debug, Clone)]
pub enum Input {
    Category(FinCat),
    Monad(RelativeMonad),
    Nat(NatTransformation),
    Quantale(Quantale),
    VCategory { quantale: Quantale, category: VCat },
    VMonad { quantale: Quantale, ambient: VCat, monad: VRelMonad },
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Category(_) => "category",
            Input::Monad(_) => "relative-monad",
            Input::Nat(_) => "natural-transformation",
            Input::Quantale(_) => "quantale",
            Input::VCategory { .. } => "v-category",
            Input::VMonad { .. } => "v-monad",
        }
    }
}

fn malformed(what: &'static str, detail: impl Into<String>) -> LabError {
    LabError::Core(Error::Malformed {
        what,
        detail: detail.into(),
    })
}

fn lookup<'a>(table: &HashMap<&'a str, usize>, what: &'static str, name: &str) -> Result<usize, LabError> {
    table
        .get(name)
        .copied()
        .ok_or_else(|| malformed(what, format!("unknown name {name:?}")))
}

fn names_of<'a>(what: &'static str, names: impl Iterator<Item = &'a str>) -> Result<HashMap<&'a str, usize>, LabError> {
    let mut table = HashMap::new();
    for (i, n) in names.enumerate() {
        if table.insert(n, i).is_some() {
            return Err(malformed(what, format!("duplicate name {n:?}")));
        }
    }
    Ok(table)
}

impl CategoryDoc {
    pub fn from_category(c: &FinCat) -> CategoryDoc {
        let name = |f: usize| c.morphism(f).name.clone();
        CategoryDoc {
            objects: c.object_names().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismDoc {
                    name: m.name.clone(),
                    src: c.object_name(m.src).to_string(),
                    tgt: c.object_name(m.tgt).to_string(),
                })
                .collect(),
            identities: c.identities().iter().map(|&f| name(f)).collect(),
            composites: c.composite_entries().map(|(f, g, h)| [name(f), name(g), name(h)]).collect(),
        }
    }

    pub fn to_category(&self, caps: &Caps) -> Result<FinCat, LabError> {
        caps.check("objects", self.objects.len(), caps.max_objects)?;
        caps.check("morphisms", self.morphisms.len(), caps.max_morphisms)?;
        let obj = names_of("category", self.objects.iter().map(String::as_str))?;
        let mor = names_of("category", self.morphisms.iter().map(|m| m.name.as_str()))?;
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(Morphism {
                    name: m.name.clone(),
                    src: lookup(&obj, "category", &m.src)?,
                    tgt: lookup(&obj, "category", &m.tgt)?,
                })
            })
            .collect::<Result<Vec<_>, LabError>>()?;
        let identities = self
            .identities
            .iter()
            .map(|n| lookup(&mor, "category", n))
            .collect::<Result<Vec<_>, _>>()?;
        let composites = self
            .composites
            .iter()
            .map(|[f, g, h]| Ok((lookup(&mor, "category", f)?, lookup(&mor, "category", g)?, lookup(&mor, "category", h)?)))
            .collect::<Result<Vec<_>, LabError>>()?;
        Ok(FinCat::new(self.objects.clone(), morphisms, identities, composites)?)
    }
}

fn object_table(c: &FinCat) -> HashMap<&str, usize> {
    c.object_names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}

fn morphism_table(c: &FinCat) -> HashMap<&str, usize> {
    c.morphisms().iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect()
}

impl FunctorDoc {
    pub fn from_functor(f: &Functor) -> FunctorDoc {
        let t = f.target();
        FunctorDoc {
            objects: f.object_map().iter().map(|&o| t.object_name(o).to_string()).collect(),
            morphisms: f.morphism_map().iter().map(|&m| t.morphism(m).name.clone()).collect(),
        }
    }

    pub fn to_functor(&self, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<Functor, LabError> {
        let obj = object_table(target);
        let mor = morphism_table(target);
        let objects = self.objects.iter().map(|n| lookup(&obj, "functor", n)).collect::<Result<_, _>>()?;
        let morphisms = self.morphisms.iter().map(|n| lookup(&mor, "functor", n)).collect::<Result<_, _>>()?;
        Ok(Functor::new(source.clone(), target.clone(), objects, morphisms)?)
    }
}

impl RelativeMonadDoc {
    pub fn from_monad(t: &RelativeMonad) -> RelativeMonadDoc {
        let (a, e) = (t.base(), t.ambient());
        let m = |f: usize| e.morphism(f).name.clone();
        let o = |x: usize| a.object_name(x).to_string();
        RelativeMonadDoc {
            base: CategoryDoc::from_category(a),
            ambient: CategoryDoc::from_category(e),
            root: FunctorDoc::from_functor(t.root()),
            carrier: t.carrier().iter().map(|&y| e.object_name(y).to_string()).collect(),
            unit: t.unit().iter().map(|&f| m(f)).collect(),
            extension: t
                .kleisli_index()
                .entries()
                .iter()
                .enumerate()
                .map(|(k, &(x, y, f))| [o(x), o(y), m(f), m(t.extend_at(k))])
                .collect(),
        }
    }

    pub fn to_monad(&self, caps: &Caps) -> Result<RelativeMonad, LabError> {
        let a = Arc::new(self.base.to_category(caps)?);
        let e = Arc::new(self.ambient.to_category(caps)?);
        let root = self.root.to_functor(&a, &e)?;
        let (aobj, eobj, emor) = (object_table(&a), object_table(&e), morphism_table(&e));
        let carrier = self.carrier.iter().map(|n| lookup(&eobj, "relative monad", n)).collect::<Result<_, _>>()?;
        let unit = self.unit.iter().map(|n| lookup(&emor, "relative monad", n)).collect::<Result<_, _>>()?;
        let entries = self
            .extension
            .iter()
            .map(|[x, y, f, d]| {
                Ok((
                    lookup(&aobj, "relative monad", x)?,
                    lookup(&aobj, "relative monad", y)?,
                    lookup(&emor, "relative monad", f)?,
                    lookup(&emor, "relative monad", d)?,
                ))
            })
            .collect::<Result<Vec<_>, LabError>>()?;
        Ok(RelativeMonad::from_entries(root, carrier, unit, &entries)?)
    }
}

impl NatDoc {
    pub fn from_nat(n: &NatTransformation) -> NatDoc {
        let t = n.source().target();
        NatDoc {
            source: CategoryDoc::from_category(n.source().source()),
            target: CategoryDoc::from_category(t),
            from: FunctorDoc::from_functor(n.source()),
            to: FunctorDoc::from_functor(n.target()),
            components: n.components().iter().map(|&m| t.morphism(m).name.clone()).collect(),
        }
    }

    pub fn to_nat(&self, caps: &Caps) -> Result<NatTransformation, LabError> {
        let s = Arc::new(self.source.to_category(caps)?);
        let t = Arc::new(self.target.to_category(caps)?);
        let from = self.from.to_functor(&s, &t)?;
        let to = self.to.to_functor(&s, &t)?;
        let mor = morphism_table(&t);
        let components = self.components.iter().map(|n| lookup(&mor, "natural transformation", n)).collect::<Result<_, _>>()?;
        Ok(NatTransformation::new(from, to, components)?)
    }
}

fn value_table(q: &Quantale, rows: &[Vec<String>], what: &'static str) -> Result<Vec<Vec<usize>>, LabError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|n| q.find(n).ok_or_else(|| malformed(what, format!("unknown element {n:?}"))))
                .collect()
        })
        .collect()
}

fn value_names(q: &Quantale, rows: &[Vec<usize>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|&v| q.name(v).to_string()).collect()).collect()
}

impl QuantaleDoc {
    pub fn from_quantale(q: &Quantale) -> QuantaleDoc {
        let n = q.len();
        QuantaleDoc {
            elements: q.names().to_vec(),
            leq: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| q.leq(a, b))
                .map(|(a, b)| [q.name(a).to_string(), q.name(b).to_string()])
                .collect(),
            tensor: value_names(q, q.tensor_table()),
            unit: q.name(q.unit()).to_string(),
            left_residual: None,
            right_residual: None,
        }
    }

    pub fn to_quantale(&self, caps: &Caps) -> Result<Quantale, LabError> {
        let n = self.elements.len();
        caps.check("quantale elements", n, caps.max_objects)?;
        let el = names_of("quantale", self.elements.iter().map(String::as_str))?;
        let mut leq = vec![vec![false; n]; n];
        for [a, b] in &self.leq {
            leq[lookup(&el, "quantale", a)?][lookup(&el, "quantale", b)?] = true;
        }
        let tensor = self
            .tensor
            .iter()
            .map(|r| r.iter().map(|v| lookup(&el, "quantale", v)).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        let unit = lookup(&el, "quantale", &self.unit)?;
        let q = Quantale::new(self.elements.clone(), leq, tensor, unit)?;
        match (&self.left_residual, &self.right_residual) {
            (None, None) => Ok(q),
            (l, r) => {
                let lres = value_table(&q, l.as_deref().unwrap_or(&[]), "left residual")?;
                let rres = value_table(&q, r.as_deref().unwrap_or(&[]), "right residual")?;
                Ok(q.with_residuals(lres, rres)?)
            }
        }
    }
}

impl VCatDoc {
    pub fn from_vcat(q: &Quantale, c: &VCat) -> VCatDoc {
        VCatDoc {
            objects: c.objects.clone(),
            hom: value_names(q, c.hom_table()),
        }
    }

    pub fn to_vcat(&self, q: &Quantale, caps: &Caps) -> Result<VCat, LabError> {
        caps.check("objects", self.objects.len(), caps.max_objects)?;
        names_of("V-category", self.objects.iter().map(String::as_str))?;
        Ok(VCat::new(self.objects.clone(), value_table(q, &self.hom, "V-category")?)?)
    }
}

impl VMonadDoc {
    pub fn from_monad(q: &Quantale, e: &VCat, t: &VRelMonad) -> VMonadDoc {
        let names = |m: &[usize]| m.iter().map(|&x| e.objects[x].clone()).collect();
        VMonadDoc {
            quantale: QuantaleDoc::from_quantale(q),
            ambient: VCatDoc::from_vcat(q, e),
            root: names(&t.root),
            carrier: names(&t.carrier),
        }
    }
}

impl Document {
    pub fn parse(bytes: &[u8]) -> Result<Document, LabError> {
        Ok(serde_json::from_slice(bytes)?)
    }

    pub fn to_input(&self, caps: &Caps) -> Result<Input, LabError> {
        Ok(match self {
            Document::Category { category } => Input::Category(category.to_category(caps)?),
            Document::RelativeMonad(d) => Input::Monad(d.to_monad(caps)?),
            Document::NaturalTransformation(d) => Input::Nat(d.to_nat(caps)?),
            Document::Quantale { quantale } => Input::Quantale(quantale.to_quantale(caps)?),
            Document::VCategory { quantale, category } => {
                let quantale = quantale.to_quantale(caps)?;
                let category = category.to_vcat(&quantale, caps)?;
                Input::VCategory { quantale, category }
            }
            Document::VMonad(d) => {
                let quantale = d.quantale.to_quantale(caps)?;
                let ambient = d.ambient.to_vcat(&quantale, caps)?;
                let obj = names_of("V-category", ambient.objects.iter().map(String::as_str))?;
                let map = |names: &[String]| names.iter().map(|n| lookup(&obj, "V-monad", n)).collect::<Result<Vec<_>, _>>();
                let monad = VRelMonad {
                    root: map(&d.root)?,
                    carrier: map(&d.carrier)?,
                };
                if monad.carrier.len() != monad.root.len() {
                    return Err(malformed("V-monad", "carrier and root have different lengths"));
                }
                Input::VMonad { quantale, ambient, monad }
            }
        })
    }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
