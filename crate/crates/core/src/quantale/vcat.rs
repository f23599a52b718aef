use crate::error::{Error, Result};
use crate::quantale::lattice::{Quantale, Value};
use crate::report::{Item, LawReport};

/// A category enriched in a thin quantale: an object set and `hom(x, y) ∈ V`.
///
/// Composition is read diagrammatically: `hom(x, y) ⊗ hom(y, z) ≤ hom(x, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VCat {
    pub objects: Vec<String>,
    hom: Vec<Vec<Value>>,
}

impl VCat {
    pub fn new(objects: Vec<String>, hom: Vec<Vec<Value>>) -> Result<VCat> {
        let n = objects.len();
        if hom.len() != n || hom.iter().any(|r| r.len() != n) {
            return Err(Error::malformed("V-category", "hom table is not square"));
        }
        Ok(VCat { objects, hom })
    }

    /// A preorder with `hom = I` on related pairs and `⊥` elsewhere.
    pub fn from_preorder(q: &Quantale, names: Vec<String>, leq: &[Vec<bool>]) -> Result<VCat> {
        let hom = leq
            .iter()
            .map(|row| row.iter().map(|&b| if b { q.unit() } else { q.bottom() }).collect())
            .collect();
        VCat::new(names, hom)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> Value {
        self.hom[x][y]
    }

    pub fn hom_table(&self) -> &[Vec<Value>] {
        &self.hom
    }

    /// The full sub-V-category on `keep`, in the given order.
    pub fn full_subcategory(&self, keep: &[usize]) -> VCat {
        VCat {
            objects: keep.iter().map(|&x| self.objects[x].clone()).collect(),
            hom: keep.iter().map(|&x| keep.iter().map(|&y| self.hom[x][y]).collect()).collect(),
        }
    }

    pub fn opposite(&self) -> VCat {
        VCat {
            objects: self.objects.clone(),
            hom: self.objects().map(|x| self.objects().map(|y| self.hom[y][x]).collect()).collect(),
        }
    }
}

/// `I ≤ hom(x, x)` and `hom(x, y) ⊗ hom(y, z) ≤ hom(x, z)`.
pub fn validate_vcat(q: &Quantale, c: &VCat) -> LawReport {
    let mut r = LawReport::new();
    if c.hom.iter().flatten().any(|&v| v >= q.len()) {
        r.push("hom-in-quantale", Vec::new());
        return r;
    }
    for x in c.objects() {
        r.require(q.leq(q.unit(), c.hom(x, x)), "vcat-unit", || vec![Item::Obj(x)]);
        for y in c.objects() {
            for z in c.objects() {
                r.require(q.leq(q.tensor(c.hom(x, y), c.hom(y, z)), c.hom(x, z)), "vcat-composition", || {
                    vec![Item::Obj(x), Item::Obj(y), Item::Obj(z)]
                });
            }
        }
    }
    r
}

/// `hom(x, y) ≤ hom'(f x, f y)`.
pub fn validate_vfunctor(q: &Quantale, source: &VCat, target: &VCat, map: &[usize]) -> LawReport {
    let mut r = LawReport::new();
    if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
        r.push("vfunctor-total", Vec::new());
        return r;
    }
    for x in source.objects() {
        for y in source.objects() {
            r.require(q.leq(source.hom(x, y), target.hom(map[x], map[y])), "vfunctor-hom", || {
                vec![Item::Obj(x), Item::Obj(y)]
            });
        }
    }
    r
}

/// Bijective on objects and hom-preserving on the nose.
pub fn is_vcat_isomorphism(source: &VCat, target: &VCat, map: &[usize]) -> bool {
    if map.len() != source.len() || source.len() != target.len() {
        return false;
    }
    let mut seen = vec![false; target.len()];
    if map.iter().any(|&y| y >= target.len() || std::mem::replace(&mut seen[y], true)) {
        return false;
    }
    source
        .objects()
        .all(|x| source.objects().all(|y| source.hom(x, y) == target.hom(map[x], map[y])))
}
