use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Caps, Result};
use crate::quantale::lattice::{Quantale, Value};
use crate::quantale::nerve::{v_monads, v_nerve, VRelMonad};
use crate::quantale::presheaf::v_presheaf_object;
use crate::quantale::vcat::{validate_vcat, VCat};

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every V-category on `0..n`, grown one object at a time.
pub fn labelled_vcats(q: &Quantale, n: usize) -> Vec<Vec<Vec<Value>>> {
    let mut level: Vec<Vec<Vec<Value>>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for hom in &level {
            let free = 2 * k + 1;
            for fill in (0..free).map(|_| q.elements()).multi_cartesian_product() {
                let mut grown: Vec<Vec<Value>> = hom.clone();
                for (i, row) in grown.iter_mut().enumerate() {
                    row.push(fill[i]);
                }
                grown.push(fill[k..].to_vec());
                let cat = VCat::new(names(k + 1), grown).expect("square");
                if validate_vcat(q, &cat).passed() {
                    next.push(cat.hom_table().to_vec());
                }
            }
        }
        level = next;
    }
    level
}

/// The lexicographically least relabelling of a hom table.
pub fn canonical_form(hom: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let n = hom.len();
    (0..n)
        .permutations(n)
        .map(|p| p.iter().map(|&x| p.iter().map(|&y| hom[x][y]).collect()).collect::<Vec<Vec<Value>>>())
        .min()
        .unwrap_or_default()
}

/// V-categories on `n` objects up to isomorphism, in canonical order.
pub fn vcats_up_to_iso(q: &Quantale, n: usize) -> Vec<VCat> {
    let forms: BTreeSet<Vec<Vec<Value>>> = labelled_vcats(q, n).iter().map(|h| canonical_form(h)).collect();
    forms.into_iter().map(|h| VCat::new(names(n), h).expect("square")).collect()
}

/// Preorders on `n` elements up to isomorphism, as `leq` tables.
pub fn preorders_up_to_iso(n: usize) -> Vec<Vec<Vec<bool>>> {
    let two = Quantale::boolean();
    vcats_up_to_iso(&two, n)
        .iter()
        .map(|c| c.hom_table().iter().map(|r| r.iter().map(|&v| v == two.unit()).collect()).collect())
        .collect()
}

/// Preorders with at most `max_preorder` elements together with all
/// V-categories with at most `max_vcat` objects, up to isomorphism.
pub fn quantale_bases(q: &Quantale, max_preorder: usize, max_vcat: usize) -> Vec<VCat> {
    let mut forms = BTreeSet::new();
    for n in 0..=max_preorder {
        for leq in preorders_up_to_iso(n) {
            let cat = VCat::from_preorder(q, names(n), &leq).expect("square");
            forms.insert(canonical_form(cat.hom_table()));
        }
    }
    for n in 0..=max_vcat {
        for cat in vcats_up_to_iso(q, n) {
            forms.insert(cat.hom_table().to_vec());
        }
    }
    forms
        .into_iter()
        .map(|h| VCat::new(names(h.len()), h).expect("square"))
        .collect()
}

/// Subsets of the objects of `e`, as sorted lists, whose full inclusion is dense.
pub fn dense_subsets(q: &Quantale, e: &VCat, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for k in 0..=e.len() {
        for sub in e.objects().combinations(k) {
            let a = e.full_subcategory(&sub);
            let pa = v_presheaf_object(q, &a, caps)?;
            if v_nerve(q, &a, e, &sub, &pa)?.dense {
                out.push(sub);
            }
        }
    }
    Ok(out)
}

/// A monad on the full inclusion of `root` into `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaleInstance {
    pub base: VCat,
    pub monad: VRelMonad,
}

impl QuantaleInstance {
    pub fn domain(&self) -> VCat {
        self.base.full_subcategory(&self.monad.root)
    }
}

/// Every monad on every dense full inclusion into every base.
pub fn quantale_corpus(q: &Quantale, bases: &[VCat], caps: &Caps) -> Result<Vec<QuantaleInstance>> {
    let mut out = Vec::new();
    for e in bases {
        for sub in dense_subsets(q, e, caps)? {
            let a = e.full_subcategory(&sub);
            for monad in v_monads(q, &a, e, &sub, caps)? {
                out.push(QuantaleInstance { base: e.clone(), monad });
            }
        }
    }
    Ok(out)
}
