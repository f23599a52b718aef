//! Random small instances for property tests.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use relmonad::fincat::{full_inclusion, ConcreteBuilder, FinCat, Functor};
use relmonad::relmonad::{search_extensions, RelativeMonad};

pub const NODES: usize = 1_000_000;

/// Sizes of the underlying sets and generating functions, by index.
#[derive(Debug, Clone)]
pub struct CategoryRecipe {
    pub sizes: Vec<usize>,
    pub generators: Vec<(usize, usize, Vec<usize>)>,
}

impl CategoryRecipe {
    pub fn build(&self, max_hom: usize) -> Option<Arc<FinCat>> {
        let n = self.sizes.len();
        let mut b = ConcreteBuilder::new();
        for (i, &s) in self.sizes.iter().enumerate() {
            b.object(&format!("o{i}"), s);
        }
        for (g, (s, t, map)) in self.generators.iter().enumerate() {
            let (s, t) = (s % n, t % n);
            let map = (0..self.sizes[s]).map(|i| map[i] % self.sizes[t]).collect();
            b.generator(&format!("g{g}"), s, t, map);
        }
        let c = b.build(n * n * max_hom).ok()?;
        let fits = c.objects().all(|x| c.objects().all(|y| c.hom(x, y).len() <= max_hom));
        fits.then(|| Arc::new(c))
    }
}

pub fn category_recipe(max_objects: usize) -> impl Strategy<Value = CategoryRecipe> {
    (1..=max_objects)
        .prop_flat_map(|n| {
            let gen = (0..n, 0..n, prop::collection::vec(0..4usize, 2));
            (prop::collection::vec(1..=2usize, n), prop::collection::vec(gen, 0..=n + 1))
        })
        .prop_map(|(sizes, generators)| CategoryRecipe { sizes, generators })
}

/// Finite categories of functions with at most `max_objects` objects and
/// `max_hom` morphisms per hom-set.
pub fn category(max_objects: usize, max_hom: usize) -> impl Strategy<Value = Arc<FinCat>> {
    category_recipe(max_objects).prop_filter_map("hom too large", move |r| r.build(max_hom))
}

#[derive(Debug, Clone)]
pub struct MonadRecipe {
    pub ambient: CategoryRecipe,
    /// 0: identity, 1: full inclusion of `keep`, 2: a point.
    pub root_kind: usize,
    pub keep: Vec<bool>,
    pub carrier: Vec<usize>,
    pub unit: Vec<usize>,
    pub rotation: usize,
}

impl MonadRecipe {
    pub fn build(&self, max_hom: usize) -> Option<RelativeMonad> {
        let e = self.ambient.build(max_hom)?;
        let n = e.object_count();
        let j = match self.root_kind {
            0 => Functor::identity(&e),
            1 => {
                let mut keep: Vec<usize> = e.objects().filter(|&x| self.keep[x % self.keep.len()]).collect();
                if keep.is_empty() {
                    keep.push(0);
                }
                full_inclusion(&e, &keep).ok()?
            }
            _ => Functor::point(&e, self.carrier[0] % n),
        };
        let a = j.source().clone();
        let carrier: Vec<usize> = a.objects().map(|x| self.carrier[x % self.carrier.len()] % n).collect();
        let unit = a
            .objects()
            .map(|x| {
                let h = e.hom(j.ob(x), carrier[x]);
                (!h.is_empty()).then(|| h[self.unit[x % self.unit.len()] % h.len()])
            })
            .collect::<Option<Vec<_>>>()?;
        let r = self.rotation;
        let found = search_extensions(&j, &carrier, &unit, NODES, 1, |d| {
            let k = r % d.len().max(1);
            d.rotate_left(k)
        })
        .ok()?;
        found.into_iter().next()
    }
}

/// Relative monads on random roots into random categories, with the unit
/// and carrier drawn first and the extension found by search.
pub fn monad(max_objects: usize, max_hom: usize) -> impl Strategy<Value = RelativeMonad> {
    (
        category_recipe(max_objects),
        0..3usize,
        prop::collection::vec(any::<bool>(), 1..=4),
        prop::collection::vec(0..8usize, 1..=4),
        prop::collection::vec(0..8usize, 1..=4),
        0..8usize,
    )
        .prop_map(|(ambient, root_kind, keep, carrier, unit, rotation)| MonadRecipe {
            ambient,
            root_kind,
            keep,
            carrier,
            unit,
            rotation,
        })
        .prop_filter_map("no monad with this carrier and unit", move |r| r.build(max_hom))
}

/// A functor from a random category into `e`, if one exists.
pub fn functor_into(e: Arc<FinCat>, max_objects: usize) -> impl Strategy<Value = Functor> {
    (category(max_objects, 3), any::<prop::sample::Index>()).prop_filter_map("no functor", move |(a, pick)| {
        let all = relmonad::fincat::all_functors(&a, &e, NODES, 256).ok()?;
        (!all.is_empty()).then(|| all[pick.index(all.len())].clone())
    })
}
