//! Small named categories, functors and monads used as fixtures.
//!
//! Objects of the freestanding span are `◊`, `▽`, `▽̄` with legs
//! `w : ◊ → ▽` and `v : ◊ → ▽̄`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{Distributor, FinCat, Functor, HetElement, Morphism, NatTransformation};
use crate::relmonad::{identity_monad, trivial_monad, RelativeMonad};

/// A category from its non-identity morphisms and their non-trivial
/// composites, all given by name. Identities come first, named `id_X`.
pub fn presented(objects: &[&str], arrows: &[(&str, &str, &str)], composites: &[(&str, &str, &str)]) -> Result<FinCat> {
    let obj: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms: Vec<Morphism> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism {
            name: format!("id_{o}"),
            src: i,
            tgt: i,
        })
        .collect();
    for &(name, s, t) in arrows {
        morphisms.push(Morphism {
            name: name.to_string(),
            src: obj[s],
            tgt: obj[t],
        });
    }
    let mor: HashMap<String, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.name.clone(), i)).collect();
    let mut table = Vec::new();
    for (f, m) in morphisms.iter().enumerate() {
        table.push((m.src, f, f));
        table.push((f, m.tgt, f));
    }
    for &(f, g, fg) in composites {
        table.push((mor[f], mor[g], mor[fg]));
    }
    FinCat::new(
        objects.iter().map(|s| s.to_string()).collect(),
        morphisms,
        (0..objects.len()).collect(),
        table,
    )
}

pub fn terminal() -> Arc<FinCat> {
    Arc::new(FinCat::terminal())
}

/// The arrow category `0 → 1`.
pub fn arrow() -> Arc<FinCat> {
    Arc::new(presented(&["0", "1"], &[("u", "0", "1")], &[]).expect("arrow category"))
}

/// The freestanding span `▽ ← ◊ → ▽̄`.
pub fn span() -> Arc<FinCat> {
    Arc::new(presented(&["◊", "▽", "▽̄"], &[("w", "◊", "▽"), ("v", "◊", "▽̄")], &[]).expect("span"))
}

/// The span with an idempotent `e : ▽̄ → ▽̄` satisfying `v ⨾ e = v`.
pub fn enlarged_span() -> Arc<FinCat> {
    Arc::new(
        presented(
            &["◊", "▽", "▽̄"],
            &[("w", "◊", "▽"), ("v", "◊", "▽̄"), ("e", "▽̄", "▽̄")],
            &[("e", "e", "e"), ("v", "e", "v")],
        )
        .expect("enlarged span"),
    )
}

/// Two parallel arrows `a, b : 0 ⇉ 1`.
pub fn parallel_pair() -> Arc<FinCat> {
    Arc::new(presented(&["0", "1"], &[("a", "0", "1"), ("b", "0", "1")], &[]).expect("parallel pair"))
}

/// The group of order two on one object.
pub fn z2() -> Arc<FinCat> {
    Arc::new(presented(&["*"], &[("s", "*", "*")], &[("s", "s", "id_*")]).expect("Z/2"))
}

/// The subsets of `{x, y}` ordered by inclusion.
pub fn powerset() -> Arc<FinCat> {
    let names: Vec<String> = ["∅", "x", "y", "xy"].iter().map(|s| s.to_string()).collect();
    let leq: Vec<Vec<bool>> = (0..4u8).map(|a| (0..4u8).map(|b| a & b == a).collect()).collect();
    Arc::new(FinCat::from_preorder(&names, &leq).expect("powerset preorder"))
}

/// `j : 1 → V` constant at `◊`.
pub fn span_root() -> Functor {
    Functor::point(&span(), 0)
}

/// The constant `j`-monad at `▽̄` on the span: `η = v`, `v† = id_▽̄`.
pub fn span_monad() -> RelativeMonad {
    let j = span_root();
    RelativeMonad::new(j, vec![2], vec![4], vec![2]).expect("span monad tables")
}

/// The span monad on the enlarged span, whose `E(j, t)` is still `{v}`.
pub fn enlarged_span_monad() -> RelativeMonad {
    let j = Functor::point(&enlarged_span(), 0);
    RelativeMonad::new(j, vec![2], vec![4], vec![2]).expect("enlarged span monad tables")
}

/// The monad on `2` with `t = 1` constantly.
pub fn arrow_monad() -> RelativeMonad {
    let e = arrow();
    RelativeMonad::from_fn(Functor::identity(&e), vec![1, 1], vec![2, 1], |_, _, _| 1).expect("monad on 2")
}

/// The trivial monad on the fully faithful `j : 1 → 2` at `0`.
pub fn fully_faithful_trivial_monad() -> RelativeMonad {
    trivial_monad(&Functor::point(&arrow(), 0))
}

/// `j : {{x}, {y}} → P{x, y}` with `t{x} = {x, y}`, `t{y} = {y}`.
pub fn powerset_monad() -> RelativeMonad {
    let e = powerset();
    let a = Arc::new(FinCat::discrete(&["x", "y"]));
    let j = Functor::new(a, e.clone(), vec![1, 2], vec![e.identity(1), e.identity(2)]).expect("powerset root");
    let up = |x: usize, y: usize| e.hom(x, y)[0];
    RelativeMonad::from_fn(j, vec![3, 2], vec![up(1, 3), up(2, 2)], |x, y, _| {
        let t = [3, 2];
        up(t[x], t[y])
    })
    .expect("powerset monad tables")
}

pub fn identity_monad_on_span() -> RelativeMonad {
    identity_monad(&span())
}

/// The span with `w ⨾ id_▽` redirected to `id_▽`.
pub fn broken_unit_span() -> FinCat {
    let v = span();
    let composites = v.composite_entries().map(|(f, g, fg)| if (f, g) == (3, 1) { (f, g, 1) } else { (f, g, fg) });
    FinCat::new(v.object_names().to_vec(), v.morphisms().to_vec(), v.identities().to_vec(), composites)
        .expect("index-complete tables")
}

/// One object with `a ⨾ a = b`, `a ⨾ b = a`, `b ⨾ a = b ⨾ b = b`.
pub fn broken_associativity_monoid() -> FinCat {
    presented(
        &["*"],
        &[("a", "*", "*"), ("b", "*", "*")],
        &[("a", "a", "b"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")],
    )
    .expect("index-complete tables")
}

/// Identity components between the functors `2 → 0 ⇉ 1` picking `a` and `b`.
pub fn broken_naturality() -> NatTransformation {
    let two = arrow();
    let p = parallel_pair();
    let pick = |m| Functor::new(two.clone(), p.clone(), vec![0, 1], vec![0, 1, m]).expect("picks an arrow");
    NatTransformation::new(pick(2), pick(3), vec![0, 1]).expect("parallel functors")
}

/// `het(*, *) = {p, q}` over `Z/2` with `p ⨾ s = q ⨾ s = q`.
pub fn broken_post_associativity() -> Distributor {
    let one = terminal();
    let g = z2();
    let el = |name: &str| HetElement {
        contra: 0,
        co: 0,
        name: name.to_string(),
    };
    Distributor::new(
        one,
        g,
        vec![el("p"), el("q")],
        [(0, 0, 0), (0, 1, 1)],
        [(0, 0, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)],
    )
    .expect("index-complete tables")
}
