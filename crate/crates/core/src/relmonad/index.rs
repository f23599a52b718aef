use std::ops::Range;

use crate::fincat::{FinCat, Mor, Obj};

/// Flat numbering of the triples `(x, y, f)` with `f ∈ E(left x, right y)`.
///
/// Triples are ordered by `(x, y)` lexicographically, then by morphism id.
/// With `left = j` and `right = t` this numbers the Kleisli morphisms; the
/// same numbering is used for extension tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
    offsets: Vec<usize>,
    entries: Vec<(Obj, Obj, Mor)>,
}

impl PairIndex {
    pub fn new(e: &FinCat, left: &[Obj], right: &[Obj]) -> PairIndex {
        let n = left.len();
        debug_assert_eq!(n, right.len());
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut entries = Vec::new();
        for x in 0..n {
            for y in 0..n {
                offsets.push(entries.len());
                for &f in e.hom(left[x], right[y]) {
                    entries.push((x, y, f));
                }
            }
        }
        offsets.push(entries.len());
        PairIndex { n, offsets, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn range(&self, x: Obj, y: Obj) -> Range<usize> {
        let i = x * self.n + y;
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn entry(&self, k: usize) -> (Obj, Obj, Mor) {
        self.entries[k]
    }

    pub fn entries(&self) -> &[(Obj, Obj, Mor)] {
        &self.entries
    }

    pub fn position(&self, x: Obj, y: Obj, f: Mor) -> Option<usize> {
        self.range(x, y).find(|&k| self.entries[k].2 == f)
    }
}
