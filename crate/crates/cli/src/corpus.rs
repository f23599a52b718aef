//! Seed-deterministic random relative monads on finite categories.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relmonad::fincat::{all_functors, full_inclusion, ConcreteBuilder, FinCat, Functor};
use relmonad::nervepullback::is_dense;
use relmonad::relmonad::{search_extensions, RelativeMonad};
use relmonad::Caps;
use serde::{Deserialize, Serialize};

use crate::LabError;

/// Largest accepted `max_objects` and `max_hom` for generation.
pub const MAX_GENERATED_OBJECTS: usize = 6;
pub const MAX_GENERATED_HOM: usize = 8;
/// Attempts allowed per requested instance.
pub const RETRIES_PER_INSTANCE: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    /// Finite categories.
    Set,
    /// Preorders and V-categories over `2`.
    Two,
    /// Preorders and V-categories over the 3-chain.
    ThreeChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub max_objects: usize,
    pub max_hom: usize,
    pub density_required: bool,
    pub instance: InstanceKind,
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<(), LabError> {
        let bad = |msg: String| Err(LabError::Usage(msg));
        if self.max_objects == 0 || self.max_objects > MAX_GENERATED_OBJECTS {
            return bad(format!("max-objects must be in 1..={MAX_GENERATED_OBJECTS}"));
        }
        if self.max_hom == 0 || self.max_hom > MAX_GENERATED_HOM {
            return bad(format!("max-hom must be in 1..={MAX_GENERATED_HOM}"));
        }
        if self.instance == InstanceKind::Set && self.count == 0 {
            return bad("count must be positive".into());
        }
        Ok(())
    }
}

struct Generator<'s> {
    spec: &'s CorpusSpec,
    rng: ChaCha8Rng,
    caps: Caps,
}

impl Generator<'_> {
    /// A category of functions between sets of size 1 or 2, closed under
    /// composition from a few random generators.
    fn category(&mut self, prefix: &str, n: usize) -> Option<Arc<FinCat>> {
        let mut b = ConcreteBuilder::new();
        let sizes: Vec<usize> = (0..n).map(|_| self.rng.gen_range(1..=2)).collect();
        for (i, &s) in sizes.iter().enumerate() {
            b.object(&format!("{prefix}{i}"), s);
        }
        let generators = self.rng.gen_range(0..=n + 1);
        for g in 0..generators {
            let (s, t) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
            let map = (0..sizes[s]).map(|_| self.rng.gen_range(0..sizes[t])).collect();
            b.generator(&format!("{prefix}{g}'"), s, t, map);
        }
        let c = b.build(n * n * self.spec.max_hom).ok()?;
        let fits = c.objects().all(|x| c.objects().all(|y| c.hom(x, y).len() <= self.spec.max_hom));
        fits.then(|| Arc::new(c))
    }

    fn root(&mut self, e: &Arc<FinCat>) -> Option<Functor> {
        if self.rng.gen_bool(0.5) {
            let mut keep: Vec<usize> = e.objects().filter(|_| self.rng.gen_bool(0.5)).collect();
            if keep.is_empty() {
                keep.push(self.rng.gen_range(0..e.object_count()));
            }
            return full_inclusion(e, &keep).ok();
        }
        let n = self.rng.gen_range(1..=self.spec.max_objects);
        let a = self.category("a", n)?;
        let all = all_functors(&a, e, self.caps.max_search_nodes, 4096).ok()?;
        all.choose(&mut self.rng).cloned()
    }

    fn monad(&mut self, ambient_objects: usize) -> Option<RelativeMonad> {
        let e = self.category("e", ambient_objects)?;
        let j = self.root(&e)?;
        let a = j.source().clone();
        let carrier: Vec<usize> = a.objects().map(|_| self.rng.gen_range(0..e.object_count())).collect();
        let unit = a
            .objects()
            .map(|x| e.hom(j.ob(x), carrier[x]).choose(&mut self.rng).copied())
            .collect::<Option<Vec<_>>>()?;
        let rng = &mut self.rng;
        let found = search_extensions(&j, &carrier, &unit, self.caps.max_search_nodes, 1, |d| d.shuffle(rng)).ok()?;
        let t = found.into_iter().next()?;
        if self.spec.density_required && !is_dense(t.root(), &self.caps).ok()?.dense {
            return None;
        }
        Some(t)
    }
}

/// Rejection sampling of `count` relative monads within the caps. Instance
/// `k` is drawn with `1 + k mod max_objects` ambient objects, falling back to
/// a random size once half its retries are spent.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<RelativeMonad>, LabError> {
    spec.validate()?;
    let mut g = Generator {
        spec,
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        caps: Caps::default(),
    };
    let budget = spec.count * RETRIES_PER_INSTANCE;
    let mut out = Vec::with_capacity(spec.count);
    let mut tries = 0;
    for _ in 0..budget {
        if out.len() == spec.count {
            break;
        }
        let n = if tries < RETRIES_PER_INSTANCE / 2 {
            1 + out.len() % spec.max_objects
        } else {
            g.rng.gen_range(1..=spec.max_objects)
        };
        tries += 1;
        if let Some(t) = g.monad(n) {
            out.push(t);
            tries = 0;
        }
    }
    if out.len() < spec.count {
        return Err(LabError::Exhausted {
            wanted: spec.count,
            found: out.len(),
            attempts: budget,
        });
    }
    Ok(out)
}
