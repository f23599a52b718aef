use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::report::{Item, LawReport};

pub type Obj = usize;
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category with global morphism ids.
///
/// Composition is stored in diagrammatic order: `compose(f, g)` is "f then g",
/// defined when `tgt(f) == src(g)`. Construction checks indices only; the
/// category laws are checked by [`FinCat::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Mor>,
    composites: Vec<Option<Mor>>,
    homs: Vec<Vec<Mor>>,
}

impl FinCat {
    /// Builds a category from raw tables.
    ///
    /// `composites` lists `(f, g, f ⨾ g)`; a pair may appear at most once.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        composites: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<FinCat> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        let mut seen = BTreeSet::new();
        for name in &objects {
            if !seen.insert(name.as_str()) {
                return Err(Error::malformed("category", format!("duplicate object name {name:?}")));
            }
        }
        for (i, m) in morphisms.iter().enumerate() {
            if m.src >= n_obj || m.tgt >= n_obj {
                return Err(Error::malformed("category", format!("morphism {i} has a dangling endpoint")));
            }
        }
        if identities.len() != n_obj {
            return Err(Error::malformed(
                "category",
                format!("{} identities for {} objects", identities.len(), n_obj),
            ));
        }
        if let Some(&bad) = identities.iter().find(|&&i| i >= n_mor) {
            return Err(Error::malformed("category", format!("identity {bad} is dangling")));
        }
        let mut table = vec![None; n_mor * n_mor];
        for (f, g, h) in composites {
            if f >= n_mor || g >= n_mor || h >= n_mor {
                return Err(Error::malformed("category", format!("composite ({f}, {g}, {h}) is dangling")));
            }
            let slot = &mut table[f * n_mor + g];
            match slot {
                Some(prev) if *prev != h => {
                    return Err(Error::malformed(
                        "category",
                        format!("composite of ({f}, {g}) given twice"),
                    ))
                }
                _ => *slot = Some(h),
            }
        }
        Ok(Self::from_tables(objects, morphisms, identities, table))
    }

    fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Mor>,
        composites: Vec<Option<Mor>>,
    ) -> FinCat {
        let n_obj = objects.len();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src * n_obj + m.tgt].push(i);
        }
        FinCat {
            objects,
            morphisms,
            identities,
            composites,
            homs,
        }
    }

    pub fn empty() -> FinCat {
        Self::from_tables(Vec::new(), Vec::new(), Vec::new(), Vec::new())
    }

    /// The terminal category `1`.
    pub fn terminal() -> FinCat {
        Self::discrete(&["*"])
    }

    pub fn discrete(names: &[&str]) -> FinCat {
        let morphisms = (0..names.len())
            .map(|a| Morphism {
                name: format!("id_{}", names[a]),
                src: a,
                tgt: a,
            })
            .collect();
        let composites = (0..names.len()).map(|a| (a, a, a));
        FinCat::new(
            names.iter().map(|s| s.to_string()).collect(),
            morphisms,
            (0..names.len()).collect(),
            composites,
        )
        .expect("discrete category tables are well formed")
    }

    /// The thin category of a preorder; `leq[a][b]` means a unique arrow a → b.
    ///
    /// Fails if `leq` is not reflexive and transitive.
    pub fn from_preorder(names: &[String], leq: &[Vec<bool>]) -> Result<FinCat> {
        let n = names.len();
        let mut ids = HashMap::new();
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if leq[a][b] {
                    ids.insert((a, b), morphisms.len());
                    let name = if a == b {
                        format!("id_{}", names[a])
                    } else {
                        format!("{}≤{}", names[a], names[b])
                    };
                    morphisms.push(Morphism { name, src: a, tgt: b });
                }
            }
        }
        let mut identities = Vec::with_capacity(n);
        for a in 0..n {
            identities.push(*ids.get(&(a, a)).ok_or_else(|| {
                Error::malformed("preorder", format!("{} is not reflexive", names[a]))
            })?);
        }
        let mut composites = Vec::new();
        for (&(a, b), &f) in &ids {
            for c in 0..n {
                if let Some(&g) = ids.get(&(b, c)) {
                    let h = *ids.get(&(a, c)).ok_or_else(|| {
                        Error::malformed("preorder", format!("not transitive at {a}, {b}, {c}"))
                    })?;
                    composites.push((f, g, h));
                }
            }
        }
        FinCat::new(names.to_vec(), morphisms, identities, composites)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn morphism(&self, f: Mor) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: Obj) -> Mor {
        self.identities[a]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identities
    }

    /// Stored composite of f then g, if any.
    pub fn try_compose(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.composites[f * self.morphisms.len() + g]
    }

    /// Composite of f then g in a valid category.
    ///
    /// # Panics
    /// If the composite is not stored.
    pub fn compose(&self, f: Mor, g: Mor) -> Mor {
        self.try_compose(f, g).unwrap_or_else(|| {
            panic!("no composite for ({f}, {g}); the category was not validated")
        })
    }

    /// Composite of a nonempty path.
    pub fn compose_path(&self, path: &[Mor]) -> Mor {
        let (first, rest) = path.split_first().expect("nonempty path");
        rest.iter().fold(*first, |acc, &g| self.compose(acc, g))
    }

    /// Morphisms a → b in increasing id order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// All stored composites `(f, g, f ⨾ g)` in row-major order.
    pub fn composite_entries(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        let n = self.morphisms.len();
        self.composites
            .iter()
            .enumerate()
            .filter_map(move |(i, h)| h.map(|h| (i / n, i % n, h)))
    }

    /// Checks identities, composition domains and the unit and associativity laws.
    ///
    /// Unit-law witnesses are written in applicative order as `(identity, f)` for
    /// the left unit `id_b ∘ f = f` and `(f, identity)` for the right unit;
    /// associativity witnesses list the path `(f, g, h)` in diagrammatic order.
    /// Unit laws are still checked when some composite has wrong endpoints.
    pub fn validate(&self) -> LawReport {
        let mut r = LawReport::new();
        for a in self.objects() {
            let i = self.identity(a);
            r.require(self.src(i) == a && self.tgt(i) == a, "identity-endpoints", || {
                vec![Item::Obj(a), Item::Mor(i)]
            });
        }
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.try_compose(f, g)) {
                    (true, None) => r.push("composition-total", vec![Item::Mor(f), Item::Mor(g)]),
                    (false, Some(_)) => r.push("composition-domain", vec![Item::Mor(f), Item::Mor(g)]),
                    (true, Some(h)) => r.require(
                        self.src(h) == self.src(f) && self.tgt(h) == self.tgt(g),
                        "composition-endpoints",
                        || vec![Item::Mor(f), Item::Mor(g)],
                    ),
                    (false, None) => {}
                }
            }
        }
        if r.violates("composition-total") || r.violates("composition-domain") {
            return r;
        }
        let typed = r.passed();
        for f in 0..n {
            let (a, b) = (self.src(f), self.tgt(f));
            let (ia, ib) = (self.identity(a), self.identity(b));
            r.require(self.compose(f, ib) == f, "left-unit", || vec![Item::Mor(ib), Item::Mor(f)]);
            r.require(self.compose(ia, f) == f, "right-unit", || vec![Item::Mor(f), Item::Mor(ia)]);
        }
        if !typed {
            return r;
        }
        for f in 0..n {
            for &g in self.out_of(self.tgt(f)) {
                let fg = self.compose(f, g);
                for &h in self.out_of(self.tgt(g)) {
                    let left = self.compose(fg, h);
                    let right = self.compose(f, self.compose(g, h));
                    r.require(left == right, "associativity", || {
                        vec![Item::Mor(f), Item::Mor(g), Item::Mor(h)]
                    });
                }
            }
        }
        r
    }

    fn out_of(&self, a: Obj) -> impl Iterator<Item = &Mor> + '_ {
        let n = self.objects.len();
        (0..n).flat_map(move |b| self.homs[a * n + b].iter())
    }

    /// Morphisms with source `a`, grouped by target.
    pub fn morphisms_from(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.out_of(a).copied()
    }

    /// Object and morphism counts, for reports.
    pub fn size(&self) -> (usize, usize) {
        (self.object_count(), self.morphism_count())
    }

    /// The opposite category: same ids and names, endpoints swapped.
    pub fn opposite(&self) -> FinCat {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                src: m.tgt,
                tgt: m.src,
            })
            .collect();
        let mut composites = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                composites[g * n + f] = self.composites[f * n + g];
            }
        }
        Self::from_tables(self.objects.clone(), morphisms, self.identities.clone(), composites)
    }
}

/// Builds subcategories of finite sets generated by given functions.
///
/// Every object is a set `{0, …, size-1}`; the result is closed under
/// composition and contains identities, so it is a category by construction.
#[derive(Debug, Clone, Default)]
pub struct ConcreteBuilder {
    names: Vec<String>,
    sizes: Vec<usize>,
    generators: Vec<(String, Obj, Obj, Vec<usize>)>,
}

impl ConcreteBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str, size: usize) -> Obj {
        self.names.push(name.to_string());
        self.sizes.push(size);
        self.names.len() - 1
    }

    /// Adds a generating function `src → tgt`; `map[i]` is the image of `i`.
    pub fn generator(&mut self, name: &str, src: Obj, tgt: Obj, map: Vec<usize>) -> &mut Self {
        assert_eq!(map.len(), self.sizes[src], "generator {name} has the wrong arity");
        assert!(map.iter().all(|&v| v < self.sizes[tgt]), "generator {name} leaves its target");
        self.generators.push((name.to_string(), src, tgt, map));
        self
    }

    /// Closes under composition; fails once more than `max_morphisms` appear.
    pub fn build(&self, max_morphisms: usize) -> Result<FinCat> {
        let n = self.names.len();
        let mut named: BTreeMap<(Obj, Obj, Vec<usize>), String> = BTreeMap::new();
        for a in 0..n {
            named.insert((a, a, (0..self.sizes[a]).collect()), format!("id_{}", self.names[a]));
        }
        let mut frontier: Vec<(Obj, Obj, Vec<usize>)> = Vec::new();
        for (name, s, t, map) in &self.generators {
            let key = (*s, *t, map.clone());
            if !named.contains_key(&key) {
                named.insert(key.clone(), name.clone());
                frontier.push(key);
            }
        }
        while let Some((s, t, map)) = frontier.pop() {
            let name_f = named[&(s, t, map.clone())].clone();
            let current: Vec<((Obj, Obj, Vec<usize>), String)> =
                named.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            for ((s2, t2, map2), name_g) in current {
                if s2 == t {
                    let comp: Vec<usize> = map.iter().map(|&i| map2[i]).collect();
                    let key = (s, t2, comp);
                    if !named.contains_key(&key) {
                        named.insert(key.clone(), format!("{name_f};{name_g}"));
                        frontier.push(key);
                    }
                }
                if t2 == s {
                    let comp: Vec<usize> = map2.iter().map(|&i| map[i]).collect();
                    let key = (s2, t, comp);
                    if !named.contains_key(&key) {
                        named.insert(key.clone(), format!("{name_g};{name_f}"));
                        frontier.push(key);
                    }
                }
                if named.len() > max_morphisms {
                    return Err(Error::Capacity {
                        what: "morphisms",
                        needed: named.len(),
                        limit: max_morphisms,
                    });
                }
            }
        }
        let keys: Vec<(Obj, Obj, Vec<usize>)> = named.keys().cloned().collect();
        let index: HashMap<&(Obj, Obj, Vec<usize>), Mor> =
            keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let morphisms = keys
            .iter()
            .map(|k| Morphism {
                name: named[k].clone(),
                src: k.0,
                tgt: k.1,
            })
            .collect();
        let identities = (0..n)
            .map(|a| index[&(a, a, (0..self.sizes[a]).collect::<Vec<_>>())])
            .collect();
        let mut composites = Vec::new();
        for (i, (s, t, map)) in keys.iter().enumerate() {
            for (j, (s2, t2, map2)) in keys.iter().enumerate() {
                if *s2 == *t {
                    let comp: Vec<usize> = map.iter().map(|&x| map2[x]).collect();
                    composites.push((i, j, index[&(*s, *t2, comp)]));
                }
            }
        }
        FinCat::new(self.names.clone(), morphisms, identities, composites)
    }
}
