use crate::error::{Error, Result};
use crate::report::{Item, LawReport};

/// An element of a finite quantale, by index.
pub type Value = usize;

/// A finite quantale: a complete lattice with an associative, unital,
/// monotone tensor, and both residuals.
///
/// `rres(a, c)` is the largest `b` with `a ⊗ b ≤ c` and `lres(b, c)` the
/// largest `a` with `a ⊗ b ≤ c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    tensor: Vec<Vec<Value>>,
    unit: Value,
    lres: Vec<Vec<Value>>,
    rres: Vec<Vec<Value>>,
    join2: Vec<Vec<Value>>,
    meet2: Vec<Vec<Value>>,
    bottom: Value,
    top: Value,
    provided: Option<(Vec<Vec<Value>>, Vec<Vec<Value>>)>,
}

impl Quantale {
    /// Fails unless `leq` is a partial order with all joins.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>, tensor: Vec<Vec<Value>>, unit: Value) -> Result<Quantale> {
        let n = names.len();
        if n == 0 {
            return Err(Error::malformed("quantale", "no elements"));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::malformed("quantale", "order table is not square"));
        }
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) || unit >= n {
            return Err(Error::malformed("quantale", "tensor table is not total"));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::malformed("quantale", format!("order is not reflexive at {}", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::malformed("quantale", "order is not antisymmetric"));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::malformed("quantale", "order is not transitive"));
                    }
                }
            }
        }
        let mut q = Quantale {
            names,
            leq,
            tensor,
            unit,
            lres: Vec::new(),
            rres: Vec::new(),
            join2: Vec::new(),
            meet2: Vec::new(),
            bottom: 0,
            top: 0,
            provided: None,
        };
        let mut join2 = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                join2[a][b] = q
                    .try_join([a, b])
                    .ok_or_else(|| Error::malformed("quantale", format!("{} and {} have no join", q.names[a], q.names[b])))?;
            }
        }
        q.bottom = q.try_join([]).ok_or_else(|| Error::malformed("quantale", "no bottom element"))?;
        q.top = q.try_meet([]).expect("a finite lattice with joins has a top");
        q.meet2 = (0..n)
            .map(|a| (0..n).map(|b| q.try_meet([a, b]).expect("a finite lattice with joins has meets")).collect())
            .collect();
        q.join2 = join2;
        q.rres = (0..n)
            .map(|a| (0..n).map(|c| q.join((0..n).filter(|&b| q.leq(q.tensor(a, b), c)))).collect())
            .collect();
        q.lres = (0..n)
            .map(|b| (0..n).map(|c| q.join((0..n).filter(|&a| q.leq(q.tensor(a, b), c)))).collect())
            .collect();
        Ok(q)
    }

    /// As [`Quantale::new`], also recording residual tables to be compared by
    /// [`validate_quantale`].
    pub fn with_residuals(mut self, lres: Vec<Vec<Value>>, rres: Vec<Vec<Value>>) -> Result<Quantale> {
        let n = self.len();
        let square = |t: &Vec<Vec<Value>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n));
        if !square(&lres) || !square(&rres) {
            return Err(Error::malformed("quantale", "residual table is not total"));
        }
        self.provided = Some((lres, rres));
        Ok(self)
    }

    /// `2 = {0 ≤ 1}` with `⊗ = ∧`.
    pub fn boolean() -> Quantale {
        Quantale::min_chain(&["0", "1"])
    }

    /// The 3-chain `0 ≤ ½ ≤ 1` with `⊗ = min`.
    pub fn three_chain() -> Quantale {
        Quantale::min_chain(&["0", "1/2", "1"])
    }

    /// A chain with `⊗ = min` and unit the top.
    pub fn min_chain(names: &[&str]) -> Quantale {
        let n = names.len();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        let tensor = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        Quantale::new(names.iter().map(|s| s.to_string()).collect(), leq, tensor, n - 1).expect("chains are quantales")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Value> {
        0..self.len()
    }

    pub fn name(&self, a: Value) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Value> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: Value, b: Value) -> bool {
        self.leq[a][b]
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn tensor(&self, a: Value, b: Value) -> Value {
        self.tensor[a][b]
    }

    pub fn tensor_table(&self) -> &[Vec<Value>] {
        &self.tensor
    }

    pub fn unit(&self) -> Value {
        self.unit
    }

    pub fn rres(&self, a: Value, c: Value) -> Value {
        self.rres[a][c]
    }

    pub fn lres(&self, b: Value, c: Value) -> Value {
        self.lres[b][c]
    }

    fn try_join(&self, xs: impl IntoIterator<Item = Value> + Clone) -> Option<Value> {
        let upper: Vec<Value> = self
            .elements()
            .filter(|&u| xs.clone().into_iter().all(|x| self.leq(x, u)))
            .collect();
        upper.iter().copied().find(|&u| upper.iter().all(|&v| self.leq(u, v)))
    }

    fn try_meet(&self, xs: impl IntoIterator<Item = Value> + Clone) -> Option<Value> {
        let lower: Vec<Value> = self
            .elements()
            .filter(|&l| xs.clone().into_iter().all(|x| self.leq(l, x)))
            .collect();
        lower.iter().copied().find(|&l| lower.iter().all(|&v| self.leq(v, l)))
    }

    pub fn join(&self, xs: impl IntoIterator<Item = Value>) -> Value {
        xs.into_iter().fold(self.bottom, |acc, x| self.join2[acc][x])
    }

    pub fn meet(&self, xs: impl IntoIterator<Item = Value>) -> Value {
        xs.into_iter().fold(self.top, |acc, x| self.meet2[acc][x])
    }

    pub fn bottom(&self) -> Value {
        self.bottom
    }

    pub fn top(&self) -> Value {
        self.top
    }
}

/// Monotonicity, associativity and unit laws of the tensor, both
/// residuation equivalences, and agreement with any supplied residuals.
pub fn validate_quantale(q: &Quantale) -> LawReport {
    let mut r = LawReport::new();
    let els = || q.elements();
    let v = |a: Value| Item::Elem(a);
    for a in els() {
        r.require(q.tensor(q.unit(), a) == a, "unit-left", || vec![v(a)]);
        r.require(q.tensor(a, q.unit()) == a, "unit-right", || vec![v(a)]);
        for b in els() {
            for c in els() {
                if q.leq(a, b) {
                    r.require(q.leq(q.tensor(a, c), q.tensor(b, c)), "tensor-monotone", || vec![v(a), v(b), v(c)]);
                    r.require(q.leq(q.tensor(c, a), q.tensor(c, b)), "tensor-monotone", || vec![v(c), v(a), v(b)]);
                }
                r.require(
                    q.tensor(q.tensor(a, b), c) == q.tensor(a, q.tensor(b, c)),
                    "tensor-associative",
                    || vec![v(a), v(b), v(c)],
                );
                let below = q.leq(q.tensor(a, b), c);
                r.require(below == q.leq(b, q.rres(a, c)), "residuation-right", || vec![v(a), v(b), v(c)]);
                r.require(below == q.leq(a, q.lres(b, c)), "residuation-left", || vec![v(a), v(b), v(c)]);
            }
        }
    }
    if let Some((lres, rres)) = &q.provided {
        for a in els() {
            for c in els() {
                r.require(lres[a][c] == q.lres(a, c), "residual-table-left", || vec![v(a), v(c)]);
                r.require(rres[a][c] == q.rres(a, c), "residual-table-right", || vec![v(a), v(c)]);
            }
        }
    }
    r
}
