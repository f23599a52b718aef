//! A small backtracking solver over finite domains.
//!
//! Variables are assigned in index order and domain values are tried in the
//! order given, so solutions come out lexicographically. A constraint is
//! re-evaluated whenever a variable in its scope is assigned; it sees a
//! partial assignment and must return `false` only when it is definitely
//! violated. Its scope must therefore contain every variable it may read.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

pub type Var = usize;

/// Read access to the current partial assignment.
pub struct Partial<'s> {
    values: &'s [Option<usize>],
}

impl Partial<'_> {
    pub fn get(&self, v: Var) -> Option<usize> {
        self.values[v]
    }
}

type Check<'a> = Box<dyn Fn(&Partial) -> bool + 'a>;

pub struct Search<'a> {
    domains: Vec<Vec<usize>>,
    constraints: Vec<Check<'a>>,
    watch: Vec<Vec<usize>>,
    global: Vec<usize>,
    node_limit: usize,
}

impl<'a> Search<'a> {
    pub fn new(node_limit: usize) -> Self {
        Search {
            domains: Vec::new(),
            constraints: Vec::new(),
            watch: Vec::new(),
            global: Vec::new(),
            node_limit,
        }
    }

    pub fn var(&mut self, domain: Vec<usize>) -> Var {
        self.domains.push(domain);
        self.watch.push(Vec::new());
        self.domains.len() - 1
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    pub fn domain(&self, v: Var) -> &[usize] {
        &self.domains[v]
    }

    pub fn constrain(&mut self, scope: &[Var], check: impl Fn(&Partial) -> bool + 'a) {
        let id = self.constraints.len();
        self.constraints.push(Box::new(check));
        if scope.is_empty() {
            self.global.push(id);
        }
        let mut seen: Vec<Var> = scope.to_vec();
        seen.sort_unstable();
        seen.dedup();
        for v in seen {
            self.watch[v].push(id);
        }
    }

    /// Permutes value order per variable, e.g. for randomized sampling.
    pub fn reorder_domains(&mut self, mut f: impl FnMut(Var, &mut Vec<usize>)) {
        for (v, d) in self.domains.iter_mut().enumerate() {
            f(v, d);
        }
    }

    /// Visits solutions in order until `visit` breaks or the space is exhausted.
    pub fn run(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> Result<()> {
        let empty = Partial { values: &[] };
        if self.global.iter().any(|&c| !(self.constraints[c])(&empty)) {
            return Ok(());
        }
        let n = self.domains.len();
        let mut values: Vec<Option<usize>> = vec![None; n];
        let mut out: Vec<usize> = vec![0; n];
        let mut nodes = 0usize;
        self.descend(0, &mut values, &mut out, &mut nodes, &mut visit)
            .map(|_| ())
    }

    fn descend(
        &self,
        depth: usize,
        values: &mut Vec<Option<usize>>,
        out: &mut Vec<usize>,
        nodes: &mut usize,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if depth == self.domains.len() {
            return Ok(visit(out));
        }
        for &value in &self.domains[depth] {
            *nodes += 1;
            if *nodes > self.node_limit {
                return Err(Error::Capacity {
                    what: "search nodes",
                    needed: *nodes,
                    limit: self.node_limit,
                });
            }
            values[depth] = Some(value);
            let ok = {
                let partial = Partial { values };
                self.watch[depth]
                    .iter()
                    .all(|&c| (self.constraints[c])(&partial))
            };
            if ok {
                out[depth] = value;
                if self.descend(depth + 1, values, out, nodes, visit)?.is_break() {
                    values[depth] = None;
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        values[depth] = None;
        Ok(ControlFlow::Continue(()))
    }

    /// All solutions; more than `limit` is a capacity error.
    pub fn all(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let mut found = Vec::new();
        let mut overflow = false;
        self.run(|s| {
            if found.len() == limit {
                overflow = true;
                return ControlFlow::Break(());
            }
            found.push(s.to_vec());
            ControlFlow::Continue(())
        })?;
        if overflow {
            return Err(Error::Capacity {
                what: "solutions",
                needed: limit + 1,
                limit,
            });
        }
        Ok(found)
    }

    pub fn first(&self) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.run(|s| {
            found = Some(s.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// Counts solutions, stopping early once `stop_at` have been seen.
    pub fn count_up_to(&self, stop_at: usize) -> Result<usize> {
        let mut n = 0;
        self.run(|_| {
            n += 1;
            if n >= stop_at {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(n)
    }
}
