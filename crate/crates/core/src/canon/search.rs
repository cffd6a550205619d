//! Layered search for the lexicographically least generator encoding.
//!
//! For a generating tuple `x` of `N = A/A^n` (independent modulo `A^2`),
//! `encode` builds a basis of `N` by closing `<x_1>`, `<x_1, x_2>`, ... under
//! multiplication and records every product in that basis. The table of
//! `A/A^{k+1}` only depends on `x mod A^k`, so tuples are refined one layer
//! at a time, keeping all tuples that are minimal for every level so far.

use std::cmp::Ordering;

use crate::algtable::SCTable;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};

/// A basis of the subalgebra generated by a tuple prefix, with the encoded
/// products seen so far.
#[derive(Clone, Debug)]
pub(crate) struct Closure {
    pub basis: Vec<Vec<u32>>,
    ech: Echelon,
    pub enc: Vec<u32>,
}

impl Closure {
    pub fn new(p: u32, width: usize) -> Closure {
        Closure {
            basis: Vec::new(),
            ech: Echelon::new(p, width),
            enc: Vec::new(),
        }
    }

    fn push(&mut self, v: Vec<u32>) {
        let rel = self.ech.insert_tracked(&v);
        debug_assert!(rel.is_none());
        self.basis.push(v);
    }

    /// Adds a generator and closes under products. Returns `false` if the
    /// generator is already in the subalgebra.
    pub fn add_generator(&mut self, tab: &SCTable, x: Vec<u32>) -> bool {
        let (res, _) = self.ech.reduce_tracked(&x);
        if field::is_zero(&res) {
            return false;
        }
        let mut a = self.basis.len();
        self.push(x);
        while a < self.basis.len() {
            for b in 0..=a {
                self.record(tab, a, b);
                if b != a {
                    self.record(tab, b, a);
                }
            }
            a += 1;
        }
        true
    }

    fn record(&mut self, tab: &SCTable, a: usize, b: usize) {
        let v = tab.mul_dense(&self.basis[a], &self.basis[b]);
        let (res, coeffs) = self.ech.reduce_tracked(&v);
        if field::is_zero(&res) {
            self.enc.push(0);
            self.enc.extend_from_slice(&coeffs);
        } else {
            self.enc.push(1);
            self.push(v);
        }
    }
}

/// `A/A^{k}` for `k = 2..=n` over a filtration-adapted basis.
pub(crate) struct Quotients {
    pub p: u32,
    /// Number of generators `dim A/A^2`.
    pub d: usize,
    /// `offs[m] = dim A/A^{m+1}`: coordinates of layers `1..=m`.
    pub offs: Vec<usize>,
    /// `tabs[k]` is the table of `A/A^k` (entries below 2 unused).
    pub tabs: Vec<SCTable>,
}

impl Quotients {
    pub fn new(filtered: &SCTable) -> Result<Quotients> {
        let n = filtered.trunc();
        let w = filtered.weights();
        let offs: Vec<usize> = (0..n).map(|m| w.iter().filter(|&&x| x <= m).count()).collect();
        let mut tabs = vec![filtered.clone(), filtered.clone()];
        for k in 2..=n {
            tabs.push(filtered.restrict(k)?);
        }
        Ok(Quotients {
            p: filtered.prime(),
            d: offs.get(1).copied().unwrap_or(0),
            offs,
            tabs,
        })
    }

    pub fn layer_dim(&self, m: usize) -> usize {
        self.offs[m] - self.offs[m - 1]
    }
}

/// Outcome of the search at one level.
pub(crate) struct LevelResult {
    /// Closure basis (in `A/A^{k+1}` coordinates) of one minimal tuple.
    pub basis: Vec<Vec<u32>>,
    /// All minimal tuples modulo `A^k`.
    pub ties: Vec<Vec<Vec<u32>>>,
}

fn cmp_prefix(enc: &[u32], best: &[u32]) -> Ordering {
    let m = enc.len().min(best.len());
    match enc[..m].cmp(&best[..m]) {
        Ordering::Equal if enc.len() > best.len() => Ordering::Greater,
        o => o,
    }
}

struct LevelSearch<'a> {
    q: &'a Quotients,
    k: usize,
    lifts: Vec<Vec<u32>>,
    best: Option<Vec<u32>>,
    basis: Vec<Vec<u32>>,
    ties: Vec<Vec<Vec<u32>>>,
    nodes: &'a mut u64,
    budget: u64,
}

impl LevelSearch<'_> {
    fn embed(&self, x: &[u32]) -> Vec<u32> {
        let mut v = x.to_vec();
        v.resize(self.q.offs[self.k], 0);
        v
    }

    fn dfs(&mut self, seed: &[Vec<u32>], tuple: &mut Vec<Vec<u32>>, closure: &Closure) -> Result<()> {
        let j = tuple.len();
        if j == self.q.d {
            let better = match &self.best {
                None => Ordering::Less,
                Some(b) => closure.enc.cmp(b),
            };
            match better {
                Ordering::Less => {
                    self.best = Some(closure.enc.clone());
                    self.basis = closure.basis.clone();
                    self.ties = vec![tuple.clone()];
                }
                Ordering::Equal => self.ties.push(tuple.clone()),
                Ordering::Greater => {}
            }
            return Ok(());
        }
        let (lo, hi) = (self.q.offs[self.k - 2], self.q.offs[self.k - 1]);
        for li in 0..self.lifts.len() {
            let mut x = seed[j].clone();
            x.resize(hi, 0);
            x[lo..hi].copy_from_slice(&self.lifts[li]);
            if self.k == 2 {
                // Generators must stay independent modulo A^2.
                let mut ech = Echelon::new(self.q.p, self.q.d);
                if !tuple.iter().chain(std::iter::once(&x)).all(|y| ech.insert(y)) {
                    continue;
                }
            }
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "canonical form search exceeded {} states",
                    self.budget
                )));
            }
            let mut c = closure.clone();
            let ok = c.add_generator(&self.q.tabs[self.k + 1], self.embed(&x));
            debug_assert!(ok);
            if let Some(b) = &self.best {
                if cmp_prefix(&c.enc, b) == Ordering::Greater {
                    continue;
                }
            }
            tuple.push(x);
            self.dfs(seed, tuple, &c)?;
            tuple.pop();
        }
        Ok(())
    }
}

/// Minimal tuples for the table of `A/A^{k+1}` among lifts of `seeds`
/// (tuples modulo `A^{k-1}`) by layer `k-1`.
pub(crate) fn search_level(
    q: &Quotients,
    k: usize,
    seeds: &[Vec<Vec<u32>>],
    nodes: &mut u64,
    budget: u64,
) -> Result<LevelResult> {
    let e = q.layer_dim(k - 1);
    let lifts: Vec<Vec<u32>> = field::all_vectors(q.p, e).collect();
    let mut s = LevelSearch {
        q,
        k,
        lifts,
        best: None,
        basis: Vec::new(),
        ties: Vec::new(),
        nodes,
        budget,
    };
    for seed in seeds {
        let mut tuple = Vec::new();
        s.dfs(seed, &mut tuple, &Closure::new(q.p, q.offs[k]))?;
    }
    Ok(LevelResult {
        basis: s.basis,
        ties: s.ties,
    })
}

/// Encodings of all levels `3..=n` for a tuple given modulo `A^{n-1}`.
pub(crate) fn encode_levels(q: &Quotients, n: usize, tuple: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut encs = Vec::new();
    let mut basis = Vec::new();
    for k in 2..n {
        let width = q.offs[k];
        let mut c = Closure::new(q.p, width);
        for x in tuple {
            let mut v = x[..q.offs[k - 1]].to_vec();
            v.resize(width, 0);
            c.add_generator(&q.tabs[k + 1], v);
        }
        encs.push(c.enc);
        basis = c.basis;
    }
    (encs, basis)
}
