//! Brute-force isomorphism test for small nilpotent algebras.

use std::collections::HashMap;

use crate::algtable::SCTable;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};

use super::adapted::power_spaces;

/// (filtration depth, nilpotency degree) of an element.
type Profile = (usize, usize);

struct Shape {
    spaces: Vec<Echelon>,
    profiles: HashMap<Vec<u32>, Profile>,
}

fn shape(t: &SCTable) -> Shape {
    let (p, d) = (t.prime(), t.dim());
    let mul = |x: &[u32], y: &[u32]| t.mul_dense(x, y);
    let spaces = power_spaces(p, d, t.trunc() + 1, &mul);
    let mut profiles = HashMap::new();
    for x in field::all_vectors(p, d) {
        let depth = spaces
            .iter()
            .rposition(|s| s.contains(&x))
            .map_or(0, |i| i + 1);
        let mut e = 1;
        let mut pw = x.clone();
        while !field::is_zero(&pw) {
            pw = t.mul_dense(&pw, &x);
            e += 1;
        }
        profiles.insert(x, (depth, e));
    }
    Shape { spaces, profiles }
}

#[derive(Clone, Debug)]
enum Step {
    /// A new word: the generator itself or `word * gen`.
    New { parent: Option<usize>, gen: usize },
    /// `word * gen = sum c_v word_v`.
    Check { word: usize, gen: usize, coords: Vec<u32> },
}

/// Words in the generators spanning `A`, built by right multiplication,
/// grouped by the generator whose assignment makes each step evaluable.
fn word_program(t: &SCTable, gens: &[Vec<u32>]) -> Vec<Vec<Step>> {
    let p = t.prime();
    let mut words: Vec<Vec<u32>> = Vec::new();
    let mut ech = Echelon::new(p, t.dim());
    let mut program = Vec::new();
    for j in 0..gens.len() {
        let mut steps = vec![Step::New { parent: None, gen: j }];
        let start = words.len();
        ech.insert_tracked(&gens[j]);
        words.push(gens[j].clone());
        let mut w = 0;
        while w < words.len() {
            let range = if w < start { j..j + 1 } else { 0..j + 1 };
            for i in range {
                let v = t.mul_dense(&words[w], &gens[i]);
                let (res, coeffs) = ech.reduce_tracked(&v);
                if field::is_zero(&res) {
                    let mut coords = coeffs;
                    coords.resize(words.len(), 0);
                    steps.push(Step::Check { word: w, gen: i, coords });
                } else {
                    ech.insert_tracked(&v);
                    words.push(v);
                    steps.push(Step::New { parent: Some(w), gen: i });
                }
            }
            w += 1;
        }
        program.push(steps);
    }
    program
}

/// `{a : aB = Ba = 0} ∩ B^2`.
fn annihilator_in_square(t: &SCTable, square: &Echelon) -> Echelon {
    let (p, d) = (t.prime(), t.dim());
    let mut big = Echelon::new(p, 2 * d * d);
    let mut ann: Vec<Vec<u32>> = Vec::new();
    for i in 0..d {
        let mut row = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            let mut prod = vec![0u32; d];
            for &(k, c) in t.product(i, j) {
                prod[k] = c;
            }
            row.extend(prod);
            let mut prod = vec![0u32; d];
            for &(k, c) in t.product(j, i) {
                prod[k] = c;
            }
            row.extend(prod);
        }
        if let Some(mut rel) = big.insert_tracked(&row) {
            rel.resize(d, 0);
            ann.push(rel);
        }
    }
    let mut modsq = Echelon::new(p, d);
    let mut out = Echelon::new(p, d);
    for a in &ann {
        let mut r = a.clone();
        square.reduce(&mut r);
        if let Some(rel) = modsq.insert_tracked(&r) {
            let mut v = vec![0u32; d];
            for (k, &c) in rel.iter().enumerate() {
                if c != 0 {
                    field::axpy(&mut v, c, &ann[k], p);
                }
            }
            out.insert(&v);
        }
    }
    out
}

struct Search<'a> {
    b: &'a SCTable,
    program: &'a [Vec<Step>],
    candidates: Vec<Vec<Vec<u32>>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, j: usize, images: &[Vec<u32>], ys: &mut Vec<Vec<u32>>, ech: &Echelon) -> Result<bool> {
        if j == self.program.len() {
            return Ok(true);
        }
        let p = self.b.prime();
        for ci in 0..self.candidates[j].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "isomorphism oracle exceeded {} nodes",
                    self.budget
                )));
            }
            let y = self.candidates[j][ci].clone();
            ys.push(y);
            let mut imgs = images.to_vec();
            let mut e = ech.clone();
            let mut ok = true;
            for step in &self.program[j] {
                match step {
                    Step::New { parent, gen } => {
                        let v = match parent {
                            None => ys[*gen].clone(),
                            Some(w) => self.b.mul_dense(&imgs[*w], &ys[*gen]),
                        };
                        if !e.insert(&v) {
                            ok = false;
                            break;
                        }
                        imgs.push(v);
                    }
                    Step::Check { word, gen, coords } => {
                        let lhs = self.b.mul_dense(&imgs[*word], &ys[*gen]);
                        let mut rhs = vec![0u32; self.b.dim()];
                        for (v, &c) in coords.iter().enumerate() {
                            if c != 0 {
                                field::axpy(&mut rhs, c, &imgs[v], p);
                            }
                        }
                        if lhs != rhs {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok && self.run(j + 1, &imgs, ys, &e)? {
                return Ok(true);
            }
            ys.pop();
        }
        Ok(false)
    }
}

/// Decides whether two tables define isomorphic algebras by backtracking
/// over images of a generating set.
pub fn iso_oracle(a: &SCTable, b: &SCTable, caps: &Caps) -> Result<bool> {
    let d = a.dim();
    if d > caps.oracle_dim || b.dim() > caps.oracle_dim {
        return Err(Error::CapExceeded {
            what: "oracle dimension",
            size: d.max(b.dim()) as u128,
            cap: caps.oracle_dim as u64,
        });
    }
    if a.prime() != b.prime() || d != b.dim() {
        return Ok(false);
    }
    let p = a.prime();
    let sa = shape(a);
    let sb = shape(b);
    let ranks = |s: &Shape| -> Vec<usize> { s.spaces.iter().map(|e| e.rank()).collect() };
    let (ra, rb) = (ranks(&sa), ranks(&sb));
    let n = ra.len().max(rb.len());
    let pad = |mut r: Vec<usize>| {
        r.resize(n, 0);
        r
    };
    if pad(ra) != pad(rb) {
        return Ok(false);
    }
    let histogram = |s: &Shape| {
        let mut h: Vec<Profile> = s.profiles.values().copied().collect();
        h.sort_unstable();
        h
    };
    if histogram(&sa) != histogram(&sb) {
        return Ok(false);
    }
    // Generators: basis vectors independent modulo A^2.
    let square_a = sa.spaces.get(1).cloned().unwrap_or_else(|| Echelon::new(p, d));
    let mut ech = square_a.clone();
    let mut gens = Vec::new();
    for i in 0..d {
        let mut e = vec![0u32; d];
        e[i] = 1;
        if ech.insert(&e) {
            gens.push(e);
        }
    }
    let program = word_program(a, &gens);
    let square_b = sb.spaces.get(1).cloned().unwrap_or_else(|| Echelon::new(p, d));
    let kernel = annihilator_in_square(b, &square_b);
    let candidates = gens
        .iter()
        .map(|g| {
            let want = sa.profiles[g];
            field::all_vectors(p, d)
                .filter(|y| kernel.pivots().iter().all(|&c| y[c] == 0) && sb.profiles[y] == want)
                .collect()
        })
        .collect();
    let mut search = Search {
        b,
        program: &program,
        candidates,
        nodes: 0,
        budget: caps.search,
    };
    search.run(0, &[], &mut Vec::new(), &Echelon::new(p, d))
}
