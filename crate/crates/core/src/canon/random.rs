//! Random algebras and filtration-preserving basis changes for testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algtable::SCTable;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};

/// Re-expresses `t` over the basis whose `i`-th vector is row `i` of `m`
/// (in old coordinates). Row `i` may only involve old basis vectors of
/// weight at least `w_i`; the new basis keeps the old weights.
pub fn basis_change(t: &SCTable, m: &[Vec<u32>]) -> Result<SCTable> {
    let (p, d) = (t.prime(), t.dim());
    let w = t.weights();
    if m.len() != d || m.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension("basis change matrix has the wrong shape".into()));
    }
    for (i, row) in m.iter().enumerate() {
        if row.iter().zip(w).any(|(&c, &wk)| c != 0 && wk < w[i]) {
            return Err(Error::Table(format!("row {} lowers the filtration", i + 1)));
        }
    }
    let inverse = field::invert(m, p).ok_or_else(|| Error::Table("basis change is singular".into()))?;
    let mut products = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            if w[a] + w[b] >= t.trunc() {
                products.push(Vec::new());
                continue;
            }
            let v = field::vec_mat(&t.mul_dense(&m[a], &m[b]), &inverse, p);
            products.push(
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect(),
            );
        }
    }
    SCTable::new(p, t.trunc(), w.to_vec(), products)
}

/// A random basis change that maps each span `{e_k : w_k >= m}` onto
/// itself, reproducible from `seed`.
pub fn random_filtered_basis_change(t: &SCTable, seed: u64) -> SCTable {
    let (p, d) = (t.prime(), t.dim());
    let w = t.weights();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<u32>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|k| if w[k] >= w[i] { rng.gen_range(0..p) } else { 0 })
                    .collect()
            })
            .collect();
        if let Ok(t2) = basis_change(t, &m) {
            return t2;
        }
    }
}

/// A random graded nilpotent algebra of dimension `1..=max_dim`: the free
/// associative algebra on one to three generators, truncated at degree
/// `c <= 4`, modulo the ideal generated by random homogeneous relations.
pub fn random_nilpotent_algebra(p: u32, max_dim: usize, seed: u64) -> Result<SCTable> {
    if !field::is_prime(p) || max_dim == 0 {
        return Err(Error::Table("need a prime and a positive dimension".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(1..=max_dim.min(3));
        let c = rng.gen_range(2..=4usize);
        // ideal[j]: relations in degree j over words indexed base d.
        let mut ideal: Vec<Echelon> = vec![Echelon::new(p, 0), Echelon::new(p, d)];
        for j in 2..c {
            let width = d.pow(j as u32);
            let mut e = Echelon::new(p, width);
            let lower = d.pow(j as u32 - 1);
            for r in ideal[j - 1].rows() {
                for a in 0..d {
                    let mut right = vec![0u32; width];
                    let mut left = vec![0u32; width];
                    for (wi, &x) in r.iter().enumerate() {
                        right[wi * d + a] = x;
                        left[a * lower + wi] = x;
                    }
                    e.insert(&right);
                    e.insert(&left);
                }
            }
            let extra = rng.gen_range(0..=width);
            for _ in 0..extra {
                let v: Vec<u32> = (0..width).map(|_| rng.gen_range(0..p)).collect();
                e.insert(&v);
            }
            ideal.push(e);
        }
        // Standard words: non-pivot positions, degree by degree.
        let mut basis: Vec<(usize, usize)> = Vec::new();
        for j in 1..c {
            let width = d.pow(j as u32);
            for wi in 0..width {
                if !ideal[j].pivots().contains(&wi) {
                    basis.push((j, wi));
                }
            }
        }
        let dim = basis.len();
        if dim == 0 || dim > max_dim {
            continue;
        }
        let index = |j: usize, wi: usize| basis.iter().position(|&b| b == (j, wi));
        let mut products = Vec::with_capacity(dim * dim);
        for &(i, u) in &basis {
            for &(j, v) in &basis {
                if i + j >= c {
                    products.push(Vec::new());
                    continue;
                }
                let width = d.pow((i + j) as u32);
                let mut x = vec![0u32; width];
                x[u * d.pow(j as u32) + v] = 1;
                ideal[i + j].reduce(&mut x);
                let mut entry: Vec<(usize, u32)> = x
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a != 0)
                    .map(|(wi, &a)| (index(i + j, wi).expect("reduced word is standard"), a))
                    .collect();
                entry.sort_unstable();
                products.push(entry);
            }
        }
        let weights = basis.iter().map(|&(j, _)| j).collect();
        return SCTable::new(p, c, weights, products);
    }
}
