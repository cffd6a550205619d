//! Bases adapted to the power filtration `A ⊇ A^2 ⊇ ...`.

use crate::algtable::SCTable;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};

/// Row spaces of `A^1, ..., A^level` in the given coordinates.
pub(crate) fn power_spaces<F>(p: u32, dim: usize, level: usize, mul: &F) -> Vec<Echelon>
where
    F: Fn(&[u32], &[u32]) -> Vec<u32>,
{
    let unit = |j: usize| -> Vec<u32> {
        let mut e = vec![0u32; dim];
        e[j] = 1;
        e
    };
    let mut first = Echelon::new(p, dim);
    for j in 0..dim {
        first.insert(&unit(j));
    }
    let mut spaces = vec![first];
    while spaces.len() < level {
        let prev = spaces.last().unwrap();
        let mut next = Echelon::new(p, dim);
        if prev.rank() > 0 {
            for r in prev.rows() {
                for j in 0..dim {
                    let v = mul(r, &unit(j));
                    if !field::is_zero(&v) {
                        next.insert(&v);
                    }
                }
            }
        }
        spaces.push(next);
    }
    spaces
}

/// Table of `A/A^level` over a basis adapted to the power filtration,
/// chosen deterministically from the input coordinates: layer `m` consists
/// of the reduced echelon rows of `A^m` whose pivots are not pivots of
/// `A^{m+1}`.
pub(crate) fn adapted_table<F>(p: u32, dim: usize, level: usize, mul: F) -> Result<SCTable>
where
    F: Fn(&[u32], &[u32]) -> Vec<u32>,
{
    if level < 2 {
        return Err(Error::Level(format!("level {level} is below 2")));
    }
    let spaces = power_spaces(p, dim, level, &mul);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut weights = Vec::new();
    for m in 1..level {
        let upper = &spaces[m];
        for (r, piv) in spaces[m - 1].rows().iter().zip(spaces[m - 1].pivots()) {
            if !upper.pivots().contains(piv) {
                rows.push(r.clone());
                weights.push(m);
            }
        }
    }
    let q = rows.len();
    let mut full = rows.clone();
    full.extend(spaces[level - 1].rows().iter().cloned());
    let inverse = field::invert(&full, p).ok_or_else(|| Error::Table("filtration basis is singular".into()))?;
    let mut products = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            if weights[a] + weights[b] >= level {
                products.push(Vec::new());
                continue;
            }
            let v = field::vec_mat(&mul(&rows[a], &rows[b]), &inverse, p);
            products.push(
                v[..q]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect(),
            );
        }
    }
    SCTable::new(p, level, weights, products)
}

/// [`adapted_table`] of a table's algebra at `level <= t.trunc()`.
pub(crate) fn filtered_quotient(t: &SCTable, level: usize) -> Result<SCTable> {
    if level > t.trunc() {
        return Err(Error::Level(format!(
            "level {level} exceeds the table truncation {}",
            t.trunc()
        )));
    }
    adapted_table(t.prime(), t.dim(), level, |x, y| t.mul_dense(x, y))
}
