//! Abelian invariants via Smith normal form of the relation matrix.

use crate::error::{Error, Result};

use super::presentation::{Element, PcPresentation};

/// Cyclic decomposition of an abelian p-group: `basis[i]` has order
/// `invariants[i]` and the group is their direct product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    /// Prime powers, sorted descending.
    pub invariants: Vec<u64>,
    pub basis: Vec<Element>,
}

pub fn is_abelian(pres: &PcPresentation) -> bool {
    (0..pres.ngens()).all(|j| (0..j).all(|i| pres.comm_rel(j, i).is_identity()))
}

/// Elementary divisors of an abelian group, largest first. The trivial
/// group gives the empty list.
pub fn abelian_invariants(pres: &PcPresentation) -> Result<Vec<u64>> {
    Ok(abelian_decomposition(pres)?.invariants)
}

pub fn abelian_decomposition(pres: &PcPresentation) -> Result<AbelianDecomposition> {
    if !is_abelian(pres) {
        return Err(Error::NonAbelian);
    }
    let n = pres.ngens();
    let p = pres.prime() as i128;
    // Row i encodes g_i^p * (power word)^{-1} = 1.
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row = vec![0i128; n];
            row[i] = p;
            for (k, &e) in pres.power_rel(i).exps().iter().enumerate() {
                row[k] -= e as i128;
            }
            row
        })
        .collect();
    // Column transform V and its inverse W, kept in step.
    let mut w: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in m.iter().enumerate().skip(t) {
                for (c, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |(br, bc)| x.abs() < m[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((r, c)) = best else { break };
            m.swap(t, r);
            if c != t {
                for row in m.iter_mut() {
                    row.swap(t, c);
                }
                w.swap(t, c);
            }
            let piv = m[t][t];
            let mut clean = true;
            for r in t + 1..n {
                let q = m[r][t] / piv;
                if q != 0 {
                    for c in t..n {
                        m[r][c] -= q * m[t][c];
                    }
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..n {
                let q = m[t][c] / piv;
                if q != 0 {
                    // column c -= q * column t; then W row t += q * W row c
                    for row in m.iter_mut() {
                        row[c] -= q * row[t];
                    }
                    let wc = w[c].clone();
                    for (x, y) in w[t].iter_mut().zip(wc) {
                        *x += q * y;
                    }
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                break;
            }
        }
        diag.push(m[t][t].abs());
    }
    let order = pres.order_u128() as i128;
    let mut parts: Vec<(u64, Element)> = Vec::new();
    for (t, &d) in diag.iter().enumerate() {
        if d <= 1 {
            continue;
        }
        let mut e = pres.identity();
        for (k, &c) in w[t].iter().enumerate() {
            let c = c.rem_euclid(order) as u64;
            if c != 0 {
                e = pres.mul(&e, &pres.pow(&pres.generator(k), c));
            }
        }
        parts.push((d as u64, e));
    }
    parts.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(AbelianDecomposition {
        invariants: parts.iter().map(|x| x.0).collect(),
        basis: parts.into_iter().map(|x| x.1).collect(),
    })
}
