//! Canonical forms of quotients `A/A^n` of nilpotent algebras given by
//! structure-constant tables, an independent isomorphism oracle, and test
//! generators.

mod adapted;
mod oracle;
mod random;
mod search;

use sha2::{Digest, Sha256};

use crate::algtable::SCTable;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};

pub use oracle::iso_oracle;
pub use random::{basis_change, random_filtered_basis_change, random_nilpotent_algebra};

use adapted::{adapted_table, filtered_quotient};
use search::{encode_levels, search_level, Quotients};

pub const CERT_HEADER: &str = "mipkit-canon 1";

/// Canonical form of `A/A^n`: two algebras have equal certificates at level
/// `n` exactly when their quotients by the `n`-th power are isomorphic.
#[derive(Clone, Debug)]
pub struct CanonCertificate {
    pub level: usize,
    /// The quotient over its canonical basis.
    pub table: SCTable,
    /// Order of the automorphism group of the quotient (saturating).
    pub aut_order: u128,
}

impl CanonCertificate {
    pub fn to_bytes(&self) -> Vec<u8> {
        format!("{CERT_HEADER}\nlevel {}\n{}", self.level, self.table.to_sct()).into_bytes()
    }

    /// Hex SHA-256 of [`CanonCertificate::to_bytes`].
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl PartialEq for CanonCertificate {
    fn eq(&self, other: &Self) -> bool {
        self.to_bytes() == other.to_bytes()
    }
}

impl Eq for CanonCertificate {}

fn gl_order(p: u32, d: usize) -> u128 {
    let q = p as u128;
    let qd = q.saturating_pow(d as u32);
    (0..d).fold(1u128, |acc, i| acc.saturating_mul(qd - q.saturating_pow(i as u32)))
}

fn with_trunc(t: &SCTable, level: usize) -> Result<SCTable> {
    let d = t.dim();
    let products = (0..d * d).map(|ij| t.product(ij / d, ij % d).to_vec()).collect();
    SCTable::new(t.prime(), level, t.weights().to_vec(), products)
}

/// Canonical table from a closure basis (in `A/A^{level}` coordinates).
fn canonical_table(tab: &SCTable, basis: &[Vec<u32>], level: usize) -> Result<SCTable> {
    let p = tab.prime();
    let mut solver = Echelon::new(p, tab.dim());
    for b in basis {
        solver.insert_tracked(b);
    }
    let lift = |c: &[u32]| -> Vec<u32> {
        let mut v = vec![0u32; tab.dim()];
        for (b, &a) in basis.iter().zip(c) {
            if a != 0 {
                field::axpy(&mut v, a, b, p);
            }
        }
        v
    };
    adapted_table(p, basis.len(), level, |x, y| {
        let prod = tab.mul_dense(&lift(x), &lift(y));
        let (res, coeffs) = solver.reduce_tracked(&prod);
        debug_assert!(field::is_zero(&res));
        let mut c = coeffs;
        c.resize(basis.len(), 0);
        c
    })
}

/// Certificates of `A/A^k` for `k = 2..=n`.
pub fn canonical_forms(t: &SCTable, n: usize, caps: &Caps) -> Result<Vec<CanonCertificate>> {
    if n < 2 || n > t.trunc() {
        return Err(Error::Level(format!(
            "level {n} outside 2..={}",
            t.trunc()
        )));
    }
    let p = t.prime();
    let filtered = filtered_quotient(t, n)?;
    let q = Quotients::new(&filtered)?;
    let d = q.d;
    let mut certs = vec![CanonCertificate {
        level: 2,
        table: SCTable::new(p, 2, vec![1; d], vec![Vec::new(); d * d])?,
        aut_order: gl_order(p, d),
    }];
    let mut seeds: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); d]];
    let mut nodes = 0u64;
    for k in 2..n {
        if q.layer_dim(k) == 0 {
            // A^k = 0: every further quotient is the same algebra.
            let last = certs.last().unwrap().clone();
            certs.push(CanonCertificate {
                level: k + 1,
                table: with_trunc(&last.table, k + 1)?,
                aut_order: last.aut_order,
            });
            continue;
        }
        let res = search_level(&q, k, &seeds, &mut nodes, caps.orbit)?;
        let table = canonical_table(&q.tabs[k + 1], &res.basis, k + 1)?;
        let free = (p as u128).saturating_pow((d * q.layer_dim(k)) as u32);
        certs.push(CanonCertificate {
            level: k + 1,
            table,
            aut_order: (res.ties.len() as u128).saturating_mul(free),
        });
        seeds = res.ties;
    }
    Ok(certs)
}

/// Certificate of `A/A^n`.
pub fn canonical_form(t: &SCTable, n: usize, caps: &Caps) -> Result<CanonCertificate> {
    Ok(canonical_forms(t, n, caps)?.pop().unwrap())
}

/// Same certificate as [`canonical_form`], computed by enumerating every
/// generating tuple modulo `A^{n-1}` and comparing the level encodings in
/// order. Only feasible for very small algebras.
pub fn canonical_form_exhaustive(t: &SCTable, n: usize, caps: &Caps) -> Result<CanonCertificate> {
    if n < 2 || n > t.trunc() {
        return Err(Error::Level(format!("level {n} outside 2..={}", t.trunc())));
    }
    let p = t.prime();
    let filtered = filtered_quotient(t, n)?;
    let q = Quotients::new(&filtered)?;
    let d = q.d;
    let last_nonzero = (2..n).rev().find(|&k| q.layer_dim(k) != 0);
    let Some(kmax) = last_nonzero else {
        return Ok(CanonCertificate {
            level: n,
            table: SCTable::new(p, n, vec![1; d], vec![Vec::new(); d * d])?,
            aut_order: gl_order(p, d),
        });
    };
    // Tuples modulo A^{kmax}: coordinates of layers 1..kmax-1.
    let width = q.offs[kmax - 1];
    let space = (p as u128).saturating_pow((width * d) as u32);
    caps.check("exhaustive canonical search", space, caps.orbit)?;
    let mut best: Option<(Vec<Vec<u32>>, Vec<Vec<u32>>)> = None;
    let mut count = 0u128;
    for flat in field::all_vectors(p, width * d) {
        let tuple: Vec<Vec<u32>> = flat.chunks(width).map(|c| c.to_vec()).collect();
        let mut ech = Echelon::new(p, d);
        if !tuple.iter().all(|x| ech.insert(&x[..d])) {
            continue;
        }
        let (encs, basis) = encode_levels(&q, kmax + 1, &tuple);
        match &best {
            Some((b, _)) if encs > *b => {}
            Some((b, _)) if encs == *b => count += 1,
            _ => {
                best = Some((encs, basis));
                count = 1;
            }
        }
    }
    let (_, basis) = best.expect("a generating tuple exists");
    let table = canonical_table(&q.tabs[kmax + 1], &basis, kmax + 1)?;
    let free = (p as u128).saturating_pow((d * q.layer_dim(kmax)) as u32);
    Ok(CanonCertificate {
        level: n,
        table: with_trunc(&table, n)?,
        aut_order: count.saturating_mul(free),
    })
}


#[cfg(test)]
mod oracle_tests {
    use super::*;
    use crate::algtable::build_aug_table;
    use crate::corpus;

    #[test]
    fn oracle_basics() {
        let caps = Caps::default();
        let c4 = build_aug_table(&corpus::cyclic(2, 2), 4, &caps).unwrap();
        let v4 = build_aug_table(&corpus::elementary_abelian(2, 2), 4, &caps).unwrap();
        assert!(iso_oracle(&c4, &c4, &caps).unwrap());
        assert!(!iso_oracle(&c4, &v4, &caps).unwrap());
        let d8 = build_aug_table(&corpus::d8(), 3, &caps).unwrap();
        let q8 = build_aug_table(&corpus::q8(), 3, &caps).unwrap();
        assert!(!iso_oracle(&d8, &q8, &caps).unwrap());
        for seed in 0..5 {
            assert!(iso_oracle(&d8, &random_filtered_basis_change(&d8, seed), &caps).unwrap());
        }
    }

    #[test]
    fn certificates_match_oracle_on_random_algebras() {
        let caps = Caps::default();
        for p in [2, 3] {
            let tables: Vec<SCTable> = (0..30)
                .map(|s| random_nilpotent_algebra(p, 5, s).unwrap())
                .collect();
            let certs: Vec<CanonCertificate> = tables
                .iter()
                .map(|t| canonical_form(t, t.trunc(), &caps).unwrap())
                .collect();
            for (i, t) in tables.iter().enumerate() {
                for seed in 0..3 {
                    let u = random_filtered_basis_change(t, seed);
                    assert_eq!(canonical_form(&u, u.trunc(), &caps).unwrap(), certs[i]);
                }
                for j in 0..i {
                    if tables[j].trunc() != t.trunc() {
                        continue;
                    }
                    let same = certs[i] == certs[j];
                    assert_eq!(same, iso_oracle(t, &tables[j], &caps).unwrap(), "p={p} {i} {j}");
                }
            }
        }
    }
}
