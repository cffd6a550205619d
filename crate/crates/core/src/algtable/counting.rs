//! Counting maps on quotients of the augmentation ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{self, Echelon};
use crate::jennings::jennings_series;
use crate::pcgroup::{class_data, PcPresentation};

use super::build::element_vector;
use super::table::SCTable;

const SAMPLES: usize = 32;
const SEED: u64 = 0x5eed;

/// `true` if every coefficient of weight `< q` vanishes.
fn in_power(t: &SCTable, x: &[u32], q: usize) -> bool {
    x.iter().zip(t.weights()).all(|(&c, &w)| c == 0 || w >= q)
}

/// All vectors supported on `support` (indices into the basis).
fn combinations(p: u32, d: usize, support: &[usize]) -> impl Iterator<Item = Vec<u32>> + '_ {
    field::all_vectors(p, support.len()).into_iter().map(move |c| {
        let mut x = vec![0u32; d];
        for (&i, &a) in support.iter().zip(&c) {
            x[i] = a;
        }
        x
    })
}

/// Number of classes `x + I^{n+m}` in `I^n/I^{n+m}` with
/// `x^{p^l} ∈ I^{n p^l + m}`. Powers `I^q` with `q >= trunc` are zero in the
/// table algebra.
pub fn phi_count(t: &SCTable, n: usize, m: usize, l: u32, caps: &Caps) -> Result<u128> {
    if n == 0 || m == 0 {
        return Err(Error::Level("n and m must be positive".into()));
    }
    if n + m > t.trunc() {
        return Err(Error::Level(format!(
            "I^{n}/I^{} is not visible in a table truncated at {}",
            n + m,
            t.trunc()
        )));
    }
    let p = t.prime();
    let d = t.dim();
    let pl = (p as u64)
        .checked_pow(l)
        .ok_or_else(|| Error::Level("power exponent too large".into()))?;
    let target = (n as u64).saturating_mul(pl).saturating_add(m as u64) as usize;
    let support: Vec<usize> = (0..d)
        .filter(|&i| t.weights()[i] >= n && t.weights()[i] < n + m)
        .collect();
    let size = (p as u128).checked_pow(support.len() as u32).unwrap_or(u128::MAX);
    caps.check("phi enumeration", size, caps.counting)?;
    let maps_in = |x: &[u32]| -> bool {
        let y = if l == 0 { x.to_vec() } else { t.pow_dense(x, pl) };
        in_power(t, &y, target)
    };
    let mut count = 0u128;
    let mut reps = Vec::new();
    for x in combinations(p, d, &support) {
        let hit = maps_in(&x);
        if hit {
            count += 1;
        }
        if reps.len() < SAMPLES {
            reps.push((x, hit));
        }
    }
    // Recheck the map on other representatives of sampled cosets.
    let tail: Vec<usize> = (0..d).filter(|&i| t.weights()[i] >= n + m).collect();
    if !tail.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for (x, hit) in reps {
            let mut y = x.clone();
            for &i in &tail {
                y[i] = (y[i] + rng.gen_range(0..p)) % p;
            }
            if maps_in(&y) != hit {
                return Err(Error::Hypothesis(
                    "power map is not constant on a sampled coset".into(),
                ));
            }
        }
    }
    Ok(count)
}

/// Number of `x ∈ Z(kG) ∩ I^n` with `x^p = 0`, computed in a full table.
pub fn psi_count(pres: &PcPresentation, t: &SCTable, n: usize, caps: &Caps) -> Result<u128> {
    if n == 0 {
        return Err(Error::Level("n must be positive".into()));
    }
    let jd = jennings_series(pres, caps)?;
    if t.trunc() < jd.nil_index {
        return Err(Error::Level(format!(
            "psi needs the full table (level {}), got level {}",
            jd.nil_index,
            t.trunc()
        )));
    }
    let p = t.prime();
    let d = t.dim();
    let cd = class_data(pres, caps)?;
    // Augmentation-zero part of the centre: class sums of non-central
    // classes and z - 1 for central z.
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for members in &cd.members {
        if members.len() == 1 && members[0].is_identity() {
            continue;
        }
        let mut v = vec![0u32; d];
        for x in members {
            field::axpy(&mut v, 1, &element_vector(t, pres, &jd, x)?, p);
        }
        gens.push(v);
    }
    // Subspace of span(gens) lying in I^n: kill the coordinates of weight < n.
    let low: Vec<usize> = (0..d).filter(|&i| t.weights()[i] < n).collect();
    let mut ech = Echelon::new(p, low.len());
    let mut basis: Vec<Vec<u32>> = Vec::new();
    for v in &gens {
        let proj: Vec<u32> = low.iter().map(|&i| v[i]).collect();
        if let Some(rel) = ech.insert_tracked(&proj) {
            let mut w = vec![0u32; d];
            for (j, &c) in rel.iter().enumerate() {
                if c != 0 {
                    field::axpy(&mut w, c, &gens[j], p);
                }
            }
            basis.push(w);
        }
    }
    let size = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    caps.check("psi enumeration", size, caps.counting)?;
    let mut count = 0u128;
    for c in field::all_vectors(p, basis.len()) {
        let mut x = vec![0u32; d];
        for (b, &a) in basis.iter().zip(&c) {
            if a != 0 {
                field::axpy(&mut x, a, b, p);
            }
        }
        if field::is_zero(&t.pow_dense(&x, p as u64)) {
            count += 1;
        }
    }
    Ok(count)
}
