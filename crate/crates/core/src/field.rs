//! Prime field arithmetic and row reduction over `F_p`.
//!
//! Coefficients are stored as `u32` values in `0..p`. The primes this crate
//! deals with are small (a few hundred at most), so products of two
//! coefficients always fit in a `u64` before reduction.

/// Returns `true` when `n` is a prime number.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; `a` must be nonzero mod `p`.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow(a, (p - 2) as u64, p)
}

/// Binomial coefficient `C(n, k)` reduced mod `p`, for small `n`.
pub fn binomial(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut num = 1u32;
    let mut den = 1u32;
    // Lucas' theorem keeps this valid when n >= p.
    let (mut n, mut k) = (n, k);
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        for t in 0..ki {
            num = mul(num, ni - t, p);
            den = mul(den, t + 1, p);
        }
        n /= p;
        k /= p;
    }
    mul(num, inv(den, p), p)
}

/// `y += c * x` over `F_p`.
#[inline]
pub fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = add(*yi, mul(c, xi, p), p);
        }
    }
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// An incrementally built row space in reduced row echelon form.
///
/// Each stored row has a leading one at its pivot column and zeros in the
/// pivot columns of every other row. Rows may optionally carry a
/// "combination" vector recording how they were formed from the inserted
/// vectors, which is what [`Echelon::insert_tracked`] and
/// [`Echelon::reduce_tracked`] use to solve linear systems and to read off
/// kernels.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u32>>,
    combos: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
            inserted: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` in place against the stored rows. Afterwards `v` is zero
    /// in every pivot column; for a fully reduced basis this is the
    /// lexicographically least element of the coset `v + rowspace`.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                axpy(v, neg(c, self.p), row, self.p);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero(&w)
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let combo = Vec::new();
        self.insert_with(v.to_vec(), combo).is_none()
    }

    /// Inserts `v` while tracking combinations. Each call is counted as one
    /// input vector; if `v` is dependent, the returned vector gives the
    /// kernel relation among inputs (coefficients indexed by insertion
    /// order) that it produced.
    pub fn insert_tracked(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        let mut combo = vec![0u32; self.inserted + 1];
        combo[self.inserted] = 1;
        self.insert_with(v.to_vec(), combo)
    }

    fn insert_with(&mut self, mut v: Vec<u32>, mut combo: Vec<u32>) -> Option<Vec<u32>> {
        let p = self.p;
        let tracked = !combo.is_empty();
        self.inserted += 1;
        for i in 0..self.rows.len() {
            let piv = self.pivots[i];
            let c = v[piv];
            if c != 0 {
                let nc = neg(c, p);
                axpy(&mut v, nc, &self.rows[i], p);
                if tracked {
                    let src = &self.combos[i];
                    if combo.len() < src.len() {
                        combo.resize(src.len(), 0);
                    }
                    axpy(&mut combo[..src.len()], nc, src, p);
                }
            }
        }
        let lead = match v.iter().position(|&c| c != 0) {
            Some(l) => l,
            None => return Some(combo),
        };
        let s = inv(v[lead], p);
        for x in v.iter_mut() {
            *x = mul(*x, s, p);
        }
        for x in combo.iter_mut() {
            *x = mul(*x, s, p);
        }
        // Clear the new pivot column from the existing rows.
        for i in 0..self.rows.len() {
            let c = self.rows[i][lead];
            if c != 0 {
                let nc = neg(c, p);
                axpy(&mut self.rows[i], nc, &v, p);
                if tracked {
                    let target = &mut self.combos[i];
                    if target.len() < combo.len() {
                        target.resize(combo.len(), 0);
                    }
                    axpy(&mut target[..combo.len()], nc, &combo, p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        if tracked {
            self.combos.insert(pos, combo);
        }
        None
    }

    /// Reduces `v` and returns the residue together with the combination of
    /// tracked inputs that was subtracted, i.e. `v = residue + Σ c_i input_i`.
    pub fn reduce_tracked(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut r = v.to_vec();
        let mut coeffs = vec![0u32; self.inserted];
        for i in 0..self.rows.len() {
            let c = r[self.pivots[i]];
            if c != 0 {
                axpy(&mut r, neg(c, p), &self.rows[i], p);
                let src = &self.combos[i];
                axpy(&mut coeffs[..src.len()], c, src, p);
            }
        }
        (r, coeffs)
    }
}

/// Square matrix inverse over `F_p` (rows are vectors). Returns `None` when
/// the matrix is singular.
pub fn invert(rows: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = rows.len();
    let mut a: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.resize(2 * n, 0);
            row[n + i] = 1;
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let s = inv(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = mul(*x, s, p);
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let c = neg(row[col], p);
                axpy(row, c, &pivot_row, p);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix: `v * m` where `m` is given by rows.
pub fn vec_mat(v: &[u32], m: &[Vec<u32>], p: u32) -> Vec<u32> {
    let width = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u32; width];
    for (&c, row) in v.iter().zip(m) {
        axpy(&mut out, c, row, p);
    }
    out
}

pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    a.iter().map(|r| vec_mat(r, b, p)).collect()
}

/// Enumerates every vector of `F_p^len` in lexicographic order.
pub fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    let mut cur = vec![0u32; len];
    let mut emitted = 0u128;
    std::iter::from_fn(move || {
        if emitted >= total {
            return None;
        }
        let out = cur.clone();
        emitted += 1;
        for i in (0..len).rev() {
            cur[i] += 1;
            if cur[i] < p {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    })
}
