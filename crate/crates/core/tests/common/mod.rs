#![allow(dead_code)]

//! Brute-force oracles over the full group algebra `kG`, indexed by the
//! pc normal-form enumeration of `G`. Nothing here touches Jennings bases
//! or structure-constant tables.

use mipkit::field::{self, Echelon};
use mipkit::pcgroup::{element_at, element_index};
use mipkit::{Caps, Element, PcPresentation};

pub struct GroupAlgebra {
    pub p: u32,
    pub order: usize,
    pub elems: Vec<Element>,
    /// `mul[a * order + b]` is the index of `elems[a] * elems[b]`.
    pub mul: Vec<usize>,
    pub inv: Vec<usize>,
}

impl GroupAlgebra {
    pub fn new(pres: &PcPresentation) -> GroupAlgebra {
        let p = pres.prime();
        let order = pres.order_u128() as usize;
        let elems: Vec<Element> = (0..order).map(|i| element_at(p, pres.ngens(), i)).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                mul.push(element_index(p, &pres.mul(a, b)));
            }
        }
        let inv = (0..order)
            .map(|a| (0..order).find(|&b| mul[a * order + b] == 0).unwrap())
            .collect();
        GroupAlgebra {
            p,
            order,
            elems,
            mul,
            inv,
        }
    }

    pub fn gmul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    let k = self.gmul(i, j);
                    v[k] = field::add(v[k], field::mul(a, b, self.p), self.p);
                }
            }
        }
        v
    }

    pub fn pow(&self, x: &[u32], e: u64) -> Vec<u32> {
        let mut r = vec![0u32; self.order];
        r[0] = 1;
        for _ in 0..e {
            r = self.mul(&r, x);
            if field::is_zero(&r) {
                break;
            }
        }
        r
    }

    /// `g - 1` for the element with index `g`.
    pub fn bar(&self, g: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        v[g] = field::add(v[g], 1, self.p);
        v[0] = field::sub(v[0], 1, self.p);
        v
    }

    /// Spanning rows of `I^1, I^2, ...` up to and including the first zero
    /// power.
    pub fn aug_powers(&self) -> Vec<Vec<Vec<u32>>> {
        let gens: Vec<Vec<u32>> = (1..self.order).map(|g| self.bar(g)).collect();
        let mut powers = vec![gens.clone()];
        loop {
            let last = powers.last().unwrap();
            if last.is_empty() {
                return powers;
            }
            let mut ech = Echelon::new(self.p, self.order);
            let mut rows = Vec::new();
            for x in last {
                for g in &gens {
                    let y = self.mul(x, g);
                    if ech.insert(&y) {
                        rows.push(y);
                    }
                }
            }
            powers.push(rows);
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order)
                .map(|h| self.gmul(self.gmul(self.inv[h], g), h))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Indices of the elements of `G'`, by closing the commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut set = vec![false; self.order];
        set[0] = true;
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.gmul(
                    self.gmul(self.inv[a], self.inv[b]),
                    self.gmul(a, b),
                );
                set[c] = true;
            }
        }
        loop {
            let cur: Vec<usize> = (0..self.order).filter(|&i| set[i]).collect();
            let mut grew = false;
            for &a in &cur {
                for &b in &cur {
                    let c = self.gmul(a, b);
                    if !set[c] {
                        set[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return cur;
            }
        }
    }
}

pub fn echelon_of(p: u32, width: usize, rows: &[Vec<u32>]) -> Echelon {
    let mut e = Echelon::new(p, width);
    for r in rows {
        e.insert(r);
    }
    e
}

/// Brute-force count of classes `x + I^{n+m}` in `I^n/I^{n+m}` with
/// `x^{p^l} ∈ I^{n p^l + m}`, or `None` if the enumeration exceeds `limit`.
pub fn phi_oracle(ga: &GroupAlgebra, powers: &[Vec<Vec<u32>>], n: usize, m: usize, l: u32, limit: u64) -> Option<u64> {
    let p = ga.p;
    let power = |k: usize| -> Echelon {
        let rows = powers.get(k - 1).cloned().unwrap_or_default();
        echelon_of(p, ga.order, &rows)
    };
    let mut ech = power(n + m);
    let mut reps = Vec::new();
    for r in &powers[n - 1] {
        if ech.insert(r) {
            reps.push(r.clone());
        }
    }
    let size = (p as u64).checked_pow(reps.len() as u32)?;
    if size > limit {
        return None;
    }
    let pl = (p as u64).pow(l);
    let target = power(n * pl as usize + m);
    let mut count = 0;
    for c in field::all_vectors(p, reps.len()) {
        let mut x = vec![0u32; ga.order];
        for (r, &a) in reps.iter().zip(&c) {
            if a != 0 {
                field::axpy(&mut x, a, r, p);
            }
        }
        if target.contains(&ga.pow(&x, pl)) {
            count += 1;
        }
    }
    Some(count)
}

/// Brute-force count of `x ∈ Z(kG) ∩ I^n` with `x^p = 0`, enumerating the
/// span of the class sums.
pub fn psi_oracle(ga: &GroupAlgebra, powers: &[Vec<Vec<u32>>], n: usize, limit: u64) -> Option<u64> {
    let p = ga.p;
    let classes = ga.conjugacy_classes();
    let size = (p as u64).checked_pow(classes.len() as u32)?;
    if size > limit {
        return None;
    }
    let sums: Vec<Vec<u32>> = classes
        .iter()
        .map(|c| {
            let mut v = vec![0u32; ga.order];
            for &g in c {
                v[g] = 1;
            }
            v
        })
        .collect();
    let rows = powers.get(n - 1).cloned().unwrap_or_default();
    let ideal = echelon_of(p, ga.order, &rows);
    let mut count = 0;
    for c in field::all_vectors(p, sums.len()) {
        let mut x = vec![0u32; ga.order];
        for (s, &a) in sums.iter().zip(&c) {
            if a != 0 {
                field::axpy(&mut x, a, s, p);
            }
        }
        if ideal.contains(&x) && field::is_zero(&ga.pow(&x, p as u64)) {
            count += 1;
        }
    }
    Some(count)
}

/// `dim kG/I` with `I` spanned by `(g - 1)(n - 1)`, `n ∈ G'`.
pub fn small_ring_dim(ga: &GroupAlgebra) -> usize {
    let derived = ga.derived_subgroup();
    let mut ech = Echelon::new(ga.p, ga.order);
    for g in 0..ga.order {
        for &n in &derived {
            ech.insert(&ga.mul(&ga.bar(g), &ga.bar(n)));
        }
    }
    ga.order - ech.rank()
}

/// All corpus groups of order `p^n`.
pub fn corpus(p: u32, n: usize) -> Vec<PcPresentation> {
    mipkit::corpus::groups_of_order(p, n, &Caps::default()).expect("corpus builds")
}
