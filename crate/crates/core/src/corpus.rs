//! Test corpus: named small p-groups and complete lists of groups of small
//! order, generated as central extensions.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::Result;
use crate::pcgroup::{
    abelian_invariants, center, conjugacy_classes, derived_subgroup, frattini_subgroup,
    is_isomorphic_groups, lower_central_series, quotient_group, Element, PcPresentation,
};

fn build(text: String) -> PcPresentation {
    PcPresentation::parse(&text).expect("built-in presentation is valid")
}

/// Word `r^v` in generators `first.., first+1, ...` where generator
/// `first + j` stands for `r^{p^j}` and the chain has `len` members.
fn cyclic_word(p: u32, first: usize, len: usize, mut v: u64) -> String {
    let mut toks = Vec::new();
    for j in 0..len {
        let e = v % p as u64;
        v /= p as u64;
        if e != 0 {
            toks.push(format!("g{}^{}", first + j + 1, e));
        }
    }
    toks.join(" ")
}

/// `C_{p^k}`.
pub fn cyclic(p: u32, k: usize) -> PcPresentation {
    abelian(p, &[k])
}

/// `C_p^k`.
pub fn elementary_abelian(p: u32, k: usize) -> PcPresentation {
    abelian(p, &vec![1; k])
}

/// `C_{p^{k_1}} x C_{p^{k_2}} x ...`.
pub fn abelian(p: u32, ks: &[usize]) -> PcPresentation {
    let n: usize = ks.iter().sum();
    let mut text = format!("p {p}\nn {n}\n");
    let names: Vec<String> = ks.iter().map(|k| format!("C{}", (p as u64).pow(*k as u32))).collect();
    text.push_str(&format!("name {}\n", names.join("x")));
    let mut base = 0;
    for &k in ks {
        for j in 0..k.saturating_sub(1) {
            text.push_str(&format!("pow {} = g{}\n", base + j + 1, base + j + 2));
        }
        base += k;
    }
    build(text)
}

fn two_group_family(k: usize, name: &str, s_square: bool, twist: u64) -> PcPresentation {
    // g1 = s, g_{j+2} = r^{2^j}, r of order 2^{k-1}, r^s = r^twist.
    let m = k - 1;
    let modulus = 1u64 << m;
    let mut text = format!("p 2\nn {k}\nname {name}\n");
    if s_square {
        text.push_str(&format!("pow 1 = g{k}\n"));
    }
    for j in 0..m - 1 {
        text.push_str(&format!("pow {} = g{}\n", j + 2, j + 3));
    }
    for j in 0..m {
        // [r^{2^j}, s] = r^{-2^j} r^{2^j twist}
        let a = 1u64 << j;
        let v = (a * twist + modulus - a) % modulus;
        let w = cyclic_word(2, 1, m, v);
        if !w.is_empty() {
            text.push_str(&format!("comm {} 1 = {}\n", j + 2, w));
        }
    }
    build(text)
}

/// Dihedral group of order `2^k`, `k >= 3`.
pub fn dihedral(k: usize) -> PcPresentation {
    let modulus = 1u64 << (k - 1);
    two_group_family(k, &format!("D{}", 1u64 << k), false, modulus - 1)
}

/// Generalized quaternion group of order `2^k`, `k >= 3`.
pub fn quaternion(k: usize) -> PcPresentation {
    let modulus = 1u64 << (k - 1);
    two_group_family(k, &format!("Q{}", 1u64 << k), true, modulus - 1)
}

/// Semidihedral group of order `2^k`, `k >= 4`.
pub fn semidihedral(k: usize) -> PcPresentation {
    let modulus = 1u64 << (k - 1);
    two_group_family(k, &format!("SD{}", 1u64 << k), false, modulus / 2 - 1)
}

pub fn d8() -> PcPresentation {
    dihedral(3)
}

pub fn q8() -> PcPresentation {
    quaternion(3)
}

/// Heisenberg group of order `p^3` (exponent `p` for odd `p`).
pub fn heisenberg(p: u32) -> PcPresentation {
    build(format!("p {p}\nn 3\nname Heis{}\ncomm 2 1 = g3\n", p * p * p))
}

/// Extraspecial group of order `p^3` and exponent `p^2`:
/// `<a, b | a^{p^2}, b^p, a^b = a^{1+p}>`.
pub fn extraspecial_exp_p2(p: u32) -> PcPresentation {
    build(format!(
        "p {p}\nn 3\nname M{}\npow 1 = g3\ncomm 2 1 = g3^{}\n",
        p * p * p,
        p - 1
    ))
}

/// Looks up a named group: `C<m>`, `C<m>xC<m>...`, `D<m>`, `Q<m>`,
/// `SD<m>`, `Heis<p^3>`, `M<p^3>`.
pub fn named(name: &str) -> Option<PcPresentation> {
    fn log(p: u32, mut m: u64) -> Option<usize> {
        let mut k = 0;
        while m > 1 {
            if m % p as u64 != 0 {
                return None;
            }
            m /= p as u64;
            k += 1;
        }
        Some(k)
    }
    fn prime_of(m: u64) -> Option<u32> {
        (2..=m as u32).find(|d| m % *d as u64 == 0)
    }
    let num = |s: &str| s.parse::<u64>().ok();
    if let Some(rest) = name.strip_prefix("Heis") {
        let m = num(rest)?;
        let p = prime_of(m)?;
        return (log(p, m)? == 3).then(|| heisenberg(p));
    }
    if let Some(rest) = name.strip_prefix("SD") {
        let k = log(2, num(rest)?)?;
        return (k >= 4).then(|| semidihedral(k));
    }
    if let Some(rest) = name.strip_prefix('D') {
        let k = log(2, num(rest)?)?;
        return (k >= 3).then(|| dihedral(k));
    }
    if let Some(rest) = name.strip_prefix('Q') {
        let k = log(2, num(rest)?)?;
        return (k >= 3).then(|| quaternion(k));
    }
    if let Some(rest) = name.strip_prefix('M') {
        let m = num(rest)?;
        let p = prime_of(m)?;
        return (p > 2 && log(p, m)? == 3).then(|| extraspecial_exp_p2(p));
    }
    if name.starts_with('C') {
        let parts: Vec<u64> = name
            .split('x')
            .map(|s| s.strip_prefix('C').and_then(num))
            .collect::<Option<_>>()?;
        let p = prime_of(*parts.first()?)?;
        let ks: Vec<usize> = parts.iter().map(|&m| log(p, m)).collect::<Option<_>>()?;
        if ks.contains(&0) {
            return None;
        }
        let g = abelian(p, &ks).with_name(name);
        return Some(g);
    }
    None
}

/// Cheap isomorphism invariants used to bucket candidates before running
/// the isomorphism test.
fn bucket_key(g: &PcPresentation, caps: &Caps) -> Result<Vec<u64>> {
    let mut key = Vec::new();
    let q = quotient_group(g, &derived_subgroup(g))?;
    key.extend(abelian_invariants(&q)?);
    key.push(0);
    key.push(frattini_subgroup(g).rank() as u64);
    key.push(center(g, caps)?.rank() as u64);
    key.extend(lower_central_series(g).iter().map(|s| s.rank() as u64));
    key.push(0);
    let classes = conjugacy_classes(g, caps)?;
    key.push(classes.len() as u64);
    let mut prof: Vec<(u64, usize)> = classes
        .iter()
        .map(|c| (g.element_order(&c.rep), c.size))
        .collect();
    prof.sort();
    for (o, s) in prof {
        key.push(o);
        key.push(s as u64);
    }
    Ok(key)
}

/// All central extensions of `q` by a cyclic group of order `p` with the
/// new generator last.
fn central_extensions(q: &PcPresentation) -> Vec<PcPresentation> {
    let p = q.prime();
    let m = q.ngens();
    let n = m + 1;
    let widen = |e: &Element, tail: u8| -> Element {
        let mut v = e.exps().to_vec();
        v.push(tail);
        Element::from_exps(v)
    };
    let nrels = m + m * (m.saturating_sub(1)) / 2;
    let mut out = Vec::new();
    for tails in crate::field::all_vectors(p, nrels) {
        let mut b = PcPresentation::builder(p, n);
        let mut t = tails.iter();
        for i in 0..m {
            b.set_power(i, widen(q.power_rel(i), *t.next().unwrap() as u8));
        }
        for j in 0..m {
            for i in 0..j {
                b.set_comm(j, i, widen(q.comm_rel(j, i), *t.next().unwrap() as u8));
            }
        }
        if let Ok(g) = b.build() {
            out.push(g);
        }
    }
    out
}

/// Isomorphism class representatives of all groups of order `p^n`, in a
/// deterministic order, named `g<order>_<index>`.
pub fn groups_of_order(p: u32, n: usize, caps: &Caps) -> Result<Vec<PcPresentation>> {
    let mut reps: Vec<PcPresentation> = vec![PcPresentation::builder(p, 0).build()?];
    for _ in 0..n {
        let mut next: Vec<PcPresentation> = Vec::new();
        let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for q in &reps {
            for g in central_extensions(q) {
                let key = bucket_key(&g, caps)?;
                let bucket = buckets.entry(key).or_default();
                let mut known = false;
                for &i in bucket.iter() {
                    if is_isomorphic_groups(&next[i], &g, caps)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    bucket.push(next.len());
                    next.push(g);
                }
            }
        }
        reps = next;
    }
    let order = (p as u64).pow(n as u32);
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.with_name(format!("g{order}_{:02}", i + 1)))
        .collect())
}

/// The same group over a random pc sequence along the same series: each
/// generator `g_i` is replaced by `g_i^{a_i} u_i` with `a_i` a unit mod `p` and
/// `u_i` a random element of `<g_{i+1}, ..., g_n>`.
pub fn represent(pres: &PcPresentation, seed: u64) -> PcPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, n) = (pres.prime(), pres.ngens());
    let ys: Vec<Element> = (0..n)
        .map(|i| {
            let mut exps = vec![0u8; n];
            exps[i] = rng.gen_range(1..p) as u8;
            let head = Element::from_exps(exps);
            let tail = Element::from_exps(
                (0..n)
                    .map(|k| if k > i { rng.gen_range(0..p) as u8 } else { 0 })
                    .collect(),
            );
            pres.mul(&head, &tail)
        })
        .collect();
    // Coordinates over `ys`: strip the leading exponent depth by depth.
    let coords = |x: &Element| -> Element {
        let mut x = x.clone();
        let mut out = vec![0u8; n];
        for d in 0..n {
            let e = x.exps()[d] as u64;
            if e == 0 {
                continue;
            }
            let lead = ys[d].exps()[d] as u64;
            let c = e * crate::field::inv(lead as u32, p) as u64 % p as u64;
            out[d] = c as u8;
            x = pres.mul(&pres.inverse(&pres.pow(&ys[d], c)), &x);
        }
        debug_assert!(x.is_identity());
        Element::from_exps(out)
    };
    let mut b = PcPresentation::builder(p, n).name(pres.name());
    for i in 0..n {
        b.set_power(i, coords(&pres.pow(&ys[i], p as u64)));
        for j in 0..i {
            b.set_comm(i, j, coords(&pres.comm(&ys[i], &ys[j])));
        }
    }
    b.build().expect("re-presentation of a consistent group is consistent")
}
