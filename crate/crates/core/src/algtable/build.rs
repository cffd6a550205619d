//! Construction of `I(kG)/I(kG)^s` over the Jennings basis by rewriting
//! products of weighted generators.

use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field;
use crate::jennings::{jennings_series, JenningsData};
use crate::pcgroup::{Element, PcPresentation};

use super::table::{normalize, SCTable, Sparse};

/// Jennings monomials of weight `< s` (including the empty monomial),
/// sorted by weight and then with larger exponent tuples first, so that
/// `u_1` precedes `u_2`.
pub(crate) fn jennings_monomials(p: u32, weights: &[usize], s: usize, caps: &Caps) -> Result<Vec<Vec<u8>>> {
    fn rec(
        p: u8,
        weights: &[usize],
        s: usize,
        k: usize,
        cur: &mut Vec<u8>,
        w: usize,
        out: &mut Vec<Vec<u8>>,
        caps: &Caps,
    ) -> Result<()> {
        if k == weights.len() {
            out.push(cur.clone());
            caps.check("table basis", out.len() as u128, caps.counting)?;
            return Ok(());
        }
        let mut a = 0u8;
        while a < p && w + a as usize * weights[k] < s {
            cur[k] = a;
            rec(p, weights, s, k + 1, cur, w + a as usize * weights[k], out, caps)?;
            a += 1;
        }
        cur[k] = 0;
        Ok(())
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; weights.len()];
    rec(p as u8, weights, s, 0, &mut cur, 0, &mut out, caps)?;
    let weight = |a: &Vec<u8>| -> usize { a.iter().zip(weights).map(|(&x, &w)| x as usize * w).sum() };
    out.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| b.cmp(a)));
    Ok(out)
}

/// `overline{g} = g - 1` for `g = prod_k u_k^{c_k}`:
/// `sum_{0 != tau <= c} prod_k binom(c_k, tau_k) u_k^{tau_k}`, keeping
/// monomials present in `index`.
pub(crate) fn expand_normal_form(p: u32, c: &[u8], index: &HashMap<Vec<u8>, usize>) -> Sparse {
    fn rec(
        p: u32,
        c: &[u8],
        k: usize,
        tau: &mut Vec<u8>,
        coef: u32,
        index: &HashMap<Vec<u8>, usize>,
        out: &mut Vec<(usize, u32)>,
    ) {
        if k == c.len() {
            if tau.iter().any(|&t| t != 0) {
                if let Some(&i) = index.get(tau.as_slice()) {
                    out.push((i, coef));
                }
            }
            return;
        }
        for t in 0..=c[k] {
            tau[k] = t;
            let b = field::binomial(c[k] as u32, t as u32, p);
            if b != 0 {
                rec(p, c, k + 1, tau, field::mul(coef, b, p), index, out);
            }
        }
        tau[k] = 0;
    }
    let mut out = Vec::new();
    let mut tau = vec![0u8; c.len()];
    rec(p, c, 0, &mut tau, 1, index, &mut out);
    normalize(out, p)
}

enum Memo {
    Todo,
    Busy,
    Done(Sparse),
}

/// Rewriting system for right multiplication of Jennings monomials by
/// weighted generators. Index 0 is the unit monomial.
struct Rewriter {
    p: u32,
    n: usize,
    gen_weight: Vec<usize>,
    monos: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    /// `overline{u_k^p}`.
    power: Vec<Sparse>,
    /// `comm[t][k] = overline{[u_t, u_k]}` for `k < t`.
    comm: Vec<Vec<Sparse>>,
    memo: Vec<Memo>,
}

impl Rewriter {
    fn new(pres: &PcPresentation, jd: &JenningsData, s: usize, caps: &Caps) -> Result<Rewriter> {
        let p = pres.prime();
        let gen_weight = jd.weights();
        let n = gen_weight.len();
        let monos = jennings_monomials(p, &gen_weight, s, caps)?;
        let index: HashMap<Vec<u8>, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let gens: Vec<&Element> = jd.weighted_gens.iter().map(|(g, _)| g).collect();
        let power = gens
            .iter()
            .map(|u| {
                let c = jd.jennings_exponents(pres, &pres.pow(u, p as u64));
                expand_normal_form(p, &c, &index)
            })
            .collect();
        let comm = (0..n)
            .map(|t| {
                (0..t)
                    .map(|k| {
                        let c = jd.jennings_exponents(pres, &pres.comm(gens[t], gens[k]));
                        expand_normal_form(p, &c, &index)
                    })
                    .collect()
            })
            .collect();
        let memo = (0..monos.len() * n).map(|_| Memo::Todo).collect();
        Ok(Rewriter {
            p,
            n,
            gen_weight,
            monos,
            index,
            power,
            comm,
            memo,
        })
    }

    fn lookup(&self, alpha: &[u8]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// `M * u_k` for the monomial with index `m`.
    fn times_gen(&mut self, m: usize, k: usize) -> Result<Sparse> {
        let slot = m * self.n + k;
        match &self.memo[slot] {
            Memo::Done(v) => return Ok(v.clone()),
            Memo::Busy => {
                return Err(Error::Table("rewriting of a product did not terminate".into()))
            }
            Memo::Todo => {}
        }
        self.memo[slot] = Memo::Busy;
        let alpha = self.monos[m].clone();
        let last = alpha.iter().rposition(|&a| a != 0);
        let p = self.p;
        let result = match last {
            Some(t) if t > k => {
                // M = M'' u_t and u_t u_k = u_k u_t + (1 + u_k + u_t + u_k u_t) C.
                let mut shorter = alpha.clone();
                shorter[t] -= 1;
                let mpp = self.lookup(&shorter).expect("prefix of a basis monomial");
                let x = self.times_gen(mpp, k)?;
                let term1 = self.vec_times_gen(&x, t)?;
                let mut v = vec![(mpp, 1), (m, 1)];
                v.extend(x.iter().copied());
                v.extend(term1.iter().copied());
                let v = normalize(v, p);
                let c = self.comm[t][k].clone();
                let mut out = term1;
                out.extend(self.vec_times_vec(&v, &c)?);
                normalize(out, p)
            }
            Some(t) if t == k && alpha[k] as u32 + 1 == p => {
                // M u_k = M'' u_k^p with M'' free of u_k.
                let mut shorter = alpha.clone();
                shorter[k] = 0;
                let mpp = self.lookup(&shorter).expect("prefix of a basis monomial");
                let pk = self.power[k].clone();
                self.vec_times_vec(&vec![(mpp, 1)], &pk)?
            }
            _ => {
                let mut longer = alpha;
                longer[k] += 1;
                match self.lookup(&longer) {
                    Some(i) => vec![(i, 1)],
                    None => Vec::new(),
                }
            }
        };
        debug_assert!(result.iter().all(|&(i, _)| i != 0));
        self.memo[slot] = Memo::Done(result.clone());
        Ok(result)
    }

    fn vec_times_gen(&mut self, v: &[(usize, u32)], k: usize) -> Result<Sparse> {
        let mut out = Vec::new();
        for &(m, c) in v {
            for (i, d) in self.times_gen(m, k)? {
                out.push((i, field::mul(c, d, self.p)));
            }
        }
        Ok(normalize(out, self.p))
    }

    fn vec_times_mono(&mut self, v: &[(usize, u32)], b: usize) -> Result<Sparse> {
        let mut cur = v.to_vec();
        let letters = self.monos[b].clone();
        for (j, &a) in letters.iter().enumerate() {
            for _ in 0..a {
                if cur.is_empty() {
                    return Ok(cur);
                }
                cur = self.vec_times_gen(&cur, j)?;
            }
        }
        Ok(cur)
    }

    fn vec_times_vec(&mut self, v: &[(usize, u32)], w: &[(usize, u32)]) -> Result<Sparse> {
        let mut out = Vec::new();
        for &(b, c) in w {
            for (i, d) in self.vec_times_mono(v, b)? {
                out.push((i, field::mul(c, d, self.p)));
            }
        }
        Ok(normalize(out, self.p))
    }

    fn mono_weight(&self, m: usize) -> usize {
        self.monos[m]
            .iter()
            .zip(&self.gen_weight)
            .map(|(&a, &w)| a as usize * w)
            .sum()
    }
}

/// Builds the structure-constant table of `I(kG)/I(kG)^s`.
pub fn build_aug_table(pres: &PcPresentation, s: usize, caps: &Caps) -> Result<SCTable> {
    let jd = jennings_series(pres, caps)?;
    build_aug_table_with(pres, &jd, s, caps)
}

pub fn build_aug_table_with(
    pres: &PcPresentation,
    jd: &JenningsData,
    s: usize,
    caps: &Caps,
) -> Result<SCTable> {
    if s < 2 {
        return Err(Error::Level(format!("truncation level {s} is below 2")));
    }
    let mut rw = Rewriter::new(pres, jd, s, caps)?;
    let total = rw.monos.len();
    let d = total - 1;
    caps.check("table products", (d * d) as u128, caps.counting)?;
    let weights: Vec<usize> = (1..total).map(|m| rw.mono_weight(m)).collect();
    let mut products = vec![Vec::new(); d * d];
    for i in 1..total {
        let wi = weights[i - 1];
        // row[j] = e_i * e_j, built letter by letter from a shorter prefix.
        let mut row: Vec<Option<Sparse>> = vec![None; total];
        row[0] = Some(vec![(i, 1)]);
        for j in 1..total {
            if wi + weights[j - 1] >= s {
                continue;
            }
            let alpha = &rw.monos[j];
            let t = alpha.iter().rposition(|&a| a != 0).unwrap();
            let mut prefix = alpha.clone();
            prefix[t] -= 1;
            let jp = rw.lookup(&prefix).expect("prefix of a basis monomial");
            let base = row[jp].clone().expect("prefix product computed earlier");
            let v = rw.vec_times_gen(&base, t)?;
            products[(i - 1) * d + (j - 1)] = v.iter().map(|&(k, c)| (k - 1, c)).collect();
            row[j] = Some(v);
        }
    }
    let labels = rw.monos[1..].to_vec();
    let table = SCTable::new(pres.prime(), s, weights, products)?;
    Ok(table.with_labels(labels, Some(pres.name().to_string())))
}

/// Rebuilds the table at a higher level and checks that it restricts to
/// the old one.
pub fn extend_table(pres: &PcPresentation, old: &SCTable, s: usize, caps: &Caps) -> Result<SCTable> {
    if s <= old.trunc() {
        return Err(Error::Level(format!(
            "new level {s} does not exceed the current level {}",
            old.trunc()
        )));
    }
    let new = build_aug_table(pres, s, caps)?;
    if new.restrict(old.trunc())? != *old {
        return Err(Error::Mismatch("the old table was not built from this group".into()));
    }
    Ok(new)
}

/// `overline{g}` in the table basis, obtained by multiplying out the pc
/// normal form of `g` with `overline{xy} = x̄ȳ + x̄ + ȳ`.
pub fn element_vector(
    t: &SCTable,
    pres: &PcPresentation,
    jd: &JenningsData,
    g: &Element,
) -> Result<Vec<u32>> {
    pres.validate(g)?;
    let p = t.prime();
    if t.labels().is_empty() {
        return Err(Error::Table("table carries no Jennings labels".into()));
    }
    if t.labels()[0].len() != jd.weighted_gens.len() {
        return Err(Error::Mismatch("table was not built from this group".into()));
    }
    let mut index: HashMap<Vec<u8>, usize> = t
        .labels()
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    index.shrink_to_fit();
    let d = t.dim();
    let dense = |v: Sparse| -> Vec<u32> {
        let mut out = vec![0u32; d];
        for (i, c) in v {
            out[i] = c;
        }
        out
    };
    let mut acc = vec![0u32; d];
    for (i, &e) in g.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let c = jd.jennings_exponents(pres, &pres.generator(i));
        let gi = dense(expand_normal_form(p, &c, &index));
        for _ in 0..e {
            let prod = t.mul_dense(&acc, &gi);
            for k in 0..d {
                acc[k] = (acc[k] + gi[k] + prod[k]) % p;
            }
        }
    }
    Ok(acc)
}

/// Minimal weight of a monomial in the expansion of `g - 1`.
pub fn element_weight(t: &SCTable, pres: &PcPresentation, g: &Element, caps: &Caps) -> Result<usize> {
    let jd = jennings_series(pres, caps)?;
    element_weight_with(t, pres, &jd, g)
}

pub fn element_weight_with(
    t: &SCTable,
    pres: &PcPresentation,
    jd: &JenningsData,
    g: &Element,
) -> Result<usize> {
    if g.is_identity() {
        return Err(Error::IdentityWeight);
    }
    let v = element_vector(t, pres, jd, g)?;
    t.weight_of(&v).ok_or_else(|| {
        Error::Level(format!(
            "g - 1 lies in I^{}; the table is truncated too low",
            t.trunc()
        ))
    })
}
