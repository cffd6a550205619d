//! Jennings-Zassenhaus dimension subgroups, weighted generators and graded
//! dimensions of the augmentation ideal.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::pcgroup::{
    agemo, is_isomorphic_groups, join, lower_central_series, quotient_group, Element,
    PcPresentation, Subgroup,
};

#[derive(Clone, Debug)]
pub struct JenningsData {
    prime: u32,
    /// `D_1 = G ⊇ D_2 ⊇ ... ⊇ D_c = 1`.
    pub series: Vec<Subgroup>,
    /// Weighted generators in nondecreasing weight, by depth within a
    /// weight.
    pub weighted_gens: Vec<(Element, usize)>,
    /// `d_i = dim D_i/D_{i+1}` for `i = 1..c-1`.
    pub graded_dims: Vec<usize>,
    /// Smallest `t` with `I(kG)^t = 0`.
    pub nil_index: usize,
    /// For each weight `i`, the depths of the weight-`i` generators.
    layer_depths: Vec<Vec<usize>>,
}

/// `D_m = prod_{i p^j >= m} γ_i^{p^j}`, using that only the smallest `j`
/// for each `i` matters.
fn dimension_subgroup(
    pres: &PcPresentation,
    lcs: &[Subgroup],
    m: usize,
    caps: &Caps,
) -> Result<Subgroup> {
    let p = pres.prime() as usize;
    let mut d = Subgroup::trivial(pres);
    for (idx, gamma) in lcs.iter().enumerate() {
        let i = idx + 1;
        if gamma.is_trivial() {
            break;
        }
        let mut j = 0u32;
        let mut ipj = i;
        while ipj < m {
            ipj *= p;
            j += 1;
        }
        let term = agemo(pres, gamma, j, caps)?;
        d = join(pres, &d, &term);
        if i >= m {
            break;
        }
    }
    Ok(d)
}

fn reduce_mod(pres: &PcPresentation, n: &Subgroup, x: &Element) -> Element {
    let p = pres.prime() as u8;
    let mut x = x.clone();
    for u in n.igs() {
        let d = u.depth().unwrap();
        let e = x.exps()[d];
        if e != 0 {
            x = pres.mul(&x, &pres.pow(u, (p - e) as u64));
        }
    }
    x
}

/// Computes the dimension subgroup series directly from its defining
/// product over lower central terms and their agemos.
pub fn jennings_series(pres: &PcPresentation, caps: &Caps) -> Result<JenningsData> {
    let lcs = lower_central_series(pres);
    let mut series = vec![Subgroup::whole(pres)];
    let mut m = 2;
    while !series.last().unwrap().is_trivial() {
        series.push(dimension_subgroup(pres, &lcs, m, caps)?);
        m += 1;
    }
    let mut weighted_gens = Vec::new();
    let mut graded_dims = Vec::new();
    let mut layer_depths = Vec::new();
    for w in 0..series.len() - 1 {
        let next = series[w + 1].depths();
        let mut layer = Vec::new();
        for u in series[w].igs() {
            let d = u.depth().unwrap();
            if !next.contains(&d) {
                weighted_gens.push((u.clone(), w + 1));
                layer.push(d);
            }
        }
        graded_dims.push(layer.len());
        layer_depths.push(layer);
    }
    let p = pres.prime() as usize;
    let nil_index = 1 + (p - 1)
        * graded_dims
            .iter()
            .enumerate()
            .map(|(i, d)| (i + 1) * d)
            .sum::<usize>();
    Ok(JenningsData {
        prime: pres.prime(),
        series,
        weighted_gens,
        graded_dims,
        nil_index,
        layer_depths,
    })
}

impl JenningsData {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Number of terms `c` with `D_c = 1`.
    pub fn length(&self) -> usize {
        self.series.len()
    }

    /// `D_m`, with `D_m = 1` for `m >= c`.
    pub fn term(&self, m: usize) -> &Subgroup {
        assert!(m >= 1, "dimension subgroups start at D_1");
        &self.series[(m - 1).min(self.series.len() - 1)]
    }

    pub fn weights(&self) -> Vec<usize> {
        self.weighted_gens.iter().map(|(_, w)| *w).collect()
    }

    /// Exponents of `g` over the weighted generators:
    /// `g = prod_k h_k^{e_k}` in generator order.
    pub fn jennings_exponents(&self, pres: &PcPresentation, g: &Element) -> Vec<u8> {
        let mut x = g.clone();
        let mut out = Vec::with_capacity(self.weighted_gens.len());
        let mut k = 0;
        for (w, depths) in self.layer_depths.iter().enumerate() {
            let r = reduce_mod(pres, &self.series[w + 1], &x);
            let coords: Vec<u8> = depths.iter().map(|&d| r.exps()[d]).collect();
            let mut prefix = pres.identity();
            for &c in &coords {
                prefix = pres.mul(&prefix, &pres.pow(&self.weighted_gens[k].0, c as u64));
                k += 1;
            }
            x = pres.mul(&pres.inverse(&prefix), &x);
            out.extend(coords);
        }
        debug_assert!(x.is_identity());
        out
    }
}

/// Maximal `w` with `g ∈ D_w`.
pub fn weight_of(jd: &JenningsData, pres: &PcPresentation, g: &Element) -> Result<usize> {
    pres.validate(g)?;
    if g.is_identity() {
        return Err(Error::IdentityWeight);
    }
    let w = jd
        .series
        .iter()
        .position(|d| !d.contains(pres, g))
        .expect("the last term is trivial");
    Ok(w)
}

/// `dim I^m/I^{m+1}` for `1 <= m < s`: coefficients of
/// `prod_i (1 + t^i + ... + t^{(p-1)i})^{d_i}`.
pub fn graded_dims_of_ideal(jd: &JenningsData, s: usize) -> Result<Vec<u128>> {
    if s < 2 {
        return Err(Error::Level(format!("truncation level {s} is below 2")));
    }
    let p = jd.prime as usize;
    let mut poly = vec![0u128; s];
    poly[0] = 1;
    for (idx, &d) in jd.graded_dims.iter().enumerate() {
        let i = idx + 1;
        for _ in 0..d {
            let mut next = vec![0u128; s];
            for (deg, &c) in poly.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for a in 0..p {
                    let t = deg + a * i;
                    if t < s {
                        next[t] += c;
                    }
                }
            }
            poly = next;
        }
    }
    Ok(poly[1..].to_vec())
}

/// `G/D_s(G)`.
pub fn jennings_quotient(pres: &PcPresentation, jd: &JenningsData, s: usize) -> Result<PcPresentation> {
    quotient_group(pres, jd.term(s))
}

/// Maximal `s` with `G/D_s(G) ≅ H/D_s(H)`. For isomorphic groups the
/// common series length is returned.
pub fn jennings_bound(g: &PcPresentation, h: &PcPresentation, caps: &Caps) -> Result<usize> {
    if g.prime() != h.prime() || g.ngens() != h.ngens() {
        return Err(Error::Mismatch("groups of different orders".into()));
    }
    let jg = jennings_series(g, caps)?;
    let jh = jennings_series(h, caps)?;
    jennings_bound_with(g, &jg, h, &jh, caps)
}

pub fn jennings_bound_with(
    g: &PcPresentation,
    jg: &JenningsData,
    h: &PcPresentation,
    jh: &JenningsData,
    caps: &Caps,
) -> Result<usize> {
    let c = jg.length().max(jh.length());
    for s in 2..=c {
        let qg = jennings_quotient(g, jg, s)?;
        let qh = jennings_quotient(h, jh, s)?;
        if !is_isomorphic_groups(&qg, &qh, caps)? {
            return Ok(s - 1);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn d8_series() {
        let caps = Caps::default();
        let g = corpus::d8();
        let jd = jennings_series(&g, &caps).unwrap();
        assert_eq!(jd.length(), 3);
        assert_eq!(jd.graded_dims, vec![2, 1]);
        assert_eq!(jd.nil_index, 5);
        assert_eq!(jd.weights(), vec![1, 1, 2]);
        assert_eq!(weight_of(&jd, &g, &g.generator(2)).unwrap(), 2);
        assert_eq!(weight_of(&jd, &g, &g.generator(0)).unwrap(), 1);
        assert_eq!(weight_of(&jd, &g, &g.identity()), Err(Error::IdentityWeight));
        assert_eq!(graded_dims_of_ideal(&jd, 5).unwrap(), vec![2, 2, 2, 1]);
    }

    #[test]
    fn cyclic_and_klein() {
        let caps = Caps::default();
        let c4 = corpus::cyclic(2, 2);
        let jd = jennings_series(&c4, &caps).unwrap();
        assert_eq!(jd.graded_dims, vec![1, 1]);
        assert_eq!(jd.nil_index, 4);
        assert_eq!(weight_of(&jd, &c4, &c4.generator(1)).unwrap(), 2);
        let v4 = corpus::elementary_abelian(2, 2);
        let jv = jennings_series(&v4, &caps).unwrap();
        assert_eq!(jv.graded_dims, vec![2]);
        assert_eq!(jv.nil_index, 3);
        assert_eq!(graded_dims_of_ideal(&jv, 3).unwrap(), vec![2, 1]);
        assert!(graded_dims_of_ideal(&jv, 1).is_err());
    }

    #[test]
    fn bounds() {
        let caps = Caps::default();
        assert_eq!(jennings_bound(&corpus::d8(), &corpus::q8(), &caps).unwrap(), 2);
        let c4 = corpus::cyclic(2, 2);
        let v4 = corpus::elementary_abelian(2, 2);
        assert_eq!(jennings_bound(&c4, &v4, &caps).unwrap(), 1);
        assert_eq!(jennings_bound(&corpus::d8(), &corpus::d8(), &caps).unwrap(), 3);
    }

    #[test]
    fn jennings_exponents_reconstruct() {
        let caps = Caps::default();
        let g = corpus::quaternion(4);
        let jd = jennings_series(&g, &caps).unwrap();
        for x in g.elements() {
            let e = jd.jennings_exponents(&g, &x);
            let mut y = g.identity();
            for (k, &c) in e.iter().enumerate() {
                y = g.mul(&y, &g.pow(&jd.weighted_gens[k].0, c as u64));
            }
            assert_eq!(x, y);
        }
    }
}
