//! The small group ring `kG/I`, `I = (G' - 1) I(kG)`: its normalized unit
//! group `S = G ⋊ A`, the quotient `G/γ_2(G)^p γ_4(G)`, and a search for
//! normal subgroups of `S` isomorphic to a given group.

mod groupalg;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field;
use crate::pcgroup::{
    abelian_decomposition, agemo, class_data, commutator_subgroup, derived_subgroup,
    is_isomorphic_groups, join, lower_central_series, quotient, quotient_group,
    subgroup_generated, subgroup_presentation, Element, PcPresentation, Subgroup,
};

pub use groupalg::SmallGroupRing;

/// `G/γ_2(G)^p γ_4(G)`.
pub fn baginski_quotient(pres: &PcPresentation) -> Result<PcPresentation> {
    let lcs = lower_central_series(pres);
    let gamma = |i: usize| lcs.get(i - 1).cloned().unwrap_or_else(|| Subgroup::trivial(pres));
    // Enumerating γ_2 is needed for its p-th powers.
    let caps = Caps {
        enumerate: u64::MAX,
        ..Caps::default()
    };
    let n = join(pres, &agemo(pres, &gamma(2), 1, &caps)?, &gamma(4));
    quotient_group(pres, &n)
}

/// A generator `1 + (g_1 - 1)^{k_1} ... (g_m - 1)^{k_m}` of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AGenerator {
    pub exponents: Vec<u32>,
    /// Order from the nilpotency rule, evaluated in `k[G/G']`.
    pub order: u64,
    /// The same rule evaluated in `kG/I`, where `(g_i - 1)` can have a
    /// larger nilpotency index (e.g. for `Q8`); kept for reporting.
    pub ring_rule_order: u64,
    /// Order found by powering the unit in `kG/I`.
    pub direct_order: u64,
}

/// `S = G ⋊ A`, the normalized unit group of `kG/I`.
#[derive(Clone, Debug)]
pub struct SmallRingGroup {
    pub group: PcPresentation,
    /// `g_1, ..., g_m`: lifts of an independent generating set of `G/G'`.
    pub top_generators: Vec<Element>,
    /// Orders of the images of the `g_i` in `G/G'`.
    pub top_orders: Vec<u64>,
    pub a_gens: Vec<AGenerator>,
    /// Pc presentation of `S`: for each `A`-generator a chain
    /// `a, a^p, a^{p^2}, ...`, followed by the pc generators of `G`.
    pub s: PcPresentation,
    /// Position in `s` of each `A`-generator.
    pub a_positions: Vec<usize>,
    /// `S/(Z(S) ∩ A)`, when `S` is small enough to enumerate.
    pub reduced: Option<PcPresentation>,
}

impl SmallRingGroup {
    /// Number of `A`-chain generators preceding `G` in `s`.
    pub fn a_rank(&self) -> usize {
        self.s.ngens() - self.group.ngens()
    }

    /// Image of an element of `G` in `S`.
    pub fn embed(&self, g: &Element) -> Element {
        let mut exps = vec![0u8; self.a_rank()];
        exps.extend_from_slice(g.exps());
        Element::from_exps(exps)
    }

    /// `G` as a subgroup of `S`.
    pub fn group_subgroup(&self) -> Subgroup {
        let gens: Vec<Element> = self.group.generators().iter().map(|g| self.embed(g)).collect();
        subgroup_generated(&self.s, &gens)
    }

    /// `A` as a subgroup of `S`.
    pub fn a_subgroup(&self) -> Subgroup {
        let gens: Vec<Element> = self
            .a_positions
            .iter()
            .map(|&i| self.s.generator(i))
            .collect();
        subgroup_generated(&self.s, &gens)
    }

    pub fn a_order(&self) -> u128 {
        self.a_gens.iter().map(|a| a.order as u128).product()
    }

    /// `[g, a]` by the iterated commutator formula, for an `A`-generator
    /// given by its exponent tuple.
    pub fn formula_commutator(&self, g: &Element, exponents: &[u32]) -> Element {
        iterated_commutator(&self.group, g, &self.top_generators, exponents)
    }

    /// Report block: `|S|`, `|A|` and the `A`-generators with their orders.
    pub fn report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "group = {}", self.group.name()).unwrap();
        writeln!(out, "order_S = {}", self.s.order_u128()).unwrap();
        writeln!(out, "order_A = {}", self.a_order()).unwrap();
        for a in &self.a_gens {
            let k: Vec<String> = a.exponents.iter().map(|k| k.to_string()).collect();
            writeln!(out, "a ({}) order = {}", k.join(","), a.order).unwrap();
        }
        if let Some(r) = &self.reduced {
            writeln!(out, "order_S_mod_ZA = {}", r.order_u128()).unwrap();
        }
        out
    }
}

/// `[g, x_1, ..., x_1, x_2, ...]`, left-normed, with `x_i` repeated `k_i`
/// times.
fn iterated_commutator(pres: &PcPresentation, g: &Element, xs: &[Element], ks: &[u32]) -> Element {
    let mut c = g.clone();
    for (x, &k) in xs.iter().zip(ks) {
        for _ in 0..k {
            c = pres.comm(&c, x);
        }
    }
    c
}

fn smallest_power_at_least(p: u64, target: u64) -> u64 {
    let mut t = 1;
    while t < target {
        t *= p;
    }
    t
}

/// Rule order: the least `p`-power `t` such that `(g_i - 1)^{k_i t} = 0` for
/// some `i` with `k_i != 0`, given the nilpotency index of each `g_i - 1`.
fn rule_order(p: u64, ks: &[u32], nil: &[u64]) -> u64 {
    ks.iter()
        .zip(nil)
        .filter(|(&k, _)| k != 0)
        .map(|(&k, &m)| smallest_power_at_least(p, m.div_ceil(k as u64)))
        .min()
        .expect("some exponent is nonzero")
}

/// Admissible exponent tuples: `0 <= k_i < ord_i`, `sum k_i >= 2`, not all
/// `k_i` divisible by `p`; in lexicographic order.
fn exponent_tuples(p: u64, orders: &[u64]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut k = vec![0u32; orders.len()];
    loop {
        let sum: u64 = k.iter().map(|&x| x as u64).sum();
        if sum >= 2 && k.iter().any(|&x| x as u64 % p != 0) {
            out.push(k.clone());
        }
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            k[i] += 1;
            if (k[i] as u64) < orders[i] {
                break;
            }
            k[i] = 0;
        }
    }
}

/// Builds `S = G ⋊ A` for a group with `Φ(G') = 1` and `γ_4(G) = 1`. The
/// caller reduces to that case; nothing is quotiented here.
pub fn small_unit_group(pres: &PcPresentation, caps: &Caps) -> Result<SmallRingGroup> {
    let lcs = lower_central_series(pres);
    if lcs.len() > 4 {
        return Err(Error::Hypothesis(
            "γ_4(G) is not trivial; reduce modulo γ_4 first".into(),
        ));
    }
    let derived = derived_subgroup(pres);
    let phi_derived = join(
        pres,
        &agemo(pres, &derived, 1, caps)?,
        &commutator_subgroup(pres, &derived, &derived),
    );
    if !phi_derived.is_trivial() {
        return Err(Error::Hypothesis(
            "Φ(G') is not trivial; reduce modulo Φ(G') first".into(),
        ));
    }
    let p = pres.prime() as u64;
    let ring = SmallGroupRing::new(pres, caps)?;

    // Independent generators of G/G'.
    let q = quotient(pres, &derived)?;
    let dec = abelian_decomposition(&q.presentation)?;
    let tops: Vec<Element> = dec.basis.iter().map(|y| q.lift(pres, y)).collect();
    let top_orders = dec.invariants.clone();
    let bars: Vec<Vec<u32>> = tops.iter().map(|g| ring.augmentation_generator(g)).collect();
    let nil_ring: Vec<u64> = bars.iter().map(|x| ring.nilpotency_index(x)).collect();

    let mut a_gens = Vec::new();
    for ks in exponent_tuples(p, &top_orders) {
        let mut x = ring.one();
        for (bar, &k) in bars.iter().zip(&ks) {
            for _ in 0..k {
                x = ring.mul(&x, bar);
            }
        }
        let unit: Vec<u32> = x
            .iter()
            .zip(ring.one())
            .map(|(&a, b)| field::add(a, b, pres.prime()))
            .collect();
        let direct_order = ring.unit_order(&unit);
        let order = rule_order(p, &ks, &top_orders);
        if order != direct_order {
            return Err(Error::Hypothesis(format!(
                "order rule gives {order} but 1 + x has order {direct_order} for exponents {ks:?}"
            )));
        }
        a_gens.push(AGenerator {
            ring_rule_order: rule_order(p, &ks, &nil_ring),
            exponents: ks,
            order,
            direct_order,
        });
    }

    // Pc presentation: A-chains on top, then G.
    let chain_lens: Vec<usize> = a_gens
        .iter()
        .map(|a| {
            let mut e = 0;
            let mut o = a.order;
            while o > 1 {
                o /= p;
                e += 1;
            }
            e
        })
        .collect();
    let r: usize = chain_lens.iter().sum();
    let n = pres.ngens();

    let mut b = PcPresentation::builder(pres.prime(), r + n);
    if !pres.name().is_empty() {
        b = b.name(format!("S({})", pres.name()));
    }
    let shift = |g: &Element| -> Element {
        let mut exps = vec![0u8; r];
        exps.extend_from_slice(g.exps());
        Element::from_exps(exps)
    };
    let mut a_positions = Vec::new();
    // Action of each A chain generator on the pc generators of G.
    let mut pos = 0;
    for (a, &len) in a_gens.iter().zip(&chain_lens) {
        a_positions.push(pos);
        // images[k] = g_k^{a^{p^j}} for the current j.
        let mut images: Vec<Element> = pres
            .generators()
            .iter()
            .map(|g| pres.mul(g, &iterated_commutator(pres, g, &tops, &a.exponents)))
            .collect();
        for j in 0..len {
            let idx = pos + j;
            if j + 1 < len {
                let mut e = vec![0u8; r + n];
                e[idx + 1] = 1;
                b.set_power(idx, Element::from_exps(e));
            }
            for (k, img) in images.iter().enumerate() {
                let g = pres.generator(k);
                let c = pres.mul(&pres.inverse(&g), img);
                b.set_comm(r + k, idx, shift(&c));
            }
            // Raise the automorphism to the p-th power.
            let apply = |imgs: &[Element], x: &Element| -> Element {
                let mut y = pres.identity();
                for (k, &e) in x.exps().iter().enumerate() {
                    y = pres.mul(&y, &pres.pow(&imgs[k], e as u64));
                }
                y
            };
            let mut next: Vec<Element> = pres.generators();
            for _ in 0..p {
                next = next.iter().map(|x| apply(&images, x)).collect();
            }
            images = next;
        }
        pos += len;
    }
    for i in 0..n {
        b.set_power(r + i, shift(pres.power_rel(i)));
        for j in 0..i {
            b.set_comm(r + i, r + j, shift(pres.comm_rel(i, j)));
        }
    }
    let s = b.build()?;
    if s.ngens() != ring.dim() - 1 {
        return Err(Error::Hypothesis(format!(
            "|G||A| = p^{} but kG/I has p^{} normalized units",
            s.ngens(),
            ring.dim() - 1
        )));
    }
    let mut out = SmallRingGroup {
        group: pres.clone(),
        top_generators: tops,
        top_orders,
        a_gens,
        s,
        a_positions,
        reduced: None,
    };
    let a = out.a_subgroup();
    if a.order() <= caps.enumerate as u128 {
        // A is abelian, so Z(S) ∩ A is the kernel of the action on G.
        let gens: Vec<Element> = out.group.generators().iter().map(|g| out.embed(g)).collect();
        let central: Vec<Element> = a
            .elements(&out.s, caps)?
            .into_iter()
            .filter(|x| gens.iter().all(|g| out.s.mul(x, g) == out.s.mul(g, x)))
            .collect();
        let za = subgroup_generated(&out.s, &central);
        out.reduced = Some(quotient_group(&out.s, &za)?);
    }
    Ok(out)
}

/// Checks the action of every `A`-generator on every pc generator of `G`
/// against conjugation in `kG/I`. Returns the pairs that disagree.
pub fn verify_action(sg: &SmallRingGroup, caps: &Caps) -> Result<Vec<(usize, usize)>> {
    let pres = &sg.group;
    let ring = SmallGroupRing::new(pres, caps)?;
    let bars: Vec<Vec<u32>> = sg
        .top_generators
        .iter()
        .map(|g| ring.augmentation_generator(g))
        .collect();
    let mut bad = Vec::new();
    for (ai, a) in sg.a_gens.iter().enumerate() {
        let mut x = ring.one();
        for (bar, &k) in bars.iter().zip(&a.exponents) {
            for _ in 0..k {
                x = ring.mul(&x, bar);
            }
        }
        let unit: Vec<u32> = x
            .iter()
            .zip(ring.one())
            .map(|(&c, o)| field::add(c, o, pres.prime()))
            .collect();
        let inv = ring.pow(&unit, a.direct_order - 1);
        for (k, g) in pres.generators().iter().enumerate() {
            let conj = ring.mul(&ring.mul(&inv, &ring.element(g)), &unit);
            let formula = pres.mul(g, &sg.formula_commutator(g, &a.exponents));
            if ring.element(&formula) != conj {
                bad.push((ai, k));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

struct CopySearch<'a> {
    s: &'a PcPresentation,
    h: &'a PcPresentation,
    target_rank: usize,
    d: usize,
    candidates: Vec<Element>,
    /// Class representatives among the candidates: a normal subgroup can be
    /// conjugated so that its first generator is one.
    first: Vec<usize>,
    /// Fewest generators with which each subgroup was reached.
    seen: HashMap<Subgroup, usize>,
    nodes: u64,
    budget: u64,
    caps: &'a Caps,
}

impl CopySearch<'_> {
    /// `Some(true)` on a hit, `None` when the budget runs out.
    fn run(&mut self, start: usize, gens: &mut Vec<Element>, current: &Subgroup) -> Option<bool> {
        if gens.len() == self.d {
            return Some(false);
        }
        let range: Vec<usize> = if gens.is_empty() {
            self.first.clone()
        } else {
            (start..self.candidates.len()).collect()
        };
        for i in range {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let x = &self.candidates[i];
            if current.contains(self.s, x) {
                continue;
            }
            gens.push(x.clone());
            let sub = subgroup_generated(self.s, gens);
            let fresh = match self.seen.get(&sub) {
                Some(&k) if k <= gens.len() => false,
                _ => {
                    self.seen.insert(sub.clone(), gens.len());
                    true
                }
            };
            if sub.rank() <= self.target_rank && fresh {
                if sub.rank() == self.target_rank && sub.is_normal(self.s) {
                    let found = subgroup_presentation(self.s, &sub)
                        .ok()
                        .and_then(|sp| is_isomorphic_groups(&sp, self.h, self.caps).ok());
                    match found {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => return None,
                    }
                } else if sub.rank() < self.target_rank {
                    match self.run(i + 1, gens, &sub) {
                        Some(false) => {}
                        other => return other,
                    }
                }
            }
            gens.pop();
        }
        Some(false)
    }
}

/// Searches `S` for a normal subgroup isomorphic to `h`, falling back to
/// `S/(Z(S) ∩ A)` (which also contains every group base) when `S` is too
/// large to enumerate.
pub fn contains_normal_copy(sg: &SmallRingGroup, h: &PcPresentation, budget: u64, caps: &Caps) -> Verdict {
    if h.prime() != sg.s.prime() || h.order_u128() != sg.group.order_u128() {
        return Verdict::No;
    }
    if sg.s.order_u128() <= caps.enumerate as u128 {
        return normal_copy_search(&sg.s, h, budget, caps);
    }
    match &sg.reduced {
        Some(r) => normal_copy_search(r, h, budget, caps),
        None => Verdict::Unknown,
    }
}

/// Backtracking search of `s` for a normal subgroup isomorphic to `h`, over
/// generating tuples of `d(h)` elements whose orders occur in `h`. `No`
/// means the search space was exhausted.
pub fn normal_copy_search(s: &PcPresentation, h: &PcPresentation, budget: u64, caps: &Caps) -> Verdict {
    if h.prime() != s.prime() || h.order_u128() > s.order_u128() {
        return Verdict::No;
    }
    if h.ngens() == 0 {
        return Verdict::Yes;
    }
    let Ok(cd) = class_data(s, caps) else {
        return Verdict::Unknown;
    };
    let orders: HashSet<u64> = h.elements().map(|x| h.element_order(&x)).collect();
    let d = h.ngens() - crate::pcgroup::frattini_subgroup(h).rank();
    let candidates: Vec<Element> = s
        .elements()
        .filter(|x| !x.is_identity() && orders.contains(&s.element_order(x)))
        .collect();
    let first = candidates
        .iter()
        .enumerate()
        .filter(|(_, x)| cd.classes.iter().any(|c| &c.rep == *x))
        .map(|(i, _)| i)
        .collect();
    let mut search = CopySearch {
        s,
        h,
        target_rank: h.ngens(),
        d,
        candidates,
        first,
        seen: HashMap::new(),
        nodes: 0,
        budget,
        caps,
    };
    match search.run(0, &mut Vec::new(), &Subgroup::trivial(s)) {
        Some(true) => Verdict::Yes,
        Some(false) => Verdict::No,
        None => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::pcgroup::{exponent, is_abelian};

    #[test]
    fn baginski_examples() {
        let caps = Caps::default();
        for g in [corpus::d8(), corpus::heisenberg(3), corpus::abelian(2, &[2, 1])] {
            let q = baginski_quotient(&g).unwrap();
            assert_eq!(q.order_u128(), g.order_u128(), "{}", g.name());
            assert!(is_isomorphic_groups(&q, &g, &caps).unwrap());
        }
        // D16: γ_2 = <r^2> of order 4, so γ_2^2 γ_4 has order 2.
        assert_eq!(baginski_quotient(&corpus::dihedral(4)).unwrap().order_u128(), 8);
    }

    #[test]
    fn klein_four() {
        let caps = Caps::default();
        let sg = small_unit_group(&corpus::elementary_abelian(2, 2), &caps).unwrap();
        assert_eq!(sg.s.order_u128(), 8);
        assert!(is_abelian(&sg.s));
        assert_eq!(exponent(&sg.s, &caps).unwrap(), 2);
        assert_eq!(sg.a_gens.len(), 1);
        assert_eq!(sg.a_gens[0].exponents, vec![1, 1]);
        assert_eq!(contains_normal_copy(&sg, &corpus::cyclic(2, 2), 10_000, &caps), Verdict::No);
    }

    #[test]
    fn dihedral_semidirect_structure() {
        let caps = Caps::default();
        let g = corpus::d8();
        let sg = small_unit_group(&g, &caps).unwrap();
        assert_eq!(sg.s.order_u128(), 8 * sg.a_order());
        let a = sg.a_subgroup();
        assert!(is_abelian(&subgroup_presentation(&sg.s, &a).unwrap()));
        assert_eq!(a.order(), sg.a_order());
        assert!(sg.group_subgroup().is_normal(&sg.s));
        assert!(verify_action(&sg, &caps).unwrap().is_empty());
        assert_eq!(contains_normal_copy(&sg, &g, 100_000, &caps), Verdict::Yes);
    }

    #[test]
    fn order_rule_lives_in_the_abelianization() {
        let caps = Caps::default();
        let sg = small_unit_group(&corpus::q8(), &caps).unwrap();
        let a = &sg.a_gens[0];
        assert_eq!((a.order, a.direct_order), (2, 2));
        // (i - 1)^2 = z - 1 is not zero in kQ8/I.
        assert_eq!(a.ring_rule_order, 4);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let caps = Caps::default();
        match small_unit_group(&corpus::dihedral(5), &caps) {
            Err(Error::Hypothesis(m)) => assert!(m.contains("reduce modulo γ_4 first")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            small_unit_group(&corpus::dihedral(4), &caps),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let caps = Caps::default();
        let g = corpus::d8();
        let sg = small_unit_group(&g, &caps).unwrap();
        assert_eq!(contains_normal_copy(&sg, &corpus::q8(), 1, &caps), Verdict::Unknown);
    }

    #[test]
    fn exponent_tuples_follow_the_rules() {
        let t = exponent_tuples(2, &[4, 2]);
        assert!(t.contains(&vec![1, 1]) && t.contains(&vec![3, 0]) && t.contains(&vec![3, 1]));
        assert!(!t.contains(&vec![2, 0]) && !t.contains(&vec![1, 0]));
        assert_eq!(rule_order(2, &[1, 1], &[4, 2]), 2);
        assert_eq!(rule_order(3, &[2, 0], &[9, 3]), 9);
    }
}
