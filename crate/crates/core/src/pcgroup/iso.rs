//! Isomorphism testing for small p-groups by backtracking over images of a
//! minimal generating set.

use std::collections::HashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::{inv, Echelon};

use super::abelian::{abelian_invariants, is_abelian};
use super::classes::{class_data, element_index};
use super::presentation::{Element, PcPresentation};
use super::series::{derived_subgroup, frattini_subgroup};
use super::subgroup::{quotient, Quotient};

#[derive(Clone, Debug)]
enum Base {
    Gen(usize),
    Pow(usize),
    Comm(usize, usize),
}

/// One element of an igs of `G`, defined from the minimal generators:
/// `value = (base * prod u_k^e) ^ norm`.
#[derive(Clone, Debug)]
struct Step {
    base: Base,
    mults: Vec<(usize, u8)>,
    norm: u8,
    mask: u64,
}

/// A relation `lhs = prod u_k^{e_k}` among igs elements.
#[derive(Clone, Debug)]
struct Relation {
    lhs: Base,
    rhs: Vec<(usize, u8)>,
}

/// Straight-line description of an igs of `G` in terms of `d` minimal
/// generators, with the pc relations among the igs elements.
#[derive(Clone, Debug)]
struct Program {
    steps: Vec<Step>,
    /// Steps to evaluate once generator `a` is assigned (max mask bit `a`).
    steps_at: Vec<Vec<usize>>,
    /// Relations that become checkable at generator `a`.
    rels_at: Vec<Vec<Relation>>,
}

impl Program {
    fn build(g: &PcPresentation, mingens: &[Element]) -> Program {
        let n = g.ngens();
        let p = g.prime() as u64;
        let mut steps: Vec<Step> = Vec::new();
        let mut values: Vec<Element> = Vec::new();
        let mut slots: Vec<Option<usize>> = vec![None; n];
        let mut queue: Vec<Base> = (0..mingens.len()).rev().map(Base::Gen).collect();
        let eval_base = |b: &Base, values: &[Element]| -> Element {
            match *b {
                Base::Gen(a) => mingens[a].clone(),
                Base::Pow(i) => g.pow(&values[i], p),
                Base::Comm(i, j) => g.comm(&values[i], &values[j]),
            }
        };
        loop {
            while let Some(b) = queue.pop() {
                let mut x = eval_base(&b, &values);
                let mut mults = Vec::new();
                while let Some(d) = x.depth() {
                    let Some(s) = slots[d] else { break };
                    let e = (p as u8) - x.exps()[d];
                    x = g.mul(&x, &g.pow(&values[s], e as u64));
                    mults.push((s, e));
                }
                let Some(d) = x.depth() else { continue };
                let norm = inv(x.exps()[d] as u32, g.prime()) as u8;
                x = g.pow(&x, norm as u64);
                let mut mask = match b {
                    Base::Gen(a) => 1u64 << a,
                    Base::Pow(i) => steps[i].mask,
                    Base::Comm(i, j) => steps[i].mask | steps[j].mask,
                };
                for &(s, _) in &mults {
                    mask |= steps[s].mask;
                }
                let idx = steps.len();
                steps.push(Step {
                    base: b,
                    mults,
                    norm,
                    mask,
                });
                values.push(x);
                queue.push(Base::Pow(idx));
                for s in slots.iter().flatten() {
                    queue.push(Base::Comm(idx, *s));
                }
                slots[d] = Some(idx);
            }
            // Closure check on the finished sequence.
            let present: Vec<usize> = slots.iter().flatten().copied().collect();
            for (a, &i) in present.iter().enumerate() {
                if !sift(g, &values, &slots, &g.pow(&values[i], p)).is_identity() {
                    queue.push(Base::Pow(i));
                }
                for &j in &present[..a] {
                    if !sift(g, &values, &slots, &g.comm(&values[i], &values[j])).is_identity() {
                        queue.push(Base::Comm(i, j));
                    }
                }
            }
            if queue.is_empty() {
                break;
            }
        }
        let ord: Vec<usize> = slots.iter().flatten().copied().collect();
        debug_assert_eq!(ord.len(), n);
        let d = mingens.len();
        let mut steps_at = vec![Vec::new(); d.max(1)];
        for (i, s) in steps.iter().enumerate() {
            steps_at[top_bit(s.mask)].push(i);
        }
        let coords = |x: &Element| -> Vec<(usize, u8)> {
            let mut x = x.clone();
            let mut out = Vec::new();
            for &s in &ord {
                let dd = values[s].depth().unwrap();
                let e = x.exps()[dd];
                if e != 0 {
                    out.push((s, e));
                    x = g.mul(&g.inverse(&g.pow(&values[s], e as u64)), &x);
                }
            }
            debug_assert!(x.is_identity());
            out
        };
        let mut rels_at = vec![Vec::new(); d.max(1)];
        for (a, &i) in ord.iter().enumerate() {
            let rhs = coords(&g.pow(&values[i], p));
            let mask = rhs.iter().fold(steps[i].mask, |m, &(s, _)| m | steps[s].mask);
            rels_at[top_bit(mask)].push(Relation {
                lhs: Base::Pow(i),
                rhs,
            });
            for &j in &ord[..a] {
                let rhs = coords(&g.comm(&values[i], &values[j]));
                let mask = rhs
                    .iter()
                    .fold(steps[i].mask | steps[j].mask, |m, &(s, _)| m | steps[s].mask);
                rels_at[top_bit(mask)].push(Relation {
                    lhs: Base::Comm(i, j),
                    rhs,
                });
            }
        }
        Program {
            steps,
            steps_at,
            rels_at,
        }
    }
}

fn top_bit(mask: u64) -> usize {
    63 - mask.leading_zeros() as usize
}

fn sift(g: &PcPresentation, values: &[Element], slots: &[Option<usize>], x: &Element) -> Element {
    let p = g.prime() as u8;
    let mut x = x.clone();
    while let Some(d) = x.depth() {
        let Some(s) = slots[d] else { break };
        x = g.mul(&x, &g.pow(&values[s], (p - x.exps()[d]) as u64));
    }
    x
}

fn eval_base(h: &PcPresentation, b: &Base, images: &[Element], vals: &[Option<Element>]) -> Element {
    let p = h.prime() as u64;
    match *b {
        Base::Gen(a) => images[a].clone(),
        Base::Pow(i) => h.pow(vals[i].as_ref().unwrap(), p),
        Base::Comm(i, j) => h.comm(vals[i].as_ref().unwrap(), vals[j].as_ref().unwrap()),
    }
}

/// Element signature preserved by automorphisms: (order, class size).
fn signatures(pres: &PcPresentation, caps: &Caps) -> Result<Vec<(u64, usize)>> {
    let cd = class_data(pres, caps)?;
    Ok(pres
        .elements()
        .enumerate()
        .map(|(i, x)| (pres.element_order(&x), cd.classes[cd.class_of[i]].size))
        .collect())
}

struct Search<'a> {
    h: &'a PcPresentation,
    prog: &'a Program,
    frat: &'a Quotient,
    candidates: Vec<Vec<Element>>,
    images: Vec<Element>,
    vals: Vec<Option<Element>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, a: usize) -> Result<bool> {
        if a == self.candidates.len() {
            return Ok(true);
        }
        let cands = std::mem::take(&mut self.candidates[a]);
        let result = self.try_candidates(a, &cands);
        self.candidates[a] = cands;
        result
    }

    fn try_candidates(&mut self, a: usize, cands: &[Element]) -> Result<bool> {
        let p = self.h.prime();
        for y in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Undecided(format!(
                    "search exceeded {} nodes",
                    self.budget
                )));
            }
            // Images must stay independent modulo the Frattini subgroup.
            let mut ech = Echelon::new(p, self.frat.presentation.ngens());
            for z in self.images.iter().chain(std::iter::once(y)) {
                let v: Vec<u32> = self.frat.project(self.h, z).exps().iter().map(|&e| e as u32).collect();
                if !ech.insert(&v) {
                    break;
                }
            }
            if ech.rank() != self.images.len() + 1 {
                continue;
            }
            self.images.push(y.clone());
            if self.assign(a) && self.run(a + 1)? {
                return Ok(true);
            }
            for &s in &self.prog.steps_at[a] {
                self.vals[s] = None;
            }
            self.images.pop();
        }
        Ok(false)
    }

    /// Evaluates the steps unlocked by generator `a` and checks the newly
    /// checkable relations.
    fn assign(&mut self, a: usize) -> bool {
        let h = self.h;
        for &s in &self.prog.steps_at[a] {
            let step = &self.prog.steps[s];
            let mut x = eval_base(h, &step.base, &self.images, &self.vals);
            for &(k, e) in &step.mults {
                x = h.mul(&x, &h.pow(self.vals[k].as_ref().unwrap(), e as u64));
            }
            x = h.pow(&x, step.norm as u64);
            if x.is_identity() {
                return false;
            }
            self.vals[s] = Some(x);
        }
        for rel in &self.prog.rels_at[a] {
            let lhs = eval_base(h, &rel.lhs, &self.images, &self.vals);
            let mut rhs = h.identity();
            for &(k, e) in &rel.rhs {
                rhs = h.mul(&rhs, &h.pow(self.vals[k].as_ref().unwrap(), e as u64));
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Finds an isomorphism `G -> H`, returned as the images of the pc
/// generators of `G`, or `None` if the groups are not isomorphic.
pub fn find_isomorphism(
    g: &PcPresentation,
    h: &PcPresentation,
    caps: &Caps,
) -> Result<Option<Vec<Element>>> {
    if g.prime() != h.prime() || g.ngens() != h.ngens() {
        return Ok(None);
    }
    let order = g.order_u128();
    if order > caps.isomorphism as u128 {
        return Err(Error::Undecided(format!(
            "group order {order} exceeds isomorphism cap {}",
            caps.isomorphism
        )));
    }
    let (ab_g, ab_h) = (is_abelian(g), is_abelian(h));
    if ab_g != ab_h {
        return Ok(None);
    }
    if ab_g && abelian_invariants(g)? != abelian_invariants(h)? {
        return Ok(None);
    }
    let fg = frattini_subgroup(g);
    let fh = frattini_subgroup(h);
    if fg.rank() != fh.rank() {
        return Ok(None);
    }
    let qg = quotient(g, &derived_subgroup(g))?;
    let qh = quotient(h, &derived_subgroup(h))?;
    if abelian_invariants(&qg.presentation)? != abelian_invariants(&qh.presentation)? {
        return Ok(None);
    }
    let sig_g = signatures(g, caps)?;
    let sig_h = signatures(h, caps)?;
    let mut prof_g: HashMap<(u64, usize), usize> = HashMap::new();
    let mut prof_h: HashMap<(u64, usize), usize> = HashMap::new();
    for s in &sig_g {
        *prof_g.entry(*s).or_default() += 1;
    }
    for s in &sig_h {
        *prof_h.entry(*s).or_default() += 1;
    }
    if prof_g != prof_h {
        return Ok(None);
    }

    let fdepths = fg.depths();
    let mingens: Vec<Element> = (0..g.ngens())
        .filter(|k| !fdepths.contains(k))
        .map(|k| g.generator(k))
        .collect();
    if mingens.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let prog = Program::build(g, &mingens);
    let frat_h = quotient(h, &fh)?;
    let candidates: Vec<Vec<Element>> = mingens
        .iter()
        .map(|x| {
            let want = sig_g[element_index(g.prime(), x)];
            h.elements()
                .zip(&sig_h)
                .filter(|(_, s)| **s == want)
                .map(|(y, _)| y)
                .collect()
        })
        .collect();
    let mut search = Search {
        h,
        prog: &prog,
        frat: &frat_h,
        candidates,
        images: Vec::new(),
        vals: vec![None; prog.steps.len()],
        nodes: 0,
        budget: caps.search,
    };
    if !search.run(0)? {
        return Ok(None);
    }
    // Images of the pc generators: evaluate the homomorphism on each g_k.
    let img = |x: &Element| -> Element { apply(g, h, &mingens, &prog, &search.vals, x) };
    Ok(Some(g.generators().iter().map(img).collect()))
}

/// Evaluates the isomorphism defined by generator images on an element of
/// `G`, by writing the element in the igs of the program.
fn apply(
    g: &PcPresentation,
    h: &PcPresentation,
    mingens: &[Element],
    prog: &Program,
    vals: &[Option<Element>],
    x: &Element,
) -> Element {
    // Rebuild the G-side values of the program to express x.
    let p = g.prime() as u64;
    let mut gvals: Vec<Element> = Vec::with_capacity(prog.steps.len());
    for step in &prog.steps {
        let mut v = match step.base {
            Base::Gen(a) => mingens[a].clone(),
            Base::Pow(i) => g.pow(&gvals[i], p),
            Base::Comm(i, j) => g.comm(&gvals[i], &gvals[j]),
        };
        for &(k, e) in &step.mults {
            v = g.mul(&v, &g.pow(&gvals[k], e as u64));
        }
        v = g.pow(&v, step.norm as u64);
        gvals.push(v);
    }
    // Every step fills a distinct depth.
    let mut order: Vec<usize> = (0..gvals.len()).collect();
    order.sort_by_key(|&i| gvals[i].depth());
    let mut rest = x.clone();
    let mut out = h.identity();
    for &s in &order {
        let d = gvals[s].depth().unwrap();
        let e = rest.exps()[d];
        if e != 0 {
            rest = g.mul(&g.inverse(&g.pow(&gvals[s], e as u64)), &rest);
            out = h.mul(&out, &h.pow(vals[s].as_ref().unwrap(), e as u64));
        }
    }
    out
}

/// Decides `G ≅ H`. Groups above the isomorphism cap, or searches past the
/// node budget, give [`Error::Undecided`].
pub fn is_isomorphic_groups(g: &PcPresentation, h: &PcPresentation, caps: &Caps) -> Result<bool> {
    Ok(find_isomorphism(g, h, caps)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> PcPresentation {
        PcPresentation::parse(s).unwrap()
    }

    #[test]
    fn small_cases() {
        let caps = Caps::default();
        let c4 = parse("p 2\nn 2\npow 1 = g2\n");
        let v4 = parse("p 2\nn 2\n");
        let d8 = parse("p 2\nn 3\ncomm 2 1 = g3\n");
        let q8 = parse("p 2\nn 3\npow 1 = g3\npow 2 = g3\ncomm 2 1 = g3\n");
        // D8 on a rotation and a reflection.
        let d8b = parse("p 2\nn 3\npow 1 = g3\ncomm 2 1 = g3\n");
        assert!(!is_isomorphic_groups(&c4, &v4, &caps).unwrap());
        assert!(!is_isomorphic_groups(&d8, &q8, &caps).unwrap());
        assert!(is_isomorphic_groups(&d8, &d8b, &caps).unwrap());
        assert!(is_isomorphic_groups(&q8, &q8, &caps).unwrap());
    }

    #[test]
    fn found_map_is_a_homomorphism() {
        let caps = Caps::default();
        let d8 = parse("p 2\nn 3\ncomm 2 1 = g3\n");
        let d8b = parse("p 2\nn 3\npow 1 = g3\ncomm 2 1 = g3\n");
        let imgs = find_isomorphism(&d8, &d8b, &caps).unwrap().unwrap();
        let map = |x: &Element| -> Element {
            let mut out = d8b.identity();
            for (k, &e) in x.exps().iter().enumerate() {
                out = d8b.mul(&out, &d8b.pow(&imgs[k], e as u64));
            }
            out
        };
        let elems: Vec<Element> = d8.elements().collect();
        let mut seen = std::collections::HashSet::new();
        for a in &elems {
            seen.insert(map(a));
            for b in &elems {
                assert_eq!(map(&d8.mul(a, b)), d8b.mul(&map(a), &map(b)));
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn cap_gives_undecided() {
        let caps = Caps {
            isomorphism: 4,
            ..Caps::default()
        };
        let d8 = parse("p 2\nn 3\ncomm 2 1 = g3\n");
        assert!(matches!(is_isomorphic_groups(&d8, &d8, &caps), Err(Error::Undecided(_))));
    }
}
