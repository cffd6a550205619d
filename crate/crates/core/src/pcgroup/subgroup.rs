//! Subgroups given by induced generating sequences, quotients and
//! subgroup presentations.

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::presentation::{Element, PcPresentation};

/// A subgroup of a pc-presented group, stored as its canonical induced
/// generating sequence: depths strictly increase, every leading exponent is
/// 1, and every element has exponent 0 at the leading depths of the others.
///
/// The subgroup does not own its parent; operations take the parent
/// presentation explicitly and check that the shapes agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    prime: u32,
    ngens: usize,
    igs: Vec<Element>,
}

impl Subgroup {
    pub fn trivial(pres: &PcPresentation) -> Subgroup {
        Subgroup {
            prime: pres.prime(),
            ngens: pres.ngens(),
            igs: Vec::new(),
        }
    }

    pub fn whole(pres: &PcPresentation) -> Subgroup {
        Subgroup {
            prime: pres.prime(),
            ngens: pres.ngens(),
            igs: pres.generators(),
        }
    }

    pub fn igs(&self) -> &[Element] {
        &self.igs
    }

    /// `log_p |H|`.
    pub fn rank(&self) -> usize {
        self.igs.len()
    }

    pub fn order(&self) -> u128 {
        (self.prime as u128).saturating_pow(self.igs.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_empty()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.igs.iter().map(|u| u.depth().unwrap()).collect()
    }

    fn check_parent(&self, pres: &PcPresentation) -> Result<()> {
        if self.prime != pres.prime() || self.ngens != pres.ngens() {
            return Err(Error::Mismatch(
                "subgroup belongs to a different presentation".into(),
            ));
        }
        Ok(())
    }

    /// Sifts `x` through the igs by right multiplication; the result is
    /// the identity iff `x` lies in the subgroup.
    pub fn sift(&self, pres: &PcPresentation, x: &Element) -> Element {
        let p = pres.prime() as u8;
        let mut x = x.clone();
        for u in &self.igs {
            let d = u.depth().unwrap();
            if x.depth().map_or(true, |xd| xd > d) {
                continue;
            }
            let e = x.exps()[d];
            if e != 0 {
                x = pres.mul(&x, &pres.pow(u, (p - e) as u64));
            }
        }
        x
    }

    pub fn contains(&self, pres: &PcPresentation, x: &Element) -> bool {
        self.sift(pres, x).is_identity()
    }

    /// Exponents `e` with `x = u_1^{e_1} ... u_m^{e_m}`, or `None` if `x` is
    /// not in the subgroup.
    pub fn exponents_of(&self, pres: &PcPresentation, x: &Element) -> Option<Vec<u8>> {
        let mut x = x.clone();
        let mut out = Vec::with_capacity(self.igs.len());
        for u in &self.igs {
            let d = u.depth().unwrap();
            if let Some(xd) = x.depth() {
                if xd < d {
                    return None;
                }
            }
            let e = x.exps()[d];
            out.push(e);
            if e != 0 {
                let inv = pres.inverse(&pres.pow(u, e as u64));
                x = pres.mul(&inv, &x);
            }
        }
        x.is_identity().then_some(out)
    }

    /// `H <= K`.
    pub fn is_subgroup_of(&self, pres: &PcPresentation, other: &Subgroup) -> bool {
        self.igs.iter().all(|u| other.contains(pres, u))
    }

    /// Checks normality by conjugating the igs with every parent generator.
    pub fn is_normal(&self, pres: &PcPresentation) -> bool {
        let gens = pres.generators();
        self.igs
            .iter()
            .all(|u| gens.iter().all(|g| self.contains(pres, &pres.conj(u, g))))
    }

    /// All elements, in the order of the exponent tuples over the igs.
    pub fn elements(&self, pres: &PcPresentation, caps: &Caps) -> Result<Vec<Element>> {
        caps.check("subgroup enumeration", self.order(), caps.enumerate)?;
        let mut out = vec![pres.identity()];
        for u in self.igs.iter().rev() {
            let powers: Vec<Element> = (0..pres.prime() as u64).map(|k| pres.pow(u, k)).collect();
            let mut next = Vec::with_capacity(out.len() * powers.len());
            for pw in &powers {
                for y in &out {
                    next.push(pres.mul(pw, y));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Incremental closure state: igs slots indexed by depth.
struct Closure<'a> {
    pres: &'a PcPresentation,
    slots: Vec<Option<Element>>,
    normal: bool,
}

impl<'a> Closure<'a> {
    fn new(pres: &'a PcPresentation, normal: bool) -> Self {
        Closure {
            pres,
            slots: vec![None; pres.ngens()],
            normal,
        }
    }

    fn sift(&self, x: &Element) -> Element {
        let p = self.pres.prime() as u8;
        let mut x = x.clone();
        while let Some(d) = x.depth() {
            match &self.slots[d] {
                Some(u) => {
                    let e = x.exps()[d];
                    x = self.pres.mul(&x, &self.pres.pow(u, (p - e) as u64));
                }
                None => break,
            }
        }
        x
    }

    fn members(&self) -> Vec<Element> {
        self.slots.iter().flatten().cloned().collect()
    }

    fn add_all(&mut self, seeds: Vec<Element>) {
        let pres = self.pres;
        let p = pres.prime() as u64;
        let gens = pres.generators();
        let mut queue = seeds;
        loop {
            while let Some(x) = queue.pop() {
                let r = self.sift(&x);
                let Some(d) = r.depth() else { continue };
                let lead = r.exps()[d] as u32;
                let r = pres.pow(&r, crate::field::inv(lead, pres.prime()) as u64);
                queue.push(pres.pow(&r, p));
                for u in self.slots.iter().flatten() {
                    queue.push(pres.comm(&r, u));
                }
                if self.normal {
                    for g in &gens {
                        queue.push(pres.comm(&r, g));
                    }
                }
                self.slots[d] = Some(r);
            }
            // Final check that the collected sequence is closed.
            let members = self.members();
            for (a, u) in members.iter().enumerate() {
                let c = self.sift(&pres.pow(u, p));
                if !c.is_identity() {
                    queue.push(c);
                }
                for v in &members[..a] {
                    let c = self.sift(&pres.comm(u, v));
                    if !c.is_identity() {
                        queue.push(c);
                    }
                }
                if self.normal {
                    for g in &gens {
                        let c = self.sift(&pres.comm(u, g));
                        if !c.is_identity() {
                            queue.push(c);
                        }
                    }
                }
            }
            if queue.is_empty() {
                break;
            }
        }
    }

    fn finish(self) -> Subgroup {
        let pres = self.pres;
        let p = pres.prime() as u8;
        let mut igs = self.members();
        let depths: Vec<usize> = igs.iter().map(|u| u.depth().unwrap()).collect();
        for a in 0..igs.len() {
            for b in a + 1..igs.len() {
                let e = igs[a].exps()[depths[b]];
                if e != 0 {
                    let c = pres.pow(&igs[b], (p - e) as u64);
                    igs[a] = pres.mul(&igs[a], &c);
                }
            }
        }
        Subgroup {
            prime: pres.prime(),
            ngens: pres.ngens(),
            igs,
        }
    }
}

/// The subgroup generated by `gens`.
pub fn subgroup_generated(pres: &PcPresentation, gens: &[Element]) -> Subgroup {
    let mut c = Closure::new(pres, false);
    c.add_all(gens.to_vec());
    c.finish()
}

/// The normal closure of `gens` in the whole group.
pub fn normal_closure(pres: &PcPresentation, gens: &[Element]) -> Subgroup {
    let mut c = Closure::new(pres, true);
    c.add_all(gens.to_vec());
    c.finish()
}

/// `HK` for subgroups where the product is a subgroup (e.g. one is normal).
pub fn join(pres: &PcPresentation, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut gens = h.igs.clone();
    gens.extend(k.igs.iter().cloned());
    subgroup_generated(pres, &gens)
}

/// `[H, K]` for normal subgroups `H`, `K`.
pub fn commutator_subgroup(pres: &PcPresentation, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut gens = Vec::new();
    for a in &h.igs {
        for b in &k.igs {
            gens.push(pres.comm(a, b));
        }
    }
    normal_closure(pres, &gens)
}

/// `H^{p^k}`: the subgroup generated by all `p^k`-th powers of elements of
/// `H` (found by enumerating `H`).
pub fn agemo(pres: &PcPresentation, h: &Subgroup, k: u32, caps: &Caps) -> Result<Subgroup> {
    if k == 0 {
        return Ok(h.clone());
    }
    let e = (pres.prime() as u64).pow(k);
    let powers: Vec<Element> = h
        .elements(pres, caps)?
        .iter()
        .map(|x| pres.pow(x, e))
        .filter(|x| !x.is_identity())
        .collect();
    Ok(subgroup_generated(pres, &powers))
}

/// Intersection of two subgroups, by enumerating the smaller one.
pub fn intersection(
    pres: &PcPresentation,
    h: &Subgroup,
    k: &Subgroup,
    caps: &Caps,
) -> Result<Subgroup> {
    let (small, big) = if h.rank() <= k.rank() { (h, k) } else { (k, h) };
    let common: Vec<Element> = small
        .elements(pres, caps)?
        .into_iter()
        .filter(|x| big.contains(pres, x))
        .collect();
    Ok(subgroup_generated(pres, &common))
}

/// A quotient `G/N` together with the data needed to project elements.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub presentation: PcPresentation,
    /// Parent generator positions that survive in the quotient.
    pub keep: Vec<usize>,
    pub kernel: Subgroup,
}

impl Quotient {
    /// Image of a parent element in the quotient presentation.
    pub fn project(&self, parent: &PcPresentation, x: &Element) -> Element {
        let r = reduce_mod(parent, &self.kernel, x);
        Element::from_exps(self.keep.iter().map(|&k| r.exps()[k]).collect())
    }

    /// A parent element mapping to `y`.
    pub fn lift(&self, parent: &PcPresentation, y: &Element) -> Element {
        let mut exps = vec![0u8; parent.ngens()];
        for (a, &k) in self.keep.iter().enumerate() {
            exps[k] = y.exps()[a];
        }
        Element::from_exps(exps)
    }

    /// Preimage of a quotient subgroup.
    pub fn preimage(&self, parent: &PcPresentation, s: &Subgroup) -> Subgroup {
        let mut gens: Vec<Element> = s.igs().iter().map(|y| self.lift(parent, y)).collect();
        gens.extend(self.kernel.igs().iter().cloned());
        subgroup_generated(parent, &gens)
    }
}

/// Right-multiplies `x` by kernel elements until its exponents at all
/// kernel depths vanish; this picks a unique representative of `xN`.
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

/// `G/N` with its projection.
pub fn quotient(pres: &PcPresentation, n: &Subgroup) -> Result<Quotient> {
    n.check_parent(pres)?;
    if !n.is_normal(pres) {
        return Err(Error::NotNormal);
    }
    let ndepths = n.depths();
    let keep: Vec<usize> = (0..pres.ngens()).filter(|k| !ndepths.contains(k)).collect();
    let m = keep.len();
    let proj = |x: &Element| -> Element {
        let r = reduce_mod(pres, n, x);
        Element::from_exps(keep.iter().map(|&k| r.exps()[k]).collect())
    };
    let mut b = PcPresentation::builder(pres.prime(), m);
    if !pres.name().is_empty() {
        b = b.name(format!("{}/N", pres.name()));
    }
    for (a, &k) in keep.iter().enumerate() {
        b.set_power(a, proj(pres.power_rel(k)));
        for (c, &l) in keep.iter().enumerate().take(a) {
            b.set_comm(a, c, proj(pres.comm_rel(k, l)));
        }
    }
    let presentation = b.build()?;
    Ok(Quotient {
        presentation,
        keep,
        kernel: n.clone(),
    })
}

/// Pc-presentation of `G/N`; errors if `N` is not normal.
pub fn quotient_group(pres: &PcPresentation, n: &Subgroup) -> Result<PcPresentation> {
    Ok(quotient(pres, n)?.presentation)
}

/// Pc-presentation of `H` on its igs.
pub fn subgroup_presentation(pres: &PcPresentation, h: &Subgroup) -> Result<PcPresentation> {
    h.check_parent(pres)?;
    let m = h.rank();
    let p = pres.prime() as u64;
    let coords = |x: &Element| -> Element {
        Element::from_exps(
            h.exponents_of(pres, x)
                .expect("closure keeps powers and commutators inside the subgroup"),
        )
    };
    let mut b = PcPresentation::builder(pres.prime(), m);
    for (i, u) in h.igs().iter().enumerate() {
        b.set_power(i, coords(&pres.pow(u, p)));
        for j in 0..i {
            b.set_comm(i, j, coords(&pres.comm(u, &h.igs()[j])));
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> PcPresentation {
        PcPresentation::parse("p 2\nn 3\ncomm 2 1 = g3\n").unwrap()
    }

    #[test]
    fn generated_subgroups_of_d8() {
        let g = d8();
        assert_eq!(subgroup_generated(&g, &[g.generator(2)]).order(), 2);
        assert_eq!(subgroup_generated(&g, &[g.generator(0), g.generator(1)]).order(), 8);
        assert_eq!(subgroup_generated(&g, &[]).order(), 1);
        // <g1 g2> is cyclic of order 4.
        let r = g.mul(&g.generator(0), &g.generator(1));
        let c = subgroup_generated(&g, &[r]);
        assert_eq!(c.order(), 4);
        assert!(c.is_normal(&g));
        assert!(!subgroup_generated(&g, &[g.generator(0)]).is_normal(&g));
    }

    #[test]
    fn igs_is_canonical() {
        let g = d8();
        let a = subgroup_generated(&g, &[g.mul(&g.generator(0), &g.generator(2)), g.generator(2)]);
        let b = subgroup_generated(&g, &[g.generator(0), g.generator(2)]);
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_by_center() {
        let g = d8();
        let z = subgroup_generated(&g, &[g.generator(2)]);
        let q = quotient(&g, &z).unwrap();
        assert_eq!(q.presentation.ngens(), 2);
        for x in q.presentation.elements() {
            assert!(q.presentation.pow(&x, 2).is_identity());
        }
        let proj = q.project(&g, &g.collect(&[(1, 1), (0, 1)]).unwrap());
        assert_eq!(proj.exps(), &[1, 1]);
        let h = subgroup_generated(&g, &[g.generator(0)]);
        assert_eq!(quotient(&g, &h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn subgroup_presentation_of_cyclic_four() {
        let g = d8();
        let r = g.mul(&g.generator(0), &g.generator(1));
        let c = subgroup_generated(&g, &[r]);
        let pc = subgroup_presentation(&g, &c).unwrap();
        assert_eq!(pc.ngens(), 2);
        assert_eq!(pc.power_rel(0).exps(), &[0, 1]);
    }

    #[test]
    fn exponents_roundtrip() {
        let g = d8();
        let c = Subgroup::whole(&g);
        for x in g.elements() {
            let e = c.exponents_of(&g, &x).unwrap();
            assert_eq!(e, x.exps());
        }
    }
}
