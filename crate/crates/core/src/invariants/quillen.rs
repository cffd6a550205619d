//! Maximal elementary abelian subgroups.

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::pcgroup::{subgroup_generated, Element, PcPresentation, Subgroup};

/// All maximal elementary abelian subgroups, found by extending cyclic
/// subgroups of order `p` one commuting element at a time.
pub fn maximal_elementary_abelian(pres: &PcPresentation, caps: &Caps) -> Result<Vec<Subgroup>> {
    caps.check("element enumeration", pres.order_u128(), caps.enumerate)?;
    let p = pres.prime() as u64;
    let order_p: Vec<Element> = pres
        .elements()
        .filter(|x| pres.element_order(x) == p)
        .collect();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for x in &order_p {
        let e = subgroup_generated(pres, std::slice::from_ref(x));
        if seen.insert(e.clone()) {
            frontier.push(e);
        }
    }
    let mut maximal = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in frontier {
            let mut extended = false;
            for x in &order_p {
                if e.contains(pres, x) || e.igs().iter().any(|u| pres.mul(u, x) != pres.mul(x, u)) {
                    continue;
                }
                extended = true;
                let mut gens = e.igs().to_vec();
                gens.push(x.clone());
                let f = subgroup_generated(pres, &gens);
                if seen.insert(f.clone()) {
                    if seen.len() > caps.subgroups {
                        return Err(Error::CapExceeded {
                            what: "elementary abelian subgroups",
                            size: seen.len() as u128,
                            cap: caps.subgroups as u64,
                        });
                    }
                    next.push(f);
                }
            }
            if !extended {
                maximal.push(e);
            }
        }
        frontier = next;
    }
    maximal.sort_by_key(|e| e.igs().to_vec());
    Ok(maximal)
}

fn conjugate(pres: &PcPresentation, e: &Subgroup, g: &Element) -> Subgroup {
    let gens: Vec<Element> = e.igs().iter().map(|u| pres.conj(u, g)).collect();
    subgroup_generated(pres, &gens)
}

/// Number of conjugacy classes of maximal elementary abelian subgroups.
pub fn quillen_invariant(pres: &PcPresentation, caps: &Caps) -> Result<usize> {
    let maximal = maximal_elementary_abelian(pres, caps)?;
    let mut assigned: HashSet<Subgroup> = HashSet::new();
    let mut classes = 0;
    for e in maximal {
        if assigned.contains(&e) {
            continue;
        }
        classes += 1;
        let mut stack = vec![e.clone()];
        assigned.insert(e);
        while let Some(f) = stack.pop() {
            for g in pres.generators() {
                let h = conjugate(pres, &f, &g);
                if assigned.insert(h.clone()) {
                    stack.push(h);
                }
            }
        }
    }
    Ok(classes)
}
