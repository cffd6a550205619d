//! Conjugacy classes, centralizers and the center, by enumeration.

use crate::caps::Caps;
use crate::error::Result;

use super::presentation::{Element, PcPresentation};
use super::subgroup::{subgroup_generated, Subgroup};

/// Position of `x` in the lexicographic enumeration of the group.
pub fn element_index(p: u32, x: &Element) -> usize {
    x.exps()
        .iter()
        .fold(0usize, |acc, &e| acc * p as usize + e as usize)
}

pub fn element_at(p: u32, ngens: usize, mut idx: usize) -> Element {
    let mut exps = vec![0u8; ngens];
    for k in (0..ngens).rev() {
        exps[k] = (idx % p as usize) as u8;
        idx /= p as usize;
    }
    Element::from_exps(exps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lexicographically least member.
    pub rep: Element,
    pub size: usize,
}

/// Full class data: classes sorted by representative, their members, and
/// the class index of every element (by [`element_index`]).
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub members: Vec<Vec<Element>>,
    pub class_of: Vec<usize>,
}

pub fn class_data(pres: &PcPresentation, caps: &Caps) -> Result<ClassData> {
    caps.check("conjugacy classes", pres.order_u128(), caps.enumerate)?;
    let p = pres.prime();
    let total = pres.order_u128() as usize;
    let gens = pres.generators();
    let mut class_of = vec![usize::MAX; total];
    let mut members = Vec::new();
    // Elements are visited in lex order, so the first unseen element of each
    // orbit is its least member.
    for start in 0..total {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let first = element_at(p, pres.ngens(), start);
        class_of[start] = id;
        let mut orbit = vec![first];
        let mut i = 0;
        while i < orbit.len() {
            for g in &gens {
                let y = pres.conj(&orbit[i], g);
                let yi = element_index(p, &y);
                if class_of[yi] == usize::MAX {
                    class_of[yi] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort();
        members.push(orbit);
    }
    let classes = members
        .iter()
        .map(|m| ConjugacyClass {
            rep: m[0].clone(),
            size: m.len(),
        })
        .collect();
    Ok(ClassData {
        classes,
        members,
        class_of,
    })
}

/// Conjugacy classes with lexicographically least representatives, sorted
/// by representative.
pub fn conjugacy_classes(pres: &PcPresentation, caps: &Caps) -> Result<Vec<ConjugacyClass>> {
    Ok(class_data(pres, caps)?.classes)
}

/// `C_G(x)`.
pub fn centralizer(pres: &PcPresentation, x: &Element, caps: &Caps) -> Result<Subgroup> {
    pres.validate(x)?;
    caps.check("centralizer", pres.order_u128(), caps.enumerate)?;
    let comm: Vec<Element> = pres
        .elements()
        .filter(|y| pres.mul(x, y) == pres.mul(y, x))
        .collect();
    Ok(subgroup_generated(pres, &comm))
}

/// `Z(G)`: elements commuting with every pc generator.
pub fn center(pres: &PcPresentation, caps: &Caps) -> Result<Subgroup> {
    caps.check("center", pres.order_u128(), caps.enumerate)?;
    let gens = pres.generators();
    let central: Vec<Element> = pres
        .elements()
        .filter(|y| gens.iter().all(|g| pres.mul(g, y) == pres.mul(y, g)))
        .collect();
    Ok(subgroup_generated(pres, &central))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d8_classes() {
        let g = PcPresentation::parse("p 2\nn 3\ncomm 2 1 = g3\n").unwrap();
        let caps = Caps::default();
        let cl = conjugacy_classes(&g, &caps).unwrap();
        let mut sizes: Vec<usize> = cl.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(cl[0].rep, g.identity());
        assert_eq!(centralizer(&g, &g.generator(0), &caps).unwrap().order(), 4);
        assert_eq!(centralizer(&g, &g.generator(2), &caps).unwrap().order(), 8);
        assert_eq!(center(&g, &caps).unwrap().igs(), &[g.generator(2)]);
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..27 {
            assert_eq!(element_index(3, &element_at(3, 3, i)), i);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = PcPresentation::parse("p 2\nn 3\n").unwrap();
        let caps = Caps {
            enumerate: 4,
            ..Caps::default()
        };
        assert!(conjugacy_classes(&g, &caps).is_err());
    }
}
