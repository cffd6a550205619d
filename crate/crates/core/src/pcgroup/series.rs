//! Standard subgroups and basic group properties.

use crate::caps::Caps;
use crate::error::Result;

use super::classes::center;
use super::presentation::{Element, PcPresentation};
use super::subgroup::{agemo, commutator_subgroup, normal_closure, Subgroup};

#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub center: Subgroup,
    pub derived: Subgroup,
    pub frattini: Subgroup,
    /// `γ_1 = G ⊇ γ_2 ⊇ ... ⊇ γ_{c+1} = 1`.
    pub lower_central: Vec<Subgroup>,
    /// `G, G^p, G^{p^2}, ...` ending with the trivial subgroup.
    pub agemo: Vec<Subgroup>,
}

pub fn derived_subgroup(pres: &PcPresentation) -> Subgroup {
    let g = pres.generators();
    let mut comms = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            comms.push(pres.comm(&g[j], &g[i]));
        }
    }
    normal_closure(pres, &comms)
}

/// `Φ(G) = G' G^p`: normal closure of generator commutators and generator
/// p-th powers.
pub fn frattini_subgroup(pres: &PcPresentation) -> Subgroup {
    let g = pres.generators();
    let mut gens: Vec<Element> = g.iter().map(|x| pres.pow(x, pres.prime() as u64)).collect();
    for j in 0..g.len() {
        for i in 0..j {
            gens.push(pres.comm(&g[j], &g[i]));
        }
    }
    normal_closure(pres, &gens)
}

/// Lower central series down to and including the trivial subgroup.
pub fn lower_central_series(pres: &PcPresentation) -> Vec<Subgroup> {
    let whole = Subgroup::whole(pres);
    let mut series = vec![whole.clone()];
    while !series.last().unwrap().is_trivial() {
        let next = commutator_subgroup(pres, series.last().unwrap(), &whole);
        if &next == series.last().unwrap() {
            // Cannot happen for p-groups; guards against a malformed input.
            break;
        }
        series.push(next);
    }
    series
}

pub fn agemo_series(pres: &PcPresentation, caps: &Caps) -> Result<Vec<Subgroup>> {
    let whole = Subgroup::whole(pres);
    let mut out = vec![whole.clone()];
    let mut k = 1;
    while !out.last().unwrap().is_trivial() {
        out.push(agemo(pres, &whole, k, caps)?);
        k += 1;
    }
    Ok(out)
}

pub fn standard_subgroups(pres: &PcPresentation, caps: &Caps) -> Result<SubgroupRecord> {
    Ok(SubgroupRecord {
        center: center(pres, caps)?,
        derived: derived_subgroup(pres),
        frattini: frattini_subgroup(pres),
        lower_central: lower_central_series(pres),
        agemo: agemo_series(pres, caps)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProps {
    pub exponent: u64,
    pub nilpotency_class: usize,
    pub min_generators: usize,
    pub is_maximal_class: bool,
}

pub fn nilpotency_class(pres: &PcPresentation) -> usize {
    lower_central_series(pres).len() - 1
}

pub fn exponent(pres: &PcPresentation, caps: &Caps) -> Result<u64> {
    caps.check("exponent", pres.order_u128(), caps.enumerate)?;
    Ok(pres.elements().map(|x| pres.element_order(&x)).max().unwrap_or(1))
}

pub fn group_props(pres: &PcPresentation, caps: &Caps) -> Result<GroupProps> {
    let class = nilpotency_class(pres);
    let n = pres.ngens();
    Ok(GroupProps {
        exponent: exponent(pres, caps)?,
        nilpotency_class: class,
        min_generators: n - frattini_subgroup(pres).rank(),
        is_maximal_class: n >= 2 && class == n - 1,
    })
}
