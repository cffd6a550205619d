//! Group-theoretical invariants of the modular group algebra, collected
//! into a fingerprint, and binning of group lists by fingerprint.

mod quillen;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::jennings::jennings_series;
use crate::pcgroup::{
    abelian_invariants, agemo, center, centralizer, class_data, commutator_subgroup,
    derived_subgroup, exponent, frattini_subgroup, intersection, is_abelian,
    is_isomorphic_groups, join, lower_central_series, nilpotency_class, quotient_group,
    subgroup_generated, subgroup_presentation, Element, PcPresentation, Subgroup,
};
use crate::smallring::baginski_quotient;

pub use quillen::{maximal_elementary_abelian, quillen_invariant};

/// Flag reported with entry (j): the counts are taken over classes of equal
/// class size.
pub const PP_MILIES_INTERPRETATION: &str = "class_size";

#[derive(Clone, Debug)]
pub enum Datum {
    Ints(Vec<u64>),
    /// Isomorphism types, resolved to codes when fingerprints are compared.
    Groups(Vec<PcPresentation>),
}

#[derive(Clone, Debug)]
pub enum Entry<T> {
    Value(T),
    /// A conditional entry whose hypothesis holds.
    Applicable(T),
    NotApplicable,
    /// A cap or budget stopped the computation.
    Uncomputed(String),
}

#[derive(Clone, Debug)]
pub struct Fingerprint {
    pub name: String,
    pub prime: u32,
    pub order: u128,
    pub entries: Vec<(String, Entry<Datum>)>,
}

/// A group type code: the order and a per-run bucket label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeCode {
    pub order: u128,
    pub code: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coded {
    Ints(Vec<u64>),
    Types(Vec<TypeCode>),
}

#[derive(Clone, Debug)]
pub struct CodedFingerprint {
    pub name: String,
    pub prime: u32,
    pub order: u128,
    pub entries: Vec<(String, Entry<Coded>)>,
}

fn sub_coords(pres: &PcPresentation, h: &Subgroup, x: &Element) -> Element {
    Element::from_exps(h.exponents_of(pres, x).expect("element lies in the subgroup"))
}

/// `H/K` for `K ⊆ H`, `K` normal in `H`.
fn section(pres: &PcPresentation, h: &Subgroup, k: &Subgroup) -> Result<PcPresentation> {
    let sp = subgroup_presentation(pres, h)?;
    let gens: Vec<Element> = k.igs().iter().map(|x| sub_coords(pres, h, x)).collect();
    let kk = subgroup_generated(&sp, &gens);
    quotient_group(&sp, &kk)
}

/// `Φ(H) = H^p [H, H]` as a subgroup of the parent.
fn frattini_of(pres: &PcPresentation, h: &Subgroup, caps: &Caps) -> Result<Subgroup> {
    let powers = agemo(pres, h, 1, caps)?;
    Ok(join(pres, &powers, &commutator_subgroup(pres, h, h)))
}

fn gamma(lcs: &[Subgroup], i: usize) -> Subgroup {
    lcs.get(i - 1)
        .cloned()
        .unwrap_or_else(|| lcs.last().unwrap().clone())
}

fn ints(v: Vec<u64>) -> Entry<Datum> {
    Entry::Value(Datum::Ints(v))
}

fn group(g: PcPresentation) -> Entry<Datum> {
    Entry::Value(Datum::Groups(vec![g]))
}

fn conditional(holds: bool, value: impl FnOnce() -> Result<Datum>) -> Result<Entry<Datum>> {
    if holds {
        Ok(Entry::Applicable(value()?))
    } else {
        Ok(Entry::NotApplicable)
    }
}

struct Ctx<'a> {
    pres: &'a PcPresentation,
    caps: &'a Caps,
    lcs: Vec<Subgroup>,
    derived: Subgroup,
    p: u64,
}

impl Ctx<'_> {
    fn class_counts(&self, same_size: bool) -> Result<Vec<u64>> {
        let cd = class_data(self.pres, self.caps)?;
        let exp = exponent(self.pres, self.caps)?;
        let mut out = Vec::new();
        let mut q = 1u64;
        let mut n = 0;
        loop {
            let images: Vec<usize> = cd
                .classes
                .iter()
                .map(|c| {
                    let y = self.pres.pow(&c.rep, q);
                    cd.class_of[crate::pcgroup::element_index(self.pres.prime(), &y)]
                })
                .collect();
            if same_size {
                if n > 0 {
                    // Classes C for which some class C' with |C'| = |C|
                    // powers into C.
                    let hit = (0..cd.classes.len())
                        .filter(|&c| {
                            images
                                .iter()
                                .enumerate()
                                .any(|(src, &img)| img == c && cd.classes[src].size == cd.classes[c].size)
                        })
                        .count();
                    out.push(hit as u64);
                }
            } else {
                let mut distinct = images.clone();
                distinct.sort_unstable();
                distinct.dedup();
                out.push(distinct.len() as u64);
            }
            if q >= exp {
                break;
            }
            q *= self.p;
            n += 1;
        }
        Ok(out)
    }

    fn roggenkamp(&self) -> Result<u64> {
        let cd = class_data(self.pres, self.caps)?;
        let mut sum = 0;
        for c in &cd.classes {
            let cent = centralizer(self.pres, &c.rep, self.caps)?;
            let phi = frattini_of(self.pres, &cent, self.caps)?;
            sum += (cent.rank() - phi.rank()) as u64;
        }
        Ok(sum)
    }

    fn derived_is_cyclic(&self) -> bool {
        self.derived.rank() <= 1 || {
            let sp = subgroup_presentation(self.pres, &self.derived).expect("subgroup");
            sp.ngens() - frattini_subgroup(&sp).rank() <= 1
        }
    }

    /// Largest order of a cyclic subgroup containing `G'` (`G'` cyclic).
    fn max_cyclic_over_derived(&self) -> Result<u64> {
        self.caps.check("element enumeration", self.pres.order_u128(), self.caps.enumerate)?;
        let gen = self
            .derived
            .igs()
            .first()
            .cloned()
            .unwrap_or_else(|| self.pres.identity());
        let mut best = 1;
        for x in self.pres.elements() {
            let cyc = subgroup_generated(self.pres, std::slice::from_ref(&x));
            if cyc.contains(self.pres, &gen) {
                best = best.max(cyc.order() as u64);
            }
        }
        Ok(best)
    }

    /// `C = C_G(G'/Φ(G'))`.
    fn derived_centralizer(&self, phi_d: &Subgroup) -> Result<Subgroup> {
        self.caps.check("element enumeration", self.pres.order_u128(), self.caps.enumerate)?;
        let members: Vec<Element> = self
            .pres
            .elements()
            .filter(|g| {
                self.derived
                    .igs()
                    .iter()
                    .all(|u| phi_d.contains(self.pres, &self.pres.comm(g, u)))
            })
            .collect();
        Ok(subgroup_generated(self.pres, &members))
    }
}

fn catch(r: Result<Entry<Datum>>) -> Entry<Datum> {
    r.unwrap_or_else(|e| Entry::Uncomputed(e.to_string()))
}

/// Computes every entry of the fingerprint. Entries stopped by a cap are
/// recorded as [`Entry::Uncomputed`].
pub fn fingerprint(pres: &PcPresentation, caps: &Caps) -> Fingerprint {
    let ctx = Ctx {
        pres,
        caps,
        lcs: lower_central_series(pres),
        derived: derived_subgroup(pres),
        p: pres.prime() as u64,
    };
    let g = &ctx;
    let mut entries: Vec<(String, Entry<Datum>)> = Vec::new();
    let mut add = |key: &str, e: Result<Entry<Datum>>| entries.push((key.to_string(), catch(e)));

    add("a.frattini_quotient", (|| {
        Ok(ints(abelian_invariants(&quotient_group(pres, &frattini_subgroup(pres))?)?))
    })());
    add("b.abelianization", (|| {
        Ok(ints(abelian_invariants(&quotient_group(pres, &g.derived)?)?))
    })());
    let z = center(pres, caps);
    add("c.center", (|| {
        let z = z.clone()?;
        Ok(ints(abelian_invariants(&subgroup_presentation(pres, &z)?)?))
    })());
    add("d.sandling_quotient", (|| {
        let n = join(pres, &agemo(pres, &gamma(&g.lcs, 2), 1, caps)?, &gamma(&g.lcs, 3));
        Ok(group(quotient_group(pres, &n)?))
    })());
    let jd = jennings_series(pres, caps);
    add("e.jennings_layers", (|| {
        let jd = jd.clone()?;
        Ok(ints(jd.graded_dims.iter().map(|&d| d as u64).collect()))
    })());
    add("e.jennings_two_step", (|| {
        let jd = jd.clone()?;
        let qs = (1..jd.length())
            .map(|i| section(pres, jd.term(i), jd.term(i + 2)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Entry::Value(Datum::Groups(qs)))
    })());
    add("e.jennings_doubling", (|| {
        let jd = jd.clone()?;
        let qs = (1..jd.length())
            .map(|i| section(pres, jd.term(i), jd.term(2 * i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Entry::Value(Datum::Groups(qs)))
    })());
    add("f.power_classes", g.class_counts(false).map(ints));
    add("g.roggenkamp", g.roggenkamp().map(|s| ints(vec![s])));
    add("h.quillen", quillen_invariant(pres, caps).map(|q| ints(vec![q as u64])));
    add("i.jennings_quotient_d4", (|| {
        let jd = jd.clone()?;
        conditional(g.p != 2, || {
            Ok(Datum::Groups(vec![quotient_group(pres, jd.term(4))?]))
        })
    })());
    add("j.pp_milies", g.class_counts(true).map(ints));

    let class = nilpotency_class(pres);
    let derived_elem_ab = (|| -> Result<bool> {
        Ok(agemo(pres, &g.derived, 1, caps)?.is_trivial()
            && commutator_subgroup(pres, &g.derived, &g.derived).is_trivial())
    })();
    add("k.frattini_type", (|| {
        let holds = derived_elem_ab.clone()? && gamma(&g.lcs, 2 * g.p as usize).is_trivial();
        conditional(holds, || {
            Ok(Datum::Groups(vec![subgroup_presentation(pres, &frattini_subgroup(pres))?]))
        })
    })());
    let cyclic_derived = g.derived_is_cyclic();
    add("l.cyclic_over_derived", conditional(cyclic_derived, || {
        Ok(Datum::Ints(vec![g.max_cyclic_over_derived()?]))
    }));
    add("m.derived_centralizer", (|| {
        let phi_d = frattini_of(pres, &g.derived, caps)?;
        let c = g.derived_centralizer(&phi_d)?;
        let top = quotient_group(pres, &c)?;
        let holds = is_abelian(&top) && abelian_invariants(&top)?.len() <= 1;
        conditional(holds, || {
            let phi_c = frattini_of(pres, &c, caps)?;
            Ok(Datum::Groups(vec![
                section(pres, &c, &phi_d)?,
                quotient_group(pres, &phi_c)?,
            ]))
        })
    })());
    add("n.derived_center", (|| {
        let z = z.clone()?;
        let dz = intersection(pres, &g.derived, &z, caps)?;
        let mut v = abelian_invariants(&subgroup_presentation(pres, &dz)?)?;
        v.push(0);
        v.extend(abelian_invariants(&section(pres, &z, &dz)?)?);
        Ok(ints(v))
    })());
    add("o.central_quotient", (|| {
        let z = z.clone()?;
        conditional(class == 2, || Ok(Datum::Groups(vec![quotient_group(pres, &z)?])))
    })());
    add("p.derived_jennings", (|| {
        let sp = subgroup_presentation(pres, &g.derived)?;
        let jd = jennings_series(&sp, caps)?;
        Ok(ints(jd.graded_dims.iter().map(|&d| d as u64).collect()))
    })());
    add("q.class_mod_derived_frattini", (|| {
        let phi_d = frattini_of(pres, &g.derived, caps)?;
        Ok(ints(vec![nilpotency_class(&quotient_group(pres, &phi_d)?) as u64]))
    })());
    add("r.nilpotency_class", (|| {
        let n = pres.ngens();
        let holds = exponent(pres, caps)? == g.p
            || class == 2
            || cyclic_derived
            || (n >= 2 && class == n - 1);
        conditional(holds, || Ok(Datum::Ints(vec![class as u64])))
    })());
    add("s.baginski_quotient", (|| {
        let d = pres.ngens() - frattini_subgroup(pres).rank();
        conditional(d == 2, || Ok(Datum::Groups(vec![baginski_quotient(pres)?])))
    })());
    Fingerprint {
        name: pres.name().to_string(),
        prime: pres.prime(),
        order: pres.order_u128(),
        entries,
    }
}

/// Assigns per-run type codes: groups are bucketed by pairwise isomorphism
/// tests in the order they are first seen. A test that cannot be decided
/// merges the two buckets' labels, which can only hide a difference.
#[derive(Default)]
pub struct TypeRegistry {
    reps: BTreeMap<u128, Vec<PcPresentation>>,
}

impl TypeRegistry {
    pub fn new() -> TypeRegistry {
        TypeRegistry::default()
    }

    pub fn code(&mut self, g: &PcPresentation, caps: &Caps) -> TypeCode {
        let order = g.order_u128();
        let reps = self.reps.entry(order).or_default();
        for (i, r) in reps.iter().enumerate() {
            if r.prime() != g.prime() {
                continue;
            }
            match is_isomorphic_groups(r, g, caps) {
                Ok(false) => {}
                Ok(true) | Err(_) => return TypeCode { order, code: i + 1 },
            }
        }
        reps.push(g.clone());
        TypeCode {
            order,
            code: reps.len(),
        }
    }
}

fn code_datum(d: &Datum, reg: &mut TypeRegistry, caps: &Caps) -> Coded {
    match d {
        Datum::Ints(v) => Coded::Ints(v.clone()),
        Datum::Groups(gs) => Coded::Types(gs.iter().map(|g| reg.code(g, caps)).collect()),
    }
}

/// Resolves the group-valued entries of `fps` to codes shared by the whole
/// list.
pub fn code_fingerprints(fps: &[Fingerprint], caps: &Caps) -> Vec<CodedFingerprint> {
    let mut reg = TypeRegistry::new();
    fps.iter()
        .map(|fp| CodedFingerprint {
            name: fp.name.clone(),
            prime: fp.prime,
            order: fp.order,
            entries: fp
                .entries
                .iter()
                .map(|(k, e)| {
                    let coded = match e {
                        Entry::Value(d) => Entry::Value(code_datum(d, &mut reg, caps)),
                        Entry::Applicable(d) => Entry::Applicable(code_datum(d, &mut reg, caps)),
                        Entry::NotApplicable => Entry::NotApplicable,
                        Entry::Uncomputed(m) => Entry::Uncomputed(m.clone()),
                    };
                    (k.clone(), coded)
                })
                .collect(),
        })
        .collect()
}

/// Whether two entries separate their groups. Uncomputed entries and
/// conditional entries whose hypothesis fails on either side never do.
pub fn entries_differ(a: &Entry<Coded>, b: &Entry<Coded>) -> bool {
    match (a, b) {
        (Entry::Value(x), Entry::Value(y)) => x != y,
        (Entry::Applicable(x), Entry::Applicable(y)) => x != y,
        _ => false,
    }
}

/// Keys of the entries on which two fingerprints differ.
pub fn differing_entries(a: &CodedFingerprint, b: &CodedFingerprint) -> Vec<String> {
    let bmap: BTreeMap<&str, &Entry<Coded>> = b.entries.iter().map(|(k, e)| (k.as_str(), e)).collect();
    a.entries
        .iter()
        .filter(|(k, e)| bmap.get(k.as_str()).is_some_and(|f| entries_differ(e, f)))
        .map(|(k, _)| k.clone())
        .collect()
}

/// Fingerprints `g` and `h` together and returns the separating keys.
pub fn compare_groups(g: &PcPresentation, h: &PcPresentation, caps: &Caps) -> Vec<String> {
    let fps = [fingerprint(g, caps), fingerprint(h, caps)];
    let coded = code_fingerprints(&fps, caps);
    differing_entries(&coded[0], &coded[1])
}

#[derive(Clone, Debug)]
pub struct Binning {
    pub fingerprints: Vec<CodedFingerprint>,
    /// Cells of the partition as indices into the input, each sorted, cells
    /// ordered by their first member.
    pub bins: Vec<Vec<usize>>,
}

impl Binning {
    pub fn singletons(&self) -> impl Iterator<Item = usize> + '_ {
        self.bins.iter().filter(|b| b.len() == 1).map(|b| b[0])
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partitions `groups` into bins. Two groups share a bin when they are
/// linked by a chain of pairs whose fingerprints do not differ (the
/// comparison ignores uncomputed and inapplicable entries, so it is not
/// transitive on its own).
pub fn bin_groups(groups: &[PcPresentation], caps: &Caps) -> Result<Binning> {
    if let Some(first) = groups.first() {
        if groups
            .iter()
            .any(|g| g.prime() != first.prime() || g.order_u128() != first.order_u128())
        {
            return Err(Error::Mismatch("groups have different orders".into()));
        }
    }
    let fps: Vec<Fingerprint> = groups.par_iter().map(|g| fingerprint(g, caps)).collect();
    let coded = code_fingerprints(&fps, caps);
    let n = groups.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if differing_entries(&coded[i], &coded[j]).is_empty() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        cells.entry(r).or_default().push(i);
    }
    Ok(Binning {
        fingerprints: coded,
        bins: cells.into_values().collect(),
    })
}

fn show_coded(c: &Coded) -> String {
    match c {
        Coded::Ints(v) => format!(
            "[{}]",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        ),
        Coded::Types(v) => {
            let parts: Vec<String> = v.iter().map(|t| format!("{}#{}", t.order, t.code)).collect();
            if parts.len() == 1 {
                parts[0].clone()
            } else {
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

/// `key = value` lines for one fingerprint.
pub fn format_fingerprint(fp: &CodedFingerprint) -> String {
    let mut out = String::new();
    writeln!(out, "group = {}", fp.name).unwrap();
    writeln!(out, "order = {}", fp.order).unwrap();
    for (k, e) in &fp.entries {
        let v = match e {
            Entry::Value(c) | Entry::Applicable(c) => show_coded(c),
            Entry::NotApplicable => "n/a".to_string(),
            Entry::Uncomputed(m) => format!("uncomputed ({m})"),
        };
        writeln!(out, "{k} = {v}").unwrap();
        if k == "j.pp_milies" {
            writeln!(out, "j.pp_milies_interpretation = {PP_MILIES_INTERPRETATION}").unwrap();
        }
    }
    out
}

/// Partition block: one line per bin, singletons marked as solved.
pub fn format_bins(b: &Binning) -> String {
    let mut out = String::new();
    for (i, cell) in b.bins.iter().enumerate() {
        let names: Vec<&str> = cell.iter().map(|&k| b.fingerprints[k].name.as_str()).collect();
        let tag = if cell.len() == 1 {
            "solved by invariants"
        } else {
            "open"
        };
        writeln!(out, "bin {} ({tag}): {}", i + 1, names.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn value<'a>(fp: &'a CodedFingerprint, key: &str) -> &'a Entry<Coded> {
        &fp.entries.iter().find(|(k, _)| k == key).unwrap().1
    }

    #[test]
    fn cyclic_and_klein_differ_at_frattini_quotient() {
        let caps = Caps::default();
        let diff = compare_groups(&corpus::cyclic(2, 2), &corpus::elementary_abelian(2, 2), &caps);
        assert!(diff.contains(&"a.frattini_quotient".to_string()));
    }

    #[test]
    fn extraspecial_pair_differs_in_power_classes() {
        let caps = Caps::default();
        let fps = [
            fingerprint(&corpus::heisenberg(3), &caps),
            fingerprint(&corpus::extraspecial_exp_p2(3), &caps),
        ];
        let coded = code_fingerprints(&fps, &caps);
        assert!(differing_entries(&coded[0], &coded[1]).contains(&"f.power_classes".to_string()));
        // Exponent 3: cubes are trivial. Exponent 9: cubes fill the center.
        assert!(matches!(value(&coded[0], "f.power_classes"), Entry::Value(Coded::Ints(v)) if v[1] == 1));
        assert!(matches!(value(&coded[1], "f.power_classes"), Entry::Value(Coded::Ints(v)) if v[1] == 3));
    }

    #[test]
    fn dihedral_and_quaternion() {
        let caps = Caps::default();
        let coded = code_fingerprints(
            &[fingerprint(&corpus::d8(), &caps), fingerprint(&corpus::q8(), &caps)],
            &caps,
        );
        let diff = differing_entries(&coded[0], &coded[1]);
        for key in ["a.frattini_quotient", "b.abelianization", "c.center", "f.power_classes"] {
            assert!(!diff.contains(&key.to_string()), "{key}");
        }
        assert!(matches!(value(&coded[0], "f.power_classes"), Entry::Value(Coded::Ints(v)) if v[0] == 5));
        assert_eq!(quillen_invariant(&corpus::d8(), &caps).unwrap(), 2);
        assert_eq!(quillen_invariant(&corpus::q8(), &caps).unwrap(), 1);
        assert!(diff.contains(&"h.quillen".to_string()));
    }

    #[test]
    fn conditional_entries_need_both_hypotheses() {
        let a = Entry::Applicable(Coded::Ints(vec![1]));
        let b = Entry::Applicable(Coded::Ints(vec![2]));
        assert!(entries_differ(&a, &b));
        assert!(!entries_differ(&a, &Entry::NotApplicable));
        assert!(!entries_differ(&Entry::Uncomputed("cap".into()), &b));
    }

    #[test]
    fn binning() {
        let caps = Caps::default();
        let one = bin_groups(&[corpus::d8()], &caps).unwrap();
        assert_eq!(one.bins, vec![vec![0]]);
        assert!(bin_groups(&[corpus::d8(), corpus::cyclic(2, 2)], &caps).is_err());
        let g27 = corpus::groups_of_order(3, 3, &caps).unwrap();
        let b = bin_groups(&g27, &caps).unwrap();
        let big: Vec<_> = b.bins.iter().filter(|c| c.len() > 1).collect();
        assert!(big.len() <= 1 && big.iter().all(|c| c.len() <= 2));
    }

    #[test]
    fn report_lines() {
        let caps = Caps::default();
        let b = bin_groups(&[corpus::d8(), corpus::q8()], &caps).unwrap();
        let text = format_fingerprint(&b.fingerprints[0]);
        assert!(text.starts_with("group = D8\norder = 8\na.frattini_quotient = [2, 2]\n"));
        assert!(text.contains("j.pp_milies_interpretation = class_size\n"));
        assert!(text.contains("i.jennings_quotient_d4 = n/a\n"));
        assert_eq!(
            format_bins(&b),
            "bin 1 (solved by invariants): D8\nbin 2 (solved by invariants): Q8\n"
        );
    }
}
