//! Bin splitting: compare canonical forms of `I(kG)/I(kG)^i` for growing
//! `i`, extending the truncated tables in steps, and report how the split
//! levels relate to the Jennings bounds.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algtable::{build_aug_table_with, extend_table, SCTable};
use crate::canon::canonical_form;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::invariants::bin_groups;
use crate::jennings::{jennings_bound_with, jennings_series, JenningsData};
use crate::pcgroup::PcPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All certificates at this level are pairwise distinct.
    Split(usize),
    /// No level up to this one separated every pair.
    Unresolved(usize),
    /// The bin was a singleton after binning by invariants.
    SolvedByInvariants,
}

/// Start level, step and maximal level. A start of 0 means one more than
/// the largest pairwise Jennings bound; a maximum of 0 means the largest
/// nilpotency index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitParams {
    pub start: usize,
    pub step: usize,
    pub max: usize,
}

impl Default for SplitParams {
    fn default() -> Self {
        SplitParams {
            start: 0,
            step: 2,
            max: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub names: Vec<String>,
    pub prime: u32,
    pub verdict: Verdict,
    /// `(level, digest per group)` for every level compared.
    pub digests: Vec<(usize, Vec<String>)>,
    /// Pairwise Jennings bounds (`None` on the diagonal or when undecided).
    pub jennings_bounds: Vec<Vec<Option<usize>>>,
    /// Smallest `n` with `D_{n+1}(G) = 1`, per group.
    pub dimension_lengths: Vec<usize>,
    pub params: SplitParams,
    /// Partition by equal certificates at the last compared level.
    pub partition: Vec<Vec<usize>>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SplitResult {
    /// First level at which groups `i` and `j` have different certificates.
    pub fn pair_split_level(&self, i: usize, j: usize) -> Option<usize> {
        self.digests
            .iter()
            .find(|(_, d)| d[i] != d[j])
            .map(|(level, _)| *level)
    }
}

fn partition_by(digests: &[String]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, d) in digests.iter().enumerate() {
        match cells.iter_mut().find(|c| &digests[c[0]] == d) {
            Some(c) => c.push(i),
            None => cells.push(vec![i]),
        }
    }
    cells
}

const ZERO_ALGEBRA: &str = "zero";

/// Runs the level loop on `groups`: build tables of `I/I^s`, then for
/// `i = 1..=m` extend the tables by `t` whenever `i` passes the current
/// truncation, compute the certificates of `I/I^i` and stop at the first
/// level where they are pairwise distinct.
pub fn mip_bin_split(groups: &[PcPresentation], params: SplitParams, caps: &Caps) -> Result<SplitResult> {
    let clock = Instant::now();
    if groups.len() < 2 {
        return Err(Error::Mismatch("need at least two groups".into()));
    }
    let first = &groups[0];
    if groups
        .iter()
        .any(|g| g.prime() != first.prime() || g.order_u128() != first.order_u128())
    {
        return Err(Error::Mismatch("groups have different orders".into()));
    }
    if params.step == 0 {
        return Err(Error::Level("step must be at least 1".into()));
    }
    let jds: Vec<JenningsData> = groups
        .par_iter()
        .map(|g| jennings_series(g, caps))
        .collect::<Result<_>>()?;
    let n = groups.len();
    let mut notes = Vec::new();
    let mut bounds = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..i {
            match jennings_bound_with(&groups[i], &jds[i], &groups[j], &jds[j], caps) {
                Ok(b) => {
                    bounds[i][j] = Some(b);
                    bounds[j][i] = Some(b);
                }
                Err(e) => notes.push(format!(
                    "jennings bound {} / {}: {e}",
                    groups[i].name(),
                    groups[j].name()
                )),
            }
        }
    }
    let max_bound = bounds.iter().flatten().flatten().copied().max().unwrap_or(1);
    let start = if params.start == 0 { max_bound + 1 } else { params.start };
    if start < 2 {
        return Err(Error::Level("start level must be at least 2".into()));
    }
    let max = if params.max == 0 {
        jds.iter().map(|j| j.nil_index).max().unwrap().max(start)
    } else {
        params.max
    };
    if max < start {
        return Err(Error::Level(format!("max level {max} below start level {start}")));
    }
    let params = SplitParams {
        start,
        step: params.step,
        max,
    };
    let mut result = SplitResult {
        names: groups.iter().map(|g| g.name().to_string()).collect(),
        prime: first.prime(),
        verdict: Verdict::Unresolved(0),
        digests: Vec::new(),
        jennings_bounds: bounds,
        dimension_lengths: jds.iter().map(|j| j.length() - 1).collect(),
        params,
        partition: vec![(0..n).collect()],
        notes,
        elapsed: Duration::ZERO,
    };

    let mut tables: Vec<SCTable> = match groups
        .par_iter()
        .zip(&jds)
        .map(|(g, jd)| build_aug_table_with(g, jd, start, caps))
        .collect::<Result<_>>()
    {
        Ok(t) => t,
        Err(e) => {
            result.notes.push(format!("building tables at level {start}: {e}"));
            result.elapsed = clock.elapsed();
            return Ok(result);
        }
    };
    let mut a = start;
    for i in 1..=max {
        if i > a {
            a += params.step;
            let extended: Result<Vec<SCTable>> = groups
                .par_iter()
                .zip(&tables)
                .map(|(g, t)| extend_table(g, t, a, caps))
                .collect();
            match extended {
                Ok(t) => tables = t,
                Err(e) => {
                    result.notes.push(format!("extending tables to level {a}: {e}"));
                    break;
                }
            }
        }
        let digests: Result<Vec<String>> = if i == 1 {
            Ok(vec![ZERO_ALGEBRA.to_string(); n])
        } else {
            tables
                .par_iter()
                .map(|t| canonical_form(t, i, caps).map(|c| c.digest()))
                .collect()
        };
        let digests = match digests {
            Ok(d) => d,
            Err(e) => {
                result.notes.push(format!("canonical forms at level {i}: {e}"));
                break;
            }
        };
        result.partition = partition_by(&digests);
        result.verdict = Verdict::Unresolved(i);
        result.digests.push((i, digests));
        if result.partition.len() == n {
            result.verdict = Verdict::Split(i);
            break;
        }
    }
    result.elapsed = clock.elapsed();
    Ok(result)
}

/// Bins `groups` by invariants and runs [`mip_bin_split`] on every bin with
/// more than one member. Bins are processed concurrently.
pub fn split_bins(groups: &[PcPresentation], params: SplitParams, caps: &Caps) -> Result<Vec<SplitResult>> {
    let binning = bin_groups(groups, caps)?;
    binning
        .bins
        .par_iter()
        .map(|cell| {
            let members: Vec<PcPresentation> = cell.iter().map(|&k| groups[k].clone()).collect();
            if members.len() == 1 {
                Ok(SplitResult {
                    names: vec![members[0].name().to_string()],
                    prime: members[0].prime(),
                    verdict: Verdict::SolvedByInvariants,
                    digests: Vec::new(),
                    jennings_bounds: vec![vec![None]],
                    dimension_lengths: Vec::new(),
                    params,
                    partition: vec![vec![0]],
                    notes: Vec::new(),
                    elapsed: Duration::ZERO,
                })
            } else {
                mip_bin_split(&members, params, caps)
            }
        })
        .collect()
}

/// One pair of a split bin, with the two open bounds evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub first: String,
    pub second: String,
    pub jennings_bound: Option<usize>,
    /// First level with different certificates.
    pub split_level: usize,
    /// Smallest `n` with `D_{n+1} = 1` for both groups' minimum.
    pub n: usize,
    /// `r <= 2n + 1`.
    pub within_2n_plus_1: bool,
    /// For odd `p`: `m = max(s, 2s - (p-1)/2)` and whether `r <= m + 1`.
    pub odd_bound: Option<(usize, bool)>,
}

/// Rows for every pair that some compared level separated.
pub fn bound_report(res: &SplitResult) -> Vec<BoundRow> {
    let n = res.names.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let Some(r) = res.pair_split_level(i, j) else {
                continue;
            };
            let s = res.jennings_bounds[i][j];
            let len = res.dimension_lengths[i].min(res.dimension_lengths[j]);
            let odd_bound = match s {
                Some(s) if res.prime % 2 == 1 => {
                    let half = (res.prime as usize - 1) / 2;
                    let m = s.max((2 * s).saturating_sub(half));
                    Some((m, r <= m + 1))
                }
                _ => None,
            };
            rows.push(BoundRow {
                first: res.names[i].clone(),
                second: res.names[j].clone(),
                jennings_bound: s,
                split_level: r,
                n: len,
                within_2n_plus_1: r <= 2 * len + 1,
                odd_bound,
            });
        }
    }
    rows
}

/// Stable text report of a split result and its bound rows.
pub fn format_split(res: &SplitResult) -> String {
    let mut out = String::new();
    writeln!(out, "bin = {}", res.names.join(" ")).unwrap();
    let verdict = match res.verdict {
        Verdict::Split(r) => format!("split {r}"),
        Verdict::Unresolved(m) => format!("unresolved {m}"),
        Verdict::SolvedByInvariants => "solved by invariants".to_string(),
    };
    writeln!(out, "verdict = {verdict}").unwrap();
    if res.verdict == Verdict::SolvedByInvariants {
        return out;
    }
    writeln!(
        out,
        "levels = start {} step {} max {}",
        res.params.start, res.params.step, res.params.max
    )
    .unwrap();
    for (i, row) in res.jennings_bounds.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, b)| match b {
                _ if i == j => "-".to_string(),
                Some(b) => b.to_string(),
                None => "?".to_string(),
            })
            .collect();
        writeln!(out, "jennings {} = {}", res.names[i], cells.join(" ")).unwrap();
    }
    for (level, digests) in &res.digests {
        let short: Vec<&str> = digests.iter().map(|d| &d[..d.len().min(16)]).collect();
        writeln!(out, "level {level} = {}", short.join(" ")).unwrap();
    }
    if !matches!(res.verdict, Verdict::Split(_)) && res.partition.len() > 1 {
        let cells: Vec<String> = res
            .partition
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&k| res.names[k].as_str()).collect();
                format!("{{{}}}", names.join(" "))
            })
            .collect();
        writeln!(out, "partition = {}", cells.join(" ")).unwrap();
    }
    for row in bound_report(res) {
        let s = row.jennings_bound.map_or("?".to_string(), |s| s.to_string());
        let mut line = format!(
            "pair {} {} : s = {s} r = {} n = {} r<=2n+1 = {}",
            row.first, row.second, row.split_level, row.n, row.within_2n_plus_1
        );
        if let Some((m, ok)) = row.odd_bound {
            write!(line, " m = {m} r<=m+1 = {ok}").unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    for note in &res.notes {
        writeln!(out, "note = {note}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn dihedral_and_quaternion_split_at_three() {
        let caps = Caps::default();
        let params = SplitParams {
            start: 3,
            step: 2,
            max: 6,
        };
        let res = mip_bin_split(&[corpus::d8(), corpus::q8()], params, &caps).unwrap();
        assert_eq!(res.verdict, Verdict::Split(3));
        assert_eq!(res.jennings_bounds[0][1], Some(2));
        let rows = bound_report(&res);
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].n, rows[0].split_level), (2, 3));
        assert!(rows[0].within_2n_plus_1);
    }

    #[test]
    fn cyclic_and_klein_split_at_two() {
        let caps = Caps::default();
        let params = SplitParams {
            start: 2,
            step: 1,
            max: 5,
        };
        let res = mip_bin_split(&[corpus::cyclic(2, 2), corpus::elementary_abelian(2, 2)], params, &caps)
            .unwrap();
        assert_eq!(res.verdict, Verdict::Split(2));
    }

    #[test]
    fn isomorphic_inputs_stay_unresolved() {
        let caps = Caps::default();
        let g = corpus::d8();
        let h = corpus::represent(&g, 3);
        let nil = jennings_series(&g, &caps).unwrap().nil_index;
        let params = SplitParams {
            start: 2,
            step: 1,
            max: nil,
        };
        let res = mip_bin_split(&[g, h], params, &caps).unwrap();
        assert_eq!(res.verdict, Verdict::Unresolved(nil));
        assert!(bound_report(&res).is_empty());
    }

    #[test]
    fn defaults_start_above_the_jennings_bound() {
        let caps = Caps::default();
        let res = mip_bin_split(&[corpus::d8(), corpus::q8()], SplitParams::default(), &caps).unwrap();
        assert_eq!(res.params.start, 3);
        assert_eq!(res.verdict, Verdict::Split(3));
        assert!(format_split(&res).starts_with("bin = D8 Q8\nverdict = split 3\n"));
    }

    #[test]
    fn rejects_bad_input() {
        let caps = Caps::default();
        assert!(mip_bin_split(&[corpus::d8()], SplitParams::default(), &caps).is_err());
        assert!(mip_bin_split(&[corpus::d8(), corpus::cyclic(2, 2)], SplitParams::default(), &caps).is_err());
    }
}
