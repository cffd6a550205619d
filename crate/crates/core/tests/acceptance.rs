//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach stdout.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, phi_oracle, psi_oracle, small_ring_dim, GroupAlgebra};
use mipkit::algtable::{build_aug_table, build_aug_table_with, element_weight_with, phi_count, psi_count, SCTable};
use mipkit::canon::{canonical_form, iso_oracle, random_filtered_basis_change, random_nilpotent_algebra};
use mipkit::driver::{bound_report, mip_bin_split, SplitParams, Verdict};
use mipkit::invariants::bin_groups;
use mipkit::jennings::{graded_dims_of_ideal, jennings_series, weight_of, JenningsData};
use mipkit::smallring::{small_unit_group, verify_action};
use mipkit::{corpus as named, Caps, Error, PcPresentation};

type Outcome = Result<String, String>;

struct Corpus {
    /// `(p, n, groups of order p^n)`.
    orders: Vec<(u32, usize, Vec<PcPresentation>)>,
}

impl Corpus {
    fn load() -> Corpus {
        let mut orders = Vec::new();
        for n in 1..=5 {
            orders.push((2, n, corpus(2, n)));
        }
        for n in 1..=4 {
            orders.push((3, n, corpus(3, n)));
        }
        for n in 1..=3 {
            orders.push((5, n, corpus(5, n)));
        }
        Corpus { orders }
    }

    fn all(&self) -> impl Iterator<Item = &PcPresentation> {
        self.orders.iter().flat_map(|(_, _, gs)| gs)
    }

    fn of_order(&self, p: u32, n: usize) -> &[PcPresentation] {
        &self.orders.iter().find(|(q, m, _)| *q == p && *m == n).unwrap().2
    }

    fn up_to(&self, max_order: u128) -> impl Iterator<Item = &PcPresentation> {
        self.all().filter(move |g| g.order_u128() <= max_order)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn full_table(g: &PcPresentation, caps: &Caps) -> (JenningsData, SCTable) {
    let jd = jennings_series(g, caps).unwrap();
    let t = build_aug_table_with(g, &jd, jd.nil_index, caps).unwrap();
    (jd, t)
}

/// Coefficients of `prod_i (1 + t^i + ... + t^{(p-1) i})^{d_i}` with
/// `d_i = log_p |D_i : D_{i+1}|` read off the subgroup orders.
fn product_formula(jd: &JenningsData, p: u32) -> Vec<u64> {
    let mut poly = vec![1u64];
    for i in 1..jd.series.len() {
        let index = jd.series[i - 1].order() / jd.series[i].order();
        let mut d = 0;
        let mut x = index;
        while x > 1 {
            x /= p as u128;
            d += 1;
        }
        for _ in 0..d {
            let mut next = vec![0u64; poly.len() + (p as usize - 1) * i];
            for (deg, &c) in poly.iter().enumerate() {
                for a in 0..p as usize {
                    next[deg + a * i] += c;
                }
            }
            poly = next;
        }
    }
    poly
}

fn criterion_1(c: &Corpus, caps: &Caps) -> Outcome {
    let clock = Instant::now();
    let mut count = 0;
    for g in c.all() {
        let (jd, t) = full_table(g, caps);
        let size = g.order_u128() as usize;
        ensure(t.dim() == size - 1, || format!("{}: basis has {} elements", g.name(), t.dim()))?;
        let formula = product_formula(&jd, g.prime());
        ensure(formula.len() == jd.nil_index, || {
            format!("{}: formula degree {} vs nil index {}", g.name(), formula.len() - 1, jd.nil_index)
        })?;
        let mut observed = vec![0u64; jd.nil_index];
        observed[0] = 1;
        for &w in t.weights() {
            observed[w] += 1;
        }
        ensure(observed == formula, || {
            format!("{}: weights {:?} vs formula {:?}", g.name(), observed, formula)
        })?;
        let lib: Vec<u64> = graded_dims_of_ideal(&jd, jd.nil_index)
            .unwrap()
            .iter()
            .map(|&x| x as u64)
            .collect();
        ensure(lib == formula[1..], || format!("{}: graded_dims_of_ideal disagrees", g.name()))?;
        count += 1;
    }
    let secs = clock.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{count} groups in {secs:.1} s"))
}

fn criterion_2(c: &Corpus, caps: &Caps) -> Outcome {
    let mut checked = 0;
    let groups = c.up_to(32).chain(c.of_order(3, 3));
    for g in groups {
        let (jd, t) = full_table(g, caps);
        for x in g.elements().filter(|x| !x.is_identity()) {
            let a = weight_of(&jd, g, &x).unwrap();
            let b = element_weight_with(&t, g, &jd, &x).unwrap();
            ensure(a == b, || format!("{}: {:?} has weights {a} and {b}", g.name(), x))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} elements"))
}

fn criterion_3(c: &Corpus, caps: &Caps) -> Outcome {
    let mut pairs = 0;
    for g in c.all() {
        let jd = jennings_series(g, caps).unwrap();
        let tables: Vec<SCTable> = (2..=jd.nil_index)
            .map(|s| build_aug_table_with(g, &jd, s, caps).unwrap())
            .collect();
        for (i, small) in tables.iter().enumerate() {
            for big in &tables[i + 1..] {
                let r = big.restrict(small.trunc()).unwrap();
                ensure(&r == small, || {
                    format!("{}: level {} restricted to {}", g.name(), big.trunc(), small.trunc())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} level pairs"))
}

fn criterion_4(c: &Corpus, caps: &Caps) -> Outcome {
    let (mut exhaustive, mut sampled) = (0, 0);
    for g in c.all() {
        let (_, t) = full_table(g, caps);
        let d = t.dim();
        if d <= 40 {
            ensure(t.is_associative(), || format!("{}: not associative", g.name()))?;
            exhaustive += 1;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
            let triples: Vec<(usize, usize, usize)> = (0..10_000)
                .map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d)))
                .collect();
            if let Some(bad) = t.associativity_defect(triples) {
                return Err(format!("{}: defect at {bad:?}", g.name()));
            }
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} tables exhaustively, {sampled} by 10^4 random triples"))
}

/// The same algebra declared with truncation equal to its nilpotency
/// index, so that isomorphic algebras carry the same level.
fn at_nil_index(t: &SCTable) -> SCTable {
    let dims = t.ideal_power_dims();
    let nil = dims.iter().position(|&d| d == 0).map_or(t.trunc(), |k| k + 1);
    let d = t.dim();
    let products = (0..d * d).map(|ij| t.product(ij / d, ij % d).to_vec()).collect();
    SCTable::new(t.prime(), nil, t.weights().to_vec(), products).unwrap()
}

fn criterion_5(caps: &Caps) -> Outcome {
    let clock = Instant::now();
    let algebras: Vec<SCTable> = (0..200u64)
        .map(|seed| at_nil_index(&random_nilpotent_algebra(2 + (seed % 2) as u32, 5, seed).unwrap()))
        .collect();
    let mut certs = Vec::new();
    for (k, a) in algebras.iter().enumerate() {
        let cert = canonical_form(a, a.trunc(), caps).map_err(|e| format!("algebra {k}: {e}"))?;
        for j in 0..20 {
            let b = random_filtered_basis_change(a, 1000 * k as u64 + j);
            let other = canonical_form(&b, b.trunc(), caps).map_err(|e| format!("algebra {k}: {e}"))?;
            ensure(other == cert, || format!("algebra {k}: basis change {j} moved the certificate"))?;
        }
        certs.push(cert);
    }
    let (mut iso, mut non_iso) = (0, 0);
    for i in 0..algebras.len() {
        for j in 0..i {
            let oracle = iso_oracle(&algebras[i], &algebras[j], caps).map_err(|e| format!("oracle {i} {j}: {e}"))?;
            let equal = certs[i] == certs[j];
            ensure(oracle == equal, || {
                format!("algebras {i} and {j}: oracle {oracle}, certificates equal {equal}")
            })?;
            if oracle {
                iso += 1;
            } else {
                non_iso += 1;
            }
        }
    }
    Ok(format!(
        "200 algebras x 20 basis changes; {iso} isomorphic and {non_iso} non-isomorphic pairs agree; {:.1} s",
        clock.elapsed().as_secs_f64()
    ))
}

fn criterion_6(caps: &Caps) -> Outcome {
    let (d8, q8) = (named::d8(), named::q8());
    let res = mip_bin_split(&[d8.clone(), q8.clone()], SplitParams::default(), caps).map_err(|e| e.to_string())?;
    ensure(res.verdict == Verdict::Split(3), || format!("verdict {:?}", res.verdict))?;
    ensure(res.jennings_bounds[0][1] == Some(2), || format!("bound {:?}", res.jennings_bounds[0][1]))?;
    let a = build_aug_table(&d8, 3, caps).unwrap();
    let b = build_aug_table(&q8, 3, caps).unwrap();
    ensure(a.dim() == 4 && b.dim() == 4, || "level-3 tables are not 4-dimensional".into())?;
    let iso = iso_oracle(&a, &b, caps).map_err(|e| e.to_string())?;
    ensure(!iso, || "oracle finds the level-3 quotients isomorphic".into())?;
    Ok("Split(3), Jennings bound 2, oracle confirms".into())
}

/// Split levels of all pairs of one order, keyed by pair, plus whether
/// fingerprints separate each pair.
struct PairSurvey {
    pairs: usize,
    by_fingerprint: usize,
    by_split: usize,
    failures: Vec<String>,
    rows: Vec<mipkit::driver::BoundRow>,
}

fn survey(groups: &[PcPresentation], caps: &Caps) -> PairSurvey {
    let binning = bin_groups(groups, caps).unwrap();
    let mut bin_of = vec![0; groups.len()];
    for (b, cell) in binning.bins.iter().enumerate() {
        for &i in cell {
            bin_of[i] = b;
        }
    }
    let mut s = PairSurvey {
        pairs: 0,
        by_fingerprint: 0,
        by_split: 0,
        failures: Vec::new(),
        rows: Vec::new(),
    };
    for i in 0..groups.len() {
        for j in 0..i {
            s.pairs += 1;
            let fp = bin_of[i] != bin_of[j];
            if fp {
                s.by_fingerprint += 1;
            }
            let (g, h) = (&groups[i], &groups[j]);
            let nil = [g, h]
                .iter()
                .map(|x| jennings_series(x, caps).unwrap().nil_index)
                .max()
                .unwrap();
            let split = match mip_bin_split(&[g.clone(), h.clone()], SplitParams::default(), caps) {
                Ok(res) => {
                    s.rows.extend(bound_report(&res));
                    match res.verdict {
                        Verdict::Split(r) if r <= nil => true,
                        v => {
                            if !fp {
                                s.failures.push(format!("{} {}: {v:?} {:?}", g.name(), h.name(), res.notes));
                            }
                            false
                        }
                    }
                }
                Err(e) => {
                    if !fp {
                        s.failures.push(format!("{} {}: {e}", g.name(), h.name()));
                    }
                    false
                }
            };
            if split {
                s.by_split += 1;
            }
            if !fp && !split {
                s.failures.push(format!("{} {}: not distinguished", g.name(), h.name()));
            }
        }
    }
    s
}

fn criterion_7(surveys: &BTreeMap<u128, PairSurvey>) -> Outcome {
    let mut parts = Vec::new();
    for order in [16u128, 27] {
        let s = &surveys[&order];
        ensure(s.failures.is_empty(), || format!("order {order}: {}", s.failures.join("; ")))?;
        parts.push(format!(
            "order {order}: {} pairs, {} by fingerprint, {} by Split(r <= nil index)",
            s.pairs, s.by_fingerprint, s.by_split
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_8(c: &Corpus, caps: &Caps) -> Outcome {
    let v4 = named::elementary_abelian(2, 2);
    let sg = small_unit_group(&v4, caps).map_err(|e| e.to_string())?;
    let s = &sg.s;
    ensure(s.order_u128() == 8, || format!("|S| = {} for C2xC2", s.order_u128()))?;
    let elementary = s
        .elements()
        .all(|x| s.pow(&x, 2).is_identity() && s.elements().all(|y| s.comm(&x, &y).is_identity()));
    ensure(elementary, || "S is not elementary abelian".into())?;

    let mut checked = Vec::new();
    for g in c.up_to(32).chain(c.of_order(3, 3)) {
        if mipkit::pcgroup::frattini_subgroup(g).rank() + 2 != g.ngens() {
            continue;
        }
        let sg = match small_unit_group(g, caps) {
            Ok(sg) => sg,
            Err(Error::Hypothesis(_)) => continue,
            Err(e) => return Err(format!("{}: {e}", g.name())),
        };
        let a = sg.a_subgroup();
        let a_abelian = a
            .igs()
            .iter()
            .all(|x| a.igs().iter().all(|y| sg.s.comm(x, y).is_identity()));
        ensure(a_abelian, || format!("{}: A is not abelian", g.name()))?;
        ensure(a.order() == sg.a_order(), || format!("{}: |A| mismatch", g.name()))?;
        ensure(sg.s.order_u128() == g.order_u128() * a.order(), || {
            format!("{}: |S| = {} but |G||A| = {}", g.name(), sg.s.order_u128(), g.order_u128() * a.order())
        })?;
        let dim = small_ring_dim(&GroupAlgebra::new(g));
        let units = (g.prime() as u128).pow(dim as u32 - 1);
        ensure(sg.s.order_u128() == units, || {
            format!("{}: |S| = {} but |V(kG/I)| = {units}", g.name(), sg.s.order_u128())
        })?;
        let bad = verify_action(&sg, caps).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("{}: action differs on {bad:?}", g.name()))?;
        checked.push(g.name().to_string());
    }
    ensure(!checked.is_empty(), || "no 2-generated corpus group met the hypotheses".into())?;
    let d8 = named::d8();
    let sg = small_unit_group(&d8, caps).map_err(|e| e.to_string())?;
    ensure(verify_action(&sg, caps).map_err(|e| e.to_string())?.is_empty(), || "D8 action differs".into())?;
    Ok(format!("C2xC2 gives elementary abelian S of order 8; D8 and {} corpus groups verified", checked.len()))
}

fn criterion_9(c: &Corpus, caps: &Caps) -> Outcome {
    let c2 = named::cyclic(2, 1);
    let t = build_aug_table(&c2, 2, caps).unwrap();
    let phi = phi_count(&t, 1, 1, 1, caps).map_err(|e| e.to_string())?;
    ensure(phi == 2, || format!("phi_count(kC2, 1, 1, 1) = {phi}"))?;
    let psi = psi_count(&c2, &t, 1, caps).map_err(|e| e.to_string())?;
    ensure(psi == 2, || format!("psi_count(C2, 1) = {psi}"))?;

    const LIMIT: u64 = 1 << 14;
    let (mut phis, mut psis) = (0, 0);
    for g in c.up_to(27) {
        let (jd, t) = full_table(g, caps);
        let ga = GroupAlgebra::new(g);
        let powers = ga.aug_powers();
        ensure(powers.len() == jd.nil_index, || format!("{}: nil index mismatch", g.name()))?;
        let nil = jd.nil_index;
        for n in 1..nil {
            for m in 1..=nil - n {
                for l in 0..=2 {
                    let Some(want) = phi_oracle(&ga, &powers, n, m, l, LIMIT) else {
                        continue;
                    };
                    let got = phi_count(&t, n, m, l, caps).map_err(|e| format!("{} phi({n},{m},{l}): {e}", g.name()))?;
                    ensure(got == want as u128, || {
                        format!("{}: phi({n},{m},{l}) = {got}, brute force {want}", g.name())
                    })?;
                    phis += 1;
                }
            }
            if let Some(want) = psi_oracle(&ga, &powers, n, LIMIT) {
                let got = psi_count(g, &t, n, caps).map_err(|e| format!("{} psi({n}): {e}", g.name()))?;
                ensure(got == want as u128, || format!("{}: psi({n}) = {got}, brute force {want}", g.name()))?;
                psis += 1;
            }
        }
    }
    Ok(format!("kC2 values 2 and 2; {phis} phi and {psis} psi cases match brute force"))
}

fn criterion_10(surveys: &BTreeMap<u128, PairSurvey>) -> Outcome {
    let mut total = 0;
    let mut violations = Vec::new();
    for s in surveys.values() {
        for row in &s.rows {
            if let Some((m, ok)) = row.odd_bound {
                total += 1;
                if !ok {
                    violations.push(format!(
                        "{} {}: s = {:?}, r = {}, bound m + 1 = {}",
                        row.first,
                        row.second,
                        row.jennings_bound,
                        row.split_level,
                        m + 1
                    ));
                }
            }
        }
    }
    ensure(total > 0, || "no odd-p split pairs were produced".into())?;
    for v in &violations {
        println!("  !!! odd-p bound violated: {v}");
    }
    Ok(format!("{total} odd-p split pairs reported, {} above the bound", violations.len()))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let clock = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = clock.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("criterion {label}: PASS ({detail}) [{secs:.1} s]");
            true
        }
        Err(detail) => {
            println!("criterion {label}: FAIL ({detail}) [{secs:.1} s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let caps = Caps::default();
    let corpus = Corpus::load();
    let mut surveys = BTreeMap::new();
    for (p, n) in [(2, 4), (3, 3)] {
        let groups = corpus.of_order(p, n);
        surveys.insert(groups[0].order_u128(), survey(groups, &caps));
    }
    let results = [
        run("1 jennings dimension identity", || criterion_1(&corpus, &caps)),
        run("2 dimension subgroup weights", || criterion_2(&corpus, &caps)),
        run("3 truncation consistency", || criterion_3(&corpus, &caps)),
        run("4 table associativity", || criterion_4(&corpus, &caps)),
        run("5 canonical form vs oracle", || criterion_5(&caps)),
        run("6 D8/Q8 split", || criterion_6(&caps)),
        run("7 MIP at orders 16 and 27", || criterion_7(&surveys)),
        run("8 small group ring", || criterion_8(&corpus, &caps)),
        run("9 counting maps", || criterion_9(&corpus, &caps)),
        run("10 odd-p question bound report", || criterion_10(&surveys)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
