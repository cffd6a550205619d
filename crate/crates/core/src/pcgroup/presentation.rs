//! Weighted power-commutator presentations and the collector.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::field::is_prime;

/// A group element in normal form `g_1^{e_1} ... g_n^{e_n}` with every
/// exponent in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    exps: Vec<u8>,
}

impl Element {
    pub fn identity(ngens: usize) -> Element {
        Element {
            exps: vec![0; ngens],
        }
    }

    /// The `i`-th pc generator (0-based).
    pub fn generator(ngens: usize, i: usize) -> Element {
        let mut e = Element::identity(ngens);
        e.exps[i] = 1;
        e
    }

    pub fn from_exps(exps: Vec<u8>) -> Element {
        Element { exps }
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn depth(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e != 0)
    }

    /// Nonzero `(generator, exponent)` pairs in increasing generator order.
    pub fn letters(&self) -> Vec<(usize, u8)> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A normal-form word: `(generator, exponent)` pairs with strictly
/// increasing generator indices and exponents in `1..p`. Indices are
/// 0-based; the text format is 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, u32)>);

impl Word {
    pub fn from_element(e: &Element) -> Word {
        Word(e.letters().into_iter().map(|(i, x)| (i, x as u32)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, e) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "g{}^{}", g + 1, e)?;
        }
        Ok(())
    }
}

/// A consistent pc-presentation of a finite p-group of order `p^n`.
///
/// Relations are `g_i^p = power[i]` and `[g_j, g_i] = comm[j][i]` for
/// `j > i`, where each right-hand side lies in `<g_{i+1}, ..., g_n>`.
/// Omitted relations are trivial.
#[derive(Clone, Debug)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    name: String,
    power: Vec<Element>,
    comm: Vec<Vec<Element>>,
    power_letters: Vec<Vec<(usize, u8)>>,
    comm_letters: Vec<Vec<Vec<(usize, u8)>>>,
}

impl PartialEq for PcPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.ngens == other.ngens
            && self.power == other.power
            && self.comm == other.comm
    }
}

impl Eq for PcPresentation {}

/// Incremental construction of a presentation with 0-based indices.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    prime: u32,
    ngens: usize,
    name: String,
    power: Vec<Element>,
    comm: Vec<Vec<Element>>,
}

impl PresentationBuilder {
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Sets `g_i^p` to the normal form with the given exponent vector.
    pub fn power(mut self, i: usize, rhs: Element) -> Self {
        self.power[i] = rhs;
        self
    }

    /// Sets `[g_j, g_i]` (with `j > i`).
    pub fn comm(mut self, j: usize, i: usize, rhs: Element) -> Self {
        self.comm[j][i] = rhs;
        self
    }

    pub fn set_power(&mut self, i: usize, rhs: Element) {
        self.power[i] = rhs;
    }

    pub fn set_comm(&mut self, j: usize, i: usize, rhs: Element) {
        self.comm[j][i] = rhs;
    }

    /// Validates weighting and consistency.
    pub fn build(self) -> Result<PcPresentation> {
        let pres = self.build_unchecked()?;
        pres.check_consistency()?;
        Ok(pres)
    }

    /// Validates only the shape of the relations; consistency is left to the
    /// caller (used when enumerating candidate presentations).
    pub fn build_unchecked(self) -> Result<PcPresentation> {
        let PresentationBuilder {
            prime,
            ngens,
            name,
            power,
            comm,
        } = self;
        if !is_prime(prime) || prime > 251 {
            return Err(Error::Inconsistent(format!(
                "{prime} is not a supported prime"
            )));
        }
        for i in 0..ngens {
            check_rhs(&power[i], i, prime, ngens)
                .map_err(|m| Error::Inconsistent(format!("pow {}: {m}", i + 1)))?;
            for j in 0..i {
                check_rhs(&comm[i][j], j, prime, ngens).map_err(|m| {
                    Error::Inconsistent(format!("comm {} {}: {m}", i + 1, j + 1))
                })?;
            }
        }
        let power_letters = power.iter().map(Element::letters).collect();
        let comm_letters = comm
            .iter()
            .map(|row| row.iter().map(Element::letters).collect())
            .collect();
        Ok(PcPresentation {
            prime,
            ngens,
            name,
            power,
            comm,
            power_letters,
            comm_letters,
        })
    }
}

fn check_rhs(rhs: &Element, min: usize, p: u32, n: usize) -> std::result::Result<(), String> {
    if rhs.len() != n {
        return Err(format!("word has length {} instead of {n}", rhs.len()));
    }
    for (k, &e) in rhs.exps().iter().enumerate() {
        if e as u32 >= p {
            return Err(format!("exponent {e} of g{} not below {p}", k + 1));
        }
        if e != 0 && k <= min {
            return Err(format!("relation word uses index {} <= {}", k + 1, min + 1));
        }
    }
    Ok(())
}

impl PcPresentation {
    pub fn builder(prime: u32, ngens: usize) -> PresentationBuilder {
        PresentationBuilder {
            prime,
            ngens,
            name: String::new(),
            power: vec![Element::identity(ngens); ngens],
            comm: (0..ngens)
                .map(|j| vec![Element::identity(ngens); j])
                .collect(),
        }
    }

    /// Starts a builder from this presentation's relations.
    pub fn to_builder(&self) -> PresentationBuilder {
        PresentationBuilder {
            prime: self.prime,
            ngens: self.ngens,
            name: self.name.clone(),
            power: self.power.clone(),
            comm: self.comm.clone(),
        }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `|G| = p^n`, or `None` when it does not fit in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.prime as u128).checked_pow(self.ngens as u32)
    }

    pub fn order_u128(&self) -> u128 {
        self.order().unwrap_or(u128::MAX)
    }

    pub fn power_rel(&self, i: usize) -> &Element {
        &self.power[i]
    }

    pub fn comm_rel(&self, j: usize, i: usize) -> &Element {
        &self.comm[j][i]
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.ngens)
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.ngens, i)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens).map(|i| self.generator(i)).collect()
    }

    /// Checks that `e` is a normal form of this presentation.
    pub fn validate(&self, e: &Element) -> Result<()> {
        if e.len() != self.ngens || e.exps().iter().any(|&x| x as u32 >= self.prime) {
            return Err(Error::Mismatch(format!(
                "element {e} does not belong to a presentation with p={} n={}",
                self.prime, self.ngens
            )));
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Collection

    /// Right-multiplies the normal form `v` by `g_i`.
    ///
    /// With `v = u g_i^a t` (`u` below `i`, `t` above `i`) this uses
    /// `v g_i = u g_i^{a+1} t^{g_i}`, where `t^{g_i}` is the product of the
    /// conjugates `g_k^{g_i} = g_k [g_k, g_i]`, and replaces `g_i^p` by its
    /// power relation. Every recursive call works strictly above `i`.
    fn mul_gen(&self, v: &mut [u8], i: usize) {
        let p = self.prime as u8;
        let mut tail: Vec<(usize, u8)> = Vec::new();
        for k in i + 1..self.ngens {
            if v[k] != 0 {
                tail.push((k, v[k]));
                v[k] = 0;
            }
        }
        v[i] += 1;
        if v[i] == p {
            v[i] = 0;
            for &(k, e) in &self.power_letters[i] {
                for _ in 0..e {
                    self.mul_gen(v, k);
                }
            }
        }
        for (k, e) in tail {
            for _ in 0..e {
                self.mul_gen(v, k);
                for &(l, f) in &self.comm_letters[k][i] {
                    for _ in 0..f {
                        self.mul_gen(v, l);
                    }
                }
            }
        }
    }

    fn mul_into(&self, v: &mut [u8], b: &Element) {
        for (k, &e) in b.exps().iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(v, k);
            }
        }
    }

    /// Collects an arbitrary word (generator, exponent) to normal form.
    pub fn collect(&self, letters: &[(usize, u32)]) -> Result<Element> {
        let mut v = vec![0u8; self.ngens];
        for &(g, e) in letters {
            if g >= self.ngens {
                return Err(Error::Mismatch(format!(
                    "generator index {} out of range 1..={}",
                    g + 1,
                    self.ngens
                )));
            }
            for _ in 0..e {
                self.mul_gen(&mut v, g);
            }
        }
        Ok(Element::from_exps(v))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut v = a.exps.clone();
        self.mul_into(&mut v, b);
        Element::from_exps(v)
    }

    /// Checked product for elements of unknown provenance.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        // Build y with a*y = 1 one generator at a time.
        let p = self.prime as u8;
        let mut z = a.exps.clone();
        let mut y = vec![0u8; self.ngens];
        for i in 0..self.ngens {
            let e = z[i];
            if e != 0 {
                for _ in 0..(p - e) {
                    self.mul_gen(&mut z, i);
                    self.mul_gen(&mut y, i);
                }
            }
        }
        debug_assert!(z.iter().all(|&x| x == 0));
        Element::from_exps(y)
    }

    pub fn pow(&self, a: &Element, mut k: u64) -> Element {
        let mut result = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn comm(&self, a: &Element, b: &Element) -> Element {
        let ia = self.inverse(a);
        let ib = self.inverse(b);
        let mut v = ia.exps;
        self.mul_into(&mut v, &ib);
        self.mul_into(&mut v, a);
        self.mul_into(&mut v, b);
        Element::from_exps(v)
    }

    /// `a^b = b^{-1} a b`.
    pub fn conj(&self, a: &Element, b: &Element) -> Element {
        let mut v = self.inverse(b).exps;
        self.mul_into(&mut v, a);
        self.mul_into(&mut v, b);
        Element::from_exps(v)
    }

    /// Order of an element (a power of `p`).
    pub fn element_order(&self, a: &Element) -> u64 {
        let mut x = a.clone();
        let mut ord = 1u64;
        while !x.is_identity() {
            x = self.pow(&x, self.prime as u64);
            ord *= self.prime as u64;
        }
        ord
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        crate::field::all_vectors(self.prime, self.ngens)
            .map(|v| Element::from_exps(v.into_iter().map(|x| x as u8).collect()))
    }

    // ------------------------------------------------------------------
    // Consistency

    /// Runs the overlap tests `g_k (g_j g_i) = (g_k g_j) g_i`,
    /// `g_j^{p-1} (g_j g_i) = (g_j^p) g_i`, `g_j (g_i^p) = (g_j g_i) g_i^{p-1}`
    /// and `g_i (g_i^p) = (g_i^p) g_i`.
    pub fn check_consistency(&self) -> Result<()> {
        let n = self.ngens;
        let p = self.prime as u64;
        let g: Vec<Element> = self.generators();
        let fail = |what: String| Err(Error::Inconsistent(what));
        for i in 0..n {
            let lhs = self.mul(&g[i], &self.power[i]);
            let rhs = self.mul(&self.power[i], &g[i]);
            if lhs != rhs {
                return fail(format!("g{0} g{0}^p != g{0}^p g{0}", i + 1));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let gj_gi = self.mul(&g[j], &g[i]);
                let lhs = self.mul(&self.pow(&g[j], p - 1), &gj_gi);
                let rhs = self.mul(&self.power[j], &g[i]);
                if lhs != rhs {
                    return fail(format!("overlap g{}^p g{}", j + 1, i + 1));
                }
                let lhs = self.mul(&g[j], &self.power[i]);
                let rhs = self.mul(&gj_gi, &self.pow(&g[i], p - 1));
                if lhs != rhs {
                    return fail(format!("overlap g{} g{}^p", j + 1, i + 1));
                }
                for k in j + 1..n {
                    let lhs = self.mul(&g[k], &gj_gi);
                    let rhs = self.mul(&self.mul(&g[k], &g[j]), &g[i]);
                    if lhs != rhs {
                        return fail(format!("overlap g{} g{} g{}", k + 1, j + 1, i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // Text format

    /// Parses the `.pcp` text format.
    pub fn parse(text: &str) -> Result<PcPresentation> {
        let mut prime: Option<(u32, usize)> = None;
        let mut ngens: Option<(usize, usize)> = None;
        let mut name = String::new();
        enum Rel {
            Pow(usize),
            Comm(usize, usize),
        }
        let mut rels: Vec<(usize, Rel, Vec<&str>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or("");
            match key {
                "p" => {
                    let v = parse_single(&mut parts, line_no, "p")?;
                    let v = u32::try_from(v).map_err(|_| parse_err(line_no, "prime too large"))?;
                    if !is_prime(v) {
                        return Err(parse_err(line_no, format!("{v} is not prime")));
                    }
                    if v > 251 {
                        return Err(parse_err(line_no, "primes above 251 are not supported"));
                    }
                    prime = Some((v, line_no));
                }
                "n" => {
                    let v = parse_single(&mut parts, line_no, "n")?;
                    ngens = Some((v as usize, line_no));
                }
                "name" => {
                    name = line[4..].trim().to_string();
                }
                "pow" | "comm" => {
                    let (lhs, rhs) = line
                        .split_once('=')
                        .ok_or_else(|| parse_err(line_no, "missing `=`"))?;
                    let idx: Vec<usize> = lhs
                        .split_whitespace()
                        .skip(1)
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| parse_err(line_no, format!("bad index `{t}`")))
                        })
                        .collect::<Result<_>>()?;
                    let rel = match (key, idx.as_slice()) {
                        ("pow", [i]) => Rel::Pow(*i),
                        ("comm", [j, i]) => Rel::Comm(*j, *i),
                        _ => return Err(parse_err(line_no, "wrong number of indices")),
                    };
                    rels.push((line_no, rel, rhs.split_whitespace().collect()));
                }
                other => return Err(parse_err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        let (p, _) = prime.ok_or_else(|| parse_err(0, "missing `p` header"))?;
        let (n, _) = ngens.ok_or_else(|| parse_err(0, "missing `n` header"))?;
        let mut b = PcPresentation::builder(p, n).name(name);
        let mut seen = std::collections::HashSet::new();
        for (line_no, rel, tokens) in rels {
            let (key, min) = match rel {
                Rel::Pow(i) => {
                    if i == 0 || i > n {
                        return Err(parse_err(line_no, format!("generator {i} out of range")));
                    }
                    ((i, 0), i)
                }
                Rel::Comm(j, i) => {
                    if i == 0 || j > n || j <= i {
                        return Err(parse_err(
                            line_no,
                            format!("comm {j} {i}: need n >= j > i >= 1"),
                        ));
                    }
                    ((j, i), i)
                }
            };
            if !seen.insert(key) {
                return Err(parse_err(line_no, "duplicate relation"));
            }
            let rhs = parse_word(&tokens, p, n, min, line_no)?;
            match rel {
                Rel::Pow(i) => b.set_power(i - 1, rhs),
                Rel::Comm(j, i) => b.set_comm(j - 1, i - 1, rhs),
            }
        }
        b.build()
    }

    /// Serializes to the `.pcp` text format; only nontrivial relations are
    /// written.
    pub fn to_pcp(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p {}\nn {}\n", self.prime, self.ngens));
        if !self.name.is_empty() {
            out.push_str(&format!("name {}\n", self.name));
        }
        for i in 0..self.ngens {
            if !self.power[i].is_identity() {
                out.push_str(&format!(
                    "pow {} = {}\n",
                    i + 1,
                    Word::from_element(&self.power[i])
                ));
            }
        }
        for j in 0..self.ngens {
            for i in 0..j {
                if !self.comm[j][i].is_identity() {
                    out.push_str(&format!(
                        "comm {} {} = {}\n",
                        j + 1,
                        i + 1,
                        Word::from_element(&self.comm[j][i])
                    ));
                }
            }
        }
        out
    }
}

fn parse_single<'a>(
    parts: &mut impl Iterator<Item = &'a str>,
    line: usize,
    key: &str,
) -> Result<u64> {
    let tok = parts
        .next()
        .ok_or_else(|| parse_err(line, format!("`{key}` needs a value")))?;
    if parts.next().is_some() {
        return Err(parse_err(line, format!("`{key}` takes one value")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad number `{tok}`")))
}

/// Parses `g<k>^<e>` tokens (`g<k>` alone means exponent 1; `1` or nothing
/// is the empty word) and enforces the weighting `k > min`.
fn parse_word(tokens: &[&str], p: u32, n: usize, min: usize, line: usize) -> Result<Element> {
    let mut exps = vec![0u8; n];
    let mut last = 0usize;
    for &tok in tokens {
        if tok == "1" && tokens.len() == 1 {
            break;
        }
        let body = tok
            .strip_prefix('g')
            .ok_or_else(|| parse_err(line, format!("bad token `{tok}`")))?;
        let (k, e) = match body.split_once('^') {
            Some((k, e)) => (k, e),
            None => (body, "1"),
        };
        let k: usize = k
            .parse()
            .map_err(|_| parse_err(line, format!("bad generator in `{tok}`")))?;
        let e: u32 = e
            .parse()
            .map_err(|_| parse_err(line, format!("bad exponent in `{tok}`")))?;
        if k == 0 || k > n {
            return Err(parse_err(line, format!("generator g{k} out of range")));
        }
        if k <= min {
            return Err(parse_err(
                line,
                format!("relation word uses index {k} <= {min}"),
            ));
        }
        if k <= last {
            return Err(parse_err(line, "generator indices must strictly increase"));
        }
        if e == 0 || e >= p {
            return Err(parse_err(line, format!("exponent {e} not in 1..{}", p - 1)));
        }
        exps[k - 1] = e as u8;
        last = k;
    }
    Ok(Element::from_exps(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    const D8: &str = "p 2\nn 3\nname D8\ncomm 2 1 = g3^1\n";
    const Q8: &str = "p 2\nn 3\nname Q8\npow 1 = g3\npow 2 = g3\ncomm 2 1 = g3\n";

    fn el(v: &[u8]) -> Element {
        Element::from_exps(v.to_vec())
    }

    #[test]
    fn parse_d8_and_q8() {
        let d8 = PcPresentation::parse(D8).unwrap();
        assert_eq!(d8.order(), Some(8));
        assert_eq!(d8.name(), "D8");
        let q8 = PcPresentation::parse(Q8).unwrap();
        assert_eq!(q8.elements().count(), 8);
        // g1^2 = g3 and g3 is central of order 2.
        assert_eq!(q8.collect(&[(0, 2)]).unwrap(), el(&[0, 0, 1]));
        assert_eq!(q8.pow(&q8.generator(0), 4), q8.identity());
    }

    #[test]
    fn weighting_violation_is_rejected() {
        let err = PcPresentation::parse("p 2\nn 3\ncomm 2 1 = g1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("index 1"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_lines() {
        let err = PcPresentation::parse("p 2\nn 2\n\nfoo 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                msg: "unknown keyword `foo`".into()
            }
        );
        assert!(PcPresentation::parse("p 4\nn 1\n").is_err());
        assert!(PcPresentation::parse("p 3\nn 2\npow 1 = g2^3\n").is_err());
        assert!(PcPresentation::parse("p 3\nn 2\npow 1 = g2 g2\n").is_err());
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // g1^2 = g2 with g2 of order 2 but [g2, g1] = g2 cannot hold: g2 would
        // have to equal its own conjugate by a power of itself.
        let err = PcPresentation::parse("p 2\nn 2\npow 1 = g2\ncomm 2 1 = g2\n").unwrap_err();
        assert!(matches!(err, Error::Inconsistent(_)), "{err:?}");
    }

    #[test]
    fn d8_collection_examples() {
        let d8 = PcPresentation::parse(D8).unwrap();
        // g2 g1 = g1 g2 [g2, g1] = g1 g2 g3
        assert_eq!(d8.collect(&[(1, 1), (0, 1)]).unwrap(), el(&[1, 1, 1]));
        assert_eq!(d8.collect(&[]).unwrap(), el(&[0, 0, 0]));
        assert_eq!(d8.mul(&el(&[1, 0, 0]), &el(&[0, 1, 0])), el(&[1, 1, 0]));
        assert_eq!(d8.comm(&d8.generator(1), &d8.generator(0)), el(&[0, 0, 1]));
        assert!(d8.collect(&[(5, 1)]).is_err());
    }

    #[test]
    fn pcp_roundtrip() {
        let q8 = PcPresentation::parse(Q8).unwrap();
        let text = q8.to_pcp();
        assert_eq!(text, "p 2\nn 3\nname Q8\npow 1 = g3^1\npow 2 = g3^1\ncomm 2 1 = g3^1\n");
        assert_eq!(PcPresentation::parse(&text).unwrap(), q8);
    }

    #[test]
    fn inverse_and_orders() {
        let q8 = PcPresentation::parse(Q8).unwrap();
        for a in q8.elements() {
            let ia = q8.inverse(&a);
            assert!(q8.mul(&a, &ia).is_identity());
            assert!(q8.mul(&ia, &a).is_identity());
        }
        let orders: Vec<u64> = q8.elements().map(|a| q8.element_order(&a)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
    }
}
