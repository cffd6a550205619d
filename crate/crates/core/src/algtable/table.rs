//! Graded structure-constant tables and their arithmetic.

use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::field::{self, Echelon};

/// Sparse vector: `(basis index, nonzero coefficient)` pairs sorted by
/// index.
pub type Sparse = Vec<(usize, u32)>;

/// Structure constants of a graded nilpotent algebra over `F_p`, truncated
/// so that every product of combined weight `>= trunc` vanishes.
///
/// Equality compares the algebra data (prime, truncation, weights and
/// products); labels and source name are descriptive only.
#[derive(Clone, Debug)]
pub struct SCTable {
    prime: u32,
    trunc: usize,
    weights: Vec<usize>,
    products: Vec<Sparse>,
    labels: Vec<Vec<u8>>,
    source: Option<String>,
}

impl PartialEq for SCTable {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.trunc == other.trunc
            && self.weights == other.weights
            && self.products == other.products
    }
}

impl Eq for SCTable {}

/// A vector of coefficients over the table basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    pub coeffs: Vec<u32>,
}

impl AlgElement {
    pub fn zero(dim: usize) -> AlgElement {
        AlgElement {
            coeffs: vec![0; dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> AlgElement {
        let mut e = AlgElement::zero(dim);
        e.coeffs[i] = 1;
        e
    }

    pub fn is_zero(&self) -> bool {
        field::is_zero(&self.coeffs)
    }
}

impl SCTable {
    /// Builds a table from sparse products indexed `i * dim + j`, checking
    /// the grading invariant.
    pub fn new(prime: u32, trunc: usize, weights: Vec<usize>, products: Vec<Sparse>) -> Result<SCTable> {
        let dim = weights.len();
        if !field::is_prime(prime) {
            return Err(Error::Table(format!("{prime} is not prime")));
        }
        if trunc < 2 {
            return Err(Error::Level(format!("truncation level {trunc} is below 2")));
        }
        if products.len() != dim * dim {
            return Err(Error::Table("product list has the wrong size".into()));
        }
        if let Some(&w) = weights.iter().find(|&&w| w == 0 || w >= trunc) {
            return Err(Error::Table(format!("basis weight {w} outside 1..{trunc}")));
        }
        for i in 0..dim {
            for j in 0..dim {
                let entry = &products[i * dim + j];
                let wij = weights[i] + weights[j];
                if wij >= trunc && !entry.is_empty() {
                    return Err(Error::Table(format!(
                        "product e{} e{} has weight {wij} >= trunc but is nonzero",
                        i + 1,
                        j + 1
                    )));
                }
                let mut last = None;
                for &(k, c) in entry {
                    if k >= dim || c == 0 || c >= prime {
                        return Err(Error::Table(format!(
                            "bad entry in e{} e{}",
                            i + 1,
                            j + 1
                        )));
                    }
                    if last.map_or(false, |l| l >= k) {
                        return Err(Error::Table("entries must be sorted and distinct".into()));
                    }
                    last = Some(k);
                    if weights[k] < wij {
                        return Err(Error::Table(format!(
                            "e{} e{} has a term e{} of weight {} below {wij}",
                            i + 1,
                            j + 1,
                            k + 1,
                            weights[k]
                        )));
                    }
                }
            }
        }
        Ok(SCTable {
            prime,
            trunc,
            weights,
            products,
            labels: Vec::new(),
            source: None,
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<Vec<u8>>, source: Option<String>) -> Self {
        self.labels = labels;
        self.source = source;
        self
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Monomial exponent tuples of the basis (empty for tables that were
    /// not built from a group).
    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    /// `e_i e_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.products[i * self.dim() + j]
    }

    /// Dense product without dimension checks.
    pub fn mul_dense(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.prime;
        let d = self.dim();
        let mut out = vec![0u32; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || self.weights[i] + self.weights[j] >= self.trunc {
                    continue;
                }
                let c = field::mul(xi, yj, p);
                for &(k, v) in self.product(i, j) {
                    out[k] = (out[k] + c * v) % p;
                }
            }
        }
        out
    }

    fn check_dim(&self, x: &AlgElement) -> Result<()> {
        if x.coeffs.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "element of length {} for a table of dimension {}",
                x.coeffs.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(AlgElement {
            coeffs: self.mul_dense(&x.coeffs, &y.coeffs),
        })
    }

    /// `x^e` for `e >= 1`; `x^0` is not an element of the ideal.
    pub fn power(&self, x: &AlgElement, e: u64) -> Result<AlgElement> {
        self.check_dim(x)?;
        if e == 0 {
            return Err(Error::Level("the zeroth power is the unit, which is not in the ideal".into()));
        }
        Ok(AlgElement {
            coeffs: self.pow_dense(&x.coeffs, e),
        })
    }

    pub(crate) fn pow_dense(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut result: Option<Vec<u32>> = None;
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.mul_dense(&r, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                if field::is_zero(&base) {
                    // A remaining bit multiplies the result by zero.
                    return vec![0; self.dim()];
                }
                base = self.mul_dense(&base, &base);
            }
        }
        result.unwrap_or_else(|| vec![0; self.dim()])
    }

    /// Minimal weight of a nonzero coefficient.
    pub fn weight_of(&self, x: &[u32]) -> Option<usize> {
        x.iter()
            .zip(&self.weights)
            .filter(|(&c, _)| c != 0)
            .map(|(_, &w)| w)
            .min()
    }

    /// `dim A^m` for `1 <= m < trunc`, computed from actual products.
    pub fn ideal_power_dims(&self) -> Vec<usize> {
        let d = self.dim();
        let mut dims = Vec::new();
        let mut current: Vec<Vec<u32>> = (0..d)
            .map(|i| AlgElement::basis(d, i).coeffs)
            .collect();
        for _ in 1..self.trunc {
            dims.push(current.len());
            let mut ech = Echelon::new(self.prime, d);
            for x in &current {
                for j in 0..d {
                    let mut y = vec![0u32; d];
                    y[j] = 1;
                    let z = self.mul_dense(x, &y);
                    if !field::is_zero(&z) {
                        ech.insert(&z);
                    }
                }
            }
            current = ech.rows().to_vec();
        }
        dims
    }

    /// Restriction to the basis of weight `< s` with products truncated at
    /// `s`. Requires the basis to be sorted by weight.
    pub fn restrict(&self, s: usize) -> Result<SCTable> {
        if s < 2 || s > self.trunc {
            return Err(Error::Level(format!(
                "cannot restrict a table truncated at {} to level {s}",
                self.trunc
            )));
        }
        if self.weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Table("basis is not sorted by weight".into()));
        }
        let nd = self.weights.iter().take_while(|&&w| w < s).count();
        let mut products = Vec::with_capacity(nd * nd);
        for i in 0..nd {
            for j in 0..nd {
                if self.weights[i] + self.weights[j] >= s {
                    products.push(Vec::new());
                } else {
                    products.push(
                        self.product(i, j)
                            .iter()
                            .copied()
                            .filter(|&(k, _)| k < nd)
                            .collect(),
                    );
                }
            }
        }
        let t = SCTable::new(self.prime, s, self.weights[..nd].to_vec(), products)?;
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            self.labels[..nd].to_vec()
        };
        Ok(t.with_labels(labels, self.source.clone()))
    }

    /// First triple `(i, j, k)` with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_defect<I>(&self, triples: I) -> Option<(usize, usize, usize)>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let d = self.dim();
        for (i, j, k) in triples {
            let ei = AlgElement::basis(d, i).coeffs;
            let ej = AlgElement::basis(d, j).coeffs;
            let ek = AlgElement::basis(d, k).coeffs;
            let left = self.mul_dense(&self.mul_dense(&ei, &ej), &ek);
            let right = self.mul_dense(&ei, &self.mul_dense(&ej, &ek));
            if left != right {
                return Some((i, j, k));
            }
        }
        None
    }

    /// Exhaustive associativity check.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let triples = (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))));
        self.associativity_defect(triples).is_none()
    }

    // ------------------------------------------------------------------
    // Text format

    pub fn to_sct(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {}", self.prime);
        let _ = writeln!(out, "dim {}", self.dim());
        let _ = writeln!(out, "trunc {}", self.trunc);
        out.push('w');
        for w in &self.weights {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let entry = self.product(i, j);
                if entry.is_empty() {
                    continue;
                }
                let _ = write!(out, "e {} {} :", i + 1, j + 1);
                for &(k, c) in entry {
                    let _ = write!(out, " {}^{}", k + 1, c);
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<SCTable> {
        let mut prime = None;
        let mut dim = None;
        let mut trunc = None;
        let mut weights: Option<Vec<usize>> = None;
        let mut entries: Vec<(usize, usize, usize, Sparse)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap();
            let num = |t: &str| -> Result<usize> {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad number `{t}`")))
            };
            match key {
                "p" | "dim" | "trunc" => {
                    let v: Vec<&str> = toks.collect();
                    if v.len() != 1 {
                        return Err(parse_err(line_no, format!("`{key}` takes one value")));
                    }
                    let x = num(v[0])?;
                    match key {
                        "p" => prime = Some(x),
                        "dim" => dim = Some(x),
                        _ => trunc = Some(x),
                    }
                }
                "w" => weights = Some(toks.map(num).collect::<Result<_>>()?),
                "e" => {
                    let (lhs, rhs) = line
                        .split_once(':')
                        .ok_or_else(|| parse_err(line_no, "missing `:`"))?;
                    let ij: Vec<usize> = lhs
                        .split_whitespace()
                        .skip(1)
                        .map(num)
                        .collect::<Result<_>>()?;
                    if ij.len() != 2 {
                        return Err(parse_err(line_no, "expected `e <i> <j> :`"));
                    }
                    let mut terms = Vec::new();
                    for t in rhs.split_whitespace() {
                        let (k, c) = t
                            .split_once('^')
                            .ok_or_else(|| parse_err(line_no, format!("bad term `{t}`")))?;
                        terms.push((num(k)?, num(c)? as u32));
                    }
                    entries.push((line_no, ij[0], ij[1], terms));
                }
                other => return Err(parse_err(line_no, format!("unknown keyword `{other}`"))),
            }
        }
        let prime = prime.ok_or_else(|| parse_err(0, "missing `p`"))? as u32;
        let dim = dim.ok_or_else(|| parse_err(0, "missing `dim`"))?;
        let trunc = trunc.ok_or_else(|| parse_err(0, "missing `trunc`"))?;
        let weights = weights.unwrap_or_default();
        if weights.len() != dim {
            return Err(parse_err(0, format!("expected {dim} weights, found {}", weights.len())));
        }
        let mut products = vec![Vec::new(); dim * dim];
        for (line_no, i, j, terms) in entries {
            if i == 0 || j == 0 || i > dim || j > dim {
                return Err(parse_err(line_no, "basis index out of range"));
            }
            let slot = &mut products[(i - 1) * dim + (j - 1)];
            if !slot.is_empty() {
                return Err(parse_err(line_no, "duplicate product line"));
            }
            for (k, c) in terms {
                if k == 0 || k > dim {
                    return Err(parse_err(line_no, format!("basis index {k} out of range")));
                }
                if c == 0 || c >= prime {
                    return Err(parse_err(line_no, format!("coefficient {c} not in 1..{prime}")));
                }
                slot.push((k - 1, c));
            }
            if slot.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(parse_err(line_no, "terms must have increasing indices"));
            }
        }
        SCTable::new(prime, trunc, weights, products).map_err(|e| parse_err(0, e.to_string()))
    }
}

/// Sorts and merges a list of terms modulo `p`, dropping zeros.
pub(crate) fn normalize(mut terms: Vec<(usize, u32)>, p: u32) -> Sparse {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Sparse = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = (last.1 + c) % p,
            _ => out.push((k, c % p)),
        }
        if out.last().map_or(false, |l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> SCTable {
        // e1 e2 = e2 e1 = e3.
        SCTable::new(
            2,
            3,
            vec![1, 1, 2],
            vec![
                vec![],
                vec![(2, 1)],
                vec![],
                vec![(2, 1)],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sct_roundtrip() {
        let t = klein();
        let text = t.to_sct();
        assert_eq!(text, "p 2\ndim 3\ntrunc 3\nw 1 1 2\ne 1 2 : 3^1\ne 2 1 : 3^1\n");
        let back = SCTable::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_sct(), text);
    }

    #[test]
    fn grading_violations_are_rejected() {
        assert!(SCTable::parse("p 2\ndim 2\ntrunc 3\nw 1 1\ne 1 1 : 2^1\n").is_err());
        assert!(SCTable::parse("p 2\ndim 2\ntrunc 2\nw 1 1\ne 1 2 : 2^1\n").is_err());
        let err = SCTable::parse("p 2\ndim 2\ntrunc 3\nw 1 2\ne 1 1 : 3^1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn arithmetic_and_powers() {
        let t = klein();
        let e1 = AlgElement::basis(3, 0);
        let e2 = AlgElement::basis(3, 1);
        assert_eq!(t.multiply(&e1, &e2).unwrap(), AlgElement::basis(3, 2));
        assert!(t.multiply(&AlgElement::zero(3), &e2).unwrap().is_zero());
        assert!(t.multiply(&AlgElement::zero(2), &e2).is_err());
        let s = AlgElement {
            coeffs: vec![1, 1, 0],
        };
        // (e1 + e2)^2 = 2 e3 = 0 over F_2.
        assert!(t.power(&s, 2).unwrap().is_zero());
        assert_eq!(t.ideal_power_dims(), vec![3, 1]);
        assert!(t.is_associative());
    }

    #[test]
    fn restriction() {
        let t = klein();
        let r = t.restrict(2).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.product(0, 1).is_empty());
        assert!(t.restrict(4).is_err());
    }

    #[test]
    fn powers_past_nilpotency_vanish() {
        // Truncated polynomial algebra t k[t]/(t^3): e1 = t, e2 = t^2.
        let t = SCTable::new(3, 3, vec![1, 2], vec![vec![(1, 1)], vec![], vec![], vec![]]).unwrap();
        let x = AlgElement::basis(2, 0);
        let mut naive = x.clone();
        for e in 1..=12u64 {
            assert_eq!(t.power(&x, e).unwrap(), naive, "exponent {e}");
            naive = t.multiply(&naive, &x).unwrap();
        }
    }
}
