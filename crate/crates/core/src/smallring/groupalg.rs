//! Dense arithmetic in `kG/I` with `I` spanned by `(g - 1)(n - 1)`,
//! `g ∈ G`, `n ∈ G'`.

use crate::caps::Caps;
use crate::error::Result;
use crate::field::{self, Echelon};
use crate::pcgroup::{derived_subgroup, element_at, element_index, Element, PcPresentation};

/// `kG/I` over the basis of group elements not at a pivot of `I`.
///
/// The span of the products `(g - 1)(n - 1)` is already a two-sided ideal:
/// `(g - 1)(n - 1)v = (gv - 1)(n^v - 1) - (v - 1)(n^v - 1)` and similarly on
/// the left.
#[derive(Clone, Debug)]
pub struct SmallGroupRing {
    p: u32,
    order: usize,
    /// `mul[a * order + b]` is the index of `element_at(a) * element_at(b)`.
    mul: Vec<usize>,
    ideal: Echelon,
    /// Group element indices forming the quotient basis.
    basis: Vec<usize>,
    /// Position of each group element index in `basis`, if any.
    slot: Vec<Option<usize>>,
}

impl SmallGroupRing {
    pub fn new(pres: &PcPresentation, caps: &Caps) -> Result<SmallGroupRing> {
        caps.check("group ring", pres.order_u128(), caps.ring)?;
        let p = pres.prime();
        let n = pres.ngens();
        let order = pres.order_u128() as usize;
        let elems: Vec<Element> = (0..order).map(|i| element_at(p, n, i)).collect();
        let mut mul = Vec::with_capacity(order * order);
        for a in &elems {
            for b in &elems {
                mul.push(element_index(p, &pres.mul(a, b)));
            }
        }
        let derived = derived_subgroup(pres).elements(pres, caps)?;
        let mut ideal = Echelon::new(p, order);
        let one = 0;
        for g in 0..order {
            for nn in &derived {
                let nidx = element_index(p, nn);
                // (g - 1)(n - 1) = gn - g - n + 1
                let mut v = vec![0u32; order];
                let mut add = |k: usize, c: u32| v[k] = field::add(v[k], c, p);
                add(mul[g * order + nidx], 1);
                add(g, p - 1);
                add(nidx, p - 1);
                add(one, 1);
                if !field::is_zero(&v) {
                    ideal.insert(&v);
                }
            }
        }
        let basis: Vec<usize> = (0..order).filter(|k| !ideal.pivots().contains(k)).collect();
        let mut slot = vec![None; order];
        for (i, &k) in basis.iter().enumerate() {
            slot[k] = Some(i);
        }
        Ok(SmallGroupRing {
            p,
            order,
            mul,
            ideal,
            basis,
            slot,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn lift(&self, x: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        for (i, &c) in x.iter().enumerate() {
            v[self.basis[i]] = c;
        }
        v
    }

    fn project(&self, mut v: Vec<u32>) -> Vec<u32> {
        self.ideal.reduce(&mut v);
        let mut out = vec![0u32; self.basis.len()];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                out[self.slot[k].expect("reduced vectors vanish at pivots")] = c;
            }
        }
        out
    }

    /// Image of a linear combination of group elements, given by index.
    pub fn from_group_vector(&self, v: Vec<u32>) -> Vec<u32> {
        self.project(v)
    }

    /// Image of a group element.
    pub fn element(&self, g: &Element) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        v[element_index(self.p, g)] = 1;
        self.project(v)
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        v[0] = 1;
        self.project(v)
    }

    /// `g - 1`.
    pub fn augmentation_generator(&self, g: &Element) -> Vec<u32> {
        let mut v = vec![0u32; self.order];
        v[element_index(self.p, g)] = 1;
        v[0] = field::sub(v[0], 1, self.p);
        self.project(v)
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (a, b) = (self.lift(x), self.lift(y));
        let mut v = vec![0u32; self.order];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                if cb != 0 {
                    let k = self.mul[i * self.order + j];
                    v[k] = field::add(v[k], field::mul(ca, cb, self.p), self.p);
                }
            }
        }
        self.project(v)
    }

    pub fn pow(&self, x: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Multiplicative order of a unit of augmentation 1 (a power of `p`).
    pub fn unit_order(&self, u: &[u32]) -> u64 {
        let one = self.one();
        let mut x = u.to_vec();
        let mut ord = 1u64;
        while x != one {
            x = self.pow(&x, self.p as u64);
            ord *= self.p as u64;
        }
        ord
    }

    /// Smallest `m` with `x^m = 0` (`x` nilpotent).
    pub fn nilpotency_index(&self, x: &[u32]) -> u64 {
        let mut m = 1;
        let mut y = x.to_vec();
        while !field::is_zero(&y) {
            y = self.mul(&y, x);
            m += 1;
        }
        m
    }

    /// The group element whose image is `x`, if any.
    pub fn find_element(&self, pres: &PcPresentation, x: &[u32]) -> Option<Element> {
        (0..self.order)
            .map(|i| element_at(self.p, pres.ngens(), i))
            .find(|g| self.element(g) == x)
    }
}
