//! Normally ordered Fock states over lattice exponentials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{fmt_q, Q};

/// Index of a Heisenberg generator in its frame.
pub type Gen = usize;

/// Point of `ℚ^n` in generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<Q>);

impl LatticePoint {
    pub fn zero(dim: usize) -> Self {
        Self(vec![Q::zero(); dim])
    }

    pub fn unit(dim: usize, g: Gen) -> Self {
        let mut v = Self::zero(dim);
        v.0[g] = Q::one();
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|x| crate::exact::qi(*x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_q).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Multiset of creation modes `g(-k)`, `k ≥ 1`, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<(Gen, u32)>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(g: Gen, k: u32) -> Self {
        Self(vec![(g, k)])
    }

    pub fn from_modes(mut v: Vec<(Gen, u32)>) -> Self {
        v.sort_unstable();
        Self(v)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, k)| k as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            if j >= o.0.len() || (i < self.0.len() && self.0[i] <= o.0[j]) {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(o.0[j]);
                j += 1;
            }
        }
        Self(out)
    }

    pub fn push(&self, g: Gen, k: u32) -> Self {
        self.mul(&Self::single(g, k))
    }

    pub fn without(&self, idx: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(idx);
        Self(v)
    }

    pub fn max_mode(&self) -> u32 {
        self.0.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }
}

/// Polynomial in creation modes.
pub type Poly = BTreeMap<Word, Q>;

pub(crate) fn poly_add_term(p: &mut Poly, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

/// Finite linear combination of `word · e^γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockState {
    dim: usize,
    terms: BTreeMap<LatticePoint, Poly>,
}

impl FockState {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::exp(LatticePoint::zero(dim))
    }

    pub fn exp(gamma: LatticePoint) -> Self {
        Self::monomial(Q::one(), Word::empty(), gamma)
    }

    pub fn monomial(c: Q, w: Word, gamma: LatticePoint) -> Self {
        let mut s = Self::zero(gamma.dim());
        s.add_term(c, w, gamma);
        s
    }

    /// `h(-k)𝟙` for a vector `h` in generator coordinates.
    pub fn mode_vector(h: &LatticePoint, k: u32) -> Self {
        let dim = h.dim();
        let mut s = Self::zero(dim);
        for (g, c) in h.0.iter().enumerate() {
            s.add_term(c.clone(), Word::single(g, k), LatticePoint::zero(dim));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, c: Q, w: Word, gamma: LatticePoint) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(gamma.dim(), self.dim);
        let p = self.terms.entry(gamma.clone()).or_default();
        poly_add_term(p, w, c);
        if p.is_empty() {
            self.terms.remove(&gamma);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(|p| p.len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Q, &Word, &LatticePoint)> {
        self.terms.iter().flat_map(|(g, p)| p.iter().map(move |(w, c)| (c, w, g)))
    }

    pub fn groups(&self) -> impl Iterator<Item = (&LatticePoint, &Poly)> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, w: &Word, gamma: &LatticePoint) -> Q {
        self.terms.get(gamma).and_then(|p| p.get(w)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            for c in p.values_mut() {
                *c *= s;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        assert_eq!(self.dim, o.dim, "frame dimension mismatch");
        for (c, w, g) in o.iter() {
            self.add_term(c.clone(), w.clone(), g.clone());
        }
    }

    pub fn add_scaled(&mut self, s: &Q, o: &Self) {
        if s.is_zero() {
            return;
        }
        for (c, w, g) in o.iter() {
            self.add_term(c * s, w.clone(), g.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), o);
        out
    }

    /// Commutative product of the Heisenberg words with exponents added.
    /// This is the naive tensor product of states living in orthogonal
    /// sub-frames; no cocycle sign is inserted.
    pub fn juxtapose(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (c1, w1, g1) in self.iter() {
            for (c2, w2, g2) in o.iter() {
                out.add_term(c1 * c2, w1.mul(w2), g1.add(g2));
            }
        }
        out
    }

    /// Multiplies every term by `h(-k)`.
    pub fn times_mode(&self, h: &LatticePoint, k: u32) -> Self {
        self.juxtapose(&Self::mode_vector(h, k))
    }

    /// Maximal mode degree over all terms.
    pub fn max_degree(&self) -> u64 {
        self.iter().map(|(_, w, _)| w.degree()).max().unwrap_or(0)
    }

    /// If `self = s · other` for a scalar `s`, returns `s`.
    pub fn ratio_to(&self, other: &Self) -> Option<Q> {
        if other.is_zero() {
            return if self.is_zero() { Some(Q::zero()) } else { None };
        }
        let (c0, w0, g0) = other.iter().next().unwrap();
        let s = self.coeff(w0, g0) / c0;
        if *self == other.scale(&s) {
            Some(s)
        } else {
            None
        }
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, w, g) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", fmt_q(c))?;
            for (gen, k) in &w.0 {
                write!(f, " a{gen}(-{k})")?;
            }
            if !g.is_zero() {
                write!(f, " e^{g}")?;
            }
        }
        Ok(())
    }
}
