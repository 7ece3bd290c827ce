//! Twisted Heisenberg-Virasoro algebra at level zero.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{qi, BigradedSeries, Echelon, MatrixQ, SparseVec, Q};
use crate::frames::{i_hvir, t_hvir, vectors};
use crate::lattice::coords::Coordinates;
use crate::lattice::{mode_apply, FockState, Frame, LatticePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    T,
    I,
}

/// `T(n)` or `I(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HVirMode {
    pub kind: Kind,
    pub index: i64,
}

impl HVirMode {
    pub fn t(n: i64) -> Self {
        Self { kind: Kind::T, index: n }
    }
    pub fn i(n: i64) -> Self {
        Self { kind: Kind::I, index: n }
    }
}

impl std::fmt::Display for HVirMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self.kind {
            Kind::T => "T",
            Kind::I => "I",
        };
        write!(f, "{k}({})", self.index)
    }
}

/// Central charges `(c_L, c_I, c_LI)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Centrals {
    pub c_l: Q,
    pub c_i: Q,
    pub c_li: Q,
}

impl Default for Centrals {
    fn default() -> Self {
        Self { c_l: qi(2), c_i: qi(0), c_li: qi(1) }
    }
}

/// A bracket value: modes with coefficients plus a central scalar.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BracketValue {
    pub modes: Vec<(HVirMode, Q)>,
    pub central: Q,
}

pub fn hvir_bracket(a: HVirMode, b: HVirMode) -> BracketValue {
    hvir_bracket_with(&Centrals::default(), a, b)
}

pub fn hvir_bracket_with(cc: &Centrals, a: HVirMode, b: HVirMode) -> BracketValue {
    let (n, m) = (a.index, b.index);
    let delta = n + m == 0;
    let mut out = BracketValue { modes: Vec::new(), central: Q::zero() };
    match (a.kind, b.kind) {
        (Kind::T, Kind::T) => {
            if n != m {
                out.modes.push((HVirMode::t(n + m), qi(n - m)));
            }
            if delta {
                out.central = qi(n * n * n - n) / qi(12) * &cc.c_l;
            }
        }
        (Kind::T, Kind::I) => {
            if m != 0 {
                out.modes.push((HVirMode::i(n + m), qi(-m)));
            }
            if delta {
                out.central = -qi(n * n + n) * &cc.c_li;
            }
        }
        (Kind::I, Kind::T) => {
            let r = hvir_bracket_with(cc, b, a);
            out.modes = r.modes.into_iter().map(|(x, c)| (x, -c)).collect();
            out.central = -r.central;
        }
        (Kind::I, Kind::I) => {
            if delta {
                out.central = qi(n) * &cc.c_i;
            }
        }
    }
    out
}

/// PBW monomial of the Verma module: creation modes in ascending order of
/// `(kind, index)`, i.e. all `T` left of all `I`, most negative first.
pub type Pbw = Vec<HVirMode>;

pub type VermaVec = BTreeMap<Pbw, Q>;

fn vv_add(v: &mut VermaVec, k: Pbw, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// The Verma module `V[x, y]` with highest weight vector `v_{x,y}`.
pub struct Verma {
    pub x: Q,
    pub y: Q,
    pub centrals: Centrals,
    cache: HashMap<(HVirMode, Pbw), VermaVec>,
}

impl Verma {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y, centrals: Centrals::default(), cache: HashMap::new() }
    }

    /// `X · P` for a single PBW monomial.
    pub fn act_mono(&mut self, x: HVirMode, p: &Pbw) -> VermaVec {
        if let Some(v) = self.cache.get(&(x, p.clone())) {
            return v.clone();
        }
        let mut out = VermaVec::new();
        match p.split_first() {
            None => {
                if x.index < 0 {
                    out.insert(vec![x], Q::one());
                } else if x.index == 0 {
                    let ev = match x.kind {
                        Kind::T => self.y.clone(),
                        Kind::I => self.x.clone(),
                    };
                    vv_add(&mut out, Vec::new(), ev);
                }
            }
            Some((&head, rest)) => {
                if x.index < 0 && x <= head {
                    let mut k = vec![x];
                    k.extend_from_slice(p);
                    out.insert(k, Q::one());
                } else {
                    // X·Y·R = Y·(X·R) + [X,Y]·R
                    let rest: Pbw = rest.to_vec();
                    let xr = self.act_mono(x, &rest);
                    for (m, c) in xr {
                        for (k, d) in self.act_mono(head, &m) {
                            vv_add(&mut out, k, &c * d);
                        }
                    }
                    let br = hvir_bracket_with(&self.centrals, x, head);
                    for (mode, c) in br.modes {
                        for (k, d) in self.act_mono(mode, &rest) {
                            vv_add(&mut out, k, &c * d);
                        }
                    }
                    if !br.central.is_zero() {
                        vv_add(&mut out, rest, br.central);
                    }
                }
            }
        }
        self.cache.insert((x, p.clone()), out.clone());
        out
    }

    pub fn act(&mut self, x: HVirMode, v: &VermaVec) -> VermaVec {
        let mut out = VermaVec::new();
        for (p, c) in v {
            for (k, d) in self.act_mono(x, p) {
                vv_add(&mut out, k, c * d);
            }
        }
        out
    }

    /// Applies a word of modes, rightmost first.
    pub fn act_word(&mut self, word: &[HVirMode], v: &VermaVec) -> VermaVec {
        let mut s = v.clone();
        for &x in word.iter().rev() {
            s = self.act(x, &s);
        }
        s
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All partitions of `n` as descending part lists.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    partitions(n, n)
}

/// PBW basis of the degree-`d` component.
pub fn verma_basis(d: u32) -> Vec<Pbw> {
    let mut out = Vec::new();
    for dt in 0..=d {
        for lt in partitions_of(dt) {
            for li in partitions_of(d - dt) {
                let mut p: Pbw = lt.iter().map(|&k| HVirMode::t(-(k as i64))).collect();
                p.extend(li.iter().map(|&k| HVirMode::i(-(k as i64))));
                out.push(p);
            }
        }
    }
    out
}

fn to_sparse(v: &VermaVec, index: &HashMap<Pbw, usize>) -> SparseVec {
    let mut s: SparseVec = v.iter().map(|(k, c)| (index[k], c.clone())).collect();
    s.sort_by_key(|e| e.0);
    s
}

fn basis_index(d: u32) -> (Vec<Pbw>, HashMap<Pbw, usize>) {
    let b = verma_basis(d);
    let idx = b.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    (b, idx)
}

/// Joint kernel of `T(n), I(n)`, `1 ≤ n ≤ d`, on the degree-`d` component.
pub fn singular_space(x: &Q, y: &Q, d: u32) -> Vec<VermaVec> {
    let mut verma = Verma::new(x.clone(), y.clone());
    let (basis, _) = basis_index(d);
    let mut blocks: Vec<MatrixQ> = Vec::new();
    for n in 1..=d as i64 {
        let (tb, tidx) = basis_index(d - n as u32);
        for kind in [Kind::T, Kind::I] {
            let mode = HVirMode { kind, index: n };
            let cols: Vec<SparseVec> = basis
                .iter()
                .map(|p| to_sparse(&verma.act_mono(mode, p), &tidx))
                .collect();
            blocks.push(MatrixQ::from_columns(tb.len(), &cols));
        }
    }
    let mut m = MatrixQ::zeros(0, basis.len());
    for b in blocks {
        m = m.stack(&b);
    }
    m.kernel_basis()
        .into_iter()
        .map(|k| {
            let mut v = VermaVec::new();
            for (i, c) in k.into_iter().enumerate() {
                vv_add(&mut v, basis[i].clone(), c);
            }
            v
        })
        .collect()
}

/// Dimension of the degree-`d` component of the submodule generated by `w` of degree `p`.
pub fn generated_dim(x: &Q, y: &Q, w: &VermaVec, p: u32, d: u32) -> usize {
    if d < p {
        return 0;
    }
    let mut verma = Verma::new(x.clone(), y.clone());
    let (_, idx) = basis_index(d);
    let mut ech = Echelon::new();
    for word in verma_basis(d - p) {
        let v = verma.act_word(&word, w);
        ech.insert(&to_sparse(&v, &idx));
    }
    ech.rank()
}

/// `|x - 1|` for integral `x ≠ 1`.
pub fn singular_degree(x: &Q) -> Option<u32> {
    if x.is_integer() && *x != Q::one() {
        let d = (x - Q::one()).abs();
        Some(d.to_integer().try_into().expect("small degree"))
    } else {
        None
    }
}

/// Character of the irreducible quotient `L[x, y]` up to `q^{max_h}`.
pub fn hvir_character(x: &Q, y: &Q, max_h: usize) -> BigradedSeries {
    let base = BigradedSeries::eta_power_inverse(2, max_h);
    let s = match singular_degree(x) {
        Some(p) => base.mul_one_minus(p as usize),
        None => base,
    };
    s.with_offset(y - Q::new(1.into(), 12.into()))
}

/// Free-field generators `(T_H, I_H)` after checking the pairing data.
pub fn free_field_hvir(frame: &Frame) -> Result<(FockState, FockState)> {
    let v = vectors();
    if frame.dim() != v.c1.dim() {
        return Err(Error::FrameMismatch("frame lacks the c1, d1 directions".into()));
    }
    let ok = frame.pairing(&v.c1, &v.c1).is_zero()
        && frame.pairing(&v.d1, &v.d1).is_zero()
        && frame.pairing(&v.c1, &v.d1) == qi(2);
    if !ok {
        return Err(Error::Incompatible("c1, d1 pairings differ from <c1,d1> = 2, null".into()));
    }
    Ok((t_hvir(), i_hvir()))
}

/// `X(n)` acting through the free-field states: `T(n) = (T_H)_{n+1}`, `I(n) = (I_H)_n`.
pub fn free_field_mode(frame: &Frame, x: HVirMode, s: &FockState) -> Result<FockState> {
    match x.kind {
        Kind::T => mode_apply(frame, &t_hvir(), x.index + 1, s),
        Kind::I => mode_apply(frame, &i_hvir(), x.index, s),
    }
}

/// Weight-`h` basis of the submodule generated by the highest-weight vector
/// `top`, built layer by layer from `T(-k)`, `I(-k)`.
pub fn generated_layers(frame: &Frame, top: &FockState, max_h: u32) -> Result<Vec<Vec<FockState>>> {
    let mut layers: Vec<Vec<FockState>> = vec![vec![top.clone()]];
    for h in 1..=max_h {
        let mut cands = Vec::new();
        for k in 1..=h {
            for s in &layers[(h - k) as usize] {
                for kind in [Kind::T, Kind::I] {
                    cands.push((HVirMode { kind, index: -(k as i64) }, s.clone()));
                }
            }
        }
        let images: Vec<FockState> = cands
            .par_iter()
            .map(|(x, s)| free_field_mode(frame, *x, s))
            .collect::<Result<_>>()?;
        layers.push(crate::lattice::coords::independent(&images));
    }
    Ok(layers)
}

/// Highest-weight exponent `θ = t c₁ + u d₁` realizing `v_{x,y}` in the Fock
/// module; `x = -2u`, `y = t(1 - x)`. For `x = 1` only `y = 0` is reachable
/// and `t` is free (the caller passes it).
pub fn hw_exponent(x: &Q, y: &Q, t_at_one: &Q) -> Result<LatticePoint> {
    let v = vectors();
    let u = -x / qi(2);
    let t = if *x == Q::one() {
        if !y.is_zero() {
            return Err(Error::Unreachable(format!("L[1, {y}] has no Fock highest-weight vector")));
        }
        t_at_one.clone()
    } else {
        y / (Q::one() - x)
    };
    Ok(v.c1.scale(&t).add(&v.d1.scale(&u)))
}

/// Weight-`h` component of `Ker (e^{c₁})_0` on the Fock space over `e^{k d₁/2}`.
pub fn hvir_module_component(frame: &Frame, k: i64, h: u32) -> Result<Vec<FockState>> {
    let v = vectors();
    if k < 0 {
        return Err(Error::Unreachable(format!("shift k = {k} is not realized as a kernel of Q")));
    }
    let top = v.d1.scale(&Q::new(k.into(), 2.into()));
    let source = fock_words(&v.c1, &v.d1, h, &top);
    let qstate = FockState::exp(v.c1.clone());
    let mut coords = Coordinates::new();
    let cols: Vec<SparseVec> = source
        .iter()
        .map(|s| mode_apply(frame, &qstate, 0, s).map(|img| coords.vectorize(&img)))
        .collect::<Result<_>>()?;
    let m = MatrixQ::from_columns(coords.len(), &cols);
    Ok(m.kernel_basis()
        .into_iter()
        .map(|kv| {
            let mut s = FockState::zero(frame.dim());
            for (c, b) in kv.iter().zip(&source) {
                s.add_scaled(c, b);
            }
            s
        })
        .collect())
}

/// All monomials `∏ a(-k) ∏ b(-l) e^{top}` of degree `h`.
pub fn fock_words(a: &LatticePoint, b: &LatticePoint, h: u32, top: &LatticePoint) -> Vec<FockState> {
    let mut out = Vec::new();
    for da in 0..=h {
        for pa in partitions_of(da) {
            for pb in partitions_of(h - da) {
                let mut s = FockState::exp(top.clone());
                for &k in &pa {
                    s = s.times_mode(a, k);
                }
                for &k in &pb {
                    s = s.times_mode(b, k);
                }
                out.push(s);
            }
        }
    }
    out
}

/// Image of a Verma vector under `v_{x,y} ↦ top`.
pub fn realize_verma_vector(frame: &Frame, top: &FockState, v: &VermaVec) -> Result<FockState> {
    let mut out = FockState::zero(frame.dim());
    for (word, c) in v {
        let mut s = top.clone();
        for &x in word.iter().rev() {
            s = free_field_mode(frame, x, &s)?;
        }
        out.add_scaled(c, &s);
    }
    Ok(out)
}
