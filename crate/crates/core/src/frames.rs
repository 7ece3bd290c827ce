//! The ambient frame `(α, β, p, q, φ)` and its distinguished vectors.

use crate::exact::{q, qi, Q};
use crate::lattice::{FockState, Frame, LatticePoint};

pub const GENERATORS: [&str; 5] = ["alpha", "beta", "p", "q", "phi"];

/// Named vectors of the ambient frame.
#[derive(Clone, Debug)]
pub struct Vectors {
    pub alpha: LatticePoint,
    pub beta: LatticePoint,
    pub p: LatticePoint,
    pub q: LatticePoint,
    pub phi: LatticePoint,
    pub c: LatticePoint,
    pub d: LatticePoint,
    pub c1: LatticePoint,
    pub d1: LatticePoint,
    pub nu: LatticePoint,
    pub mu: LatticePoint,
}

fn lp(v: [i64; 5]) -> LatticePoint {
    LatticePoint::from_ints(&v)
}

pub fn vectors() -> Vectors {
    Vectors {
        alpha: lp([1, 0, 0, 0, 0]),
        beta: lp([0, 1, 0, 0, 0]),
        p: lp([0, 0, 1, 0, 0]),
        q: lp([0, 0, 0, 1, 0]),
        phi: lp([0, 0, 0, 0, 1]),
        c: lp([1, 1, 0, 0, 0]),
        d: lp([1, -1, 0, 2, 0]),
        c1: lp([1, 1, -1, 0, 0]),
        d1: lp([0, 0, 0, -2, 0]),
        nu: lp([1, 0, 0, 1, 0]),
        mu: lp([0, 1, 0, -1, 0]),
    }
}

fn gram() -> Vec<Vec<Q>> {
    let mut g = vec![vec![qi(0); 5]; 5];
    g[0][0] = qi(1);
    g[1][1] = qi(-1);
    g[2][3] = qi(1);
    g[3][2] = qi(1);
    g[4][4] = qi(1);
    g
}

/// Bare frame: Gram data and the full integral lattice, no conformal state.
///
/// The cocycle is the ordered one plus ε(β, β) = -1; with it every sign on
/// ℤc + ℤd is trivial, so that e.g. `(e^c)_{-1} e^{-c} = 𝟙`.
pub fn bare_frame() -> Frame {
    let names = GENERATORS.iter().map(|s| s.to_string()).collect();
    let basis = (0..5).map(|i| LatticePoint::unit(5, i)).collect();
    let f = Frame::new(names, gram(), basis).expect("ambient frame");
    let mut bits = f.cocycle_bits().to_vec();
    bits[1][1] = true;
    f.with_cocycle_bits(bits).expect("cocycle")
}

/// `h(-k)𝟙`.
pub fn hmode(h: &LatticePoint, k: u32) -> FockState {
    FockState::mode_vector(h, k)
}

/// `h1(-k1) h2(-k2) 𝟙`.
pub fn hmode2(h1: &LatticePoint, k1: u32, h2: &LatticePoint, k2: u32) -> FockState {
    hmode(h1, k1).juxtapose(&hmode(h2, k2))
}

/// `T_H = ½c₁(-1)d₁(-1)𝟙 - ½d₁(-2)𝟙`.
pub fn t_hvir() -> FockState {
    let v = vectors();
    hmode2(&v.c1, 1, &v.d1, 1).scale(&q(1, 2)).sub(&hmode(&v.d1, 2).scale(&q(1, 2)))
}

/// `I_H = -c₁(-1)𝟙`.
pub fn i_hvir() -> FockState {
    hmode(&vectors().c1, 1).scale(&qi(-1))
}

/// Image of the Sugawara vector:
/// `T_H - ½ I_H(-2)𝟙 + ½c(-1)d(-1)𝟙 - ½(c(-2) + d(-2))𝟙`.
pub fn sugawara_image() -> FockState {
    let v = vectors();
    let half = q(1, 2);
    let i_m2 = crate::lattice::translate(&i_hvir());
    t_hvir()
        .sub(&i_m2.scale(&half))
        .add(&hmode2(&v.c, 1, &v.d, 1).scale(&half))
        .sub(&hmode(&v.c, 2).add(&hmode(&v.d, 2)).scale(&half))
}

/// Charge vector of `J(0) = ½d(0) + ½I_H(0)`.
pub fn j_charge_vector() -> LatticePoint {
    let v = vectors();
    v.d.sub(&v.c1).scale(&q(1, 2))
}

/// Frame graded by the Sugawara image and `J(0)`.
pub fn nw_frame() -> Frame {
    bare_frame().with_conformal(sugawara_image()).with_charge(j_charge_vector())
}
