//! The Nappi-Witten algebra 𝔥₄, its affinization at level one and the two
//! free-field realizations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::exact::{q, qi, BigradedSeries, Q};
use crate::frames::{hmode, i_hvir, t_hvir, vectors};
use crate::lattice::{mode_apply, parity, translate, FockState, Frame};

/// Basis of 𝔥₄, in PBW order `F < E < I < J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum H4 {
    F,
    E,
    I,
    J,
}

pub const H4_BASIS: [H4; 4] = [H4::E, H4::F, H4::I, H4::J];

impl fmt::Display for H4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            H4::E => "E",
            H4::F => "F",
            H4::I => "I",
            H4::J => "J",
        };
        f.write_str(s)
    }
}

/// Element of 𝔥₄ as coefficients on basis vectors.
pub type H4Element = BTreeMap<H4, Q>;

/// `[a, b]`.
pub fn lie_bracket(a: H4, b: H4) -> H4Element {
    use H4::*;
    let mut out = H4Element::new();
    match (a, b) {
        (E, F) => {
            out.insert(I, Q::one());
        }
        (F, E) => {
            out.insert(I, -Q::one());
        }
        (J, E) => {
            out.insert(E, Q::one());
        }
        (E, J) => {
            out.insert(E, -Q::one());
        }
        (J, F) => {
            out.insert(F, -Q::one());
        }
        (F, J) => {
            out.insert(F, Q::one());
        }
        _ => {}
    }
    out
}

/// Invariant form `(E,F) = (I,J) = 1`.
pub fn form(a: H4, b: H4) -> Q {
    use H4::*;
    match (a, b) {
        (E, F) | (F, E) | (I, J) | (J, I) => Q::one(),
        _ => Q::zero(),
    }
}

/// `x(n)` of the affine algebra, or the central element `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineMode {
    Mode(H4, i64),
    K,
}

impl fmt::Display for AffineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineMode::Mode(x, n) => write!(f, "{x}({n})"),
            AffineMode::K => f.write_str("K"),
        }
    }
}

/// Formal linear combination of affine modes.
pub type AffineSum = BTreeMap<AffineMode, Q>;

pub fn affine_bracket(a: AffineMode, b: AffineMode) -> AffineSum {
    let mut out = AffineSum::new();
    if let (AffineMode::Mode(x, n), AffineMode::Mode(y, m)) = (a, b) {
        for (z, c) in lie_bracket(x, y) {
            out.insert(AffineMode::Mode(z, n + m), c);
        }
        if n + m == 0 {
            let c = qi(n) * form(x, y);
            if !c.is_zero() {
                out.insert(AffineMode::K, c);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// U(𝔥₄) in the PBW basis

/// Linear combination of PBW-ordered words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UH4(pub BTreeMap<Vec<H4>, Q>);

impl UH4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(x: H4) -> Self {
        Self::word(vec![x])
    }

    /// The normally ordered image of an arbitrary word.
    pub fn word(w: Vec<H4>) -> Self {
        let mut out = Self::zero();
        out.add_word(w, Q::one());
        out
    }

    fn add_word(&mut self, w: Vec<H4>, c: Q) {
        if c.is_zero() {
            return;
        }
        match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            None => {
                let e = self.0.entry(w.clone()).or_insert_with(Q::zero);
                *e += c;
                if e.is_zero() {
                    self.0.remove(&w);
                }
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                self.add_word(swapped, c.clone());
                for (z, k) in lie_bracket(w[i], w[i + 1]) {
                    let mut r = w[..i].to_vec();
                    r.push(z);
                    r.extend_from_slice(&w[i + 2..]);
                    self.add_word(r, &c * k);
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.0 {
            out.add_word(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.0 {
            out.add_word(w.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &o.0 {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self).scale(&-Q::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// `Ω = FE + IJ`.
pub fn casimir() -> UH4 {
    UH4::word(vec![H4::F, H4::E]).add(&UH4::word(vec![H4::I, H4::J]))
}

/// `[Ω, X]` for each basis vector.
pub fn casimir_check() -> Vec<(H4, UH4)> {
    let om = casimir();
    H4_BASIS.iter().map(|&x| (x, om.commutator(&UH4::gen(x)))).collect()
}

/// Charge of a generator under `J(0)`.
pub fn charge(x: H4) -> i64 {
    match x {
        H4::E => 1,
        H4::F => -1,
        _ => 0,
    }
}

/// PBW character `∏ 1/((1 - z q^n)(1 - z^{-1} q^n)(1 - q^n)^2)`.
pub fn pbw_character(max_h: usize) -> BigradedSeries {
    let mut s = BigradedSeries::eta_power_inverse(2, max_h);
    for n in 1..=max_h {
        s = s.mul_geometric(n, 1).mul_geometric(n, -1);
    }
    s
}

/// PBW monomials `x_1(-n_1) … x_k(-n_k)` of total degree `h`, modes listed
/// in a fixed canonical order.
pub fn pbw_monomials(h: u32) -> Vec<Vec<(H4, u32)>> {
    let mut modes: Vec<(H4, u32)> = Vec::new();
    for n in 1..=h {
        for x in [H4::E, H4::F, H4::I, H4::J] {
            modes.push((x, n));
        }
    }
    let mut out = Vec::new();
    fn rec(modes: &[(H4, u32)], start: usize, left: u32, cur: &mut Vec<(H4, u32)>, out: &mut Vec<Vec<(H4, u32)>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..modes.len() {
            if modes[i].1 <= left {
                cur.push(modes[i]);
                rec(modes, i, left - modes[i].1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&modes, 0, h, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// realizations

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationName {
    Wakimoto,
    InverseQhr,
}

impl fmt::Display for RealizationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealizationName::Wakimoto => "wakimoto",
            RealizationName::InverseQhr => "inverse_qhr",
        })
    }
}

/// Images of `E, F, I, J` in the ambient frame.
#[derive(Clone, Debug)]
pub struct H4Realization {
    pub name: RealizationName,
    pub images: BTreeMap<H4, FockState>,
}

impl H4Realization {
    pub fn image(&self, x: H4) -> &FockState {
        &self.images[&x]
    }

    /// Image of a Lie algebra element.
    pub fn image_of(&self, e: &H4Element) -> FockState {
        let mut s = FockState::zero(self.images[&H4::E].dim());
        for (x, c) in e {
            s.add_scaled(c, &self.images[x]);
        }
        s
    }

    /// `x(n)` acting on `t`.
    pub fn act(&self, frame: &Frame, x: H4, n: i64, t: &FockState) -> Result<FockState> {
        mode_apply(frame, &self.images[&x], n, t)
    }

    /// Image of the PBW monomial `x_1(-n_1) … x_k(-n_k) 𝟙`.
    pub fn monomial(&self, frame: &Frame, word: &[(H4, u32)]) -> Result<FockState> {
        let mut s = FockState::vacuum(frame.dim());
        for &(x, n) in word.iter().rev() {
            s = self.act(frame, x, -(n as i64), &s)?;
        }
        Ok(s)
    }
}

/// Weyl generators `a⁺ = e^{α+β}`, `a⁻ = -α(-1)e^{-α-β}`.
pub fn weyl_pair() -> (FockState, FockState) {
    let v = vectors();
    let s = v.alpha.add(&v.beta);
    let ap = FockState::exp(s.clone());
    let am = FockState::exp(s.neg()).times_mode(&v.alpha, 1).scale(&-Q::one());
    (ap, am)
}

pub fn wakimoto_map(frame: &Frame) -> Result<H4Realization> {
    let v = vectors();
    let (ap, am) = weyl_pair();
    let f_img = translate(&am).add(&am.times_mode(&v.p, 1));
    let j_img = hmode(&v.p, 1)
        .scale(&q(1, 2))
        .add(&hmode(&v.q, 1))
        .sub(&mode_apply(frame, &ap, -1, &am)?);
    let mut images = BTreeMap::new();
    images.insert(H4::E, ap);
    images.insert(H4::F, f_img);
    images.insert(H4::I, hmode(&v.p, 1));
    images.insert(H4::J, j_img);
    Ok(H4Realization { name: RealizationName::Wakimoto, images })
}

pub fn inverse_qhr_map() -> H4Realization {
    let v = vectors();
    let half = q(1, 2);
    let (t, i) = (t_hvir(), i_hvir());
    let f_hvir = t.sub(&i.times_mode(&v.nu, 1)).sub(&hmode(&v.nu, 2));
    let f_img = f_hvir.juxtapose(&FockState::exp(v.c.neg()));
    let mut images = BTreeMap::new();
    images.insert(H4::E, FockState::exp(v.c.clone()));
    images.insert(H4::F, f_img);
    images.insert(H4::I, hmode(&v.c, 1).add(&i));
    images.insert(H4::J, hmode(&v.d, 1).scale(&half).add(&i.scale(&half)));
    H4Realization { name: RealizationName::InverseQhr, images }
}

/// Image of `ω = (E(-1)F(-1) + I(-1)J(-1) - ½I(-2) - ½I(-1)²)𝟙`.
pub fn sugawara_state(frame: &Frame, r: &H4Realization) -> Result<FockState> {
    let half = q(1, 2);
    let (e, f, i, j) = (r.image(H4::E), r.image(H4::F), r.image(H4::I), r.image(H4::J));
    let mut s = mode_apply(frame, e, -1, f)?;
    s.add_assign(&mode_apply(frame, i, -1, j)?);
    s.add_scaled(&-half.clone(), &translate(i));
    s.add_scaled(&-half, &mode_apply(frame, i, -1, i)?);
    Ok(s)
}

/// A failed identity in [`verify_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EmbeddingFailure {
    pub identity: String,
    pub detail: String,
}

/// Report of [`verify_embedding`].
#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub checks: usize,
    pub failures: Vec<EmbeddingFailure>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Spanning targets: images of PBW monomials of weight `≤ max_weight`.
pub fn spanning_targets(frame: &Frame, r: &H4Realization, max_weight: u32) -> Result<Vec<(String, FockState)>> {
    let mut out = Vec::new();
    for h in 0..=max_weight {
        for w in pbw_monomials(h) {
            let label = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|(x, n)| format!("{x}(-{n})")).collect::<Vec<_>>().join(" ")
            };
            out.push((label, r.monomial(frame, &w)?));
        }
    }
    Ok(out)
}

/// Checks the affine relations on the images: the OPE data `X_j Y` for
/// `j ≥ 0`, and `[X(m), Y(n)] t` for `|m|, |n| ≤ mode_bound` on every
/// spanning target of weight `≤ max_weight`.
pub fn verify_embedding(frame: &Frame, r: &H4Realization, mode_bound: i64, max_weight: u32) -> Result<EmbeddingReport> {
    let mut report = EmbeddingReport::default();
    let vac = FockState::vacuum(frame.dim());
    for &x in &H4_BASIS {
        for &y in &H4_BASIS {
            let (a, b) = (r.image(x), r.image(y));
            for j in 0..4 {
                let got = mode_apply(frame, a, j, b)?;
                let want = match j {
                    0 => r.image_of(&lie_bracket(x, y)),
                    1 => vac.scale(&form(x, y)),
                    _ => FockState::zero(frame.dim()),
                };
                report.checks += 1;
                if got != want {
                    report.failures.push(EmbeddingFailure {
                        identity: format!("{x}_{j}{y}"),
                        detail: format!("got {got}, expected {want}"),
                    });
                }
            }
        }
    }
    let targets = spanning_targets(frame, r, max_weight)?;
    let modes: Vec<i64> = (-mode_bound..=mode_bound).collect();
    // y(n) t, then x(m) y(n) t, each computed once
    let mut inner_jobs = Vec::new();
    for (ti, _) in targets.iter().enumerate() {
        for &y in &H4_BASIS {
            for &n in &modes {
                inner_jobs.push((y, n, ti));
            }
        }
    }
    let inner: Vec<FockState> = inner_jobs
        .par_iter()
        .map(|&(y, n, ti)| r.act(frame, y, n, &targets[ti].1))
        .collect::<Result<_>>()?;
    let mut outer_jobs = Vec::new();
    for k in 0..inner_jobs.len() {
        for &x in &H4_BASIS {
            for &m in &modes {
                outer_jobs.push((x, m, k));
            }
        }
    }
    let outer: Vec<FockState> = outer_jobs
        .par_iter()
        .map(|&(x, m, k)| r.act(frame, x, m, &inner[k]))
        .collect::<Result<_>>()?;
    let outer_at: BTreeMap<(H4, i64, H4, i64, usize), usize> = outer_jobs
        .iter()
        .enumerate()
        .map(|(o, &(x, m, k))| {
            let (y, n, ti) = inner_jobs[k];
            ((x, m, y, n, ti), o)
        })
        .collect();
    let odd: BTreeMap<H4, bool> = H4_BASIS.iter().map(|&x| Ok((x, parity(frame, r.image(x))?))).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for &x in &H4_BASIS {
        for &y in &H4_BASIS {
            for &m in &modes {
                for &n in &modes {
                    for ti in 0..targets.len() {
                        jobs.push((x, y, m, n, ti));
                    }
                }
            }
        }
    }
    let results: Vec<Result<Option<EmbeddingFailure>>> = jobs
        .par_iter()
        .map(|&(x, y, m, n, ti)| {
            let (label, t) = &targets[ti];
            let first = &outer[outer_at[&(x, m, y, n, ti)]];
            let second = &outer[outer_at[&(y, n, x, m, ti)]];
            let lhs = if odd[&x] && odd[&y] { first.add(second) } else { first.sub(second) };
            let mut rhs = mode_apply(frame, &r.image_of(&lie_bracket(x, y)), m + n, t)?;
            if m + n == 0 {
                rhs.add_scaled(&(qi(m) * form(x, y)), t);
            }
            Ok((lhs != rhs).then(|| EmbeddingFailure {
                identity: format!("[{x}({m}), {y}({n})] on {label}"),
                detail: format!("lhs {lhs}, rhs {rhs}"),
            }))
        })
        .collect();
    for res in results {
        report.checks += 1;
        if let Some(f) = res? {
            report.failures.push(f);
        }
    }
    report.failures.sort();
    Ok(report)
}

/// Right side of the displayed Sugawara image, in the ambient frame.
pub fn sugawara_expected() -> FockState {
    crate::frames::sugawara_image()
}

/// Central charge read off `[L(m), L(-m)] 𝟙 = (m³ - m)/12 · c 𝟙` at `m = 2, 3`.
pub fn sugawara_central_charge(frame: &Frame, omega: &FockState) -> Result<Vec<Q>> {
    let vac = FockState::vacuum(frame.dim());
    let mut out = Vec::new();
    for m in [2i64, 3] {
        let v = crate::lattice::bracket_modes(frame, omega, m + 1, omega, -m + 1, &vac)?;
        let coeff = v.ratio_to(&vac).unwrap_or_else(Q::zero);
        out.push(coeff * qi(12) / qi(m * m * m - m));
    }
    Ok(out)
}
