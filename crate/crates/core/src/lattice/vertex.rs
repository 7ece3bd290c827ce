//! Mode coefficients of lattice vertex operators.
//!
//! `Y(w e^γ, z)` is expanded as the normally ordered product of the
//! derivative fields `∂^{(k-1)} g(z)` for every factor `g(-k)` of `w` with
//! `Y(e^γ, z) = e^γ z^{γ(0)} E⁻(γ, z) E⁺(γ, z)`. Zero modes count as
//! annihilators and sit to the right of `e^γ`.

use num_traits::{One, Zero};

use super::frame::Frame;
use super::state::{poly_add_term, FockState, Gen, LatticePoint, Poly, Word};
use crate::error::{Error, Result};
use crate::exact::{binomial, fmt_q, to_i64, Q};

/// Schur polynomials of `E⁻(γ, z) = exp(Σ γ(-m) z^m / m)`, computed lazily.
struct Schur<'a> {
    gamma: &'a LatticePoint,
    polys: Vec<Poly>,
}

impl<'a> Schur<'a> {
    fn new(gamma: &'a LatticePoint) -> Self {
        let mut p0 = Poly::new();
        p0.insert(Word::empty(), Q::one());
        Self { gamma, polys: vec![p0] }
    }

    fn get(&mut self, j: usize) -> &Poly {
        self.ensure(j);
        &self.polys[j]
    }

    fn ensure(&mut self, j: usize) {
        while self.polys.len() <= j {
            let d = self.polys.len();
            let mut next = Poly::new();
            for m in 1..=d {
                for (g, c) in self.gamma.0.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (w, x) in &self.polys[d - m] {
                        poly_add_term(&mut next, w.push(g, m as u32), x * c);
                    }
                }
            }
            let inv = Q::new(1.into(), (d as i64).into());
            for v in next.values_mut() {
                *v *= &inv;
            }
            self.polys.push(next);
        }
    }
}

/// Terms `c · z^p · word` produced by the annihilation side.
type ZTerms = Vec<(i64, Word, Q)>;

fn annihilate_factor(frame: &Frame, delta_pair: &Q, h: Gen, k: u32, terms: &ZTerms) -> ZTerms {
    let mut out = ZTerms::new();
    let k = k as i64;
    for (p, w, c) in terms {
        // h(0)
        if !delta_pair.is_zero() {
            out.push((p - k, w.clone(), c * delta_pair * binomial(-1, k - 1)));
        }
        for (idx, &(g, m)) in w.0.iter().enumerate() {
            let pair = frame.gen_pairing(h, g);
            if pair.is_zero() {
                continue;
            }
            let m = m as i64;
            let coef = c * pair * Q::from_integer(m.into()) * binomial(-m - 1, k - 1);
            if !coef.is_zero() {
                out.push((p - m - k, w.without(idx), coef));
            }
        }
    }
    out
}

/// Applies `E⁺(γ, z)`: each `g(-m)` becomes `g(-m) - ⟨γ,g⟩ z^{-m}`.
fn apply_e_plus(frame: &Frame, gamma: &LatticePoint, terms: ZTerms) -> ZTerms {
    let mut out = ZTerms::new();
    for (p, w, c) in terms {
        let shifts: Vec<Q> = w.0.iter().map(|&(g, _)| -frame.pair_gen(g, gamma)).collect();
        let active: Vec<usize> = (0..w.len()).filter(|&i| !shifts[i].is_zero()).collect();
        for mask in 0u64..(1u64 << active.len()) {
            let mut coef = c.clone();
            let mut zp = p;
            let mut keep = vec![true; w.len()];
            for (bit, &i) in active.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    coef *= &shifts[i];
                    zp -= w.0[i].1 as i64;
                    keep[i] = false;
                }
            }
            let rest = Word(w.0.iter().zip(&keep).filter(|(_, k)| **k).map(|(f, _)| *f).collect());
            out.push((zp, rest, coef));
        }
    }
    out
}

/// Distributes `budget` among the creation factors and the Schur part.
fn create(
    creators: &[(Gen, u32)],
    budget: i64,
    word: &Word,
    coef: &Q,
    schur: &mut Schur<'_>,
    out: &mut Poly,
) {
    match creators.split_first() {
        None => {
            for (w, c) in schur.get(budget as usize) {
                poly_add_term(out, word.mul(w), coef * c);
            }
        }
        Some((&(h, k), rest)) => {
            for t in 0..=budget {
                let s = k as i64 + t;
                let b = binomial(s - 1, k as i64 - 1);
                create(rest, budget - t, &word.push(h, s as u32), &(coef * b), schur, out);
            }
        }
    }
}

fn check_dims(frame: &Frame, a: &FockState, b: &FockState) -> Result<()> {
    frame.same_frame(a)?;
    frame.same_frame(b)?;
    if !a.is_zero() && !b.is_zero() && a.dim() != b.dim() {
        return Err(Error::FrameMismatch("operands of different dimension".into()));
    }
    Ok(())
}

fn integral_pairing(frame: &Frame, gamma: &LatticePoint, delta: &LatticePoint) -> Result<i64> {
    let gd = frame.pairing(gamma, delta);
    to_i64(&gd).ok_or_else(|| Error::NonIntegral(format!("<{gamma},{delta}> = {}", fmt_q(&gd))))
}

/// `A_n B`: coefficient of `z^{-n-1}` in `Y(A, z) B`.
pub fn mode_apply(frame: &Frame, a: &FockState, n: i64, b: &FockState) -> Result<FockState> {
    check_dims(frame, a, b)?;
    let mut out = FockState::zero(frame.dim());
    for (gamma, pa) in a.groups() {
        frame.check_field_exponent(gamma)?;
        let mut schur = Schur::new(gamma);
        for (delta, pb) in b.groups() {
            frame.check_module_exponent(delta)?;
            let gd = integral_pairing(frame, gamma, delta)?;
            let eps = frame.cocycle(gamma, delta);
            let need = -n - 1 - gd;
            let exp = gamma.add(delta);
            let mut acc = Poly::new();
            for (wa, ca) in pa {
                let factors = &wa.0;
                let nf = factors.len();
                for mask in 0u64..(1u64 << nf) {
                    let mut terms: ZTerms = Vec::new();
                    for (wb, cb) in pb {
                        terms.push((0, wb.clone(), ca * cb * &eps));
                    }
                    let mut creators = Vec::new();
                    for (i, &(h, k)) in factors.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            let dp = frame.pair_gen(h, delta);
                            terms = annihilate_factor(frame, &dp, h, k, &terms);
                        } else {
                            creators.push((h, k));
                        }
                    }
                    if terms.is_empty() {
                        continue;
                    }
                    for (p, w, c) in apply_e_plus(frame, gamma, terms) {
                        let budget = need - p;
                        if budget < 0 || c.is_zero() {
                            continue;
                        }
                        create(&creators, budget, &w, &c, &mut schur, &mut acc);
                    }
                }
            }
            for (w, c) in acc {
                out.add_term(c, w, exp.clone());
            }
        }
    }
    Ok(out)
}

/// Largest `j` with `A_j B` possibly nonzero, or `None` when `A` or `B` is zero.
pub fn max_nonzero_mode(frame: &Frame, a: &FockState, b: &FockState) -> Result<Option<i64>> {
    let mut best: Option<i64> = None;
    for (gamma, pa) in a.groups() {
        let da = pa.keys().map(|w| w.degree()).max().unwrap_or(0) as i64;
        for (delta, pb) in b.groups() {
            let db = pb.keys().map(|w| w.degree()).max().unwrap_or(0) as i64;
            let gd = integral_pairing(frame, gamma, delta)?;
            let j = da + db - gd - 1;
            best = Some(best.map_or(j, |x| x.max(j)));
        }
    }
    Ok(best)
}

/// Translation operator `T`.
pub fn translate(a: &FockState) -> FockState {
    let mut out = FockState::zero(a.dim());
    for (c, w, gamma) in a.iter() {
        for (idx, &(g, k)) in w.0.iter().enumerate() {
            let cf = c * Q::from_integer((k as i64).into());
            out.add_term(cf, w.without(idx).push(g, k + 1), gamma.clone());
        }
        for (g, x) in gamma.0.iter().enumerate() {
            if !x.is_zero() {
                out.add_term(c * x, w.push(g, 1), gamma.clone());
            }
        }
    }
    out
}

/// `T^i A / i!`.
pub fn divided_translate(a: &FockState, i: u32) -> FockState {
    let mut s = a.clone();
    for k in 1..=i {
        s = translate(&s).scale(&Q::new(1.into(), (k as i64).into()));
    }
    s
}

/// Statistics of `A`: `true` for odd. Mixed parity is an error.
pub fn parity(frame: &Frame, a: &FockState) -> Result<bool> {
    let mut found: Option<bool> = None;
    for gamma in a.exponents() {
        let p = frame.parity(&gamma)?;
        match found {
            Some(f) if f != p => return Err(Error::Incompatible("state of mixed parity".into())),
            _ => found = Some(p),
        }
    }
    Ok(found.unwrap_or(false))
}

/// `[A_m, B_n] t` via `Σ_j binom(m, j) (A_j B)_{m+n-j} t`.
pub fn bracket_modes(frame: &Frame, a: &FockState, m: i64, b: &FockState, n: i64, t: &FockState) -> Result<FockState> {
    check_dims(frame, a, b)?;
    let mut out = FockState::zero(frame.dim());
    let Some(jmax) = max_nonzero_mode(frame, a, b)? else {
        return Ok(out);
    };
    for j in 0..=jmax.max(-1) {
        let bin = binomial(m, j);
        if bin.is_zero() {
            continue;
        }
        let ajb = mode_apply(frame, a, j, b)?;
        if ajb.is_zero() {
            continue;
        }
        out.add_scaled(&bin, &mode_apply(frame, &ajb, m + n - j, t)?);
    }
    Ok(out)
}

/// `A_m (B_n t) - (-1)^{|A||B|} B_n (A_m t)`.
pub fn bracket_direct(frame: &Frame, a: &FockState, m: i64, b: &FockState, n: i64, t: &FockState) -> Result<FockState> {
    let first = mode_apply(frame, a, m, &mode_apply(frame, b, n, t)?)?;
    let second = mode_apply(frame, b, n, &mode_apply(frame, a, m, t)?)?;
    let odd = parity(frame, a)? && parity(frame, b)?;
    Ok(if odd { first.add(&second) } else { first.sub(&second) })
}

/// Eigenvalue of `ω_1` on `A` for the frame's conformal state.
pub fn weight_of(frame: &Frame, a: &FockState) -> Result<Q> {
    let omega = frame
        .conformal()
        .ok_or_else(|| Error::InvalidParameter("frame has no conformal state".into()))?;
    eigenvalue(&mode_apply(frame, omega, 1, a)?, a)
}

/// Eigenvalue of the charge zero mode `h(0)`.
pub fn charge_of(frame: &Frame, a: &FockState) -> Result<Q> {
    let h = frame
        .charge_vector()
        .ok_or_else(|| Error::InvalidParameter("frame has no charge vector".into()))?;
    let mut val: Option<Q> = None;
    for gamma in a.exponents() {
        let c = frame.pairing(h, &gamma);
        match &val {
            Some(v) if *v != c => return Err(Error::NotEigen("mixed charges".into())),
            _ => val = Some(c),
        }
    }
    val.ok_or_else(|| Error::NotEigen("zero state".into()))
}

fn eigenvalue(image: &FockState, a: &FockState) -> Result<Q> {
    if a.is_zero() {
        return Err(Error::NotEigen("zero state".into()));
    }
    image.ratio_to(a).ok_or_else(|| Error::NotEigen(a.to_string()))
}

/// Monomial weight `deg w + ½⟨δ,δ⟩ - ⟨κ,δ⟩` for a conformal state of the
/// form `½ Σ G^{-1} a(-1)a(-1) + κ(-2)`. Agrees with [`weight_of`] on monomials.
pub fn fast_weight(frame: &Frame, kappa: &LatticePoint, w: &Word, delta: &LatticePoint) -> Q {
    Q::from_integer((w.degree() as i64).into()) + frame.pairing(delta, delta) / Q::from_integer(2.into())
        - frame.pairing(kappa, delta)
}

/// The `κ` of [`fast_weight`], read off the single-mode `g(-2)` terms of the conformal state.
pub fn conformal_shift(frame: &Frame) -> Option<LatticePoint> {
    let omega = frame.conformal()?;
    let mut k = LatticePoint::zero(frame.dim());
    for (c, w, gamma) in omega.iter() {
        if gamma.is_zero() && w.len() == 1 && w.0[0].1 == 2 {
            k.0[w.0[0].0] += c;
        }
    }
    Some(k)
}

/// `Σ_i (-1)^{n+i+1} T^{(i)} (B_{n+i} A)`, multiplied by the parity sign.
/// Equals `A_n B` by skew-symmetry.
pub fn skew_rhs(frame: &Frame, a: &FockState, n: i64, b: &FockState) -> Result<FockState> {
    let mut out = FockState::zero(frame.dim());
    let Some(jmax) = max_nonzero_mode(frame, b, a)? else {
        return Ok(out);
    };
    let mut i = 0i64;
    while n + i <= jmax {
        let ban = mode_apply(frame, b, n + i, a)?;
        let sign = if (n + i + 1).rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
        out.add_scaled(&sign, &divided_translate(&ban, i as u32));
        i += 1;
    }
    if parity(frame, a)? && parity(frame, b)? {
        out = out.scale(&-Q::one());
    }
    Ok(out)
}
