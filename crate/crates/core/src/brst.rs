//! The BRST complex `V¹(𝔥₄) ⊗ F` with `d₀ = (E(-1)𝟙 ⊗ e^φ + e^φ)_0`.
//!
//! `V¹(𝔥₄)` enters through its Wakimoto image, the fermions through the
//! lattice `ℤφ`, `⟨φ,φ⟩ = 1`. States carry three gradings: the weight `h`
//! under `L̂ = ω^sug + ∂J + ω_fer`, the fermion charge `ℓ` (the φ-coordinate,
//! raised by one by `d₀`), and `m = j - ℓ` with `j` the `J(0)`-charge. The
//! `E`-term of `d₀` preserves `m`, the other term lowers it by one; every
//! `(h, m, ℓ)` sector is finite.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Result;
use crate::exact::{q, qi, Q};
use crate::frames::{bare_frame, hmode, hmode2, vectors};
use crate::hvir::{hvir_bracket, hvir_character, partitions_of, HVirMode, Kind};
use crate::lattice::{mode_apply, translate, FockState, Frame};
use crate::nw::{charge, pbw_monomials, sugawara_state, wakimoto_map, H4Realization, H4};
use crate::screening::Check;

pub struct BrstComplex {
    pub frame: Frame,
    pub real: H4Realization,
    /// `E(-1)𝟙 ⊗ e^φ + 𝟙 ⊗ e^φ`.
    pub d_state: FockState,
    pub l_hat: FockState,
    pub i_hat: FockState,
}

/// `ω_fer = ½(φ(-1)² - φ(-2))𝟙`.
pub fn omega_fer() -> FockState {
    let phi = vectors().phi;
    hmode2(&phi, 1, &phi, 1).sub(&hmode(&phi, 2)).scale(&q(1, 2))
}

impl BrstComplex {
    pub fn new() -> Result<Self> {
        let bare = bare_frame();
        let real = wakimoto_map(&bare)?;
        let omega = sugawara_state(&bare, &real)?;
        let l_hat = omega.add(&translate(real.image(H4::J))).add(&omega_fer());
        let i_hat = real.image(H4::I).clone();
        let e_phi = FockState::exp(vectors().phi);
        let d_state = mode_apply(&bare, real.image(H4::E), -1, &e_phi)?.add(&e_phi);
        let frame = bare.with_conformal(l_hat.clone()).with_charge(vectors().phi);
        Ok(Self { frame, real, d_state, l_hat, i_hat })
    }

    pub fn d0(&self, a: &FockState) -> Result<FockState> {
        mode_apply(&self.frame, &self.d_state, 0, a)
    }

    /// `L̂(n)` or `Î(n)` on `a`.
    pub fn mode(&self, x: HVirMode, a: &FockState) -> Result<FockState> {
        match x.kind {
            Kind::T => mode_apply(&self.frame, &self.l_hat, x.index + 1, a),
            Kind::I => mode_apply(&self.frame, &self.i_hat, x.index, a),
        }
    }

    /// Spanning states of the `(h, m, ℓ)` sector: Wakimoto images of PBW
    /// monomials juxtaposed with fermion words.
    pub fn sector_states(&self, h: u32, m: i64, l: i64) -> Result<Vec<FockState>> {
        let mut out = Vec::new();
        let Some(hf0) = fermion_floor(l) else { return Ok(out) };
        for hf in hf0..=h {
            let fer = fermion_words(hf, l);
            for w in v_monomials(h - hf, m + l) {
                let v = self.real.monomial(&self.frame, &w)?;
                for f in &fer {
                    out.push(v.juxtapose(f));
                }
            }
        }
        Ok(out)
    }
}

/// Lowest `ω_fer` weight `ℓ(ℓ+1)/2` in charge `ℓ`.
fn fermion_floor(l: i64) -> Option<u32> {
    u32::try_from(l * (l + 1) / 2).ok()
}

/// Fermion states of weight `h` and charge `ℓ`: `φ`-words over `e^{ℓφ}`.
pub fn fermion_words(h: u32, l: i64) -> Vec<FockState> {
    let phi = vectors().phi;
    let Some(floor) = fermion_floor(l) else { return Vec::new() };
    let Some(k) = h.checked_sub(floor) else { return Vec::new() };
    partitions_of(k)
        .into_iter()
        .map(|p| p.iter().fold(FockState::exp(phi.scale(&qi(l))), |s, &n| s.times_mode(&phi, n)))
        .collect()
}

/// PBW monomials of `L̂`-weight `h` and `J(0)`-charge `j`. A mode `X(-n)`
/// has `L̂`-weight `n - charge(X)`.
pub fn v_monomials(h: u32, j: i64) -> Vec<Vec<(H4, u32)>> {
    let Ok(delta) = u32::try_from(h as i64 + j) else { return Vec::new() };
    pbw_monomials(delta).into_iter().filter(|w| w.iter().map(|&(x, _)| charge(x)).sum::<i64>() == j).collect()
}

pub fn sector_dim(h: u32, m: i64, l: i64) -> usize {
    let Some(hf0) = fermion_floor(l) else { return 0 };
    (hf0..=h).map(|hf| v_monomials(h - hf, m + l).len() * fermion_words(hf, l).len()).sum()
}

/// Fermion charges with a nonzero sector at weight `≤ h`.
fn charge_range(h: u32) -> std::ops::RangeInclusive<i64> {
    let mut l = 0i64;
    while fermion_floor(l + 1).is_some_and(|f| f <= h) {
        l += 1;
    }
    -l - 1..=l
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerRow {
    pub h: u32,
    pub m: i64,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTotal {
    pub h: u32,
    pub euler: i64,
    pub character: i64,
}

pub struct EulerProfile {
    /// Nonzero `Σ_ℓ (-1)^ℓ dim C_{h,m,ℓ}` with `|m| ≤ window`.
    pub rows: Vec<EulerRow>,
    pub totals: Vec<EulerTotal>,
}

impl EulerProfile {
    pub fn matches(&self) -> bool {
        self.totals.iter().all(|t| t.euler == t.character)
    }
}

pub fn euler_profile(max_h: u32, window: i64) -> EulerProfile {
    let ch = hvir_character(&Q::zero(), &Q::zero(), max_h as usize);
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    for h in 0..=max_h {
        let mut euler = 0;
        for m in -window..=window {
            let chi: i64 = charge_range(h)
                .map(|l| {
                    let d = sector_dim(h, m, l) as i64;
                    if l % 2 == 0 { d } else { -d }
                })
                .sum();
            if chi != 0 {
                rows.push(EulerRow { h, m, chi });
            }
            euler += chi;
        }
        let character = ch.q_coeff(h as usize).try_into().expect("small coefficient");
        totals.push(EulerTotal { h, euler, character });
    }
    EulerProfile { rows, totals }
}

/// `d₀(d₀ A) = 0` on the spanning states of every sector with `h ≤ max_h`,
/// `ℓ ∈ charges`, `|m| ≤ window`.
pub fn d0_square_check(c: &BrstComplex, max_h: u32, charges: std::ops::RangeInclusive<i64>, window: i64) -> Result<Check> {
    let mut states = Vec::new();
    for h in 0..=max_h {
        for l in charges.clone() {
            for m in -window..=window {
                states.extend(c.sector_states(h, m, l)?.into_iter().map(|s| ((h, m, l), s)));
            }
        }
    }
    let bad: Vec<Option<String>> = states
        .par_iter()
        .map(|((h, m, l), s)| -> Result<Option<String>> {
            let dd = c.d0(&c.d0(s)?)?;
            Ok((!dd.is_zero()).then(|| format!("({h}, {m}, {l})")))
        })
        .collect::<Result<_>>()?;
    let mut bad: Vec<String> = bad.into_iter().flatten().collect();
    bad.dedup();
    let detail = if bad.is_empty() {
        format!("{} states, h <= {max_h}, charges {:?}, |m| <= {window}", states.len(), charges)
    } else {
        format!("fails in sectors {}", bad.join(", "))
    };
    Ok(Check::new("d0_square_zero", bad.is_empty(), detail))
}

/// `d₀` raises the fermion charge by one and preserves `L̂`-weight.
pub fn d0_grading_check(c: &BrstComplex, max_h: u32, window: i64) -> Result<Check> {
    let mut bad = Vec::new();
    let mut n = 0;
    for h in 0..=max_h {
        for l in charge_range(h) {
            for m in -window..=window {
                for s in c.sector_states(h, m, l)? {
                    n += 1;
                    let d = c.d0(&s)?;
                    let ok = d.iter().all(|(_, _, g)| c.frame.pairing(g, &vectors().phi) == qi(l + 1))
                        && (d.is_zero() || mode_apply(&c.frame, &c.l_hat, 1, &d)? == d.scale(&qi(h as i64)));
                    if !ok {
                        bad.push(format!("({h}, {m}, {l})"));
                    }
                }
            }
        }
    }
    bad.dedup();
    Ok(Check::new("d0_grading", bad.is_empty(), if bad.is_empty() { format!("{n} states") } else { bad.join(", ") }))
}

/// `d₀ L̂ = d₀ Î = 0`.
pub fn closedness_check(c: &BrstComplex) -> Result<Vec<Check>> {
    let dl = c.d0(&c.l_hat)?;
    let di = c.d0(&c.i_hat)?;
    Ok(vec![
        Check::new("d0_l_hat", dl.is_zero(), format!("{} terms", dl.num_terms())),
        Check::new("d0_i_hat", di.is_zero(), format!("{} terms", di.num_terms())),
    ])
}

/// Low-weight states on which mode identities are tested.
pub fn probe_states(c: &BrstComplex) -> Result<Vec<FockState>> {
    let mut out = Vec::new();
    for h in 0..=1 {
        for l in -1..=1 {
            for m in -1..=1 {
                out.extend(c.sector_states(h, m, l)?);
            }
        }
    }
    Ok(out)
}

/// HVir relations for `(L̂, Î)` with `(c_L, c_I, c_LI) = (2, 0, 1)` on the
/// probe states, `|m|, |n| ≤ mode_bound`, plus `L̂(k) Î` for `k = -1, 0, 1`.
pub fn reduced_structure_check(c: &BrstComplex, mode_bound: i64) -> Result<Vec<Check>> {
    let probes = probe_states(c)?;
    let mut jobs = Vec::new();
    for (ka, kb) in [(Kind::T, Kind::T), (Kind::T, Kind::I), (Kind::I, Kind::I)] {
        for n in -mode_bound..=mode_bound {
            for m in -mode_bound..=mode_bound {
                jobs.push((HVirMode { kind: ka, index: n }, HVirMode { kind: kb, index: m }));
            }
        }
    }
    let fails: Vec<Option<(Kind, Kind, String)>> = jobs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<(Kind, Kind, String)>> {
            let want = hvir_bracket(a, b);
            for v in &probes {
                let lhs = c.mode(a, &c.mode(b, v)?)?.sub(&c.mode(b, &c.mode(a, v)?)?);
                let mut rhs = v.scale(&want.central);
                for (x, k) in &want.modes {
                    rhs.add_scaled(k, &c.mode(*x, v)?);
                }
                if lhs != rhs {
                    return Ok(Some((a.kind, b.kind, format!("[{a}, {b}]"))));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let fails: Vec<(Kind, Kind, String)> = fails.into_iter().flatten().collect();
    let mut out = Vec::new();
    for (name, ka, kb, what) in [
        ("virasoro_c2", Kind::T, Kind::T, "c_L = 2"),
        ("mixed_c_li_1", Kind::T, Kind::I, "c_LI = 1"),
        ("heisenberg_c_i_0", Kind::I, Kind::I, "c_I = 0"),
    ] {
        let bad: Vec<&str> = fails.iter().filter(|f| f.0 == ka && f.1 == kb).map(|f| f.2.as_str()).collect();
        let detail = if bad.is_empty() {
            format!("{what}, |m|, |n| <= {mode_bound}, {} probe states", probes.len())
        } else {
            bad.join(", ")
        };
        out.push(Check::new(name, bad.is_empty(), detail));
    }
    let vac = FockState::vacuum(c.frame.dim());
    let l_m1 = c.mode(HVirMode::t(-1), &c.i_hat)?;
    let l_0 = c.mode(HVirMode::t(0), &c.i_hat)?;
    let l_1 = c.mode(HVirMode::t(1), &c.i_hat)?;
    out.push(Check::new("l_hat_translation", l_m1 == translate(&c.i_hat), "L(-1) I = dI"));
    out.push(Check::new("l_hat_weight_one", l_0 == c.i_hat, "L(0) I = I"));
    out.push(Check::new("l_hat_one_i", l_1 == vac.scale(&qi(-2)), "L(1) I = -2"));
    Ok(out)
}

/// Every check of the reduction at the given bounds.
pub fn qhr_checks(max_h: u32, window: i64, mode_bound: i64) -> Result<Vec<Check>> {
    let c = BrstComplex::new()?;
    let mut out = vec![d0_square_check(&c, max_h, -2..=2, window)?];
    out.extend(closedness_check(&c)?);
    out.extend(reduced_structure_check(&c, mode_bound)?);
    let e = euler_profile(max_h, window);
    let detail = e.totals.iter().map(|t| format!("h={}: {} vs {}", t.h, t.euler, t.character)).collect::<Vec<_>>().join("; ");
    out.push(Check::new("euler_matches_vacuum_character", e.matches(), detail));
    Ok(out)
}
