//! The screening operator `S = (e^α)_0`, the kernel profile, fusion data and
//! the logarithmic deformation `L̃(0) = L(0) + S`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{fmt_q, frac, qi, MatrixQ, SparseVec, Q};
use crate::frames::vectors;
use crate::lattice::coords::Coordinates;
use crate::lattice::{mode_apply, FockState, Frame, LatticePoint};
use crate::nw::{pbw_character, H4_BASIS};
use crate::relaxed::{character_dim, saturate, RealizedModule, Region, RelaxedModuleSpec};

/// `s = e^α = v_{-1,0} ⊗ e^ν`.
pub fn screening_state() -> FockState {
    FockState::exp(vectors().alpha)
}

/// `S v = (e^α)_0 v`.
pub fn screening_apply(frame: &Frame, v: &FockState) -> Result<FockState> {
    mode_apply(frame, &screening_state(), 0, v)
}

/// Shift of `J(0)` under `S`, i.e. `⟨h_J, α⟩`.
pub fn screening_charge_shift(frame: &Frame) -> Result<Q> {
    let h = frame.charge_vector().ok_or_else(|| Error::Incompatible("frame has no charge vector".into()))?;
    Ok(frame.pairing(h, &vectors().alpha))
}

/// Top `c₁`-coefficient of the realized `v_{x,y}`.
fn top_t(theta: &LatticePoint) -> Q {
    // θ = t c₁ + u d₁ and ⟨c₁, d₁⟩ = 2, ⟨d₁, d₁⟩ = 0
    let v = vectors();
    let frame = crate::frames::nw_frame();
    frame.pairing(theta, &v.d1) / qi(2)
}

/// Spec of the summand hit by `S`: `S e^{θ + rμ + (λ+i)c} ∈ e^{θ + d₁/2 + (r-1)μ + (λ+1+i)c}`.
pub fn screened_spec(spec: &RelaxedModuleSpec, t: &Q) -> RelaxedModuleSpec {
    RelaxedModuleSpec::new(&spec.x - Q::one(), t * (qi(2) - &spec.x), spec.r - 1, &spec.lambda + Q::one())
}

/// `S` as a map `source → target`. Line `i` of the source goes to line `i`
/// of the target, at the same bidegree.
pub struct ScreeningMap {
    pub source: RealizedModule,
    pub target: RealizedModule,
}

/// One bidegree block of `S`.
pub struct ScreeningBlock {
    pub bidegree: (Q, Q),
    pub source: Vec<FockState>,
    pub images: Vec<FockState>,
    pub dim_target: usize,
    /// Matrix in the target representatives; filled by `block_matrix`.
    pub matrix: Option<MatrixQ>,
    /// Rank of `S` into the Fock space, or of the matrix once filled.
    pub rank: usize,
    /// The target is the ambient Fock component, not the realized module.
    pub target_fock: bool,
    /// `S` maps the source relations into the target relations.
    pub relations_preserved: bool,
}

impl ScreeningBlock {
    pub fn dim_source(&self) -> usize {
        self.source.len()
    }

    pub fn dim_ker(&self) -> usize {
        self.source.len() - self.rank
    }
}

impl ScreeningMap {
    pub fn new(source: RelaxedModuleSpec, t_at_one: &Q) -> Result<Self> {
        let source = RealizedModule::new(source, t_at_one)?;
        let t = top_t(&source.theta);
        let target = RealizedModule::new(screened_spec(&source.spec, &t), &t)?;
        let want = source.theta.add(&vectors().d1.scale(&(Q::one() / qi(2))));
        if target.theta != want {
            return Err(Error::Internal("screened top exponent mismatch".into()));
        }
        Ok(Self { source, target })
    }

    /// `L^HVir ⊗ Π → L^HVir[-1,0] ⊗ Π_{-1}(0)`.
    pub fn vacuum() -> Result<Self> {
        Self::new(RelaxedModuleSpec::new(Q::zero(), Q::zero(), 0, Q::zero()), &Q::zero())
    }

    pub fn block(&mut self, h: &Q, j: &Q) -> Result<ScreeningBlock> {
        let source = self.source.component(h, j)?;
        let frame = &self.source.frame;
        let images: Vec<FockState> = source.par_iter().map(|v| screening_apply(frame, v)).collect::<Result<_>>()?;
        let mut coords = Coordinates::new();
        let cols: Vec<SparseVec> = images.iter().map(|s| coords.vectorize(s)).collect();
        let rank = MatrixQ::from_columns(coords.len(), &cols).rank();
        let dim_target = character_dim(&self.target.spec, h, j);
        Ok(ScreeningBlock {
            bidegree: (h.clone(), j.clone()),
            source,
            images,
            dim_target,
            matrix: None,
            rank,
            target_fock: false,
            relations_preserved: true,
        })
    }

    /// `block` plus the matrix of the induced map on the quotients, in the
    /// realized target basis. When an image leaves the realized target module
    /// the target falls back to the ambient Fock component (`target_fock`).
    pub fn block_matrix(&mut self, h: &Q, j: &Q) -> Result<ScreeningBlock> {
        let mut b = self.block(h, j)?;
        let frame = &self.source.frame;
        let src_rels = self.source.relations(h, j)?;
        let rel_images: Vec<FockState> = src_rels.par_iter().map(|v| screening_apply(frame, v)).collect::<Result<_>>()?;
        let reps = self.target.component(h, j)?;
        let rels = self.target.relations(h, j)?;
        let all: Vec<FockState> = b.images.iter().chain(&rel_images).cloned().collect();
        let mut coords = Coordinates::new();
        let (m, dim_target) = match express(&mut coords, &all, &reps, &rels) {
            Some(m) => (m, reps.len()),
            None => {
                let fock = self.target.fock_component(h, j);
                let mut coords = Coordinates::new();
                let m = express(&mut coords, &all, &fock, &[]).ok_or_else(|| {
                    Error::Internal(format!("S leaves the target Fock module at ({}, {})", fmt_q(h), fmt_q(j)))
                })?;
                b.target_fock = true;
                (m, fock.len())
            }
        };
        let na = b.source.len();
        b.relations_preserved = (na..all.len()).all(|c| (0..m.nrows()).all(|r| m.get(r, c).is_zero()));
        let mut s = MatrixQ::zeros(m.nrows(), na);
        for c in 0..na {
            for r in 0..m.nrows() {
                let x = m.get(r, c);
                if !x.is_zero() {
                    s.set(r, c, x);
                }
            }
        }
        b.dim_target = dim_target;
        b.rank = s.rank();
        b.matrix = Some(s);
        Ok(b)
    }
}

/// Coefficients of each image on `reps`, modulo `rels`; `None` if some image
/// is outside their span.
fn express(coords: &mut Coordinates, images: &[FockState], reps: &[FockState], rels: &[FockState]) -> Option<MatrixQ> {
    let mut m = MatrixQ::zeros(reps.len(), images.len());
    if images.iter().all(|s| s.is_zero()) {
        return Some(m);
    }
    if reps.is_empty() {
        return None;
    }
    let span: Vec<SparseVec> = reps.iter().chain(rels).map(|s| coords.vectorize(s)).collect();
    let imgs: Vec<SparseVec> = images.iter().map(|s| coords.vectorize(s)).collect();
    let a = MatrixQ::from_columns(coords.len(), &span);
    for (k, v) in imgs.iter().enumerate() {
        let mut b = vec![Q::zero(); coords.len()];
        for (i, c) in v {
            b[*i] = c.clone();
        }
        let sol = a.solve(&b)?;
        for (i, c) in sol.into_iter().take(reps.len()).enumerate() {
            m.set(i, k, c);
        }
    }
    Some(m)
}

/// `dim Ker S` on the vacuum module next to the PBW count, per bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRow {
    pub h: i64,
    pub j: i64,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub dim_ker: usize,
    pub pbw: usize,
}

pub fn kernel_profile(max_h: u32, charge_window: i64) -> Result<Vec<KernelRow>> {
    let mut map = ScreeningMap::vacuum()?;
    let pbw = pbw_character(max_h as usize);
    let mut rows = Vec::new();
    for h in 0..=max_h as i64 {
        for j in -charge_window..=charge_window {
            let b = map.block(&qi(h), &qi(j))?;
            let want: usize = pbw.coeff(h as usize, j).try_into().map_err(|_| Error::Internal("negative PBW count".into()))?;
            rows.push(KernelRow {
                h,
                j,
                dim_source: b.dim_source(),
                dim_target: b.dim_target,
                rank: b.rank,
                dim_ker: b.dim_ker(),
                pbw: want,
            });
        }
    }
    Ok(rows)
}

/// `[S, ρ(X)_n] v` for every `v` in the block basis, `X ∈ {E,F,I,J}`, `|n| ≤ mode_bound`.
/// Returns the failing `(X, n)` pairs.
pub fn commutation_failures(map: &mut ScreeningMap, h: &Q, j: &Q, mode_bound: i64) -> Result<Vec<String>> {
    let basis = map.source.component(h, j)?;
    let m = &map.source;
    let mut jobs = Vec::new();
    for v in &basis {
        for x in H4_BASIS {
            for n in -mode_bound..=mode_bound {
                jobs.push((v, x, n));
            }
        }
    }
    let bad: Vec<Option<String>> = jobs
        .par_iter()
        .map(|&(v, x, n)| -> Result<Option<String>> {
            let a = screening_apply(&m.frame, &m.real.act(&m.frame, x, n, v)?)?;
            let b = m.real.act(&m.frame, x, n, &screening_apply(&m.frame, v)?)?;
            Ok((!a.sub(&b).is_zero()).then(|| format!("{x}({n})")))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<String> = bad.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// fusion data

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HVirFusion {
    /// `L[x', y']`.
    Single(Q, Q),
    Zero,
    /// Every `L[0, y]`.
    AllZeroCharge,
}

/// `L^HVir[-1, 0] × L^HVir[x, y]` for integral `x`.
pub fn hvir_fusion_minus_one(x: &Q, y: &Q) -> Result<HVirFusion> {
    if !x.is_integer() {
        return Err(Error::InvalidParameter(format!("fusion with L[-1,0] is tabulated for integral x, got {}", fmt_q(x))));
    }
    Ok(if *x != Q::one() {
        HVirFusion::Single(x - Q::one(), (x - qi(2)) / (x - Q::one()) * y)
    } else if y.is_zero() {
        HVirFusion::AllZeroCharge
    } else {
        HVirFusion::Zero
    })
}

/// `Π_{r₁}(λ₁) × Π_{r₂}(λ₂) = Π_{r₁+r₂}(λ₁+λ₂)`.
pub fn pi_fusion(a: (i64, Q), b: (i64, Q)) -> (i64, Q) {
    (a.0 + b.0, a.1 + b.1)
}

/// `Δ_{r,s} = (r+1)s`.
pub fn delta_rs(r: &Q, s: &Q) -> Q {
    (r + Q::one()) * s
}

/// One tabulated fusion statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRuleEntry {
    pub inputs: [String; 2],
    pub output: String,
    pub domain: String,
}

pub fn fusion_table() -> Vec<FusionRuleEntry> {
    let e = |a: &str, b: &str, o: &str, d: &str| FusionRuleEntry {
        inputs: [a.to_string(), b.to_string()],
        output: o.to_string(),
        domain: d.to_string(),
    };
    vec![
        e("L[-1,0]", "L[x,y]", "L[x-1,(x-2)y/(x-1)]", "x integral, x != 1"),
        e("L[-1,0]", "L[1,y]", "0", "y != 0"),
        e("L[-1,0]", "L[1,0]", "L[0,y] for every y", "all y"),
        e("Pi_r1(l1)", "Pi_r2(l2)", "Pi_{r1+r2}(l1+l2)", "r1, r2 integral"),
        e("L[-1,0]", "L[-r,D(r,s)]", "L[-r-1,D(r+1,s)]", "D(r,s) = (r+1)s, r not a negative integer"),
    ]
}

/// Outcome of the `𝒱`-module test for `U[x, y, λ, r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// Fractional part of the failing congruence (zero when compatible).
    pub obstruction: Q,
    /// The second summand, when the fusion product is nonzero.
    pub second: Option<RelaxedModuleSpec>,
    pub detail: String,
}

pub fn vmodule_compatible(x: &Q, y: &Q, lambda: &Q, r: i64) -> Result<Compatibility> {
    match hvir_fusion_minus_one(x, y)? {
        HVirFusion::Single(x2, y2) => {
            let obstruction = frac(&(lambda - y / (x - Q::one())));
            let compatible = obstruction.is_zero();
            Ok(Compatibility {
                compatible,
                detail: format!("lambda - y/(x-1) = {} mod Z", fmt_q(&obstruction)),
                obstruction,
                second: Some(RelaxedModuleSpec::new(x2, y2, r - 1, lambda.clone())),
            })
        }
        HVirFusion::Zero => Ok(Compatibility {
            compatible: false,
            obstruction: Q::zero(),
            second: None,
            detail: "L[-1,0] x L[1,y] = 0 for y != 0".into(),
        }),
        HVirFusion::AllZeroCharge => Ok(Compatibility {
            compatible: true,
            obstruction: Q::zero(),
            second: Some(RelaxedModuleSpec::new(Q::zero(), -lambda.clone(), r - 1, lambda.clone())),
            detail: "second summand L[0,-lambda] (lambda = -y mod Z)".into(),
        }),
    }
}

// ---------------------------------------------------------------------------
// logarithmic modules

/// `U = A ⊕ B` with `A = L[x,y] ⊗ Π_r(λ)` and `B` the summand hit by `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogModuleSpec {
    pub x: Q,
    pub y: Q,
    pub r: i64,
    pub lambda: Q,
    /// `c₁`-coefficient of the realized top of `A` (free only for `x = 1`).
    pub t: Q,
}

impl LogModuleSpec {
    /// `P_r[x, y]` with `λ = y/(x-1)`.
    pub fn p(x: Q, y: Q, r: i64) -> Result<Self> {
        if !x.is_integer() || x == Q::one() {
            return Err(Error::InvalidParameter(format!("P_r[x,y] needs integral x != 1, got {}", fmt_q(&x))));
        }
        let lambda = &y / (&x - Q::one());
        let t = -lambda.clone();
        Ok(Self { x, y, r, lambda, t })
    }

    /// `P₁(λ)` built on `L[1,0] ⊗ Π₁(λ) ⊕ L[0,-λ] ⊗ Π₀(λ)`.
    pub fn p_lambda(lambda: Q) -> Self {
        Self { x: Q::one(), y: Q::zero(), r: 1, t: -lambda.clone(), lambda }
    }

    pub fn relaxed(&self) -> RelaxedModuleSpec {
        RelaxedModuleSpec::new(self.x.clone(), self.y.clone(), self.r, self.lambda.clone())
    }

    pub fn label(&self) -> String {
        if self.x == Q::one() {
            format!("P_{}({})", self.r, fmt_q(&self.lambda))
        } else {
            format!("P_{}[{},{}]", self.r, fmt_q(&self.x), fmt_q(&self.y))
        }
    }
}

/// `L̃(0)` on one bidegree of `U`, basis `A` reps then `B` reps.
pub struct DeformedBlock {
    pub bidegree: (Q, Q),
    pub dim_a: usize,
    pub dim_b: usize,
    pub semisimple: MatrixQ,
    pub nilpotent: MatrixQ,
    pub target_fock: bool,
    pub relations_preserved: bool,
}

impl DeformedBlock {
    pub fn nilpotent_rank(&self) -> usize {
        self.nilpotent.rank()
    }
}

pub struct LogModule {
    pub spec: LogModuleSpec,
    pub map: ScreeningMap,
}

impl LogModule {
    pub fn new(spec: LogModuleSpec) -> Result<Self> {
        let c = vmodule_compatible(&spec.x, &spec.y, &spec.lambda, spec.r)?;
        if !c.compatible {
            return Err(Error::Incompatible(c.detail));
        }
        let map = ScreeningMap::new(spec.relaxed(), &spec.t)?;
        Ok(Self { spec, map })
    }

    /// Bidegrees `(h, j)` of `U` with depth at most `depth` over the top of `A`
    /// on the lines `i ∈ lines`.
    pub fn bidegrees(&self, lines: std::ops::RangeInclusive<i64>, depth: u32) -> Vec<(Q, Q)> {
        let s = &self.map.source.spec;
        let mut out = Vec::new();
        for i in lines {
            for d in 0..=depth as i64 {
                out.push((s.line_weight(i) + qi(d), s.line_charge(i)));
            }
        }
        out
    }

    pub fn deformed_l0(&mut self, h: &Q, j: &Q) -> Result<DeformedBlock> {
        let block = self.map.block_matrix(h, j)?;
        let s = block.matrix.clone().expect("matrix filled");
        let b_reps = if block.target_fock { self.map.target.fock_component(h, j) } else { self.map.target.component(h, j)? };
        let (na, nb) = (block.source.len(), b_reps.len());
        let frame = &self.map.source.frame;
        let omega = frame.conformal().ok_or_else(|| Error::Incompatible("frame has no conformal vector".into()))?;
        let mut ss = MatrixQ::zeros(na + nb, na + nb);
        for (k, v) in block.source.iter().chain(&b_reps).enumerate() {
            let w = mode_apply(frame, omega, 1, v)?
                .ratio_to(v)
                .ok_or_else(|| Error::NotEigen("L(0) on a component basis vector".into()))?;
            ss.set(k, k, w);
        }
        let mut nil = MatrixQ::zeros(na + nb, na + nb);
        for r in 0..nb {
            for c in 0..na {
                let x = s.get(r, c);
                if !x.is_zero() {
                    nil.set(na + r, c, x);
                }
            }
        }
        Ok(DeformedBlock {
            bidegree: (h.clone(), j.clone()),
            dim_a: na,
            dim_b: nb,
            semisimple: ss,
            nilpotent: nil,
            target_fock: block.target_fock,
            relations_preserved: block.relations_preserved,
        })
    }
}

/// One check line of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), pass, detail: detail.into() }
    }
}

/// Per-bidegree row of the rank-two certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRow {
    pub bidegree: (Q, Q),
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank_s: usize,
    pub nilpotent_rank: usize,
}

pub struct Certificate {
    pub spec: LogModuleSpec,
    pub rows: Vec<LogRow>,
    pub checks: Vec<Check>,
    /// `S Z^{(1)}_{-1} = ν Z^{(2)}_{-1}` for `P₁(λ)`.
    pub nu: Option<Q>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Rank-two and non-splitness certificate on lines `-w..=w`, depth `≤ depth`.
pub fn rank_two_certificate(spec: &LogModuleSpec, depth: u32, w: i64) -> Result<Certificate> {
    let mut lm = LogModule::new(spec.clone())?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut nil_somewhere = false;
    let mut square_zero = true;
    let mut s_square_zero = true;
    let mut eigen_ok = true;
    let mut preserved = true;
    let mut fock_targets = 0;
    for (h, j) in lm.bidegrees(-w..=w, depth) {
        let d = lm.deformed_l0(&h, &j)?;
        preserved &= d.relations_preserved;
        fock_targets += usize::from(d.target_fock);
        let n2 = d.nilpotent.matmul(&d.nilpotent);
        square_zero &= n2.is_zero();
        let nr = d.nilpotent_rank();
        nil_somewhere |= nr > 0;
        eigen_ok &= (0..d.dim_a + d.dim_b).all(|k| d.semisimple.get(k, k) == h);
        for v in &lm.map.source.component(&h, &j)? {
            let s1 = screening_apply(&lm.map.source.frame, v)?;
            s_square_zero &= screening_apply(&lm.map.source.frame, &s1)?.is_zero();
        }
        rows.push(LogRow { bidegree: (h, j), dim_source: d.dim_a, dim_target: d.dim_b, rank_s: nr, nilpotent_rank: nr });
    }
    checks.push(Check::new("nilpotent_nonzero", nil_somewhere, format!("depth <= {depth}, lines |i| <= {w}")));
    checks.push(Check::new("nilpotent_square_zero", square_zero, "N^2 = 0 on every checked bidegree"));
    checks.push(Check::new("fock_s_square_zero", s_square_zero, "S(S v) = 0 in the Fock space"));
    checks.push(Check::new("l0_semisimple_part", eigen_ok, "L(0) = h on both layers"));
    checks.push(Check::new("relations_preserved", preserved, "S maps source relations into target relations"));
    checks.push(Check::new(
        "target_realization",
        true,
        if fock_targets == 0 {
            "realized target module".to_string()
        } else {
            format!("ambient Fock target on {fock_targets} bidegrees")
        },
    ));

    // the lift of the quotient-layer generator
    let frame = lm.map.source.frame.clone();
    let z = |m: &RealizedModule, i: i64| FockState::exp(m.line_exponent(i));
    let lift = z(&lm.map.source, -1);
    let s_lift = screening_apply(&frame, &lift)?;
    checks.push(Check::new("non_split", !s_lift.is_zero(), "S Z_{-1} != 0"));
    let kills: Vec<i64> = (0..=2).filter(|&i| screening_apply(&frame, &z(&lm.map.source, i)).map(|s| s.is_zero()).unwrap_or(false)).collect();
    checks.push(Check::new("s_kills_z_nonnegative", kills == vec![0, 1, 2], format!("S Z_i = 0 for i in {kills:?}")));
    let nu = s_lift.ratio_to(&z(&lm.map.target, -1));
    if spec.x == Q::one() {
        checks.push(Check::new(
            "nu_nonzero",
            nu.as_ref().is_some_and(|n| !n.is_zero()),
            format!("nu = {}", nu.as_ref().map(fmt_q).unwrap_or_else(|| "undefined".into())),
        ));
    }

    if spec.x == qi(2) {
        checks.push(Check::new("layers", true, "infinite-length sublayer, socle checks skipped"));
    } else if spec.x != Q::one() && spec.r == 1 {
        checks.push(layer_check(&mut lm, depth, w)?);
    }
    Ok(Certificate { spec: spec.clone(), rows, checks, nu })
}

/// For `r = 1`: `Ker S` on `A` is `⟨Z_j⟩` for the lowest line `j`, bidegree by
/// bidegree. Since `A = ⟨Z_{j-1}⟩`, the bottom Loewy factor `S(A)` then has the
/// dimensions of the top factor `A / ⟨Z_j⟩`.
fn layer_check(lm: &mut LogModule, depth: u32, w: i64) -> Result<Check> {
    let spec = lm.map.source.spec.clone();
    let Some(low) = crate::relaxed::lowest_line(&spec) else {
        return Ok(Check::new("kernel_equals_socle", false, "no lowest line in the source"));
    };
    let frame = lm.map.source.frame.clone();
    let zj = lm.map.source.z(low);
    let margin = qi(depth as i64 + 1);
    let region = Region {
        h_min: spec.line_weight(0),
        h_max: spec.line_weight(0) + qi(depth as i64),
        j_min: spec.line_charge(-w) - &margin,
        j_max: spec.line_charge(w) + &margin,
    };
    let sub = saturate(&mut lm.map.source, &[zj], &region, depth as i64)?;
    let mut bad = Vec::new();
    let mut checked = 0;
    for (h, j) in lm.bidegrees(-w..=w, depth) {
        let blk = lm.map.block_matrix(&h, &j)?;
        let gens = sub.get(&(h.clone(), j.clone())).cloned().unwrap_or_default();
        let images: Vec<FockState> = gens.iter().map(|g| screening_apply(&frame, g)).collect::<Result<_>>()?;
        let (reps, rels) = if blk.target_fock {
            (lm.map.target.fock_component(&h, &j), Vec::new())
        } else {
            (lm.map.target.component(&h, &j)?, lm.map.target.relations(&h, &j)?)
        };
        let mut coords = Coordinates::new();
        let killed = express(&mut coords, &images, &reps, &rels).is_some_and(|m| m.is_zero());
        if !killed {
            bad.push(format!("({}, {}): S does not kill the submodule", fmt_q(&h), fmt_q(&j)));
        }
        checked += 1;
        if blk.dim_ker() != gens.len() {
            bad.push(format!("({}, {}): dim Ker S {} vs dim <Z_j> {}", fmt_q(&h), fmt_q(&j), blk.dim_ker(), gens.len()));
        }
    }
    Ok(Check::new(
        "kernel_equals_socle",
        bad.is_empty(),
        if bad.is_empty() { format!("{checked} bidegrees") } else { bad.join("; ") },
    ))
}

/// Kernel table as a map for quick lookup.
pub fn kernel_map(rows: &[KernelRow]) -> BTreeMap<(i64, i64), usize> {
    rows.iter().map(|r| ((r.h, r.j), r.dim_ker)).collect()
}
