//! Relaxed modules `L[x,y] ⊗ Π_r(λ)`: closed-form top actions,
//! classification, spectral flow, and realized components.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{fmt_q, frac, q, qi, to_i64, Echelon, Q};
use crate::frames::{nw_frame, vectors};
use crate::hvir::{fock_words, hvir_character, partitions_of, generated_layers, hw_exponent, realize_verma_vector, singular_degree, singular_space};
use crate::lattice::coords::Coordinates;
use crate::lattice::vertex::{conformal_shift, fast_weight};
use crate::lattice::{mode_apply, FockState, Frame, LatticePoint};
use crate::nw::{inverse_qhr_map, AffineMode, AffineSum, H4Realization, H4, H4_BASIS};

/// Parameters of `L[x, y] ⊗ Π_r(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedModuleSpec {
    pub x: Q,
    pub y: Q,
    pub r: i64,
    pub lambda: Q,
}

impl RelaxedModuleSpec {
    pub fn new(x: Q, y: Q, r: i64, lambda: Q) -> Self {
        Self { x, y, r, lambda }
    }

    /// `L^sug(0)` on `v_{x,y} ⊗ e^{rμ + λc}`.
    pub fn sug_weight(&self) -> Q {
        let r = qi(self.r);
        &self.y + &self.x / qi(2) + (Q::one() - &r) * (&r + qi(2) * &self.lambda) / qi(2) - r / qi(2)
    }

    /// Weight of the `i`-th line `v_{x,y} ⊗ e^{rμ + (λ+i)c}`.
    pub fn line_weight(&self, i: i64) -> Q {
        self.shifted(i).sug_weight()
    }

    /// `J(0)` on the `i`-th line.
    pub fn line_charge(&self, i: i64) -> Q {
        (&self.x + qi(self.r)) / qi(2) + &self.lambda + qi(i)
    }

    pub fn shifted(&self, i: i64) -> Self {
        Self { lambda: &self.lambda + qi(i), ..self.clone() }
    }

    /// Eigenvalue of `Ω = FE + IJ` on the top of the `r = 1` module.
    pub fn omega_eigen(&self) -> Q {
        let xm = &self.x - Q::one();
        &self.y + &xm * &xm / qi(2)
    }

    /// `y / (x - 1)` for `x ≠ 1`.
    pub fn ratio(&self) -> Option<Q> {
        (self.x != Q::one()).then(|| &self.y / (&self.x - Q::one()))
    }

    pub fn label(&self) -> String {
        format!("x={} y={} r={} lambda={}", fmt_q(&self.x), fmt_q(&self.y), self.r, fmt_q(&self.lambda))
    }
}

/// `g(0) Z_i = coeff · Z_{target}` for `r = 1`.
pub fn top_action(spec: &RelaxedModuleSpec, g: H4, i: i64) -> Result<(i64, Q)> {
    if spec.r != 1 {
        return Err(Error::InvalidParameter(format!("top actions need r = 1, got r = {}", spec.r)));
    }
    let li = &spec.lambda + qi(i);
    let xm = &spec.x - Q::one();
    Ok(match g {
        H4::E => (i + 1, Q::one()),
        H4::F => (i - 1, &spec.y - &li * &xm),
        H4::I => (i, xm),
        H4::J => (i, (&spec.x + Q::one() + qi(2) * &li) / qi(2)),
    })
}

/// The integer `j` with `F(0) Z_j = 0`, if any.
pub fn lowest_line(spec: &RelaxedModuleSpec) -> Option<i64> {
    let j = spec.ratio()? - &spec.lambda;
    to_i64(&j)
}

/// Representative of `[λ] ∈ ℚ/ℤ` in `[0, 1)`.
pub fn class_rep(lambda: &Q) -> Q {
    frac(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub irreducible: bool,
    /// 1, 2: irreducible families; 3, 4: reducible ones.
    pub case: u8,
    /// Affine module label.
    pub label: String,
    /// Class of the top level as a U(𝔥₄)-module.
    pub top_class: String,
    /// `j` with `F(0) Z_j = 0` (case 3).
    pub lowest: Option<i64>,
}

pub fn classify(x: &Q, y: &Q, lambda: &Q) -> Classification {
    let spec = RelaxedModuleSpec::new(x.clone(), y.clone(), 1, lambda.clone());
    let cls = fmt_q(&class_rep(lambda));
    let om = fmt_q(&spec.omega_eigen());
    let xm = fmt_q(&(x - Q::one()));
    let jcls = fmt_q(&class_rep(&spec.line_charge(0)));
    let relaxed_top = format!("ℛ_{{{xm},[{jcls}];{om}}}");
    if *x == Q::one() {
        let (irreducible, case) = if y.is_zero() { (false, 4) } else { (true, 2) };
        Classification {
            irreducible,
            case,
            label: format!("R̂_{{0,[{cls}],{}}}", fmt_q(y)),
            top_class: relaxed_top,
            lowest: None,
        }
    } else {
        match lowest_line(&spec) {
            Some(j) => Classification {
                irreducible: false,
                case: 3,
                label: format!("Ê⁻_{{{xm},{om}}}"),
                top_class: format!("ℛ⁻_{{{xm},{om}}}"),
                lowest: Some(j),
            },
            None => Classification {
                irreducible: true,
                case: 1,
                label: format!("Ê_{{{xm},[{cls}],{om}}}"),
                top_class: relaxed_top,
                lowest: None,
            },
        }
    }
}

/// Spectral-flow type automorphisms of the affine algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowKind {
    Sigma(i64),
    S(Q),
    G(i64),
    Rho(i64),
}

fn single(m: AffineMode) -> AffineSum {
    let mut s = AffineSum::new();
    s.insert(m, Q::one());
    s
}

fn add_to(s: &mut AffineSum, m: AffineMode, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = s.entry(m).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        s.remove(&m);
    }
}

fn flow_mode(kind: &FlowKind, m: AffineMode) -> AffineSum {
    use AffineMode::*;
    match (kind, m) {
        (_, K) => single(K),
        (FlowKind::Sigma(l), Mode(x, n)) => {
            let mut out = AffineSum::new();
            match x {
                H4::E => add_to(&mut out, Mode(H4::E, n - l), Q::one()),
                H4::F => add_to(&mut out, Mode(H4::F, n + l), Q::one()),
                H4::I => {
                    add_to(&mut out, Mode(H4::I, n), Q::one());
                    if n == 0 {
                        add_to(&mut out, K, qi(-l));
                    }
                }
                H4::J => add_to(&mut out, Mode(H4::J, n), Q::one()),
            }
            out
        }
        (FlowKind::S(t), Mode(x, n)) => {
            let mut out = single(Mode(x, n));
            if x == H4::J && n == 0 {
                add_to(&mut out, K, -t.clone());
            }
            out
        }
        (FlowKind::G(l), Mode(_, _)) => {
            let step = if *l >= 0 {
                vec![FlowKind::S(q(-1, 2)), FlowKind::Sigma(1)]
            } else {
                vec![FlowKind::Sigma(-1), FlowKind::S(q(1, 2))]
            };
            let mut cur = single(m);
            for _ in 0..l.abs() {
                for k in &step {
                    cur = spectral_flow_sum(k, &cur);
                }
            }
            cur
        }
        (FlowKind::Rho(l), Mode(_, _)) => flow_mode(&FlowKind::G(*l), m),
    }
}

/// Image of a mode under the automorphism.
pub fn spectral_flow(kind: &FlowKind, m: AffineMode) -> AffineSum {
    flow_mode(kind, m)
}

pub fn spectral_flow_sum(kind: &FlowKind, s: &AffineSum) -> AffineSum {
    let mut out = AffineSum::new();
    for (m, c) in s {
        for (k, d) in flow_mode(kind, *m) {
            add_to(&mut out, k, c * d);
        }
    }
    out
}

/// Shifts of the `ρ_ℓ` twist read off `Δ(ℓh, z)` for `h = I/2 - J` in the
/// free-field realization: `(E shift, F shift, I(0) shift, J(0) shift)`
/// with `ρ_ℓ(X)(n) = X(n + shift)` for `E, F`.
pub fn rho_shifts_from_delta(frame: &Frame, real: &H4Realization, l: i64) -> Result<(i64, i64, Q, Q)> {
    let h = real.image(H4::I).scale(&q(1, 2)).sub(real.image(H4::J));
    let vac = FockState::vacuum(frame.dim());
    let h0 = |x: H4| -> Result<Q> {
        let img = real.image(x);
        mode_apply(frame, &h, 0, img)?
            .ratio_to(img)
            .ok_or_else(|| Error::Internal(format!("{x} is not an h(0) eigenvector")))
    };
    let h1 = |x: H4| -> Result<Q> {
        mode_apply(frame, &h, 1, real.image(x))?
            .ratio_to(&vac)
            .ok_or_else(|| Error::Internal(format!("h(1){x} is not a multiple of the vacuum")))
    };
    // z^{ℓ h(0)} multiplies Y(X, z) by z^{ℓ e}: the new n-th mode is X(n + ℓ e).
    let e_shift = to_i64(&(qi(l) * h0(H4::E)?)).ok_or_else(|| Error::Internal("non-integral shift".into()))?;
    let f_shift = to_i64(&(qi(l) * h0(H4::F)?)).ok_or_else(|| Error::Internal("non-integral shift".into()))?;
    // ℓ h(1)/(-1) (-z)^{-1} X = ℓ h(1) X z^{-1}: a scalar added to the zero mode.
    Ok((e_shift, f_shift, qi(l) * h1(H4::I)?, qi(l) * h1(H4::J)?))
}

// ---------------------------------------------------------------------------
// realized modules

/// Bidegree `(L^sug(0), J(0))` of a homogeneous state in the graded frame.
pub fn bidegree(frame: &Frame, s: &FockState) -> Option<(Q, Q)> {
    let (_, w, g) = s.iter().next()?;
    let kappa = conformal_shift(frame)?;
    let h = frame.charge_vector()?;
    Some((fast_weight(frame, &kappa, w, g), frame.pairing(h, g)))
}

/// `L[x,y] ⊗ Π_r(λ)` realized in the ambient frame. The HVir factor is the
/// submodule generated by `e^θ` modulo the one generated by the image of the
/// Verma singular vector, so components carry representatives plus relations.
pub struct RealizedModule {
    pub spec: RelaxedModuleSpec,
    pub frame: Frame,
    pub real: H4Realization,
    pub theta: LatticePoint,
    /// Per HVir degree: representatives of `L[x,y]` and a basis of the relations.
    layers: Vec<(Vec<FockState>, Vec<FockState>)>,
}

impl RealizedModule {
    /// `t_at_one` selects the `c₁`-component of the top exponent when `x = 1`.
    pub fn new(spec: RelaxedModuleSpec, t_at_one: &Q) -> Result<Self> {
        let theta = hw_exponent(&spec.x, &spec.y, t_at_one)?;
        let frame = nw_frame();
        Ok(Self { spec, frame, real: inverse_qhr_map(), theta, layers: Vec::new() })
    }

    pub fn line_exponent(&self, i: i64) -> LatticePoint {
        let v = vectors();
        self.theta
            .add(&v.mu.scale(&qi(self.spec.r)))
            .add(&v.c.scale(&(&self.spec.lambda + qi(i))))
    }

    /// `Z_i`, normalized so that `E(0) Z_i = Z_{i+1}` for `r = 1`.
    pub fn z(&self, i: i64) -> FockState {
        let c = vectors().c;
        let mut sign = Q::one();
        let range = if i > 0 { 0..i } else { i..0 };
        for k in range {
            sign *= self.frame.cocycle(&c, &self.line_exponent(k));
        }
        FockState::exp(self.line_exponent(i)).scale(&sign)
    }

    /// Computes the HVir layers up to degree `d`.
    pub fn ensure_depth(&mut self, d: u32) -> Result<()> {
        if self.layers.len() > d as usize {
            return Ok(());
        }
        let top = FockState::exp(self.theta.clone());
        let gen = generated_layers(&self.frame, &top, d)?;
        let mut rel: Vec<Vec<FockState>> = vec![Vec::new(); d as usize + 1];
        if let Some(p) = singular_degree(&self.spec.x).filter(|&p| p <= d) {
            let sing = singular_space(&self.spec.x, &self.spec.y, p);
            let w = sing
                .first()
                .ok_or_else(|| Error::Internal(format!("no singular vector at degree {p}")))?;
            let img = realize_verma_vector(&self.frame, &top, w)?;
            if !img.is_zero() {
                for (k, l) in generated_layers(&self.frame, &img, d - p)?.into_iter().enumerate() {
                    rel[p as usize + k] = l;
                }
            }
        }
        self.layers = gen
            .into_iter()
            .zip(rel)
            .map(|(g, r)| {
                let mut coords = Coordinates::new();
                let mut ech = Echelon::new();
                for v in &r {
                    ech.insert(&coords.vectorize(v));
                }
                let reps = g.into_iter().filter(|v| ech.insert(&coords.vectorize(v))).collect();
                (reps, r)
            })
            .collect();
        Ok(())
    }

    /// Representatives of the degree-`a` layer of `L[x, y]`.
    pub fn hvir_layer(&mut self, a: u32) -> Result<&[FockState]> {
        self.ensure_depth(a)?;
        Ok(&self.layers[a as usize].0)
    }

    /// `(line i, depth)` of a bidegree, if it is one.
    pub fn locate(&self, h: &Q, j: &Q) -> Option<(i64, u32)> {
        let i = to_i64(&(j - self.spec.line_charge(0)))?;
        let depth = to_i64(&(h - self.spec.line_weight(i)))?;
        u32::try_from(depth).ok().map(|d| (i, d))
    }

    fn assemble(&self, h: &Q, j: &Q, pick: impl Fn(&(Vec<FockState>, Vec<FockState>)) -> &[FockState]) -> Result<Vec<FockState>> {
        let v = vectors();
        let Some((i, depth)) = self.locate(h, j) else { return Ok(Vec::new()) };
        if self.layers.len() <= depth as usize {
            return Err(Error::Internal(format!("HVir layers computed only to degree {}", self.layers.len() as i64 - 1)));
        }
        let pi_top = v.mu.scale(&qi(self.spec.r)).add(&v.c.scale(&(&self.spec.lambda + qi(i))));
        let mut out = Vec::new();
        for a in 0..=depth {
            let pw = fock_words(&v.c, &v.d, depth - a, &pi_top);
            for s in pick(&self.layers[a as usize]) {
                for w in &pw {
                    out.push(s.juxtapose(w));
                }
            }
        }
        Ok(out)
    }

    /// Basis representatives of the `(h, j)` component.
    pub fn component(&mut self, h: &Q, j: &Q) -> Result<Vec<FockState>> {
        if let Some((_, d)) = self.locate(h, j) {
            self.ensure_depth(d)?;
        }
        self.assemble(h, j, |l| &l.0)
    }

    /// Vectors of the `(h, j)` component that vanish in the module.
    pub fn relations(&self, h: &Q, j: &Q) -> Result<Vec<FockState>> {
        self.assemble(h, j, |l| &l.1)
    }

    /// Monomial basis of the `(h, j)` component of the ambient Fock module
    /// `F_θ ⊗ Π`, built on the same line exponents.
    pub fn fock_component(&self, h: &Q, j: &Q) -> Vec<FockState> {
        let v = vectors();
        let Some((i, depth)) = self.locate(h, j) else { return Vec::new() };
        let pi_top = v.mu.scale(&qi(self.spec.r)).add(&v.c.scale(&(&self.spec.lambda + qi(i))));
        let mut out = Vec::new();
        for a in 0..=depth {
            let pw = fock_words(&v.c, &v.d, depth - a, &pi_top);
            for s in fock_words(&v.c1, &v.d1, a, &self.theta) {
                for w in &pw {
                    out.push(s.juxtapose(w));
                }
            }
        }
        out
    }

    /// Largest HVir depth met in a region.
    pub fn max_depth(&self, region: &Region) -> Option<u32> {
        let lo = to_i64(&(&region.j_min - self.spec.line_charge(0)).ceil())?;
        let hi = to_i64(&(&region.j_max - self.spec.line_charge(0)).floor())?;
        (lo..=hi)
            .filter_map(|i| to_i64(&(&region.h_max - self.spec.line_weight(i)).floor()))
            .filter(|d| *d >= 0)
            .max()
            .map(|d| d as u32)
    }
}

/// Dimension of the `(h, j)` component of `L[x,y] ⊗ Π_r(λ)` from characters.
pub fn character_dim(spec: &RelaxedModuleSpec, h: &Q, j: &Q) -> usize {
    let Some(i) = to_i64(&(j - spec.line_charge(0))) else { return 0 };
    let Some(depth) = to_i64(&(h - spec.line_weight(i))) else { return 0 };
    if depth < 0 {
        return 0;
    }
    let ch = hvir_character(&spec.x, &spec.y, depth as usize);
    (0..=depth as u32)
        .map(|a| {
            let ha: usize = ch.q_coeff(a as usize).try_into().unwrap_or(0);
            ha * two_color_partitions(depth as u32 - a)
        })
        .sum()
}

fn two_color_partitions(n: u32) -> usize {
    (0..=n).map(|a| partitions_of(a).len() * partitions_of(n - a).len()).sum()
}

/// Bidegree box for saturation.
#[derive(Clone, Debug)]
pub struct Region {
    pub h_min: Q,
    pub h_max: Q,
    pub j_min: Q,
    pub j_max: Q,
}

impl Region {
    pub fn contains(&self, (h, j): &(Q, Q)) -> bool {
        *h >= self.h_min && *h <= self.h_max && *j >= self.j_min && *j <= self.j_max
    }
}

/// Span, modulo the module relations, of everything reachable from `seeds`
/// by modes `X(n)`, `n ≥ -mode_bound`, without leaving `region`.
/// Returns a basis per bidegree.
pub fn saturate(
    m: &mut RealizedModule,
    seeds: &[FockState],
    region: &Region,
    mode_bound: i64,
) -> Result<BTreeMap<(Q, Q), Vec<FockState>>> {
    if let Some(d) = m.max_depth(region) {
        m.ensure_depth(d)?;
    }
    let m = &*m;
    let mut coords = Coordinates::new();
    let mut comps: HashMap<(Q, Q), (Echelon, Vec<FockState>)> = HashMap::new();
    let mut queue: Vec<((Q, Q), FockState)> = Vec::new();
    let mut insert = |s: FockState, coords: &mut Coordinates, queue: &mut Vec<((Q, Q), FockState)>| -> Result<()> {
        if s.is_zero() {
            return Ok(());
        }
        let Some(bd) = bidegree(&m.frame, &s) else { return Ok(()) };
        if !region.contains(&bd) {
            return Ok(());
        }
        if !comps.contains_key(&bd) {
            let mut ech = Echelon::new();
            for r in m.relations(&bd.0, &bd.1)? {
                ech.insert(&coords.vectorize(&r));
            }
            comps.insert(bd.clone(), (ech, Vec::new()));
        }
        let entry = comps.get_mut(&bd).expect("component present");
        if entry.0.insert(&coords.vectorize(&s)) {
            entry.1.push(s.clone());
            queue.push((bd, s));
        }
        Ok(())
    };
    for s in seeds {
        insert(s.clone(), &mut coords, &mut queue)?;
    }
    while !queue.is_empty() {
        let batch = std::mem::take(&mut queue);
        let mut jobs = Vec::new();
        for ((h, j), s) in &batch {
            let top = to_i64(&(h - &region.h_min).floor()).unwrap_or(0);
            for &x in &H4_BASIS {
                let jt = j + qi(crate::nw::charge(x));
                if jt < region.j_min || jt > region.j_max {
                    continue;
                }
                for n in -mode_bound..=top {
                    if h - qi(n) <= region.h_max {
                        jobs.push((s, x, n));
                    }
                }
            }
        }
        let images: Vec<FockState> = jobs
            .par_iter()
            .map(|&(s, x, n)| m.real.act(&m.frame, x, n, s))
            .collect::<Result<_>>()?;
        for img in images {
            insert(img, &mut coords, &mut queue)?;
        }
    }
    Ok(comps.into_iter().map(|(k, (_, b))| (k, b)).collect())
}

/// Dimensions of `V¹(𝔥₄)·start` per bidegree: weights within `depth` of the
/// start, charges within `charge_window` of it. The saturation charge box is
/// widened by `depth + 1` so that intermediate states are not lost.
pub fn submodule_growth(
    m: &mut RealizedModule,
    start: &FockState,
    depth: u32,
    charge_window: i64,
) -> Result<BTreeMap<(Q, Q), usize>> {
    let (h0, j0) = bidegree(&m.frame, start).ok_or_else(|| Error::InvalidParameter("zero start vector".into()))?;
    let margin = qi(charge_window + depth as i64 + 1);
    let region = Region {
        h_min: h0.clone() - qi(depth as i64),
        h_max: &h0 + qi(depth as i64),
        j_min: &j0 - &margin,
        j_max: &j0 + &margin,
    };
    let comps = saturate(m, std::slice::from_ref(start), &region, depth.max(1) as i64)?;
    Ok(comps
        .into_iter()
        .filter(|((_, j), _)| (j - &j0).abs() <= qi(charge_window))
        .map(|(k, v)| (k, v.len()))
        .collect())
}
