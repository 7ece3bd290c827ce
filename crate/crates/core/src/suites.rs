//! Named verification suites producing report records.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::brst::qhr_checks;
use crate::error::{Error, Result};
use crate::exact::{fmt_q, q, qi, Q};
use crate::frames::{bare_frame, sugawara_image, vectors};
use crate::hvir::{generated_dim, hvir_character, singular_degree, singular_space, verma_basis};
use crate::lattice::{mode_apply, FockState, Frame};
use crate::nw::{
    charge, inverse_qhr_map, pbw_character, pbw_monomials, sugawara_central_charge, sugawara_state, verify_embedding,
    wakimoto_map, H4, H4_BASIS,
};
use crate::relaxed::{classify, top_action, RealizedModule, RelaxedModuleSpec};
use crate::report::Record;
use crate::screening::{kernel_profile, rank_two_certificate, screening_apply, Check, LogModuleSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    VerifyEmbedding,
    VerifyQhr,
    HvirSingular,
    Characters,
    KernelProfile,
    Classify,
    RelaxedActions,
    LogRank,
    All,
}

pub const SUITE_NAMES: [&str; 9] = [
    "verify-embedding",
    "verify-qhr",
    "hvir-singular",
    "characters",
    "kernel-profile",
    "classify",
    "relaxed-actions",
    "log-rank",
    "all",
];

impl Suite {
    pub fn name(self) -> &'static str {
        SUITE_NAMES[self as usize]
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use Suite::*;
        let all = [VerifyEmbedding, VerifyQhr, HvirSingular, Characters, KernelProfile, Classify, RelaxedActions, LogRank, All];
        all.into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}; expected one of {}", SUITE_NAMES.join(", "))))
    }
}

/// Module parameters; unset ones take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Params {
    pub x: Option<Q>,
    pub y: Option<Q>,
    pub lambda: Option<Q>,
    pub r: Option<i64>,
}

impl Params {
    /// Parses one `key=value` assignment.
    pub fn set(&mut self, kv: &str) -> Result<()> {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {kv:?}")))?;
        let val = crate::exact::parse_q(v.trim()).map_err(|e| Error::InvalidParameter(format!("{k}: {e}")))?;
        match k.trim() {
            "x" => self.x = Some(val),
            "y" => self.y = Some(val),
            "lambda" => self.lambda = Some(val),
            "r" => {
                let r = crate::exact::to_i64(&val).ok_or_else(|| Error::InvalidParameter(format!("r must be an integer, got {v}")))?;
                self.r = Some(r);
            }
            other => return Err(Error::InvalidParameter(format!("unknown parameter {other:?}"))),
        }
        Ok(())
    }

    fn get(&self, x: Q, y: Q, lambda: Q, r: i64) -> (Q, Q, Q, i64) {
        (
            self.x.clone().unwrap_or(x),
            self.y.clone().unwrap_or(y),
            self.lambda.clone().unwrap_or(lambda),
            self.r.unwrap_or(r),
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub max_weight: u32,
    pub charge_window: i64,
    pub params: Params,
    /// Replaces the ambient frame of the embedding suite.
    pub frame: Option<Frame>,
}

pub const MAX_WEIGHT_LIMIT: u32 = 8;
pub const CHARGE_WINDOW_LIMIT: i64 = 8;

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        Self { suite, max_weight: 3, charge_window: 2, params: Params::default(), frame: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_weight > MAX_WEIGHT_LIMIT {
            return Err(Error::InvalidParameter(format!("max weight {} exceeds {MAX_WEIGHT_LIMIT}", self.max_weight)));
        }
        if !(0..=CHARGE_WINDOW_LIMIT).contains(&self.charge_window) {
            return Err(Error::InvalidParameter(format!("charge window must lie in 0..={CHARGE_WINDOW_LIMIT}")));
        }
        Ok(())
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    cfg.validate()?;
    match cfg.suite {
        Suite::VerifyEmbedding => verify_embedding_suite(cfg),
        Suite::VerifyQhr => verify_qhr_suite(cfg),
        Suite::HvirSingular => hvir_singular_suite(cfg),
        Suite::Characters => characters_suite(cfg),
        Suite::KernelProfile => kernel_profile_suite(cfg),
        Suite::Classify => classify_suite(cfg),
        Suite::RelaxedActions => relaxed_actions_suite(cfg),
        Suite::LogRank => log_rank_suite(cfg),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::VerifyEmbedding,
                Suite::VerifyQhr,
                Suite::HvirSingular,
                Suite::Characters,
                Suite::KernelProfile,
                Suite::Classify,
                Suite::RelaxedActions,
                Suite::LogRank,
            ] {
                out.extend(run_suite(&SuiteConfig { suite: s, ..cfg.clone() })?);
            }
            Ok(out)
        }
    }
}

fn pass_detail(bad: &[String], ok: String) -> (bool, String) {
    if bad.is_empty() {
        (true, ok)
    } else {
        (false, bad.iter().take(8).cloned().collect::<Vec<_>>().join("; "))
    }
}

fn verify_embedding_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    const S: &str = "verify-embedding";
    let frame = cfg.frame.clone().unwrap_or_else(bare_frame);
    if frame.dim() != vectors().alpha.dim() {
        return Err(Error::InvalidParameter(format!("frame has {} generators, expected 5", frame.dim())));
    }
    let weight = cfg.max_weight.min(2);
    let inv = inverse_qhr_map();
    let wak = wakimoto_map(&frame)?;
    let mut out = Vec::new();
    for r in [&inv, &wak] {
        let rep = verify_embedding(&frame, r, 2, weight)?;
        let bad: Vec<String> = rep.failures.iter().map(|f| format!("{}: {}", f.identity, f.detail)).collect();
        let (pass, detail) = pass_detail(&bad, format!("{} identities, mode bound 2, targets of weight <= {weight}", rep.checks));
        out.push(Record::new(S, r.name.to_string()).check(Check::new("embedding", pass, detail)));
    }
    let om = sugawara_state(&frame, &inv)?;
    let cc = sugawara_central_charge(&frame, &om)?;
    out.push(
        Record::new(S, "sugawara")
            .check(Check::new("sugawara_image", om == sugawara_image(), format!("{} terms", om.num_terms())))
            .check(Check::new(
                "sugawara_central_charge",
                cc.iter().all(|c| *c == qi(4)),
                format!("c = {}", cc.iter().map(fmt_q).collect::<Vec<_>>().join(", ")),
            )),
    );
    let differ: Vec<String> = H4_BASIS.iter().filter(|&&x| inv.image(x) != wak.image(x)).map(|x| x.to_string()).collect();
    let (pass, detail) = pass_detail(&differ, "E, F, I, J images coincide".into());
    out.push(Record::new(S, "image_coincidence").check(Check::new("images_equal", pass, detail)));
    Ok(out)
}

fn verify_qhr_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let checks = qhr_checks(cfg.max_weight.min(4), cfg.charge_window.min(2), 3)?;
    Ok(vec![Record { checks, ..Record::new("verify-qhr", "brst") }])
}

fn hvir_singular_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let y = cfg.params.y.clone().unwrap_or_else(|| q(7, 3));
    let mut out = Vec::new();
    for x in (-3..=4).filter(|&x| x != 1) {
        let xq = qi(x);
        let p = singular_degree(&xq).ok_or_else(|| Error::Internal("integral x has a singular degree".into()))?;
        let below: Vec<String> = (1..p).filter(|&d| !singular_space(&xq, &y, d).is_empty()).map(|d| d.to_string()).collect();
        let s = singular_space(&xq, &y, p);
        let mut rec = Record::new("hvir-singular", format!("L[{x},{}]", fmt_q(&y)));
        let (pass, detail) = pass_detail(&below, format!("none below degree {p}"));
        rec = rec.check(Check::new("no_singular_below", pass, detail));
        rec = rec.check(Check::new("singular_dim_one", s.len() == 1, format!("dim {} at degree {p}", s.len())));
        if s.len() == 1 {
            let ch = hvir_character(&xq, &y, cfg.max_weight as usize);
            let bad: Vec<String> = (0..=cfg.max_weight)
                .filter_map(|d| {
                    let quotient = verma_basis(d).len() - generated_dim(&xq, &y, &s[0], p, d);
                    (ch.q_coeff(d as usize) != quotient.into()).then(|| format!("degree {d}: {} vs {quotient}", ch.q_coeff(d as usize)))
                })
                .collect();
            let (pass, detail) = pass_detail(&bad, format!("coefficients {:?}", ch.q_coeffs()));
            rec = rec.check(Check::new("character_matches_quotient", pass, detail));
        }
        out.push(rec);
    }
    Ok(out)
}

fn characters_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let (x, y, _, _) = cfg.params.get(Q::zero(), Q::zero(), Q::zero(), 1);
    let n = cfg.max_weight;
    let ch = hvir_character(&x, &y, n as usize);
    let counts: Vec<usize> = match singular_degree(&x) {
        Some(p) => {
            let s = singular_space(&x, &y, p);
            let w = s.first().ok_or_else(|| Error::Internal(format!("no singular vector at degree {p}")))?;
            (0..=n).map(|d| verma_basis(d).len() - generated_dim(&x, &y, w, p, d)).collect()
        }
        None => (0..=n).map(|d| verma_basis(d).len()).collect(),
    };
    let ok = counts.iter().enumerate().all(|(d, c)| ch.q_coeff(d) == (*c).into());
    let hv = Record::new("characters", format!("L[{},{}]", fmt_q(&x), fmt_q(&y))).check(Check::new(
        "hvir_character",
        ok,
        format!("q-coefficients {:?}, quotient counts {counts:?}, offset {}", ch.q_coeffs(), fmt_q(&ch.offset)),
    ));
    let pbw = pbw_character(n as usize);
    let mut bad = Vec::new();
    let w = cfg.charge_window;
    for h in 0..=n {
        let mons = pbw_monomials(h);
        for j in -w..=w {
            let count = mons.iter().filter(|m| m.iter().map(|&(g, _)| charge(g)).sum::<i64>() == j).count();
            if pbw.coeff(h as usize, j) != count.into() {
                bad.push(format!("({h}, {j}): {} vs {count}", pbw.coeff(h as usize, j)));
            }
        }
    }
    let (pass, detail) = pass_detail(&bad, format!("h <= {n}, |j| <= {w}"));
    let pb = Record::new("characters", "V1(h4)").check(Check::new("pbw_character", pass, detail));
    Ok(vec![hv, pb])
}

fn kernel_profile_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    const S: &str = "kernel-profile";
    let mut out = Vec::new();
    for r in kernel_profile(cfg.max_weight, cfg.charge_window)? {
        let mut rec = Record::new(S, "vacuum").at(&qi(r.h), &qi(r.j)).check(Check::new(
            "dim_ker_equals_pbw",
            r.dim_ker == r.pbw,
            format!("dim Ker S {}, PBW {}", r.dim_ker, r.pbw),
        ));
        rec.dim_source = Some(r.dim_source);
        rec.dim_target = Some(r.dim_target);
        rec.rank_s = Some(r.rank);
        rec.dim_ker = Some(r.dim_ker);
        out.push(rec);
    }
    let v = vectors();
    let f = crate::frames::nw_frame();
    let w = screening_apply(&f, &FockState::exp(v.alpha.add(&v.beta).neg()))?;
    let want = FockState::exp(v.beta.neg());
    out.push(Record::new(S, "witness").check(Check::new("s_on_exp_minus_alpha_beta", w == want, format!("S e^(-alpha-beta) = {w}"))));
    Ok(out)
}

fn classify_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let (x, y, l, _) = cfg.params.get(qi(3), qi(2), q(1, 3), 1);
    let c = classify(&x, &y, &l);
    let spec = RelaxedModuleSpec::new(x.clone(), y.clone(), 1, l.clone());
    let mut rec = Record::new("classify", spec.label()).check(Check::new(
        "classification",
        true,
        format!(
            "label {}, top {}, case {}, {}",
            c.label,
            c.top_class,
            c.case,
            if c.irreducible { "irreducible" } else { "reducible" }
        ),
    ));
    if x != Q::one() {
        let killed: Vec<i64> = (-40..=40)
            .map(|i| top_action(&spec, H4::F, i).map(|(_, v)| (i, v.is_zero())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter_map(|(i, z)| z.then_some(i))
            .collect();
        let ok = killed.is_empty() == c.irreducible && c.lowest.is_none_or(|j| killed == vec![j]);
        rec = rec.check(Check::new("reducible_iff_f_kills", ok, format!("F(0) Z_j = 0 for j in {killed:?}")));
    }
    Ok(vec![rec])
}

/// `g(0) Z_i` in the realization as `(target line, coefficient)`.
fn engine_action(m: &RealizedModule, g: H4, i: i64) -> Result<(i64, Q)> {
    let img = m.real.act(&m.frame, g, 0, &m.z(i))?;
    let nominal = i + charge(g);
    if img.is_zero() {
        return Ok((nominal, Q::zero()));
    }
    img.ratio_to(&m.z(nominal))
        .map(|c| (nominal, c))
        .ok_or_else(|| Error::Internal(format!("{g}(0) Z_{i} left the top level")))
}

fn relaxed_actions_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let (x, y, l, r) = cfg.params.get(qi(3), qi(2), q(1, 3), 1);
    let spec = RelaxedModuleSpec::new(x, y, r, l);
    let w = cfg.charge_window;
    let m = RealizedModule::new(spec.clone(), &Q::zero())?;
    let omega = m.frame.conformal().ok_or_else(|| Error::Internal("frame has no conformal vector".into()))?.clone();
    let mut rec = Record::new("relaxed-actions", spec.label());
    let mut weights = Vec::new();
    for i in -w..=w {
        let z = m.z(i);
        let got = mode_apply(&m.frame, &omega, 1, &z)?.ratio_to(&z);
        if got.as_ref() != Some(&spec.line_weight(i)) {
            weights.push(format!("line {i}: L(0) {:?} vs {}", got.map(|g| fmt_q(&g)), fmt_q(&spec.line_weight(i))));
        }
    }
    let (pass, detail) = pass_detail(&weights, format!("sug_weight {}", fmt_q(&spec.sug_weight())));
    rec = rec.check(Check::new("line_weights", pass, detail));
    let ws: Vec<Q> = (-5..=5).map(|i| spec.line_weight(i)).collect();
    let graded = ws.iter().all(|v| *v == ws[0]);
    rec = rec.check(Check::new("graded_iff_r_one", graded == (r == 1), format!("r = {r}, top lines {}", if graded { "equal" } else { "vary" })));
    if r == 1 {
        let mut bad = Vec::new();
        for i in -w..=w {
            for g in H4_BASIS {
                let (t, c) = top_action(&spec, g, i)?;
                let (te, ce) = engine_action(&m, g, i)?;
                if c != ce || (!c.is_zero() && t != te) {
                    bad.push(format!("{g}(0) Z_{i}: closed {} vs engine {}", fmt_q(&c), fmt_q(&ce)));
                }
            }
            let z = m.z(i);
            let act = |g, s: &FockState| m.real.act(&m.frame, g, 0, s);
            let om = act(H4::F, &act(H4::E, &z)?)?.add(&act(H4::I, &act(H4::J, &z)?)?);
            if om.ratio_to(&z).as_ref() != Some(&spec.omega_eigen()) {
                bad.push(format!("Omega on Z_{i}"));
            }
        }
        let (pass, detail) = pass_detail(&bad, format!("|i| <= {w}, Omega = {}", fmt_q(&spec.omega_eigen())));
        rec = rec.check(Check::new("top_actions_match_engine", pass, detail));
    }
    Ok(vec![rec])
}

fn log_rank_suite(cfg: &SuiteConfig) -> Result<Vec<Record>> {
    let (x, y, l, r) = cfg.params.get(qi(3), qi(2), Q::zero(), 1);
    let spec = if x == Q::one() {
        if cfg.params.y.as_ref().is_some_and(|y| !y.is_zero()) || r != 1 {
            return Err(Error::InvalidParameter("P(lambda) needs x = 1, y = 0, r = 1".into()));
        }
        LogModuleSpec::p_lambda(l)
    } else {
        let s = LogModuleSpec::p(x, y, r)?;
        if cfg.params.lambda.as_ref().is_some_and(|l| *l != s.lambda) {
            return Err(Error::InvalidParameter(format!("lambda is fixed to y/(x-1) = {} for this family", fmt_q(&s.lambda))));
        }
        s
    };
    let cert = rank_two_certificate(&spec, cfg.max_weight, cfg.charge_window).map_err(|e| match e {
        Error::Incompatible(m) => Error::InvalidParameter(m),
        e => e,
    })?;
    let label = spec.label();
    let mut out = Vec::new();
    for row in &cert.rows {
        let mut rec = Record::new("log-rank", label.clone()).at(&row.bidegree.0, &row.bidegree.1).check(Check::new(
            "bidegree",
            true,
            format!("A {} + B {}", row.dim_source, row.dim_target),
        ));
        rec.dim_source = Some(row.dim_source);
        rec.dim_target = Some(row.dim_target);
        rec.rank_s = Some(row.rank_s);
        rec.dim_ker = Some(row.dim_source - row.rank_s);
        rec.nilpotent_rank = Some(row.nilpotent_rank);
        out.push(rec);
    }
    let mut summary = Record::new("log-rank", label);
    summary.checks = cert.checks.clone();
    if let Some(nu) = &cert.nu {
        summary.checks.push(Check::new("nu", true, format!("nu = {}", fmt_q(nu))));
    }
    out.push(summary);
    Ok(out)
}
