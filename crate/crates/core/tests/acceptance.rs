//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use nwvoa::brst::{closedness_check, d0_square_check, euler_profile, reduced_structure_check, BrstComplex};
use nwvoa::exact::{fmt_q, q, qi, Q};
use nwvoa::frames::{bare_frame, hmode, hmode2, nw_frame, vectors};
use nwvoa::hvir::{generated_dim, hvir_character, singular_space, verma_basis};
use nwvoa::lattice::{mode_apply, FockState};
use nwvoa::nw::{inverse_qhr_map, pbw_character, sugawara_state, verify_embedding, wakimoto_map, H4, H4_BASIS};
use nwvoa::relaxed::*;
use nwvoa::report::emit_report;
use nwvoa::screening::*;
use nwvoa::suites::{run_suite, Suite, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn all_of(parts: Vec<(bool, String)>) -> Outcome {
    let ok = parts.iter().all(|p| p.0);
    let detail = parts
        .into_iter()
        .filter(|p| !ok || p.0)
        .filter(|p| ok || !p.0)
        .map(|p| p.1)
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn embedding() -> Outcome {
    let f = bare_frame();
    let mut parts = Vec::new();
    for r in [inverse_qhr_map(), wakimoto_map(&f).unwrap()] {
        let rep = verify_embedding(&f, &r, 2, 1).unwrap();
        let first = rep.failures.first().map(|x| x.identity.clone()).unwrap_or_default();
        parts.push((rep.passed(), format!("{}: {} identities {first}", r.name, rep.checks)));
    }
    all_of(parts)
}

fn sugawara() -> Outcome {
    // T_HVir - ½ I_HVir(-2)𝟙 + ½ c(-1)d(-1)𝟙 - ½(c(-2) + d(-2))𝟙, with
    // T_HVir = ½c₁(-1)d₁(-1)𝟙 - ½d₁(-2)𝟙 and I_HVir = -c₁(-1)𝟙
    let v = vectors();
    let h = q(1, 2);
    let want = hmode2(&v.c1, 1, &v.d1, 1)
        .scale(&h)
        .sub(&hmode(&v.d1, 2).scale(&h))
        .add(&hmode(&v.c1, 2).scale(&h))
        .add(&hmode2(&v.c, 1, &v.d, 1).scale(&h))
        .sub(&hmode(&v.c, 2).add(&hmode(&v.d, 2)).scale(&h));
    let got = sugawara_state(&bare_frame(), &inverse_qhr_map()).unwrap();
    (got == want, format!("{} terms", got.num_terms()))
}

fn coincidence() -> Outcome {
    let inv = inverse_qhr_map();
    let wak = wakimoto_map(&bare_frame()).unwrap();
    let same: Vec<bool> = H4_BASIS.iter().map(|&x| inv.image(x) == wak.image(x)).collect();
    (same.iter().all(|b| *b), format!("E, F, I, J equal: {same:?}"))
}

fn vacuum_count(h: u32) -> i64 {
    // T(-n), n >= 2 and I(-n), n >= 1
    let mut c = vec![0i64; h as usize + 1];
    c[0] = 1;
    for n in 1..=h as usize {
        let reps = if n >= 2 { 2 } else { 1 };
        for _ in 0..reps {
            for i in n..=h as usize {
                c[i] += c[i - n];
            }
        }
    }
    c[h as usize]
}

fn qhr() -> Outcome {
    let c = BrstComplex::new().unwrap();
    let mut parts = Vec::new();
    let k = d0_square_check(&c, 4, -2..=2, 2).unwrap();
    parts.push((k.pass, format!("d0^2: {}", k.detail)));
    for k in closedness_check(&c).unwrap().into_iter().chain(reduced_structure_check(&c, 3).unwrap()) {
        parts.push((k.pass, k.name));
    }
    let e = euler_profile(4, 4);
    let ok = e.totals.iter().all(|t| t.euler == vacuum_count(t.h));
    parts.push((ok, format!("euler {:?}", e.totals.iter().map(|t| t.euler).collect::<Vec<_>>())));
    all_of(parts)
}

fn pbw_count(h: u32, j: i64) -> usize {
    fn go(gens: &[(i64, u32)], k: usize, h: u32, j: i64) -> usize {
        if h == 0 {
            return usize::from(j == 0);
        }
        if k == gens.len() {
            return 0;
        }
        let (c, n) = gens[k];
        (0..=h / n).map(|m| go(gens, k + 1, h - m * n, j - m as i64 * c)).sum()
    }
    let gens: Vec<(i64, u32)> = (1..=h).flat_map(|n| [(1, n), (-1, n), (0, n), (0, n)]).collect();
    go(&gens, 0, h, j)
}

fn kernel() -> Outcome {
    let rows = kernel_profile(3, 3).unwrap();
    let pbw = pbw_character(3);
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.dim_ker != pbw_count(r.h as u32, r.j) || pbw.coeff(r.h as usize, r.j) != r.dim_ker.into())
        .map(|r| format!("({}, {})", r.h, r.j))
        .collect();
    let v = vectors();
    let w = screening_apply(&nw_frame(), &FockState::exp(v.alpha.add(&v.beta).neg())).unwrap();
    let witness = w == FockState::exp(v.beta.neg()) && !w.is_zero();
    (bad.is_empty() && witness && rows.len() == 28, format!("{} bidegrees, mismatches {bad:?}, witness {witness}", rows.len()))
}

fn singular() -> Outcome {
    let y = q(7, 3);
    let mut parts = Vec::new();
    for x in (-3i64..=4).filter(|&x| x != 1) {
        let xq = qi(x);
        let p = (x - 1).unsigned_abs() as u32;
        let below = (1..p).all(|d| singular_space(&xq, &y, d).is_empty());
        let s = singular_space(&xq, &y, p);
        let mut ok = below && s.len() == 1;
        if ok {
            let ch = hvir_character(&xq, &y, 6);
            ok = (0..=6u32).all(|d| ch.q_coeff(d as usize) == (verma_basis(d).len() - generated_dim(&xq, &y, &s[0], p, d)).into());
        }
        parts.push((ok, format!("x={x}")));
    }
    all_of(parts)
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// `g(0) Z_i` in the realization.
fn engine(m: &RealizedModule, g: H4, i: i64) -> Q {
    let t = i + nwvoa::nw::charge(g);
    let img = m.real.act(&m.frame, g, 0, &m.z(i)).unwrap();
    if img.is_zero() {
        Q::zero()
    } else {
        img.ratio_to(&m.z(t)).expect("stays on the top level")
    }
}

fn relaxed_actions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut parts = Vec::new();
    let omega = nw_frame().conformal().unwrap().clone();
    for k in 0..20 {
        let (x, y, l) = (rand_q(&mut rng), rand_q(&mut rng), rand_q(&mut rng));
        // at x = 1 only y = 0 has a Fock highest-weight vector
        let y = if x == Q::one() { Q::zero() } else { y };
        let s = RelaxedModuleSpec::new(x.clone(), y.clone(), 1, l.clone());
        let m = RealizedModule::new(s.clone(), &Q::zero()).unwrap();
        let mut ok = true;
        for i in -3..=3 {
            for g in H4_BASIS {
                ok &= top_action(&s, g, i).unwrap().1 == engine(&m, g, i);
            }
            let z = m.z(i);
            let w = mode_apply(&m.frame, &omega, 1, &z).unwrap().ratio_to(&z);
            // weight y + x/2 - 1/2 at r = 1, Casimir FE + IJ = y + (x-1)²/2
            let h = &y + (&x - Q::one()) / qi(2);
            ok &= w.as_ref() == Some(&h) && s.sug_weight() == h;
            let act = |g, t: &FockState| m.real.act(&m.frame, g, 0, t).unwrap();
            let cas = act(H4::F, &act(H4::E, &z)).add(&act(H4::I, &act(H4::J, &z)));
            ok &= cas.ratio_to(&z) == Some(&y + (&x - Q::one()) * (&x - Q::one()) / qi(2));
        }
        parts.push((ok, format!("sample {k} ({}, {}, {})", fmt_q(&x), fmt_q(&y), fmt_q(&l))));
    }
    for r in -2..=3 {
        let s = RelaxedModuleSpec::new(qi(3), qi(2), r, q(1, 3));
        let m = RealizedModule::new(s.clone(), &Q::zero()).unwrap();
        let ws: Vec<Q> = (-4..=4)
            .map(|i| {
                let z = m.z(i);
                mode_apply(&m.frame, &omega, 1, &z).unwrap().ratio_to(&z).unwrap()
            })
            .collect();
        let graded = ws.iter().all(|w| *w == ws[0]);
        let formula = (-4..=4).all(|i| ws[(i + 4) as usize] == s.line_weight(i));
        parts.push((graded == (r == 1) && formula, format!("r={r} graded {graded}")));
    }
    let (ok, d) = all_of(parts);
    (ok, if ok { "20 samples, graded only at r=1".to_string() } else { d })
}

fn classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut parts = Vec::new();
    let mut samples: Vec<(Q, Q, Q)> = (0..40).map(|_| (qi(rng.gen_range(-4..=5)), rand_q(&mut rng), rand_q(&mut rng))).collect();
    // reducible by construction
    for (x, y, j) in [(3, 2, 1), (0, 0, 0), (-1, 2, -2), (4, 1, 3), (2, 5, 0)] {
        let (x, y) = (qi(x), qi(y));
        let l = &y / (&x - Q::one()) - qi(j);
        samples.push((x, y, l));
    }
    samples.push((qi(1), qi(0), q(1, 3)));
    samples.push((qi(1), qi(2), q(1, 3)));
    for (x, y, l) in samples {
        let c = classify(&x, &y, &l);
        let s = RelaxedModuleSpec::new(x.clone(), y.clone(), 1, l.clone());
        let expected_reducible = if x == Q::one() { y.is_zero() } else { (&y / (&x - Q::one()) - &l).is_integer() };
        let mut ok = c.irreducible != expected_reducible;
        if x != Q::one() {
            let killed: Vec<i64> = (-60..=60).filter(|&i| top_action(&s, H4::F, i).unwrap().1.is_zero()).collect();
            let j = &y / (&x - Q::one()) - &l;
            let want: Vec<i64> = if j.is_integer() { vec![j.to_integer().try_into().unwrap()] } else { vec![] };
            ok &= killed == want;
            if let Some(&j) = want.first() {
                let m = RealizedModule::new(s.clone(), &Q::zero()).unwrap();
                ok &= engine(&m, H4::F, j).is_zero() && !engine(&m, H4::F, j + 1).is_zero();
            }
        }
        parts.push((ok, format!("({}, {}, {}) {}", fmt_q(&x), fmt_q(&y), fmt_q(&l), c.label)));
    }
    let n = parts.len();
    let (ok, d) = all_of(parts);
    (ok, if ok { format!("{n} samples") } else { d })
}

fn infinite_chain() -> Outcome {
    let s = RelaxedModuleSpec::new(qi(1), qi(0), 1, q(1, 3));
    let mut m = RealizedModule::new(s.clone(), &Q::zero()).unwrap();
    let region = Region { h_min: s.line_weight(0), h_max: s.line_weight(0) + qi(1), j_min: s.line_charge(-4), j_max: s.line_charge(5) };
    let mut gens: BTreeMap<i64, BTreeMap<(Q, Q), usize>> = BTreeMap::new();
    for i in -2..=3 {
        let z = m.z(i);
        let g = saturate(&mut m, &[z], &region, 1).unwrap();
        gens.insert(i, g.into_iter().map(|(k, v)| (k, v.len())).collect());
    }
    let top = |g: &BTreeMap<(Q, Q), usize>, i: i64| g.get(&(s.line_weight(i), s.line_charge(i))).copied().unwrap_or(0);
    let mut parts = Vec::new();
    for i in -2..=2 {
        let (a, b) = (&gens[&i], &gens[&(i + 1)]);
        let contains = b.iter().all(|(k, d)| a.get(k).copied().unwrap_or(0) >= *d);
        let strict = top(a, i) == 1 && top(b, i) == 0;
        parts.push((contains && strict, format!("<Z_{i}> > <Z_{}>: {} vs {} vectors", i + 1, a.values().sum::<usize>(), b.values().sum::<usize>())));
    }
    all_of(parts)
}

fn log_rank_two() -> Outcome {
    let mut parts = Vec::new();
    let specs = [
        LogModuleSpec::p(qi(3), qi(2), 1).unwrap(),
        LogModuleSpec::p(qi(0), qi(0), 1).unwrap(),
        LogModuleSpec::p(qi(-1), qi(2), 1).unwrap(),
        LogModuleSpec::p_lambda(q(1, 3)),
        LogModuleSpec::p_lambda(Q::zero()),
    ];
    for spec in specs {
        let c = rank_two_certificate(&spec, 3, 2).unwrap();
        let get = |n: &str| c.checks.iter().find(|k| k.name == n).is_some_and(|k| k.pass);
        let mut ok = get("nilpotent_nonzero") && get("nilpotent_square_zero") && get("s_kills_z_nonnegative") && get("non_split");
        let nu = c.nu.clone();
        if spec.x == Q::one() {
            ok &= nu.as_ref().is_some_and(|n| !n.is_zero());
        }
        ok &= c.passed();
        let failed: Vec<&str> = c.checks.iter().filter(|k| !k.pass).map(|k| k.name.as_str()).collect();
        parts.push((ok, format!("{} nu={} failed {failed:?}", spec.label(), nu.map(|n| fmt_q(&n)).unwrap_or_default())));
    }
    all_of(parts)
}

fn determinism() -> Outcome {
    let mut cfg = SuiteConfig::new(Suite::All);
    cfg.max_weight = 1;
    cfg.charge_window = 1;
    let a = emit_report(&run_suite(&cfg).unwrap());
    let b = emit_report(&run_suite(&cfg).unwrap());
    (a == b && a.len() > 2, format!("{} bytes, identical {}", a.len(), a == b))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 embedding certificate", embedding),
        ("2 sugawara image", sugawara),
        ("3 image coincidence", coincidence),
        ("4 qhr structure", qhr),
        ("5 kernel equals pbw", kernel),
        ("6 hvir singular vectors", singular),
        ("7 relaxed actions", relaxed_actions),
        ("8 classification boundary", classification),
        ("9 infinite-length chain", infinite_chain),
        ("10 logarithmic rank two", log_rank_two),
        ("11 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let (ok, detail) = f();
        failed += usize::from(!ok);
        println!("{} {name} ({:.1}s): {detail}", if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of 11 passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
