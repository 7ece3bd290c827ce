use num_traits::{One, Zero};
use nwvoa::error::Error;
use nwvoa::exact::{q, qi, Q};
use nwvoa::frames::{nw_frame, vectors};
use nwvoa::hvir::hw_exponent;
use nwvoa::lattice::FockState;
use nwvoa::nw::pbw_character;
use nwvoa::relaxed::RelaxedModuleSpec;
use nwvoa::screening::*;
use proptest::prelude::*;

#[test]
fn screening_witnesses() {
    let f = nw_frame();
    let v = vectors();
    assert!(screening_apply(&f, &FockState::vacuum(f.dim())).unwrap().is_zero());
    let w = screening_apply(&f, &FockState::exp(v.alpha.add(&v.beta).neg())).unwrap();
    assert_eq!(w, FockState::exp(v.beta.neg()));
    assert_eq!(screening_charge_shift(&f).unwrap(), Q::zero());
}

/// Brute-force PBW count: monomials in E(-n), F(-n), I(-n), J(-n) of weight h, charge j.
fn pbw_count(h: u32, j: i64) -> usize {
    // (charge, weight) of each mode kind, over all modes n = 1..=h
    let mut gens = Vec::new();
    for n in 1..=h {
        for c in [1i64, -1, 0, 0] {
            gens.push((c, n));
        }
    }
    fn go(gens: &[(i64, u32)], k: usize, h: u32, j: i64) -> usize {
        if h == 0 {
            return usize::from(j == 0);
        }
        if k == gens.len() {
            return 0;
        }
        let (c, n) = gens[k];
        let mut total = 0;
        let mut m = 0;
        while m * n <= h {
            total += go(gens, k + 1, h - m * n, j - m as i64 * c);
            m += 1;
        }
        total
    }
    go(&gens, 0, h, j)
}

#[test]
fn pbw_character_matches_brute_force() {
    let ch = pbw_character(4);
    for h in 0..=4u32 {
        for j in -4..=4 {
            assert_eq!(ch.coeff(h as usize, j), pbw_count(h, j).into(), "h={h} j={j}");
        }
    }
}

#[test]
fn kernel_is_pbw() {
    let rows = kernel_profile(3, 3).unwrap();
    assert_eq!(rows.len(), 4 * 7);
    for r in &rows {
        assert_eq!(r.dim_ker, pbw_count(r.h as u32, r.j), "{r:?}");
        assert_eq!(r.dim_ker, r.pbw);
    }
    let m = kernel_map(&rows);
    assert_eq!(m[&(0, 0)], 1);
    assert_eq!((m[&(1, 1)], m[&(1, -1)], m[&(1, 0)]), (1, 1, 2));
    assert_eq!(m[&(2, 0)], 6);
}

#[test]
fn screening_commutes_with_generators() {
    let mut map = ScreeningMap::vacuum().unwrap();
    for h in 0..=3 {
        for j in -1..=1 {
            let bad = commutation_failures(&mut map, &qi(h), &qi(j), 2).unwrap();
            assert!(bad.is_empty(), "({h}, {j}): {bad:?}");
        }
    }
}

#[test]
fn compatibility_examples() {
    assert!(vmodule_compatible(&qi(3), &qi(2), &qi(0), 1).unwrap().compatible);
    let c = vmodule_compatible(&qi(3), &qi(2), &q(1, 3), 1).unwrap();
    assert!(!c.compatible);
    assert_eq!(c.obstruction, q(1, 3));
    let c = vmodule_compatible(&qi(1), &qi(0), &q(2, 7), 1).unwrap();
    assert!(c.compatible);
    assert_eq!(c.second.unwrap(), RelaxedModuleSpec::new(qi(0), q(-2, 7), 0, q(2, 7)));
    assert!(!vmodule_compatible(&qi(1), &qi(3), &qi(0), 1).unwrap().compatible);
    assert!(matches!(vmodule_compatible(&q(1, 2), &qi(0), &qi(0), 1), Err(Error::InvalidParameter(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    /// The congruence agrees with integrality of the `S` action on the top and
    /// with the weight congruence of the two summands.
    #[test]
    fn compatibility_matches_engine(x in -4i64..6, yn in -6i64..7, yd in 1i64..4, ln in -6i64..7, ld in 1i64..4, r in -2i64..3) {
        prop_assume!(x != 1);
        let (x, y, l) = (qi(x), q(yn, yd), q(ln, ld));
        let c = vmodule_compatible(&x, &y, &l, r).unwrap();
        let s = RelaxedModuleSpec::new(x.clone(), y.clone(), r, l.clone());
        let second = c.second.clone().unwrap();
        let dw = s.sug_weight() - second.sug_weight();
        prop_assert_eq!(dw.is_integer(), c.compatible);
        let f = nw_frame();
        let v = vectors();
        let top = hw_exponent(&x, &y, &Q::zero()).unwrap().add(&v.mu.scale(&qi(r))).add(&v.c.scale(&l));
        let engine = screening_apply(&f, &FockState::exp(top));
        prop_assert_eq!(engine.is_ok(), c.compatible);
        if !c.compatible {
            prop_assert!(matches!(engine, Err(Error::NonIntegral(_))));
        }
    }

    #[test]
    fn screened_top_realizes_fusion_output(x in -4i64..6, yn in -6i64..7, yd in 1i64..4) {
        prop_assume!(x != 1 && x != 2);
        let (x, y) = (qi(x), q(yn, yd));
        let HVirFusion::Single(x2, y2) = hvir_fusion_minus_one(&x, &y).unwrap() else { panic!() };
        let v = vectors();
        let want = hw_exponent(&x, &y, &Q::zero()).unwrap().add(&v.d1.scale(&q(1, 2)));
        prop_assert_eq!(hw_exponent(&x2, &y2, &Q::zero()).unwrap(), want);
    }

    #[test]
    fn delta_parametrization(r in 0i64..6, sn in -5i64..6, sd in 1i64..4) {
        let (r, s) = (qi(r), q(sn, sd));
        let HVirFusion::Single(x2, y2) = hvir_fusion_minus_one(&(-r.clone()), &delta_rs(&r, &s)).unwrap() else { panic!() };
        prop_assert_eq!(x2, -r.clone() - Q::one());
        prop_assert_eq!(y2, delta_rs(&(r + Q::one()), &s));
    }
}

#[test]
fn fusion_table_contents() {
    let t = fusion_table();
    assert_eq!(t.len(), 5);
    assert_eq!(hvir_fusion_minus_one(&qi(1), &qi(2)).unwrap(), HVirFusion::Zero);
    assert_eq!(hvir_fusion_minus_one(&qi(1), &qi(0)).unwrap(), HVirFusion::AllZeroCharge);
    assert_eq!(hvir_fusion_minus_one(&qi(3), &qi(2)).unwrap(), HVirFusion::Single(qi(2), qi(1)));
    assert_eq!(pi_fusion((1, q(1, 3)), (-1, q(1, 2))), (0, q(5, 6)));
}

#[test]
fn deformed_l0_empty_target() {
    // the top of P_1[3,2] on lines i >= 0 is killed by S
    let mut lm = LogModule::new(LogModuleSpec::p(qi(3), qi(2), 1).unwrap()).unwrap();
    let s = lm.map.source.spec.clone();
    let d = lm.deformed_l0(&s.line_weight(0), &s.line_charge(0)).unwrap();
    assert_eq!(d.nilpotent_rank(), 0);
    let d = lm.deformed_l0(&s.line_weight(-1), &s.line_charge(-1)).unwrap();
    assert_eq!(d.nilpotent_rank(), 1);
}

#[test]
fn incompatible_log_module_is_rejected() {
    let mut s = LogModuleSpec::p(qi(3), qi(2), 1).unwrap();
    s.lambda = q(1, 3);
    assert!(matches!(LogModule::new(s), Err(Error::Incompatible(_))));
}

fn certify(spec: LogModuleSpec) -> Certificate {
    let c = rank_two_certificate(&spec, 3, 2).unwrap();
    for ch in &c.checks {
        assert!(ch.pass, "{}: {} {}", spec.label(), ch.name, ch.detail);
    }
    c
}

#[test]
fn rank_two_p1_3_2() {
    let c = certify(LogModuleSpec::p(qi(3), qi(2), 1).unwrap());
    assert!(c.checks.iter().any(|k| k.name == "kernel_equals_socle"));
}

#[test]
fn rank_two_p1_0_0() {
    certify(LogModuleSpec::p(qi(0), qi(0), 1).unwrap());
}

#[test]
fn rank_two_p1_minus1_2() {
    certify(LogModuleSpec::p(qi(-1), qi(2), 1).unwrap());
}

#[test]
fn rank_two_p1_lambda() {
    for l in [q(1, 3), qi(0)] {
        let c = certify(LogModuleSpec::p_lambda(l));
        assert!(!c.nu.unwrap().is_zero());
    }
}

#[test]
fn x_two_is_flagged() {
    let c = rank_two_certificate(&LogModuleSpec::p(qi(2), qi(3), 1).unwrap(), 1, 1).unwrap();
    let l = c.checks.iter().find(|k| k.name == "layers").unwrap();
    assert_eq!(l.detail, "infinite-length sublayer, socle checks skipped");
    assert!(c.checks.iter().find(|k| k.name == "nilpotent_nonzero").unwrap().pass);
    let _ = Q::one();
}
