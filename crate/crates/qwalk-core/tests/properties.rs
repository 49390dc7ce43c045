//! Randomized invariant checks that cut across modules: parametrization
//! round-trips, symbol eigen quality, arc membership, Mourre positivity,
//! unitary evolution with an exact light cone, agreement with a dense ring
//! oracle, and config serialization.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qwalk_core::angle::circ_dist;
use qwalk_core::coin::{
    parametrize, reconstruct, split_step_profile, two_phase, CoinField, CoinMatrix, CoinParams,
};
use qwalk_core::config::CoinConfig;
use qwalk_core::finite::{build_ring, eig, multiset_circular_dist};
use qwalk_core::lattice::{evolve, join, split, WalkState};
use qwalk_core::mat2::{vec2_dot, vec2_norm};
use qwalk_core::spectra::{
    arcs, contains, essential_spectrum, gaps, mourre_lower_bound, rho_tilde_asymptotic, thresholds,
    RhoValue,
};
use qwalk_core::symbol::{eigenpairs, symbol_at, velocity};
use std::f64::consts::{PI, TAU};

fn arb_mid_params() -> impl Strategy<Value = CoinParams> {
    (0.01f64..0.99, -3.1f64..3.1, -3.1f64..3.1, -3.1f64..3.1)
        .prop_map(|(a, al, be, de)| CoinParams::from_a(a, al, be, de).unwrap())
}

fn arb_coin() -> impl Strategy<Value = CoinMatrix> {
    arb_mid_params().prop_map(|p| reconstruct(&p).unwrap())
}

fn arb_field() -> impl Strategy<Value = CoinField> {
    prop_oneof![
        arb_coin().prop_map(CoinField::constant),
        (-3.0f64..3.0, -3.0f64..3.0, any::<bool>())
            .prop_map(|(sp, sm, d)| two_phase(sp, sm, d)),
        (-1.2f64..1.2, -1.2f64..1.2, 0.5f64..4.0)
            .prop_map(|(tm, tp, s)| split_step_profile(tm, tp, s).unwrap()),
    ]
}

fn arb_state() -> impl Strategy<Value = WalkState> {
    (
        -8i64..8,
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 1..8),
    )
        .prop_map(|(x0, cells)| {
            let sites = cells.iter().enumerate().map(|(i, &(a, b, c, d))| {
                (x0 + i as i64, [C64::new(a, b), C64::new(c, d)])
            });
            let mut s = WalkState::from_sites(sites);
            if s.norm_sq() == 0.0 {
                s = WalkState::delta(x0, [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
            }
            s
        })
}

proptest! {
    #[test]
    fn params_roundtrip_through_matrix(p in arb_mid_params()) {
        let q = parametrize(&reconstruct(&p).unwrap());
        prop_assert!((q.a - p.a).abs() <= 1e-14);
        prop_assert!((q.b - p.b).abs() <= 1e-14);
        prop_assert!(circ_dist(q.alpha, p.alpha) <= 1e-12);
        prop_assert!(circ_dist(q.beta, p.beta) <= 1e-12);
        prop_assert!(circ_dist(q.delta, p.delta) <= 1e-12);
    }

    #[test]
    fn matrix_roundtrip_through_params(c in arb_coin()) {
        let again = reconstruct(&parametrize(&c)).unwrap();
        prop_assert!(c.mat().max_abs_diff(&again.mat()) <= 1e-12);
        prop_assert!(c.mat().unitarity_defect() <= 1e-14);
    }

    #[test]
    fn symbol_eigen_quality(p in arb_mid_params(), k in 0.0f64..TAU) {
        let e = eigenpairs(&p, k);
        let u_hat = symbol_at(&p, k);
        for j in 0..2 {
            prop_assert!((e.lambda[j].norm() - 1.0).abs() <= 1e-13);
            prop_assert!((vec2_norm(e.u[j]) - 1.0).abs() <= 1e-13);
            let r = u_hat.mul_vec(e.u[j]);
            let d = [r[0] - e.lambda[j] * e.u[j][0], r[1] - e.lambda[j] * e.u[j][1]];
            prop_assert!(vec2_norm(d) <= 1e-12, "residual {} on branch {}", vec2_norm(d), j + 1);
        }
        prop_assert!(vec2_dot(e.u[0], e.u[1]).norm() <= 1e-12);
        let det = e.lambda[0] * e.lambda[1];
        prop_assert!((det - C64::from_polar(1.0, p.delta)).norm() <= 1e-12);
    }

    #[test]
    fn velocity_matches_finite_difference(p in arb_mid_params(), k in 0.0f64..TAU) {
        let h = 1e-5;
        for j in [1usize, 2] {
            let lp = eigenpairs(&p, k + h).lambda[j - 1];
            let lm = eigenpairs(&p, k - h).lambda[j - 1];
            let fd = -(lp * lm.conj()).arg() / (2.0 * h);
            prop_assert!(
                (velocity(&p, k, j) - fd).abs() <= 1e-6,
                "branch {} closed form {} vs fd {}", j, velocity(&p, k, j), fd
            );
        }
    }

    #[test]
    fn membership_matches_cosine_bound(p in arb_mid_params(), gamma in 0.0f64..TAU) {
        let margin = (gamma - 0.5 * p.delta).cos().abs() - p.a;
        if margin.abs() > 1e-9 {
            let inside = contains(&arcs(&p), gamma);
            prop_assert_eq!(inside, margin <= 0.0, "margin {}", margin);
        }
    }

    #[test]
    fn arcs_structure(p in arb_mid_params()) {
        let s = arcs(&p);
        prop_assert_eq!(s.arcs.len(), 2);
        prop_assert!(s.points.is_empty());
        let expect = 2.0 * (PI - 2.0 * p.theta_star());
        prop_assert!((s.total_length() - expect).abs() <= 1e-12);
        for arc in &s.arcs {
            prop_assert!((0.0..TAU).contains(&arc.start));
            prop_assert!(arc.len > 0.0 && arc.len < TAU);
        }
        let g = gaps(&s);
        prop_assert!((s.total_length() + g.total_length() - TAU).abs() <= 1e-12);
    }

    #[test]
    fn thresholds_are_arc_endpoints(l in arb_mid_params(), r in arb_mid_params()) {
        let tau = thresholds(&l, &r);
        prop_assert!(tau.points.len() <= 8);
        let mut endpoints = Vec::new();
        for p in [&l, &r] {
            for arc in arcs(p).arcs {
                endpoints.push(arc.start);
                endpoints.push(arc.start + arc.len);
            }
        }
        for t in &tau.points {
            let d = endpoints
                .iter()
                .map(|&e| circ_dist(t.angle, e))
                .fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-10, "threshold {} is {} away from any endpoint", t.angle, d);
        }
        for pair in tau.points.windows(2) {
            prop_assert!(pair[0].angle < pair[1].angle);
        }
    }

    #[test]
    fn rho_tilde_cases(p in arb_mid_params(), t in 0.02f64..0.98) {
        for arc in arcs(&p).arcs {
            for endpoint in [arc.start, arc.start + arc.len] {
                prop_assert_eq!(rho_tilde_asymptotic(&p, endpoint), RhoValue::Finite(0.0));
            }
            match rho_tilde_asymptotic(&p, arc.start + t * arc.len) {
                RhoValue::Finite(v) => prop_assert!(v > 0.0, "interior value {}", v),
                RhoValue::Infinite => prop_assert!(false, "interior point reported off-spectrum"),
            }
        }
        for gap in gaps(&arcs(&p)).arcs {
            let mid = gap.start + 0.5 * gap.len;
            prop_assert_eq!(rho_tilde_asymptotic(&p, mid), RhoValue::Infinite);
        }
    }

    #[test]
    fn mourre_bound_is_min_of_sides(
        l in arb_mid_params(),
        r in arb_mid_params(),
        theta in 0.0f64..TAU,
    ) {
        let bound = mourre_lower_bound(&l, &r, theta);
        let expect = rho_tilde_asymptotic(&l, theta).min(rho_tilde_asymptotic(&r, theta));
        prop_assert_eq!(bound, expect);
        if contains(&essential_spectrum(&l, &r), theta) {
            if let RhoValue::Finite(v) = bound {
                prop_assert!(v >= 0.0);
            } else {
                prop_assert!(false, "finite bound expected inside the essential spectrum");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_preserves_norm_and_light_cone(
        f in arb_field(),
        s in arb_state(),
        t in 0usize..40,
    ) {
        let (lo, hi) = s.support().unwrap();
        let out = evolve(&f, &s, t);
        prop_assert!((out.norm() - s.norm()).abs() <= 1e-12 * (t as f64 + 1.0));
        if let Some((olo, ohi)) = out.support() {
            prop_assert!(olo >= lo - t as i64 && ohi <= hi + t as i64);
        }
        prop_assert_eq!(out.amp(lo - t as i64 - 1), [C64::new(0.0, 0.0); 2]);
        prop_assert_eq!(out.amp(hi + t as i64 + 1), [C64::new(0.0, 0.0); 2]);
    }

    #[test]
    fn evolve_matches_dense_ring_oracle(
        f in arb_field(),
        s in arb_state(),
        t in 0usize..8,
    ) {
        let n = 64usize;
        let ring = build_ring(&f, n).unwrap();
        let mut v = vec![C64::new(0.0, 0.0); 2 * n];
        for (x, amp) in s.iter() {
            let col = 2 * (x + n as i64 / 2) as usize;
            v[col] = amp[0];
            v[col + 1] = amp[1];
        }
        for _ in 0..t {
            v = ring.apply(&v);
        }
        let out = evolve(&f, &s, t);
        for i in 0..n {
            let x = i as i64 - n as i64 / 2;
            let amp = out.amp(x);
            prop_assert!((amp[0] - v[2 * i]).norm() <= 1e-12);
            prop_assert!((amp[1] - v[2 * i + 1]).norm() <= 1e-12);
        }
    }

    #[test]
    fn join_split_identities(l in arb_state(), r in arb_state()) {
        let (a, b) = split(&l);
        prop_assert_eq!(join(&a, &b).sub(&l).norm_sq(), 0.0);
        let glued = join(&l, &r);
        let (gl, gr) = split(&glued);
        prop_assert_eq!(gl.sub(&split(&l).0).norm_sq(), 0.0);
        prop_assert_eq!(gr.sub(&split(&r).1).norm_sq(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constant_ring_matches_symbol_samples(c in arb_coin(), half in 4usize..9) {
        let n = 2 * half;
        let reports = eig(&build_ring(&CoinField::constant(c), n).unwrap()).unwrap();
        let ring_phases: Vec<f64> = reports.iter().map(|r| r.phase).collect();
        let p = parametrize(&c);
        let mut expected = Vec::with_capacity(2 * n);
        for m in 0..n {
            let k = TAU * m as f64 / n as f64;
            let e = eigenpairs(&p, k);
            expected.push(e.lambda[0].arg());
            expected.push(e.lambda[1].arg());
        }
        prop_assert!(multiset_circular_dist(&ring_phases, &expected) <= 1e-9);
    }

    #[test]
    fn config_json_roundtrip(cfg in arb_config()) {
        let json = cfg.to_json();
        let back = CoinConfig::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert!(back.build().is_ok());
    }
}

fn arb_config() -> impl Strategy<Value = CoinConfig> {
    prop_oneof![
        (-3.0f64..3.0, -3.0f64..3.0, any::<bool>()).prop_map(|(sp, sm, d)| {
            CoinConfig::from_value(&serde_json::json!({
                "family": "two_phase",
                "sigma_plus": sp,
                "sigma_minus": sm,
                "defect": d,
            }))
            .unwrap()
        }),
        (-1.2f64..1.2, -1.2f64..1.2, 0.5f64..4.0).prop_map(|(tm, tp, s)| {
            CoinConfig::from_value(&serde_json::json!({
                "family": "split_step",
                "theta_minus": tm,
                "theta_plus": tp,
                "scale": s,
            }))
            .unwrap()
        }),
        (0.05f64..0.95, -3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, al, be, de)| {
            CoinConfig::from_value(&serde_json::json!({
                "family": "constant",
                "params": [a, al, be, de],
            }))
            .unwrap()
        }),
    ]
}
