use relaxed_greedy::analysis::counterexample_instance;
use relaxed_greedy::engines::{self, optimal_gamma, AlgorithmConfig, Trace};
use relaxed_greedy::experiment::canonical_instance;
use relaxed_greedy::hilbert::{self, Vector};
use relaxed_greedy::instances::trial_instance;
use relaxed_greedy::Dictionary;

fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

/// `‖r - γ d‖²` evaluated directly, coordinate by coordinate.
fn phi(r: &[f64], d: &[f64], gamma: f64) -> f64 {
    r.iter()
        .zip(d)
        .map(|(ri, di)| (ri - gamma * di).powi(2))
        .sum()
}

/// Grid minimizer of `phi` over `[0, 1]` with the given step.
fn grid_argmin(r: &[f64], d: &[f64], step: f64) -> (f64, f64) {
    let n = (1.0 / step).round() as usize;
    (0..=n)
        .map(|i| {
            let g = i as f64 / n as f64;
            (g, phi(r, d, g))
        })
        .fold((0.0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        })
}

#[test]
fn crga_two_steps_against_grid_search() {
    let d = Dictionary::canonical(2).unwrap();
    let f = v(&[0.6, 0.4]);
    let t = engines::run_crga(&f, &d, &AlgorithmConfig::crga(2)).unwrap();

    // step 1: r_0 = f, g_1 = e_1, d_1 = e_1
    let (g1, _) = grid_argmin(&[0.6, 0.4], &[1.0, 0.0], 1e-5);
    assert!((t.records[0].step - g1).abs() <= 1e-5);
    assert!((t.records[0].step - 0.6).abs() < 1e-15);

    // step 2: r_1 = (0, 0.4), g_2 = e_2, d_2 = e_2 - (0.6, 0)
    let (g2, _) = grid_argmin(&[0.0, 0.4], &[-0.6, 1.0], 1e-5);
    assert!((t.records[1].step - g2).abs() <= 1e-5);
    assert!((t.records[1].step - 0.294_117_6).abs() < 1e-7);

    let a = t.final_approx.coords();
    assert!((a[0] - 0.423_529_4).abs() < 1e-7);
    assert!((a[1] - 0.294_117_6).abs() < 1e-7);
    let r = hilbert::sub(&f, &t.final_approx).unwrap();
    assert!((r[0] - 0.176_470_6).abs() < 1e-7);
    assert!((r[1] - 0.105_882_4).abs() < 1e-7);
    // ‖(0.1764706, 0.1058824)‖
    assert!((t.records[1].residual_l2 - 0.205_798_3).abs() < 1e-7);
}

#[test]
fn telescoping_product_oracle() {
    // direct product, independent of the log-accumulating implementation
    let direct: f64 = (2..=500).map(|k| 1.0 - 1.0 / (k * k) as f64).product();
    assert!((direct - 501.0 / 1000.0).abs() < 1e-14);
}

#[test]
fn prga_alpha_two_stalls_at_closed_form() {
    let (d, f) = canonical_instance(&[0.5, 0.5]).unwrap();
    let t = engines::run_prga(f.vector(), &d, &AlgorithmConfig::prga(2.0, 500)).unwrap();
    assert_eq!(t.records.len(), 500);
    let err = t.last().unwrap().residual_l2;
    assert!((err - 0.177_130).abs() < 1e-4);
    let closed_form = 0.5 * (501.0 / 1000.0) / 2f64.sqrt();
    assert!((err - closed_form).abs() < 1e-6, "{err} vs {closed_form}");
}

fn assert_consistent(f: &Vector, dict: &Dictionary, t: &Trace) {
    let replayed = engines::replay(t, dict).unwrap();
    assert_eq!(
        replayed, t.final_approx,
        "replay differs for {:?}",
        t.config.kind
    );
    let r = hilbert::sub(f, &t.final_approx).unwrap();
    let back = hilbert::combine(1.0, &t.final_approx, 1.0, &r).unwrap();
    for (a, b) in back.coords().iter().zip(f.coords()) {
        assert!((a - b).abs() <= 1e-10);
    }
    for w in t.records.windows(2) {
        assert_eq!(w[1].m, w[0].m + 1);
    }
}

#[test]
fn every_engine_reconstructs_f_and_replays() {
    for trial in 0..12 {
        let inst = trial_instance(3, trial).unwrap();
        let f = inst.element.vector();
        for cfg in [
            AlgorithmConfig::pga(60),
            AlgorithmConfig::rga(60),
            AlgorithmConfig::prga(0.5, 60),
            AlgorithmConfig::prga(2.0, 60),
            AlgorithmConfig::crga(60),
        ] {
            let t = engines::run(f, &inst.dict, &cfg).unwrap();
            assert_consistent(f, &inst.dict, &t);
        }
    }
}

#[test]
fn crga_line_search_invariants() {
    for trial in 0..20 {
        let inst = trial_instance(11, trial).unwrap();
        let f = inst.element.vector();
        let t = engines::run_crga(f, &inst.dict, &AlgorithmConfig::crga(150)).unwrap();

        let mut prev = hilbert::norm_l2(f);
        for (rec, ls) in t.records.iter().zip(&t.line_search) {
            assert!((0.0..=1.0).contains(&rec.step));
            assert!(rec.residual_l2 <= prev + 1e-12, "trial {trial} m {}", rec.m);
            prev = rec.residual_l2;
            // gap inequality ⟨r_{m-1}, d_m⟩ ≥ ‖r_{m-1}‖²
            assert!(ls.gap >= ls.phi_at_zero - 1e-10);
            assert!(ls.direction_norm <= 2.0 + 1e-12);
            assert!(rec.residual_squared <= ls.phi_at_zero + 1e-15);
            assert!(rec.residual_squared <= ls.phi_at_one + 1e-15);
            assert!(ls.min_weight >= -1e-15);
            assert!(ls.weight_sum <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn crga_step_beats_coarse_grid() {
    for trial in 0..8 {
        let inst = trial_instance(5, trial).unwrap();
        let f = inst.element.vector();
        let mut approx = Vector::zeros(f.dim()).unwrap();
        let t = engines::run_crga(f, &inst.dict, &AlgorithmConfig::crga(40)).unwrap();
        for rec in &t.records {
            let r = hilbert::sub(f, &approx).unwrap();
            let g = inst
                .dict
                .signed_atom(rec.atom.index, rec.atom.sign)
                .unwrap();
            let d = hilbert::sub(&g, &approx).unwrap();
            let (_, grid_min) = grid_argmin(r.coords(), d.coords(), 1e-3);
            assert!(phi(r.coords(), d.coords(), rec.step) <= grid_min + 1e-9);
            assert_eq!(optimal_gamma(&r, &d).unwrap(), rec.step);
            approx = hilbert::combine(1.0 - rec.step, &approx, rec.step, &g).unwrap();
        }
    }
}

#[test]
fn prga_l1_floor_on_counterexample() {
    for &b in &[0.1, 0.25, 0.4] {
        for &alpha in &[1.1, 1.5, 2.0, 3.0] {
            let (d, f) = counterexample_instance(b).unwrap();
            let t = engines::run_prga(f.vector(), &d, &AlgorithmConfig::prga(alpha, 2000)).unwrap();
            let mut product = 1.0;
            for rec in &t.records {
                if rec.m >= 2 {
                    product *= 1.0 - (rec.m as f64).powf(-alpha);
                }
                assert!(
                    1.0 - rec.approx_l1 >= b * product - 1e-12,
                    "b={b} alpha={alpha} m={}",
                    rec.m
                );
            }
        }
    }
}

#[test]
fn rga_rate_on_counterexample_point() {
    let d = Dictionary::canonical(2).unwrap();
    let f = v(&[0.6, 0.4]);
    let t = engines::run_rga(&f, &d, &AlgorithmConfig::rga(200)).unwrap();
    for rec in &t.records {
        assert!(rec.residual_l2 <= 2.0 / (rec.m as f64).sqrt());
    }
}

#[test]
fn pga_recovers_orthonormal_expansions() {
    let d = Dictionary::canonical(5).unwrap();
    let f = v(&[0.1, -0.3, 0.05, 0.2, -0.15]);
    let t = engines::run_pga(&f, &d, &AlgorithmConfig::pga(10)).unwrap();
    assert!(t.terminated_early);
    assert_eq!(t.records.len(), 5);
    let order: Vec<usize> = t.records.iter().map(|r| r.atom.index).collect();
    assert_eq!(order, vec![1, 3, 4, 0, 2]);
    assert_eq!(t.final_approx, f);
}
