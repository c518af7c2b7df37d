//! Acceptance suite: one PASS/FAIL line per criterion, all asserted at the end.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::PI;
use std::time::Instant;

use hilbert_jackson::inequalities::{
    chernykh_check, chi_bound_check, functional_campaign, minimal_delta_scan, operator_campaign, v_hat_check,
    v_star_check, verify_operator_inequality, CampaignOptions, DiagonalOperatorPair,
};
use hilbert_jackson::kernel::{gamma_eval, script_g, GammaKernel};
use hilbert_jackson::moduli::{omega_2v, omega_pv, omega_sup};
use hilbert_jackson::sampling::{random_real, random_vector, trial_rng};
use hilbert_jackson::symbols::{binomial_difference, classical_symbol, generalized_difference};
use hilbert_jackson::weights::{named_weight, z_profile, NamedWeight, Weight};
use rand::Rng;

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn kernel(w: NamedWeight, m: u32) -> GammaKernel {
    GammaKernel::new(named_weight(w), classical_symbol(m).unwrap())
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn operator_inequality() -> Outcome {
    let mut worst_gap = f64::NEG_INFINITY;
    let mut worst_ratio: f64 = 0.0;
    for i in 0..1000 {
        let mut rng = trial_rng(SEED, i);
        let ops = DiagonalOperatorPair::random(&mut rng, 8);
        let x = random_vector(&mut rng, 8);
        let f = random_vector(&mut rng, 8);
        let r = verify_operator_inequality(&ops, &x, &f, 0.0).unwrap();
        worst_gap = worst_gap.max(r.lhs - r.rhs);
        if r.rhs > 0.0 {
            worst_ratio = worst_ratio.max(r.lhs / r.rhs);
        }
    }
    let (_, equality) = operator_campaign(1000, 8, SEED, 1e-12).unwrap();
    let dev: f64 = equality.grid_meta["max_ratio_deviation"].parse().unwrap();
    outcome(
        worst_gap <= 1e-12 && dev <= 1e-10,
        format!("1000 pairs: max lhs/rhs {worst_ratio:.6}, max(lhs - rhs) {worst_gap:.3e}; extremal |ratio - 1| = {dev:.3e}"),
    )
}

fn functional_inequality() -> Outcome {
    let (bound, equality) = functional_campaign(500, SEED, 1e-9).unwrap();
    let dev: f64 = equality.grid_meta["max_ratio_deviation"].parse().unwrap();
    outcome(
        bound.passed() && bound.ratio > 0.0 && dev <= 1e-9,
        format!(
            "500 pairs, max ratio {:.9}, extremal min ratio >= {:.12}",
            bound.ratio,
            1.0 - dev
        ),
    )
}

fn classical_constants() -> Outcome {
    let g1 = script_g(&kernel(NamedWeight::Chernykh1, 1), 1.0, PI, None)
        .unwrap()
        .value;
    let mut ok = (g1 - 2.0).abs() <= 1e-6;
    let mut detail = format!("G(chernykh1, 1, pi) = {g1:.12}");
    for m in [2u32, 3] {
        let g = script_g(&kernel(NamedWeight::Chernykh2, m), 1.0, 2.0 * PI, None)
            .unwrap()
            .value;
        ok &= g >= binomial(2 * m, m) - 1e-5;
        detail += &format!(", G(chernykh2, m={m}) = {g:.9}");
    }
    let opts = CampaignOptions::default();
    for (m, n) in [(1u32, 4u32), (2, 3), (3, 3)] {
        let r = chernykh_check(m, n, 500, SEED + m as u64, &opts).unwrap();
        ok &= r.passed();
        detail += &format!(
            "; m={m}: max E/(c w) = {:.6}, sharpness {}",
            r.ratio, r.grid_meta["sharpness_ratio"]
        );
    }
    outcome(ok, detail)
}

fn v_star_admissible() -> Outcome {
    let w = Weight::custom("z", vec![1.0 / 7.0, 5.0 / 7.0], z_profile).unwrap();
    let z_err = (w.raw_norm1() - 47.0 / 1029.0).abs();
    let r = v_star_check(&[1, 2, 3], 200, SEED, &CampaignOptions::default()).unwrap();
    let margins: Vec<String> = r
        .entries
        .iter()
        .map(|e| format!("m={}: {:.3e}", e.m, e.admissibility.margin))
        .collect();
    let ok = z_err <= 1e-14 && r.entries.iter().all(|e| e.admissibility.margin >= -1e-6) && r.passed;
    outcome(
        ok,
        format!("|Z|_1 error {z_err:.1e}; margins G - I: {}", margins.join(", ")),
    )
}

fn v_hat_admissible() -> Outcome {
    let r = v_hat_check(&[1, 2, 3], 200, SEED, &CampaignOptions::default()).unwrap();
    let mut ok = r.passed;
    let mut parts = Vec::new();
    for e in &r.entries {
        ok &= e.admissibility.margin >= -1e-6 && e.campaigns.iter().all(|c| c.passed());
        let worst = e.campaigns.iter().map(|c| c.ratio).fold(0.0, f64::max);
        parts.push(format!(
            "m={}: G/I = {:.4}, worst ratio {:.4}",
            e.m,
            e.admissibility.g.value / e.admissibility.mean_value,
            worst
        ));
    }
    outcome(
        ok,
        format!("p in {{2, 4, inf}}, 200 elements each; {}", parts.join("; ")),
    )
}

fn chi_bound() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2u32, 3] {
        for n in [2u32, 5] {
            let r = chi_bound_check(m, n, 200, SEED + (10 * m + n) as u64, 1e-9).unwrap();
            ok &= r.passed();
            parts.push(format!("m={m} n={n}: {:.6}", r.ratio));
        }
    }
    outcome(ok, format!("max E/(chi w) {}", parts.join(", ")))
}

fn minimal_delta() -> Outcome {
    let step = PI / 100.0;
    let grid: Vec<f64> = (1..=200).map(|k| k as f64 * step).collect();
    let r = minimal_delta_scan(2, 3, 500, SEED, &grid).unwrap();
    let observed = r
        .minimal_delta
        .map_or("none".to_string(), |d| format!("{:.4} = {:.2} pi", d, d / PI));
    outcome(
        r.consistent,
        format!("observed minimal delta {observed} (bound 1.4 pi)"),
    )
}

fn holder_chain() -> Outcome {
    let mut ok = true;
    let mut worst_gap: f64 = 0.0;
    let mut worst_limit: f64 = 0.0;
    for i in 0..200 {
        let mut rng = trial_rng(SEED + 8, i);
        let x = random_real(&mut rng, 12);
        let w = named_weight(if rng.gen_bool(0.5) {
            NamedWeight::Uniform
        } else {
            NamedWeight::VHat
        });
        let m = rng.gen_range(1..=3);
        let delta = rng.gen_range(0.05..2.0);
        let s = classical_symbol(m).unwrap();
        let k = GammaKernel::new(w.clone(), s.clone());
        let w2 = omega_2v(&x, &k, delta).unwrap();
        let w4 = omega_pv(&x, &s, &w, 4.0, delta).unwrap();
        let w64 = omega_pv(&x, &s, &w, 64.0, delta).unwrap();
        let ws = omega_sup(&x, &s, delta).value;
        let w1024 = omega_pv(&x, &s, &w, 1024.0, delta).unwrap();
        let tol = 1e-9 * ws;
        ok &= w2 <= w4 + tol && w4 <= w64 + tol && w64 <= ws + tol;
        worst_gap = worst_gap.max((w2 - w4).max(w4 - w64).max(w64 - ws) / ws);
        let limit = (w1024 - ws).abs() / ws;
        worst_limit = worst_limit.max(limit);
        ok &= limit <= 0.05;
    }
    outcome(
        ok,
        format!("largest relative chain violation {worst_gap:.2e}, max |w_1024 - w_sup|/w_sup = {worst_limit:.4}"),
    )
}

fn oracle_equivalences() -> Outcome {
    let mut pv_dev: f64 = 0.0;
    for i in 0..100 {
        let mut rng = trial_rng(SEED + 9, i);
        let x = random_real(&mut rng, 12);
        let w = NamedWeight::ALL[rng.gen_range(0..5)];
        let m = rng.gen_range(1..=3);
        let delta = rng.gen_range(0.05..2.0);
        let k = kernel(w, m);
        let a = omega_pv(&x, k.symbol(), k.weight(), 2.0, delta).unwrap();
        let b = omega_2v(&x, &k, delta).unwrap();
        pv_dev = pv_dev.max((a - b).abs());
    }
    let mut diff_dev: f64 = 0.0;
    for i in 0..100 {
        let mut rng = trial_rng(SEED + 10, i);
        let x = random_real(&mut rng, 12);
        let m = rng.gen_range(1..=4);
        let t = rng.gen_range(-5.0..5.0);
        let d = generalized_difference(&classical_symbol(m).unwrap(), &x, t).unwrap();
        diff_dev = diff_dev.max(d.max_deviation(&binomial_difference(m, &x, t)));
    }
    let ku = kernel(NamedWeight::Uniform, 1);
    let kv = kernel(NamedWeight::VHat, 1);
    let mut gamma_dev: f64 = 0.0;
    let mut rng = trial_rng(SEED + 11, 0);
    for _ in 0..100 {
        let t: f64 = rng.gen_range(-50.0..50.0);
        let u = 2.0 * (1.0 - t.sin() / t);
        let v = 2.0 - (2.0 / t) * (0.5 * (t / 2.0).sin() + 0.75 * t.sin());
        gamma_dev = gamma_dev
            .max((gamma_eval(&ku, t).unwrap() - u).abs())
            .max((gamma_eval(&kv, t).unwrap() - v).abs());
    }
    outcome(
        pv_dev <= 1e-8 && diff_dev <= 1e-12 && gamma_dev <= 1e-9,
        format!("p=2 route {pv_dev:.2e}, difference routes {diff_dev:.2e}, Gamma closed forms {gamma_dev:.2e}"),
    )
}

fn scaling_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut rng = trial_rng(SEED + 12, 0);
    for w in NamedWeight::ALL {
        for m in 1..=3 {
            let k = kernel(w, m);
            for _ in 0..3 {
                let gamma = rng.gen_range(PI / 2.0..2.0 * PI);
                let sigma = rng.gen_range(0.5..10.0);
                let a = script_g(&k, gamma / sigma, sigma, None).unwrap().value;
                let b = script_g(&k, 1.0, gamma, None).unwrap().value;
                worst = worst.max((a - b).abs());
                count += 1;
            }
        }
    }
    outcome(
        worst <= 1e-10,
        format!("{count} (kernel, gamma, sigma) triples, max deviation {worst:.2e}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("operator inequality and its extremal", operator_inequality),
        ("functional bound and its extremal", functional_inequality),
        (
            "constants 1/sqrt2 and C(2m,m)^(-1/2) with sharpness",
            classical_constants,
        ),
        ("V* admissibility at gamma = 7pi/5", v_star_admissible),
        ("V-hat admissibility and the (4/3)^(1/2) bound", v_hat_admissible),
        ("chi bound sqrt(m+1)/2^m", chi_bound),
        ("minimal delta scan", minimal_delta),
        ("Hoelder chain and the p -> inf limit", holder_chain),
        ("oracle equivalences", oracle_equivalences),
        ("scaling identity for G", scaling_identity),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {:>2} {name}: {} [{:.2}s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
