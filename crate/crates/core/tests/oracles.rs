//! Frozen reference values from independent oracles: exact rational
//! integration, closed-form antiderivatives and single-atom algebra.

use std::f64::consts::PI;

use hilbert_jackson::inequalities::sharpness_search;
use hilbert_jackson::kernel::{check_weight_admissibility, gamma_eval, script_g, script_h, GammaKernel};
use hilbert_jackson::moduli::{omega_2v, omega_pv, omega_sup};
use hilbert_jackson::runner::emit_gamma_profile;
use hilbert_jackson::symbols::{classical_symbol, is_in_psi, mean_value};
use hilbert_jackson::weights::{named_weight, z_profile, NamedWeight, Weight, Z_NORM};
use hilbert_jackson::SpectralElement;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal exact rational arithmetic for the piecewise integral of `Z`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Q(i128, i128);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Q {
    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d) * d.signum();
        Q(n / g, d / g)
    }
    fn add(self, o: Q) -> Q {
        Q::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    fn sub(self, o: Q) -> Q {
        self.add(Q(-o.0, o.1))
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.0 * o.0, self.1 * o.1)
    }
}

/// `∫_a^b (c0 + c1 s + c2 s²) ds` exactly.
fn poly_integral(c: [Q; 3], a: Q, b: Q) -> Q {
    let anti = |s: Q| {
        let s2 = s.mul(s);
        c[0].mul(s)
            .add(c[1].mul(s2).mul(Q(1, 2)))
            .add(c[2].mul(s2.mul(s)).mul(Q(1, 3)))
    };
    anti(b).sub(anti(a))
}

#[test]
fn z_norm_exact_rational() {
    let pieces = [
        ([Q(0, 1), Q(2, 7), Q(0, 1)], Q(0, 1), Q(1, 7)),
        ([Q(-1, 98), Q(3, 7), Q(-1, 2)], Q(1, 7), Q(5, 7)),
        ([Q(1, 2), Q(-1, 1), Q(1, 2)], Q(5, 7), Q(1, 1)),
    ];
    let total = pieces
        .iter()
        .fold(Q(0, 1), |acc, (c, a, b)| acc.add(poly_integral(*c, *a, *b)));
    assert_eq!(total, Q(47, 1029));
    assert!((Z_NORM - 47.0 / 1029.0).abs() <= 1e-14);
    // quadrature of the profile itself agrees with the exact value
    let w = Weight::custom("z", vec![1.0 / 7.0, 5.0 / 7.0], z_profile).unwrap();
    assert!((w.raw_norm1() - 47.0 / 1029.0).abs() <= 1e-14, "{}", w.raw_norm1());
    // continuity at the breakpoints
    for s in [1.0 / 7.0, 5.0 / 7.0] {
        assert!((z_profile(s - 1e-13) - z_profile(s + 1e-13)).abs() < 1e-12);
    }
}

#[test]
fn weight_values() {
    let v = named_weight(NamedWeight::VHat);
    assert_eq!(v.eval(0.25), 1.25);
    assert_eq!(v.eval(0.75), 0.75);
    assert!((v.integral().unwrap() - 1.0).abs() < 1e-12);
    let c = named_weight(NamedWeight::Chernykh1);
    assert!((c.eval(0.5) - PI / 2.0).abs() < 1e-15);
    for w in NamedWeight::ALL {
        let w = named_weight(w);
        assert!((w.integral().unwrap() - 1.0).abs() < 1e-11, "{}", w.label());
        assert!(w.grid_min() >= 0.0);
    }
}

fn kernel(w: NamedWeight, m: u32) -> GammaKernel {
    GammaKernel::new(named_weight(w), classical_symbol(m).unwrap())
}

fn gamma_uniform_1(t: f64) -> f64 {
    2.0 * (1.0 - t.sin() / t)
}

/// `∫₀¹ V̂(s)(2 - 2cos ts) ds` with `V̂ = 5/4` on `[0, 1/2]`, `3/4` after.
fn gamma_vhat_1(t: f64) -> f64 {
    2.0 - (2.0 / t) * (0.5 * (t / 2.0).sin() + 0.75 * t.sin())
}

#[test]
fn gamma_closed_forms_at_random_points() {
    let ku = kernel(NamedWeight::Uniform, 1);
    let kv = kernel(NamedWeight::VHat, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..100 {
        let t: f64 = rng.gen_range(-60.0..60.0);
        assert!(
            (gamma_eval(&ku, t).unwrap() - gamma_uniform_1(t)).abs() <= 1e-9,
            "t = {t}"
        );
        assert!((gamma_eval(&kv, t).unwrap() - gamma_vhat_1(t)).abs() <= 1e-9, "t = {t}");
    }
}

#[test]
fn gamma_special_values() {
    assert!((gamma_eval(&kernel(NamedWeight::Uniform, 1), PI).unwrap() - 2.0).abs() < 1e-12);
    // (π/2)∫₀¹ sin πs (2 - 2cos πs) ds = 2
    assert!((gamma_eval(&kernel(NamedWeight::Chernykh1, 1), PI).unwrap() - 2.0).abs() < 1e-12);
    for w in NamedWeight::ALL {
        for m in 1..=3 {
            assert_eq!(gamma_eval(&kernel(w, m), 0.0).unwrap(), 0.0);
        }
    }
}

#[test]
fn mean_values_are_central_binomials() {
    let expected = [2.0, 6.0, 20.0, 70.0, 252.0];
    for (i, e) in expected.iter().enumerate() {
        let v = mean_value(&classical_symbol(i as u32 + 1).unwrap()).unwrap();
        assert!((v - e).abs() <= 1e-9 * e, "m = {}: {v}", i + 1);
    }
}

#[test]
fn classical_symbols_belong_to_psi() {
    for m in [1, 3] {
        assert!(is_in_psi(&classical_symbol(m).unwrap(), 1024).unwrap().member);
    }
}

#[test]
fn h_is_zero_at_origin() {
    let h = script_h(&kernel(NamedWeight::Uniform, 1), 1.0, PI).unwrap();
    assert_eq!(h.value, 0.0);
    assert_eq!(h.arg, 0.0);
}

#[test]
fn g_window_values() {
    let g = script_g(&kernel(NamedWeight::Chernykh1, 1), 1.0, PI, None).unwrap();
    assert!((g.value - 2.0).abs() <= 1e-6, "{}", g.value);
    let g = script_g(&kernel(NamedWeight::VHat, 1), 1.0, PI, None).unwrap();
    assert!(g.value >= 1.5, "{}", g.value);
    for m in [2u32, 3] {
        let c = [6.0, 20.0][m as usize - 2];
        let g = script_g(&kernel(NamedWeight::Chernykh2, m), 1.0, 2.0 * PI, None).unwrap();
        assert!(g.value >= c - 1e-5 && g.value <= c + 1e-2, "m = {m}: {}", g.value);
    }
}

#[test]
fn admissibility_margins() {
    for m in [1, 2] {
        let a = check_weight_admissibility(&kernel(NamedWeight::VStar, m), 7.0 * PI / 5.0).unwrap();
        assert!(a.certified && a.margin >= -1e-6, "m = {m}: {}", a.margin);
    }
    // 2(1 - sin u/u) at u = π/2 is 2 - 4/π < 2
    let a = check_weight_admissibility(&kernel(NamedWeight::Uniform, 1), PI / 2.0).unwrap();
    assert!((a.g.value - (2.0 - 4.0 / PI)).abs() < 1e-9);
    assert!(!a.certified);
}

fn atom(freq: f64) -> SpectralElement {
    SpectralElement::new([(freq, Complex64::new(1.0, 0.0))]).unwrap()
}

#[test]
fn single_atom_moduli() {
    let s1 = classical_symbol(1).unwrap();
    assert!((omega_sup(&atom(1.0), &s1, PI).value - 2.0).abs() < 1e-12);
    for n in [2.0, 5.0, 9.0] {
        assert!((omega_sup(&atom(n), &s1, PI / n).value - 2.0).abs() < 1e-12);
    }
    let ku = kernel(NamedWeight::Uniform, 1);
    let r2 = 2f64.sqrt();
    assert!((omega_2v(&atom(1.0), &ku, PI).unwrap() - r2).abs() < 1e-10);
    assert!((omega_pv(&atom(1.0), &s1, ku.weight(), 2.0, PI).unwrap() - r2).abs() < 1e-8);
}

#[test]
fn sharpness_ratios() {
    for (w, m) in [(NamedWeight::Chernykh1, 1), (NamedWeight::VHat, 2)] {
        let k = kernel(w, m);
        let sigma = 3.0;
        let r = sharpness_search(sigma, &k, PI / sigma, None, 1e-9).unwrap();
        assert!(r.ratio >= 1.0 - 1e-6 && r.passed(), "{}: {}", k.label(), r.ratio);
        let defect: f64 = r.grid_meta["single_atom_identity_defect"].parse().unwrap();
        assert!(defect <= 1e-9);
    }
}

#[test]
fn gamma_profile_matches_closed_form() {
    let text = emit_gamma_profile(&kernel(NamedWeight::Uniform, 1), 0.0, 10.0 * PI, 1000, None).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 1000);
    assert_eq!(rows[0], (0.0, 0.0));
    for (t, g) in &rows[1..] {
        assert!((g - gamma_uniform_1(*t)).abs() <= 1e-9, "t = {t}");
    }
    let header = emit_gamma_profile(&kernel(NamedWeight::Uniform, 2), 0.0, 1.0, 2, None).unwrap();
    let mean: f64 = header
        .lines()
        .find_map(|l| l.strip_prefix("# mean_value: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((mean - 6.0).abs() < 1e-9);
}
