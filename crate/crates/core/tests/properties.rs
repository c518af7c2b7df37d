use hilbert_jackson::kernel::GammaKernel;
use hilbert_jackson::moduli::{omega_2v, omega_pv, omega_sup};
use hilbert_jackson::spectral::{
    apply_linear_method, apply_multiplier, best_approx_error, project, translate, LinearMethod, Multiplier,
};
use hilbert_jackson::symbols::classical_symbol;
use hilbert_jackson::weights::{named_weight, NamedWeight};
use hilbert_jackson::SpectralElement;
use num_complex::Complex64;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = SpectralElement> {
    prop::collection::vec((-30.0f64..30.0, -5.0f64..5.0, -5.0f64..5.0), 0..12).prop_map(|atoms| {
        SpectralElement::new(atoms.into_iter().map(|(f, re, im)| (f, Complex64::new(re, im)))).unwrap()
    })
}

fn weight() -> impl Strategy<Value = NamedWeight> {
    prop::sample::select(NamedWeight::ALL.to_vec())
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval_split(x in element(), sigma in 0.1f64..40.0) {
        let p = project(&x, sigma);
        let e = best_approx_error(&x, sigma);
        prop_assert!(close(x.norm_sqr(), p.norm_sqr() + e * e, 1e-12));
    }

    #[test]
    fn translations_are_unitary_and_compose(x in element(), s in -10.0f64..10.0, t in -10.0f64..10.0) {
        prop_assert!(close(translate(&x, t).norm(), x.norm(), 1e-13));
        let two = translate(&translate(&x, s), t);
        prop_assert!(two.max_deviation(&translate(&x, s + t)) <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn multipliers_compose(x in element(), a in -2.0f64..2.0) {
        let f = Multiplier::new("f", move |t| Complex64::new(1.0 + a * t, t.sin()));
        let g = Multiplier::translation(a);
        let lhs = apply_multiplier(&f.product(&g), &x).unwrap();
        let rhs = apply_multiplier(&f, &apply_multiplier(&g, &x).unwrap()).unwrap();
        prop_assert!(lhs.max_deviation(&rhs) <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn linear_method_reconstructs(x in element(), sigma in 1.0f64..20.0, frac in 0.1f64..0.9) {
        let m = LinearMethod::plateau(sigma, sigma * frac).unwrap();
        let (approx, residual) = apply_linear_method(&m, &x);
        prop_assert!(approx.add(&residual).max_deviation(&x) <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn moduli_are_homogeneous(x in element(), c in 0.1f64..10.0, delta in 0.01f64..2.0, w in weight(), m in 1u32..4) {
        let k = GammaKernel::new(named_weight(w), classical_symbol(m).unwrap());
        let cx = x.scale(Complex64::new(0.0, c));
        prop_assert!(close(omega_2v(&cx, &k, delta).unwrap(), c * omega_2v(&x, &k, delta).unwrap(), 1e-10));
        prop_assert!(close(omega_sup(&cx, k.symbol(), delta).value, c * omega_sup(&x, k.symbol(), delta).value, 1e-10));
    }

    #[test]
    fn sup_modulus_is_monotone(x in element(), d1 in 0.0f64..2.0, d2 in 0.0f64..2.0, m in 1u32..4) {
        let s = classical_symbol(m).unwrap();
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(omega_sup(&x, &s, lo).value <= omega_sup(&x, &s, hi).value * (1.0 + 1e-12));
    }

    #[test]
    fn gamma_is_even_and_bounded(t in -200.0f64..200.0, w in weight(), m in 1u32..4) {
        let k = GammaKernel::new(named_weight(w), classical_symbol(m).unwrap());
        let g = k.gamma(t).unwrap();
        prop_assert!(close(g, k.gamma(-t).unwrap(), 1e-12));
        prop_assert!(g >= -1e-12 && g <= 4f64.powi(m as i32) + 1e-9);
    }

    #[test]
    fn holder_chain(x in element(), delta in 0.05f64..1.5, w in prop::sample::select(vec![NamedWeight::Uniform, NamedWeight::VHat])) {
        let s = classical_symbol(1).unwrap();
        let k = GammaKernel::new(named_weight(w), s.clone());
        let w2 = omega_2v(&x, &k, delta).unwrap();
        let w4 = omega_pv(&x, &s, k.weight(), 4.0, delta).unwrap();
        let ws = omega_sup(&x, &s, delta).value;
        let tol = 1e-9 * (1.0 + ws);
        prop_assert!(w2 <= w4 + tol && w4 <= ws + tol);
    }
}
