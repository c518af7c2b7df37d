//! Jackson–Stechkin bounds in `H`:
//!
//! * `‖x - Λx‖² ≤ max{ sup_{|t|<σ} |θ(t)|²/Γ(V; δt), 1/𝓖(V, δ, σ) } · ω_φ(x; L_{2,V}([0, δ]))²`
//! * `E_σ(x) ≤ 𝓖(V, δ, σ)^{-1/2} · ω_φ(x; L_{p,V}([0, δ]))`, `2 ≤ p ≤ ∞`.
//!
//! `𝓖` is always the window estimate from [`script_g`].

use super::report::{InequalityReport, Verdict};
use crate::error::{Error, Result};
use crate::kernel::{residual_branch_sup, script_g, GWindow, GammaKernel};
use crate::moduli::{omega_2v, omega_pv, omega_sup};
use crate::spectral::LinearMethod;
use crate::spectral::{apply_linear_method, best_approx_error, SpectralElement};

/// Certifies the norm bound for a linear method.
pub fn norm_bound(
    x: &SpectralElement,
    method: &LinearMethod,
    k: &GammaKernel,
    delta: f64,
    t_max: Option<f64>,
    slack: f64,
) -> Result<InequalityReport> {
    let sigma = method.sigma();
    let g = script_g(k, delta, sigma, t_max)?;
    let (h_branch, h_arg) = if method.is_projection() {
        (0.0, f64::NAN)
    } else {
        let e = residual_branch_sup(k, delta, method.epsilon(), sigma, |t| method.theta(t).norm_sqr())?;
        (e.value, e.arg)
    };
    norm_bound_with(x, method, k, delta, &g, (h_branch, h_arg), slack)
}

/// [`norm_bound`] with the two branch constants precomputed.
pub fn norm_bound_with(
    x: &SpectralElement,
    method: &LinearMethod,
    k: &GammaKernel,
    delta: f64,
    g: &GWindow,
    h_branch: (f64, f64),
    slack: f64,
) -> Result<InequalityReport> {
    let (_, residual) = apply_linear_method(method, x);
    let lhs = residual.norm_sqr();
    let g_branch = 1.0 / g.value;
    let constant = h_branch.0.max(g_branch);
    let modulus = omega_2v(x, k, delta)?;
    Ok(
        InequalityReport::new("norm_bound", lhs, constant * modulus * modulus, constant, slack)
            .meta("kernel", k.label())
            .meta("delta", delta)
            .meta("sigma", method.sigma())
            .meta("h_branch", h_branch.0)
            .meta("h_branch_at", h_branch.1)
            .meta("g_branch", g_branch)
            .meta("g_argmin", g.argmin)
            .meta("window_note", &g.window_note),
    )
}

/// `E_σ(x) ≤ 𝓖^{-1/2} ω_φ(x; L_{p,V}([0, δ]))`, `p = ∞` meaning the uniform modulus.
pub fn jackson_bound(
    x: &SpectralElement,
    sigma: f64,
    k: &GammaKernel,
    delta: f64,
    p: f64,
    t_max: Option<f64>,
    slack: f64,
) -> Result<InequalityReport> {
    let g = script_g(k, delta, sigma, t_max)?;
    jackson_bound_with(x, sigma, k, delta, p, &g, slack)
}

/// Modulus on the right of the Jackson bound for exponent `p`.
pub fn modulus_for(x: &SpectralElement, k: &GammaKernel, delta: f64, p: f64) -> Result<f64> {
    if p == 2.0 {
        omega_2v(x, k, delta)
    } else if p.is_infinite() {
        Ok(omega_sup(x, k.symbol(), delta).value)
    } else {
        omega_pv(x, k.symbol(), k.weight(), p, delta)
    }
}

/// [`jackson_bound`] with `𝓖` precomputed, for campaigns over many elements.
pub fn jackson_bound_with(
    x: &SpectralElement,
    sigma: f64,
    k: &GammaKernel,
    delta: f64,
    p: f64,
    g: &GWindow,
    slack: f64,
) -> Result<InequalityReport> {
    if !(p >= 2.0) {
        return Err(Error::InvalidArgument(format!("p must lie in [2, inf], got {p}")));
    }
    let lhs = best_approx_error(x, sigma);
    let constant = g.value.powf(-0.5);
    let modulus = modulus_for(x, k, delta, p)?;
    let mut r = InequalityReport::new("jackson_bound", lhs, constant * modulus, constant, slack)
        .meta("kernel", k.label())
        .meta("sigma", sigma)
        .meta("delta", delta)
        .meta("p", p)
        .meta("modulus", modulus)
        .meta("g_value", g.value)
        .meta("g_argmin", g.argmin)
        .meta("window_note", &g.window_note);
    if x.is_zero() {
        r.verdict = Verdict::Degenerate;
    }
    Ok(r)
}

/// Places a unit atom at the minimizer of the `𝓖` window and evaluates the
/// `p = 2` Jackson bound there; the ratio should be 1 up to rounding.
pub fn sharpness_search(
    sigma: f64,
    k: &GammaKernel,
    delta: f64,
    t_max: Option<f64>,
    slack: f64,
) -> Result<InequalityReport> {
    let g = script_g(k, delta, sigma, t_max)?;
    let x = SpectralElement::new([(g.argmin, num_complex::Complex64::new(1.0, 0.0))])?;
    let mut r = jackson_bound_with(&x, sigma, k, delta, 2.0, &g, slack)?;
    r.check = "sharpness_search".into();
    let modulus = omega_2v(&x, k, delta)?;
    let identity_defect = (r.lhs * r.lhs * g.value - modulus * modulus).abs();
    Ok(r.at(format!("unit atom at frequency {}", g.argmin))
        .meta("single_atom_identity_defect", identity_defect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::classical_symbol;
    use crate::weights::{named_weight, NamedWeight};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn kernel(w: NamedWeight, m: u32) -> GammaKernel {
        GammaKernel::new(named_weight(w), classical_symbol(m).unwrap())
    }

    #[test]
    fn single_atom_chernykh_ratio() {
        let k = kernel(NamedWeight::Chernykh1, 1);
        let n = 5.0;
        let x = SpectralElement::periodic([(5, Complex64::new(1.0, 0.0))]).unwrap();
        let r = jackson_bound(&x, n, &k, PI / n, f64::INFINITY, None, 1e-9).unwrap();
        assert_eq!(r.lhs, 1.0);
        assert!((r.rhs - 2f64.sqrt()).abs() < 1e-6);
        assert!((r.ratio - 0.5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn spectrum_inside_gives_zero_lhs() {
        let k = kernel(NamedWeight::VHat, 1);
        let x = SpectralElement::new([(0.5, Complex64::new(1.0, 0.0)), (-1.9, Complex64::new(0.0, 2.0))]).unwrap();
        let r = jackson_bound(&x, 2.0, &k, PI / 2.0, 2.0, None, 1e-9).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.passed());
    }

    #[test]
    fn zero_element_is_degenerate() {
        let k = kernel(NamedWeight::VHat, 1);
        let r = jackson_bound(&SpectralElement::zero(), 2.0, &k, PI / 2.0, 2.0, None, 1e-9).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate);
        assert!(r.ratio.is_nan());
    }

    #[test]
    fn p_below_two_rejected() {
        let k = kernel(NamedWeight::VHat, 1);
        let x = SpectralElement::new([(3.0, Complex64::new(1.0, 0.0))]).unwrap();
        assert!(jackson_bound(&x, 2.0, &k, 1.0, 1.5, None, 1e-9).is_err());
    }

    #[test]
    fn projection_norm_bound_matches_jackson() {
        let k = kernel(NamedWeight::Chernykh1, 1);
        let sigma = 3.0;
        let x = SpectralElement::new([
            (1.0, Complex64::new(1.0, 0.0)),
            (4.5, Complex64::new(0.5, -0.5)),
            (-7.0, Complex64::new(0.1, 0.0)),
        ])
        .unwrap();
        let m = LinearMethod::projection(sigma).unwrap();
        let nb = norm_bound(&x, &m, &k, PI / sigma, None, 1e-9).unwrap();
        let jb = jackson_bound(&x, sigma, &k, PI / sigma, 2.0, None, 1e-9).unwrap();
        assert!((nb.lhs - jb.lhs * jb.lhs).abs() < 1e-14);
        assert!((nb.rhs - jb.rhs * jb.rhs).abs() < 1e-12);
        assert!(nb.passed());
    }

    #[test]
    fn sharpness_at_argmin() {
        let k = kernel(NamedWeight::Chernykh1, 1);
        let sigma = 4.0;
        let r = sharpness_search(sigma, &k, PI / sigma, None, 1e-9).unwrap();
        assert!(r.ratio >= 1.0 - 1e-6, "{}", r.ratio);
        let defect: f64 = r.grid_meta["single_atom_identity_defect"].parse().unwrap();
        assert!(defect < 1e-9);
    }
}
