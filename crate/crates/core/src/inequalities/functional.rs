//! `|(x - Λx, f)| ≤ (Σ |θ(λ)|² |f(λ)|² / Γ(V; δλ))^{1/2} · ω_φ(x; L_{2,V}([0, δ]))`
//! and the element attaining equality.

use num_complex::Complex64;

use super::report::{InequalityReport, Verdict};
use crate::error::{Error, Result};
use crate::kernel::GammaKernel;
use crate::moduli::omega_2v;
use crate::spectral::{apply_linear_method, inner, pairwise_sum, Atom, LinearMethod, SpectralElement};

/// Weighted residual norm of `f`: `Σ |θ(λ)|² |f(λ)|² / Γ(V; δλ)`, `0/0 = 0`.
///
/// Returns `Err(DivergentBound)` when `θ(λ) ≠ 0` at a zero of `Γ`.
pub fn dual_factor_sqr(f: &SpectralElement, method: &LinearMethod, k: &GammaKernel, delta: f64) -> Result<f64> {
    let mut terms = Vec::with_capacity(f.len());
    for a in f.atoms() {
        let th = method.theta(a.frequency).norm_sqr();
        if th == 0.0 {
            continue;
        }
        let g = k.gamma(delta * a.frequency)?;
        if g <= 0.0 {
            return Err(Error::DivergentBound { lambda: a.frequency });
        }
        terms.push(th * a.amp.norm_sqr() / g);
    }
    Ok(pairwise_sum(&terms))
}

/// Certifies the functional bound for `x`, `f` and the method `Λ`.
///
/// A divergent right-hand side is reported as `rhs = ∞` (vacuous).
pub fn functional_bound(
    x: &SpectralElement,
    f: &SpectralElement,
    method: &LinearMethod,
    k: &GammaKernel,
    delta: f64,
    slack: f64,
) -> Result<InequalityReport> {
    let (_, residual) = apply_linear_method(method, x);
    let lhs = inner(&residual, f).norm();
    let modulus = omega_2v(x, k, delta)?;
    let base = |rhs: f64, constant: f64| {
        InequalityReport::new("functional_bound", lhs, rhs, constant, slack)
            .meta("kernel", k.label())
            .meta("delta", delta)
            .meta("sigma", method.sigma())
            .meta("omega_2v", modulus)
            .meta("translation_invariant", !x.moves_under_translation())
    };
    match dual_factor_sqr(f, method, k, delta) {
        Ok(d) => {
            let constant = d.sqrt();
            Ok(base(constant * modulus, constant))
        }
        Err(Error::DivergentBound { lambda }) => {
            let mut r = base(f64::INFINITY, f64::INFINITY).meta("divergent_at", lambda);
            r.verdict = Verdict::Vacuous;
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// `x̃ = Σ_λ conj(θ(λ)) / Γ(V; δλ) · f(λ)`, dropping atoms where `θ = 0`.
pub fn functional_extremal(
    f: &SpectralElement,
    method: &LinearMethod,
    k: &GammaKernel,
    delta: f64,
) -> Result<SpectralElement> {
    let mut atoms = Vec::with_capacity(f.len());
    for a in f.atoms() {
        let th = method.theta(a.frequency);
        if th == Complex64::new(0.0, 0.0) {
            continue;
        }
        let g = k.gamma(delta * a.frequency)?;
        if g <= 0.0 {
            return Err(Error::DivergentBound { lambda: a.frequency });
        }
        atoms.push(Atom {
            frequency: a.frequency,
            amp: th.conj() / g * a.amp,
        });
    }
    SpectralElement::new(atoms.into_iter().map(|a| (a.frequency, a.amp)))
}
