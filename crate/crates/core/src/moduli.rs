//! Generalized moduli of continuity: the uniform one `ω_φ(x, δ)` and the
//! weighted `L_{p,V}` family.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::GammaKernel;
use crate::quadrature::{integrate, QuadOptions};
use crate::search::{golden_min, grid, Extremum};
use crate::spectral::{pairwise_sum, SpectralElement};
use crate::symbols::{difference_norm_sqr, SymbolPair};
use crate::weights::Weight;

/// Grid points per π-period of the fastest atom in sup searches.
pub const SUP_SAMPLES_PER_PERIOD: f64 = 64.0;

/// Relative tolerance of the `L_{p,V}` quadrature.
pub const PV_REL_TOL: f64 = 1e-10;

/// Whether `p` lies where `ω_{2,V} ≤ ω_{p,V}` is guaranteed.
pub fn in_holder_range(p: f64) -> bool {
    p >= 2.0
}

fn sup_step(x: &SpectralElement) -> f64 {
    PI / (SUP_SAMPLES_PER_PERIOD * x.max_abs_frequency())
}

/// Squared-norm profile `t ↦ ‖Δ_t^φ x‖²` sampled once on `[0, t_max]`,
/// answering `ω_φ(x, δ)` for every `δ ≤ t_max`.
pub struct SupProfile<'a> {
    x: &'a SpectralElement,
    symbol: &'a SymbolPair,
    samples: Vec<(f64, f64)>,
    prefix_arg: Vec<usize>,
}

impl<'a> SupProfile<'a> {
    pub fn new(x: &'a SpectralElement, symbol: &'a SymbolPair, t_max: f64) -> Self {
        let samples: Vec<(f64, f64)> = if x.max_abs_frequency() == 0.0 {
            vec![(0.0, 0.0), (t_max, 0.0)]
        } else {
            grid(0.0, t_max, sup_step(x))
                .into_iter()
                .map(|t| (t, difference_norm_sqr(symbol, x, t)))
                .collect()
        };
        let mut prefix_arg = Vec::with_capacity(samples.len());
        let mut best = 0;
        for (i, s) in samples.iter().enumerate() {
            if s.1 > samples[best].1 {
                best = i;
            }
            prefix_arg.push(best);
        }
        Self {
            x,
            symbol,
            samples,
            prefix_arg,
        }
    }

    fn value_sqr(&self, t: f64) -> f64 {
        difference_norm_sqr(self.symbol, self.x, t)
    }

    /// `(ω_φ(x, δ), argmax)`.
    pub fn omega(&self, delta: f64) -> Extremum {
        let n = self.samples.partition_point(|s| s.0 <= delta);
        if n == 0 {
            return Extremum { arg: 0.0, value: 0.0 };
        }
        let i = self.prefix_arg[n - 1];
        let mut best = Extremum {
            arg: self.samples[i].0,
            value: self.samples[i].1,
        };
        let end = self.value_sqr(delta);
        if end > best.value {
            best = Extremum { arg: delta, value: end };
        }
        let lo = self.samples[i.saturating_sub(1)].0;
        let hi = if i + 1 < n { self.samples[i + 1].0 } else { delta };
        if hi > lo {
            let e = golden_min(&|t| -self.value_sqr(t), lo, hi.min(delta), 1e-9);
            if -e.value > best.value {
                best = Extremum {
                    arg: e.arg,
                    value: -e.value,
                };
            }
        }
        Extremum {
            arg: best.arg,
            value: best.value.max(0.0).sqrt(),
        }
    }
}

/// `ω_φ(x, δ) = max_{0 ≤ t ≤ δ} ‖Δ_t^φ x‖`, with the maximizing `t`.
///
/// Grid with step `π / (64 max|λ|)`, then golden-section refinement around
/// the best local maxima.
pub fn omega_sup(x: &SpectralElement, s: &SymbolPair, delta: f64) -> Extremum {
    if x.is_zero() || delta <= 0.0 || x.max_abs_frequency() == 0.0 {
        return Extremum { arg: 0.0, value: 0.0 };
    }
    let f = |t: f64| -difference_norm_sqr(s, x, t);
    let (e, _) = crate::search::grid_min(&f, 0.0, delta, crate::search::GridSearch::with_step(sup_step(x)));
    Extremum {
        arg: e.arg,
        value: (-e.value).max(0.0).sqrt(),
    }
}

/// `ω_φ(x; L_{2,V}([0, δ])) = (Σ_λ Γ(V; δλ) |amp(λ)|²)^{1/2}`.
pub fn omega_2v(x: &SpectralElement, k: &GammaKernel, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Ok(0.0);
    }
    let mut terms = Vec::with_capacity(x.len());
    for a in x.atoms() {
        terms.push(k.gamma(delta * a.frequency)? * a.amp.norm_sqr());
    }
    Ok(pairwise_sum(&terms).max(0.0).sqrt())
}

/// `ω_φ(x; L_{p,V}([0, δ])) = ((1/δ) ∫₀^δ ‖Δ_t^φ x‖^p V(t/δ) dt)^{1/p}`.
///
/// `p = ∞` is accepted and returns [`omega_sup`]. Values of `p` in `[1, 2)`
/// are computed but fall outside [`in_holder_range`].
pub fn omega_pv(x: &SpectralElement, s: &SymbolPair, v: &Weight, p: f64, delta: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("p must be at least 1, got {p}")));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if p.is_infinite() {
        return Ok(omega_sup(x, s, delta).value);
    }
    let peak = omega_sup(x, s, delta).value;
    if peak == 0.0 {
        return Ok(0.0);
    }
    let peak_sqr = peak * peak;
    let half_p = 0.5 * p;
    let integrand = |t: f64| (difference_norm_sqr(s, x, t) / peak_sqr).powf(half_p) * v.eval(t / delta);

    let lam = x.max_abs_frequency();
    let periods = (lam * delta / PI).floor() as usize;
    let mut breaks: Vec<f64> = (1..=periods).map(|k| k as f64 * PI / lam).collect();
    breaks.extend(v.breakpoints().iter().map(|b| b * delta));
    let r = integrate(
        integrand,
        0.0,
        delta,
        &breaks,
        QuadOptions {
            abs_tol: 1e-300,
            rel_tol: PV_REL_TOL,
            max_panels: 50_000 + 2 * periods,
        },
    )?;
    Ok(peak * (r.value / delta).max(0.0).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::classical_symbol;
    use crate::weights::{named_weight, NamedWeight};
    use num_complex::Complex64;

    fn atom(lam: f64) -> SpectralElement {
        SpectralElement::new([(lam, Complex64::new(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn sup_of_single_atom() {
        let s = classical_symbol(1).unwrap();
        let e = omega_sup(&atom(1.0), &s, PI);
        assert!((e.value - 2.0).abs() < 1e-12);
        assert!((e.arg - PI).abs() < 1e-6);
        for n in [2.0, 5.0, 11.0] {
            assert!((omega_sup(&atom(n), &s, PI / n).value - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_shrinks_with_delta() {
        let s = classical_symbol(2).unwrap();
        let x = SpectralElement::new([(1.0, Complex64::new(1.0, 0.5)), (-4.0, Complex64::new(0.2, 0.0))]).unwrap();
        let vals: Vec<f64> = (1..=6).map(|k| omega_sup(&x, &s, 10f64.powi(-k)).value).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(vals[5] < 1e-10);
    }

    #[test]
    fn zero_cases() {
        let s = classical_symbol(1).unwrap();
        let k = GammaKernel::new(named_weight(NamedWeight::Uniform), s.clone());
        assert_eq!(omega_sup(&SpectralElement::zero(), &s, 1.0).value, 0.0);
        assert_eq!(omega_2v(&SpectralElement::zero(), &k, 1.0).unwrap(), 0.0);
        assert_eq!(omega_2v(&atom(3.0), &k, 0.0).unwrap(), 0.0);
        assert_eq!(omega_pv(&atom(0.0), &s, k.weight(), 2.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn single_atom_closed_form() {
        let s = classical_symbol(1).unwrap();
        let v = named_weight(NamedWeight::Uniform);
        let k = GammaKernel::new(v.clone(), s.clone());
        let two = omega_2v(&atom(1.0), &k, PI).unwrap();
        assert!((two - 2f64.sqrt()).abs() < 1e-10);
        let pv = omega_pv(&atom(1.0), &s, &v, 2.0, PI).unwrap();
        assert!((pv - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn profile_matches_direct_sup() {
        let s = classical_symbol(2).unwrap();
        let x = SpectralElement::periodic([
            (3, Complex64::new(1.0, 0.0)),
            (-7, Complex64::new(0.0, 0.6)),
            (12, Complex64::new(0.3, 0.3)),
        ])
        .unwrap();
        let prof = SupProfile::new(&x, &s, 2.0);
        for d in [0.05, 0.3, 0.9, 1.4, 2.0] {
            let a = prof.omega(d).value;
            let b = omega_sup(&x, &s, d).value;
            assert!((a - b).abs() <= 1e-9 * b.max(1.0), "delta {d}: {a} vs {b}");
        }
    }

    #[test]
    fn rejects_bad_p() {
        let s = classical_symbol(1).unwrap();
        let v = named_weight(NamedWeight::Uniform);
        assert!(omega_pv(&atom(1.0), &s, &v, 0.5, 1.0).is_err());
        assert!(!in_holder_range(1.5));
        assert_eq!(
            omega_pv(&atom(1.0), &s, &v, f64::INFINITY, PI).unwrap(),
            omega_sup(&atom(1.0), &s, PI).value
        );
    }
}
