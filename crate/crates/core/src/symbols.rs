//! Symbol pairs `(φ, ψ)` with `ψ(t) = |φ(e^{it})|²`, which generate the
//! generalized differences `Δ_t^φ`, and the numerical class checks for Φ
//! and Ψ.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::spectral::{apply_multiplier, translate, Multiplier, SpectralElement};

type PsiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type PhiFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Number of points used when validating a user-supplied symbol.
pub const VALIDATION_GRID: usize = 1000;

/// Highest classical order shipped as a built-in.
pub const MAX_BUILTIN_ORDER: u32 = 8;

/// A generating symbol. `ψ` is always present; `φ` only when known.
#[derive(Clone)]
pub struct SymbolPair {
    psi: PsiFn,
    phi: Option<PhiFn>,
    even: bool,
    label: String,
    order: Option<u32>,
}

impl fmt::Debug for SymbolPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolPair")
            .field("label", &self.label)
            .field("even", &self.even)
            .field("has_phi", &self.phi.is_some())
            .finish()
    }
}

/// `φ(z) = (z - 1)^m`, so `ψ(t) = (2 - 2 cos t)^m = |2 sin(t/2)|^{2m}`.
pub fn classical_symbol(m: u32) -> Result<SymbolPair> {
    if m < 1 {
        return Err(Error::InvalidOrder(m));
    }
    let exp = m as i32;
    Ok(SymbolPair {
        psi: Arc::new(move |t: f64| (4.0 * (0.5 * t).sin().powi(2)).powi(exp)),
        phi: Some(Arc::new(move |z: Complex64| (z - 1.0).powi(exp))),
        even: true,
        label: format!("classical-{m}"),
        order: Some(m),
    })
}

impl SymbolPair {
    /// User-supplied `ψ`, validated on a grid: `ψ(0) ≈ 0`, nonnegative,
    /// `2π`-periodic, even if `even` is claimed, and no zero interval.
    pub fn custom<F>(label: impl Into<String>, psi: F, even: bool, tol: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let s = Self {
            psi: Arc::new(psi),
            phi: None,
            even,
            label: label.into(),
            order: None,
        };
        s.validate(tol)?;
        Ok(s)
    }

    /// Like [`SymbolPair::custom`] but with `φ` supplied; `ψ` is derived.
    pub fn from_phi<F>(label: impl Into<String>, phi: F, even: bool, tol: f64) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let phi: PhiFn = Arc::new(phi);
        let p = phi.clone();
        let s = Self {
            psi: Arc::new(move |t: f64| p(Complex64::from_polar(1.0, t)).norm_sqr()),
            phi: Some(phi),
            even,
            label: label.into(),
            order: None,
        };
        s.validate(tol)?;
        Ok(s)
    }

    /// Two-column `t psi(t)` table, linearly interpolated and periodized
    /// with period `2π`. Evenness is detected from the samples.
    pub fn from_table(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut pts = parse_two_columns(text)?;
        if pts.len() < 2 {
            return Err(Error::InvalidSymbol("table needs at least two samples".into()));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let t0 = pts[0].0;
        if pts.last().unwrap().0 - t0 > TAU + 1e-12 {
            return Err(Error::InvalidSymbol("table spans more than one period".into()));
        }
        if (pts.last().unwrap().0 - t0 - TAU).abs() <= 1e-12 {
            pts.pop();
        }
        let first = pts[0];
        pts.push((first.0 + TAU, first.1));
        let table: Arc<Vec<(f64, f64)>> = Arc::new(pts);
        let interp = move |t: f64| {
            let u = t0 + (t - t0).rem_euclid(TAU);
            let i = table.partition_point(|p| p.0 <= u).clamp(1, table.len() - 1);
            let (a, b) = (table[i - 1], table[i]);
            a.1 + (b.1 - a.1) * (u - a.0) / (b.0 - a.0)
        };
        let even = (1..VALIDATION_GRID).all(|i| {
            let t = PI * i as f64 / VALIDATION_GRID as f64;
            (interp(t) - interp(-t)).abs() <= 1e-12 * (1.0 + interp(t).abs())
        });
        Self::custom(label, interp, even, 1e-12)
    }

    pub fn read_table(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::io(&path, e))?;
        Self::from_table(format!("custom:{}", path.as_ref().display()), &text)
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let p0 = self.psi(0.0);
        if p0.abs() > tol {
            return Err(Error::InvalidSymbol(format!("psi(0) = {p0}, expected 0")));
        }
        let n = VALIDATION_GRID;
        let mut prev_zero = false;
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            let v = self.psi(t);
            if !(v >= -tol) {
                return Err(Error::InvalidSymbol(format!("psi({t}) = {v} is negative")));
            }
            let shifted = self.psi(t + TAU);
            if (shifted - v).abs() > tol * (1.0 + v.abs()) {
                return Err(Error::InvalidSymbol(format!("psi is not 2pi-periodic at t = {t}")));
            }
            if self.even && (self.psi(-t) - v).abs() > tol * (1.0 + v.abs()) {
                return Err(Error::InvalidSymbol(format!(
                    "psi is flagged even but psi(-{t}) != psi({t})"
                )));
            }
            let zero = v == 0.0;
            if zero && prev_zero {
                return Err(Error::InvalidSymbol(format!(
                    "psi vanishes on an interval near t = {t}"
                )));
            }
            prev_zero = zero;
        }
        Ok(())
    }

    pub fn psi(&self, t: f64) -> f64 {
        (self.psi)(t)
    }

    pub fn phi(&self, z: Complex64) -> Option<Complex64> {
        self.phi.as_ref().map(|p| p(z))
    }

    pub fn has_phi(&self) -> bool {
        self.phi.is_some()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Order `m` for classical symbols.
    pub fn classical_order(&self) -> Option<u32> {
        self.order
    }

    /// Upper bound for `ψ`, estimated on a fine grid (exact `4^m` for classical).
    pub fn sup_estimate(&self) -> f64 {
        if let Some(m) = self.order {
            return 4f64.powi(m as i32);
        }
        (0..=4 * VALIDATION_GRID)
            .map(|i| self.psi(TAU * i as f64 / (4 * VALIDATION_GRID) as f64))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn parse_two_columns(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<(f64, f64)> = match f.as_slice() {
            [a, b] => a.parse().ok().zip(b.parse().ok()),
            _ => None,
        };
        match parsed {
            Some(p) if p.0.is_finite() && p.1.is_finite() => out.push(p),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected two numbers, found `{line}`"),
                })
            }
        }
    }
    Ok(out)
}

pub(crate) use parse_two_columns as parse_table;

/// `𝓘(ψ) = (1/2π) ∫₀^{2π} ψ`, by adaptive quadrature (absolute tolerance 1e-11).
pub fn mean_value(s: &SymbolPair) -> Result<f64> {
    let breaks: Vec<f64> = (1..8).map(|k| k as f64 * TAU / 8.0).collect();
    let r = integrate(|t| s.psi(t), 0.0, TAU, &breaks, QuadOptions::absolute(1e-11 * TAU))?;
    Ok(r.value / TAU)
}

/// `Δ_t^φ x`: the multiplier `φ(e^{its})` applied to `x`.
pub fn generalized_difference(s: &SymbolPair, x: &SpectralElement, t: f64) -> Result<SpectralElement> {
    let phi = s
        .phi
        .clone()
        .ok_or_else(|| Error::InvalidSymbol(format!("{} carries no phi", s.label)))?;
    let mult = Multiplier::new(format!("phi(e^(i s {t}))"), move |lam| {
        phi(Complex64::from_polar(1.0, lam * t))
    });
    apply_multiplier(&mult, x)
}

/// `‖Δ_t^φ x‖² = Σ_λ ψ(λt) |amp(λ)|²`.
pub fn difference_norm_sqr(s: &SymbolPair, x: &SpectralElement, t: f64) -> f64 {
    x.spectral_integral(|lam| s.psi(lam * t))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Σ_{k=0}^{m} (-1)^{m-k} C(m,k) U_{kt} x`, the classical finite difference.
pub fn binomial_difference(m: u32, x: &SpectralElement, t: f64) -> SpectralElement {
    (0..=m).fold(SpectralElement::zero(), |acc, k| {
        let sign = if (m - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let term = translate(x, k as f64 * t).scale(Complex64::new(sign * binomial(m, k), 0.0));
        acc.add(&term)
    })
}

/// Largest atomwise deviation between the multiplier and binomial routes
/// for `Δ_t^m x`.
pub fn difference_symbol_check(s: &SymbolPair, m: u32, x: &SpectralElement, t: f64) -> Result<f64> {
    if s.classical_order() != Some(m) {
        return Err(Error::InvalidSymbol(format!(
            "{} is not the classical symbol of order {m}",
            s.label
        )));
    }
    let via_symbol = generalized_difference(s, x, t)?;
    let via_binomial = binomial_difference(m, x, t);
    Ok(via_symbol.max_deviation(&via_binomial))
}

/// Outcome of the numerical membership test for the class Ψ.
#[derive(Debug, Clone, Serialize)]
pub struct PsiReport {
    pub label: String,
    pub member: bool,
    pub grid_n: usize,
    pub tol: f64,
    pub psi_at_zero: f64,
    /// `max |ψ(-t) - ψ(t)|` on the grid.
    pub even_defect: f64,
    /// `max |ψ(π - t) - ψ(π + t)|` on the grid.
    pub pi_defect: f64,
    /// `min_t [ (1/π)∫₀^π ψ - (1/t)∫₀^t ψ ]` over the grid in `(0, π)`.
    pub worst_mean_margin: f64,
    pub worst_mean_at: f64,
    pub violations: Vec<String>,
}

/// Checks both symmetry conditions and the averaged-mean inequality of
/// the class Ψ at `grid_n` points of `(0, π)`.
///
/// The nowhere-dense zero-set requirement is checked only at grid resolution.
pub fn is_in_psi(s: &SymbolPair, grid_n: usize) -> Result<PsiReport> {
    if grid_n < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid_n must be at least 64, got {grid_n}"
        )));
    }
    let scale = 1.0 + s.sup_estimate();
    let tol = 1e-10 * scale;
    let mut violations = Vec::new();

    let psi_at_zero = s.psi(0.0);
    if psi_at_zero.abs() > tol {
        violations.push(format!("psi(0) = {psi_at_zero}"));
    }

    let ts: Vec<f64> = (1..grid_n).map(|i| PI * i as f64 / grid_n as f64).collect();
    let mut even_defect: f64 = 0.0;
    let mut pi_defect: f64 = 0.0;
    for &t in &ts {
        even_defect = even_defect.max((s.psi(-t) - s.psi(t)).abs());
        pi_defect = pi_defect.max((s.psi(PI - t) - s.psi(PI + t)).abs());
    }
    if even_defect > tol {
        violations.push(format!("psi(-t) != psi(t), defect {even_defect:e}"));
    }
    if pi_defect > tol {
        violations.push(format!("psi(pi - t) != psi(pi + t), defect {pi_defect:e}"));
    }

    let mut zero_run = false;
    for i in 0..2 * grid_n {
        let v = s.psi(TAU * i as f64 / (2 * grid_n) as f64);
        if v < -tol {
            violations.push(format!("psi negative ({v})"));
            break;
        }
        let z = v == 0.0;
        if z && zero_run {
            violations.push("psi vanishes on an interval at grid resolution".into());
            break;
        }
        zero_run = z;
    }

    // cumulative integrals cell by cell
    let opts = QuadOptions::absolute(1e-13 * scale);
    let mut cumulative = Vec::with_capacity(ts.len());
    let mut acc = 0.0;
    let mut left = 0.0;
    for &t in &ts {
        acc += integrate(|u| s.psi(u), left, t, &[], opts)?.value;
        cumulative.push(acc);
        left = t;
    }
    let total = acc + integrate(|u| s.psi(u), left, PI, &[], opts)?.value;
    let reference = total / PI;
    let (mut worst_mean_margin, mut worst_mean_at) = (f64::INFINITY, f64::NAN);
    for (&t, &c) in ts.iter().zip(&cumulative) {
        let margin = reference - c / t;
        if margin < worst_mean_margin {
            worst_mean_margin = margin;
            worst_mean_at = t;
        }
    }
    if worst_mean_margin < -tol {
        violations.push(format!(
            "mean over [0, {worst_mean_at}] exceeds mean over [0, pi] by {:e}",
            -worst_mean_margin
        ));
    }

    Ok(PsiReport {
        label: s.label.clone(),
        member: violations.is_empty(),
        grid_n,
        tol,
        psi_at_zero,
        even_defect,
        pi_defect,
        worst_mean_margin,
        worst_mean_at,
        violations,
    })
}
