//! Tabulated `Γ(V; t)` for auditing window estimates of `𝓖`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::kernel::GammaKernel;
use crate::symbols::mean_value;

/// `n` equally spaced samples of `Γ` on `[t0, t1]` (endpoints included).
/// A sample whose quadrature fails is kept as the error.
pub fn gamma_profile(k: &GammaKernel, t0: f64, t1: f64, n: usize) -> Result<Vec<(f64, Result<f64>)>> {
    if !(t0.is_finite() && t1.is_finite() && t0 <= t1) {
        return Err(Error::InvalidArgument(format!("invalid range [{t0}, {t1}]")));
    }
    if n == 0 || (n == 1 && t0 != t1) {
        return Err(Error::InvalidArgument(format!(
            "need at least two samples on [{t0}, {t1}], got {n}"
        )));
    }
    let step = if n > 1 { (t1 - t0) / (n - 1) as f64 } else { 0.0 };
    Ok((0..n)
        .map(|i| {
            let t = if i + 1 == n { t1 } else { t0 + i as f64 * step };
            (t, k.gamma(t))
        })
        .collect())
}

/// Writes the `t gamma` table with a header carrying `𝓘(ψ)`; failed rows
/// read `t nan` with the failure as a trailing comment. Returns the text.
pub fn emit_gamma_profile(k: &GammaKernel, t0: f64, t1: f64, n: usize, out: Option<&Path>) -> Result<String> {
    let rows = gamma_profile(k, t0, t1, n)?;
    let mean = mean_value(k.symbol())?;
    let mut text = String::new();
    let _ = writeln!(text, "# kernel: {}", k.label());
    let _ = writeln!(text, "# mean_value: {mean}");
    let _ = writeln!(text, "# t gamma");
    for (t, g) in rows {
        match g {
            Ok(g) => {
                let _ = writeln!(text, "{t} {g}");
            }
            Err(e) => {
                let _ = writeln!(text, "{t} nan # {e}");
            }
        }
    }
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    Ok(text)
}
