//! Weights on `[0, 1]`, always normalized to unit `L¹` norm.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::symbols::parse_table;

/// The built-in weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedWeight {
    /// `V ≡ 1`.
    Uniform,
    /// `(π/2) sin πs`, the rescaled `sin nt` on `[0, π/n]`.
    Chernykh1,
    /// `(π/4)(sin 2πs + 2 sin πs)`, the rescaled `sin nt + 2 sin(nt/2)` on `[0, 2π/n]`.
    Chernykh2,
    /// `Z(s) / ‖Z‖₁` with the piecewise quadratic `Z`, breakpoints 1/7 and 5/7.
    VStar,
    /// `5/4` on `[0, 1/2]`, `3/4` on `(1/2, 1]`.
    VHat,
}

impl NamedWeight {
    pub const ALL: [NamedWeight; 5] = [
        NamedWeight::Uniform,
        NamedWeight::Chernykh1,
        NamedWeight::Chernykh2,
        NamedWeight::VStar,
        NamedWeight::VHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedWeight::Uniform => "uniform",
            NamedWeight::Chernykh1 => "chernykh1",
            NamedWeight::Chernykh2 => "chernykh2",
            NamedWeight::VStar => "v_star",
            NamedWeight::VHat => "v_hat",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(|w| w.name()).join(", ")
    }
}

impl fmt::Display for NamedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::InvalidWeight(format!("unknown weight `{s}`; valid names: {}", Self::valid_names())))
    }
}

/// The unnormalized profile `Z` behind `V*`.
pub fn z_profile(s: f64) -> f64 {
    if s <= 1.0 / 7.0 {
        2.0 * s / 7.0
    } else if s <= 5.0 / 7.0 {
        -s * s / 2.0 + 3.0 * s / 7.0 - 1.0 / 98.0
    } else {
        s * s / 2.0 - s + 0.5
    }
}

/// `‖Z‖₁ = 47/1029`.
pub const Z_NORM: f64 = 47.0 / 1029.0;

/// Nonnegative weight on `[0, 1]` with `∫₀¹ V = 1`.
#[derive(Clone)]
pub struct Weight {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    breakpoints: Vec<f64>,
    norm1: f64,
    label: String,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("label", &self.label)
            .field("breakpoints", &self.breakpoints)
            .field("norm1", &self.norm1)
            .finish()
    }
}

const CHECK_GRID: usize = 1000;

pub fn named_weight(name: NamedWeight) -> Weight {
    let label = name.name().to_string();
    match name {
        NamedWeight::Uniform => Weight::from_parts(label, vec![], 1.0, |_| 1.0),
        NamedWeight::Chernykh1 => Weight::from_parts(label, vec![], 2.0 / PI, |s: f64| (PI * s).sin()),
        NamedWeight::Chernykh2 => Weight::from_parts(label, vec![], 4.0 / PI, |s: f64| {
            // 2 sin πs (1 + cos πs), never negative on [0, 1]
            2.0 * (PI * s).sin() * (1.0 + (PI * s).cos())
        }),
        NamedWeight::VStar => Weight::from_parts(label, vec![1.0 / 7.0, 5.0 / 7.0], Z_NORM, z_profile),
        NamedWeight::VHat => Weight::from_parts(label, vec![0.5], 1.0, |s| if s <= 0.5 { 1.25 } else { 0.75 }),
    }
}

impl Weight {
    fn from_parts<F>(label: String, breakpoints: Vec<f64>, norm1: f64, raw: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(move |s| raw(s) / norm1),
            breakpoints,
            norm1,
            label,
        }
    }

    /// Normalizes `raw` by its numerically computed `L¹` norm and validates it.
    pub fn custom<F>(label: impl Into<String>, breakpoints: Vec<f64>, raw: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut bps: Vec<f64> = breakpoints.into_iter().filter(|b| *b > 0.0 && *b < 1.0).collect();
        bps.sort_by(f64::total_cmp);
        bps.dedup();
        let norm = integrate(&raw, 0.0, 1.0, &bps, QuadOptions::absolute(1e-14))?.value;
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidWeight(format!("L1 norm is {norm}")));
        }
        let w = Self::from_parts(label.into(), bps, norm, raw);
        w.validate()?;
        Ok(w)
    }

    /// Two-column `s V(s)` table, linearly interpolated. Extra breakpoints
    /// can be declared with a `# breakpoints: a b ...` line; every sample
    /// abscissa is a breakpoint anyway.
    pub fn from_table(label: impl Into<String>, text: &str) -> Result<Self> {
        let mut declared = Vec::new();
        for line in text.lines() {
            if let Some(rest) = line.trim().strip_prefix('#') {
                if let Some(list) = rest.trim().strip_prefix("breakpoints:") {
                    for tok in list.split_whitespace() {
                        declared.push(
                            tok.parse::<f64>()
                                .map_err(|_| Error::InvalidWeight(format!("bad breakpoint `{tok}`")))?,
                        );
                    }
                }
            }
        }
        let mut pts = parse_table(text)?;
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pts.len() < 2 || pts[0].0 > 0.0 || pts.last().unwrap().0 < 1.0 {
            return Err(Error::InvalidWeight(
                "table must cover [0, 1] with at least two samples".into(),
            ));
        }
        if let Some(p) = pts.iter().find(|p| p.1 < 0.0) {
            return Err(Error::InvalidWeight(format!("negative value {} at s = {}", p.1, p.0)));
        }
        // trapezoid is exact for the interpolant
        let norm: f64 = pts
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0].0.max(0.0), w[1].0.min(1.0));
                if b <= a {
                    return 0.0;
                }
                let at = |s: f64| w[0].1 + (w[1].1 - w[0].1) * (s - w[0].0) / (w[1].0 - w[0].0);
                0.5 * (b - a) * (at(a) + at(b))
            })
            .sum();
        if !(norm > 0.0) {
            return Err(Error::InvalidWeight("weight integrates to zero".into()));
        }
        let mut bps = declared;
        bps.extend(pts.iter().map(|p| p.0));
        bps.retain(|b| *b > 0.0 && *b < 1.0);
        bps.sort_by(f64::total_cmp);
        bps.dedup();
        let table = Arc::new(pts);
        let w = Self::from_parts(label.into(), bps, norm, move |s: f64| {
            let i = table.partition_point(|p| p.0 <= s).clamp(1, table.len() - 1);
            let (a, b) = (table[i - 1], table[i]);
            a.1 + (b.1 - a.1) * (s - a.0) / (b.0 - a.0)
        });
        w.validate()?;
        Ok(w)
    }

    pub fn read_table(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::io(&path, e))?;
        Self::from_table(format!("custom:{}", path.as_ref().display()), &text)
    }

    /// Grid checks: nonnegative, unit integral, and no interval where it vanishes.
    pub fn validate(&self) -> Result<()> {
        let mut prev_zero = false;
        for i in 0..=CHECK_GRID {
            let s = i as f64 / CHECK_GRID as f64;
            let v = self.eval(s);
            if !(v >= 0.0) {
                return Err(Error::InvalidWeight(format!("{}: V({s}) = {v}", self.label)));
            }
            if v == 0.0 && prev_zero {
                return Err(Error::InvalidWeight(format!(
                    "{}: vanishes on an interval near s = {s}",
                    self.label
                )));
            }
            prev_zero = v == 0.0;
        }
        let total = self.integral()?;
        if (total - 1.0).abs() > 1e-11 {
            return Err(Error::InvalidWeight(format!(
                "{}: integral {total} after normalization",
                self.label
            )));
        }
        Ok(())
    }

    /// `∫₀¹ V` by quadrature.
    pub fn integral(&self) -> Result<f64> {
        Ok(integrate(
            |s| self.eval(s),
            0.0,
            1.0,
            &self.breakpoints,
            QuadOptions::absolute(1e-14),
        )?
        .value)
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.eval)(s)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `L¹` norm of the raw profile before normalization.
    pub fn raw_norm1(&self) -> f64 {
        self.norm1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Lower bound of `V` on the check grid.
    pub fn grid_min(&self) -> f64 {
        (0..=CHECK_GRID)
            .map(|i| self.eval(i as f64 / CHECK_GRID as f64))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_hat_values() {
        let w = named_weight(NamedWeight::VHat);
        assert_eq!(w.eval(0.25), 1.25);
        assert_eq!(w.eval(0.75), 0.75);
        assert!((w.integral().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chernykh1_midpoint() {
        let w = named_weight(NamedWeight::Chernykh1);
        assert!((w.eval(0.5) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn chernykh2_factorization() {
        let w = named_weight(NamedWeight::Chernykh2);
        for i in 0..=1000 {
            let s = i as f64 / 1000.0;
            let direct = (PI / 4.0) * ((2.0 * PI * s).sin() + 2.0 * (PI * s).sin());
            assert!((w.eval(s) - direct).abs() < 1e-14);
            assert!(w.eval(s) >= 0.0);
        }
    }

    #[test]
    fn all_named_weights_validate() {
        for n in NamedWeight::ALL {
            let w = named_weight(n);
            w.validate().unwrap();
            assert!((w.integral().unwrap() - 1.0).abs() < 1e-11, "{n}");
        }
    }

    #[test]
    fn z_is_continuous() {
        for b in [1.0 / 7.0, 5.0 / 7.0] {
            let l = z_profile(b - 1e-12);
            let r = z_profile(b + 1e-12);
            assert!((l - r).abs() < 1e-11);
        }
        assert_eq!(z_profile(0.0), 0.0);
        assert_eq!(z_profile(1.0), 0.0);
    }

    #[test]
    fn names_round_trip() {
        for n in NamedWeight::ALL {
            assert_eq!(n.name().parse::<NamedWeight>().unwrap(), n);
        }
        let err = "triangle".parse::<NamedWeight>().unwrap_err();
        assert!(err.to_string().contains("v_hat"));
    }

    #[test]
    fn custom_weights() {
        let w = Weight::custom("ramp", vec![], |s| s).unwrap();
        assert!((w.eval(1.0) - 2.0).abs() < 1e-12);
        assert!(Weight::custom("gap", vec![0.5], |s| if s < 0.5 { 0.0 } else { 1.0 }).is_err());
        assert!(Weight::custom("neg", vec![], |s| s - 0.5).is_err());

        let t = Weight::from_table("tab", "# breakpoints: 0.5\n0 1\n0.5 3\n1 1\n").unwrap();
        assert!((t.raw_norm1() - 2.0).abs() < 1e-15);
        assert!((t.eval(0.5) - 1.5).abs() < 1e-15);
        assert!((t.integral().unwrap() - 1.0).abs() < 1e-13);
        assert!(Weight::from_table("short", "0 1\n0.5 1\n").is_err());
    }
}
