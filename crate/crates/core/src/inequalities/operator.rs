//! The inequality `|(Tx, f)| ≤ ‖Sx‖ · ‖((S|_{T(H)})⁻¹ T)* f‖` for commuting
//! operators, realized as diagonal operators on a finite orthonormal basis.

use num_complex::Complex64;
use rand::Rng;

use super::report::InequalityReport;
use crate::error::{Error, Result};
use crate::sampling::complex_gaussian;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Diagonal `T` and `S`; `S` must be nonzero wherever `T` is.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperatorPair {
    t_diag: Vec<Complex64>,
    s_diag: Vec<Complex64>,
}

impl DiagonalOperatorPair {
    pub fn new(t_diag: Vec<Complex64>, s_diag: Vec<Complex64>) -> Result<Self> {
        if t_diag.len() != s_diag.len() {
            return Err(Error::DimensionMismatch {
                expected: t_diag.len(),
                got: s_diag.len(),
            });
        }
        if let Some(index) = (0..t_diag.len()).find(|&i| t_diag[i] != zero() && s_diag[i] == zero()) {
            return Err(Error::NotInvertibleOnRange { index });
        }
        Ok(Self { t_diag, s_diag })
    }

    /// Random pair: each `T` entry is zero with probability 1/4, and `S`
    /// may vanish off the range of `T`.
    pub fn random<R: Rng>(rng: &mut R, dim: usize) -> Self {
        let mut t = Vec::with_capacity(dim);
        let mut s = Vec::with_capacity(dim);
        for _ in 0..dim {
            let ti = if rng.gen_bool(0.25) {
                zero()
            } else {
                complex_gaussian(rng)
            };
            let si = if ti == zero() && rng.gen_bool(0.5) {
                zero()
            } else {
                complex_gaussian(rng)
            };
            t.push(ti);
            s.push(si);
        }
        Self { t_diag: t, s_diag: s }
    }

    pub fn dim(&self) -> usize {
        self.t_diag.len()
    }

    pub fn t_diag(&self) -> &[Complex64] {
        &self.t_diag
    }

    pub fn s_diag(&self) -> &[Complex64] {
        &self.s_diag
    }

    /// Diagonal of `(S|_{T(H)})⁻¹ T`, with `0/0 = 0` off the range of `T`.
    pub fn quotient(&self) -> Vec<Complex64> {
        self.t_diag
            .iter()
            .zip(&self.s_diag)
            .map(|(&t, &s)| if t == zero() { zero() } else { t / s })
            .collect()
    }

    /// `((S|_{T(H)})⁻¹ T)* f`.
    pub fn adjoint_quotient_apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.quotient().iter().zip(f).map(|(q, fi)| q.conj() * fi).collect()
    }

    /// Operator norm of `((S|_{T(H)})⁻¹ T)*`.
    pub fn adjoint_quotient_norm(&self) -> f64 {
        self.quotient().iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    fn check_dim(&self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// Certifies `|(Tx, f)| ≤ ‖Sx‖ · ‖((S|_{T(H)})⁻¹ T)* f‖`.
pub fn verify_operator_inequality(
    ops: &DiagonalOperatorPair,
    x: &[Complex64],
    f: &[Complex64],
    slack: f64,
) -> Result<InequalityReport> {
    ops.check_dim(x)?;
    ops.check_dim(f)?;
    let lhs = ops
        .t_diag
        .iter()
        .zip(x)
        .zip(f)
        .map(|((t, xi), fi)| t * xi * fi.conj())
        .sum::<Complex64>()
        .norm();
    let sx: Vec<Complex64> = ops.s_diag.iter().zip(x).map(|(s, xi)| s * xi).collect();
    let rhs = norm(&sx) * norm(&ops.adjoint_quotient_apply(f));
    Ok(InequalityReport::new("operator_inequality", lhs, rhs, 1.0, slack).meta("dim", ops.dim()))
}

/// `x̃ = (S|_{T(H)})⁻¹ ((S|_{T(H)})⁻¹ T)* f`, the element attaining equality.
pub fn operator_extremal(ops: &DiagonalOperatorPair, f: &[Complex64]) -> Result<Vec<Complex64>> {
    ops.check_dim(f)?;
    Ok(ops
        .t_diag
        .iter()
        .zip(&ops.s_diag)
        .zip(f)
        .map(|((&t, &s), &fi)| if t == zero() { zero() } else { (t / s).conj() * fi / s })
        .collect())
}

/// Certifies the norm form `‖Tx‖ ≤ ‖Sx‖ · ‖((S|_{T(H)})⁻¹ T)*‖`.
pub fn verify_operator_norm_inequality(
    ops: &DiagonalOperatorPair,
    x: &[Complex64],
    slack: f64,
) -> Result<InequalityReport> {
    ops.check_dim(x)?;
    let tx: Vec<Complex64> = ops.t_diag.iter().zip(x).map(|(t, xi)| t * xi).collect();
    let sx: Vec<Complex64> = ops.s_diag.iter().zip(x).map(|(s, xi)| s * xi).collect();
    let lhs = norm(&tx);
    let constant = ops.adjoint_quotient_norm();
    Ok(InequalityReport::new(
        "operator_norm_inequality",
        lhs,
        norm(&sx) * constant,
        constant,
        slack,
    ))
}

/// Extremal input for the norm form: `x̃` built from the unit vector at the
/// index where `|t_i / s_i|` is largest.
pub fn operator_norm_extremal(ops: &DiagonalOperatorPair) -> Vec<Complex64> {
    let q = ops.quotient();
    let mut f = vec![zero(); ops.dim()];
    if let Some((i, _)) = q.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())) {
        f[i] = Complex64::new(1.0, 0.0);
    }
    operator_extremal(ops, &f).expect("dimension matches")
}
