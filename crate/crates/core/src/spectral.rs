//! Hilbert-space elements given by finite atomic spectral data, and the
//! multiplier calculus acting on them.
//!
//! An element is a finite list of `(frequency, amplitude)` atoms. The same
//! representation covers Fourier coefficients of periodic functions (integer
//! frequencies), spectral samples on the real line, and Bohr coefficients of
//! almost periodic sums. Every norm and inner product is an exact finite sum.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pairwise summation, so sums do not depend on accumulation order drift.
pub(crate) fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (l, r) = v.split_at(v.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// One spectral atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub frequency: f64,
    pub amp: Complex64,
}

/// An element of the Hilbert space in canonical form: atoms sorted by
/// frequency, frequencies distinct, no zero amplitudes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectralElement {
    atoms: Vec<Atom>,
}

impl SpectralElement {
    /// Builds an element, merging repeated frequencies and dropping zeros.
    pub fn new<I>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Complex64)>,
    {
        let mut raw = Vec::new();
        for (frequency, amp) in atoms {
            if !frequency.is_finite() || !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::InvalidAtom {
                    frequency,
                    re: amp.re,
                    im: amp.im,
                });
            }
            raw.push(Atom { frequency, amp });
        }
        Ok(Self::canonical(raw))
    }

    fn canonical(mut raw: Vec<Atom>) -> Self {
        // -0.0 and 0.0 are the same frequency
        for a in raw.iter_mut() {
            if a.frequency == 0.0 {
                a.frequency = 0.0;
            }
        }
        raw.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
        let mut atoms: Vec<Atom> = Vec::with_capacity(raw.len());
        for a in raw {
            match atoms.last_mut() {
                Some(last) if last.frequency == a.frequency => last.amp += a.amp,
                _ => atoms.push(a),
            }
        }
        atoms.retain(|a| a.amp != Complex64::new(0.0, 0.0));
        Self { atoms }
    }

    /// Trigonometric polynomial with the given Fourier coefficients.
    pub fn periodic<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        Self::new(coeffs.into_iter().map(|(k, c)| (k as f64, c)))
    }

    /// Almost periodic sum `Σ a(x, λ) e^{iλt}` given by its Bohr coefficients.
    pub fn almost_periodic<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Complex64)>,
    {
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Frequencies carrying nonzero mass.
    pub fn spectrum(&self) -> impl Iterator<Item = f64> + '_ {
        self.atoms.iter().map(|a| a.frequency)
    }

    /// Largest `|λ|` in the spectrum, 0 for the zero element.
    pub fn max_abs_frequency(&self) -> f64 {
        self.atoms.iter().map(|a| a.frequency.abs()).fold(0.0, f64::max)
    }

    /// Amplitude at `frequency`, zero if absent.
    pub fn amplitude(&self, frequency: f64) -> Complex64 {
        self.atoms
            .binary_search_by(|a| a.frequency.total_cmp(&frequency))
            .map(|i| self.atoms[i].amp)
            .unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        let v: Vec<f64> = self.atoms.iter().map(|a| a.amp.norm_sqr()).collect();
        pairwise_sum(&v)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Σ g(λ) |amp(λ)|²`, i.e. the integral of `g` against `d(E(s)x, x)`.
    pub fn spectral_integral<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        let v: Vec<f64> = self.atoms.iter().map(|a| g(a.frequency) * a.amp.norm_sqr()).collect();
        pairwise_sum(&v)
    }

    /// False when `x = U_t x` for every `t`, i.e. the spectrum is empty or `{0}`.
    pub fn moves_under_translation(&self) -> bool {
        self.atoms.iter().any(|a| a.frequency != 0.0)
    }

    /// Scales every amplitude by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self::canonical(
            self.atoms
                .iter()
                .map(|a| Atom {
                    frequency: a.frequency,
                    amp: a.amp * c,
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::canonical(self.atoms.iter().chain(other.atoms.iter()).copied().collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Largest atomwise amplitude difference between two elements.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.atoms.iter().map(|a| a.amp.norm()).fold(0.0, f64::max)
    }

    /// Parses the tabular format: one `frequency re im` triple per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected `frequency re im`, found {} fields", fields.len()),
                });
            }
            let mut nums = [0.0; 3];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("not a number: {field}"),
                })?;
            }
            atoms.push((nums[0], Complex64::new(nums[1], nums[2])));
        }
        Self::new(atoms)
    }

    pub fn read(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::io(&path, e))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        std::fs::write(path.as_ref(), self.to_string()).map_err(|e| Error::io(&path, e))
    }
}

impl fmt::Display for SpectralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.atoms {
            writeln!(f, "{:?} {:?} {:?}", a.frequency, a.amp.re, a.amp.im)?;
        }
        Ok(())
    }
}

/// `(x, f) = Σ amp_x(λ) · conj(amp_f(λ))` over common frequencies.
pub fn inner(x: &SpectralElement, f: &SpectralElement) -> Complex64 {
    let (mut i, mut j) = (0, 0);
    let (xa, fa) = (x.atoms(), f.atoms());
    let mut acc = Complex64::new(0.0, 0.0);
    while i < xa.len() && j < fa.len() {
        match xa[i].frequency.total_cmp(&fa[j].frequency) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += xa[i].amp * fa[j].amp.conj();
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// A complex function of the spectral variable, applied as `F(A)`.
#[derive(Clone)]
pub struct Multiplier {
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub description: String,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multiplier")
            .field("description", &self.description)
            .finish()
    }
}

impl Multiplier {
    pub fn new<F>(description: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            description: description.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new("1", |_| Complex64::new(1.0, 0.0))
    }

    /// `F(s) = e^{ist}`, the unitary group element `U_t`.
    pub fn translation(t: f64) -> Self {
        Self::new(format!("exp(i s {t})"), move |s| Complex64::from_polar(1.0, s * t))
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        (self.eval)(s)
    }

    /// Pointwise product `F·G`.
    pub fn product(&self, other: &Self) -> Self {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Self {
            eval: Arc::new(move |s| f(s) * g(s)),
            description: format!("({})·({})", self.description, other.description),
        }
    }
}

/// Maps each atom `(λ, c)` to `(λ, F(λ)·c)`.
pub fn apply_multiplier(mult: &Multiplier, x: &SpectralElement) -> Result<SpectralElement> {
    let mut out = Vec::with_capacity(x.len());
    for a in x.atoms() {
        let v = mult.eval(a.frequency);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::MultiplierSingular { lambda: a.frequency });
        }
        out.push(Atom {
            frequency: a.frequency,
            amp: v * a.amp,
        });
    }
    Ok(SpectralElement::canonical(out))
}

/// `U_t x`.
pub fn translate(x: &SpectralElement, t: f64) -> SpectralElement {
    SpectralElement::canonical(
        x.atoms()
            .iter()
            .map(|a| Atom {
                frequency: a.frequency,
                amp: Complex64::from_polar(1.0, a.frequency * t) * a.amp,
            })
            .collect(),
    )
}

/// Spectral projection onto `W_σ`: keeps atoms with `|λ| < σ`.
pub fn project(x: &SpectralElement, sigma: f64) -> SpectralElement {
    SpectralElement {
        atoms: x
            .atoms()
            .iter()
            .filter(|a| a.frequency.abs() < sigma)
            .copied()
            .collect(),
    }
}

/// Best approximation error by `W_σ`: the Parseval tail over `|λ| ≥ σ`.
pub fn best_approx_error(x: &SpectralElement, sigma: f64) -> f64 {
    x.spectral_integral(|s| if s.abs() >= sigma { 1.0 } else { 0.0 }).sqrt()
}

/// Linear approximation method `Λx = ∫_{|t|<σ} λ(t) dE(t) x` with `λ ≡ 1`
/// on `(-ε, ε)`.
#[derive(Debug, Clone)]
pub struct LinearMethod {
    sigma: f64,
    epsilon: f64,
    lam: Multiplier,
    projection: bool,
}

const METHOD_CHECK_POINTS: usize = 1000;

impl LinearMethod {
    /// Validates `0 < ε < σ`, `λ = 1` on `(-ε, ε)` and `|λ| ≤ bound` on
    /// `(-σ, σ)`, both on a sample grid.
    pub fn new(sigma: f64, epsilon: f64, lam: Multiplier, bound: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidMethod(format!("sigma must be positive, got {sigma}")));
        }
        if !(epsilon > 0.0 && epsilon < sigma) {
            return Err(Error::InvalidMethod(format!(
                "epsilon must lie in (0, sigma), got {epsilon}"
            )));
        }
        let n = METHOD_CHECK_POINTS;
        for i in 0..n {
            let u = -1.0 + 2.0 * (i as f64 + 0.5) / n as f64;
            let inside = lam.eval(u * epsilon);
            if (inside - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
                return Err(Error::InvalidMethod(format!(
                    "lambda({}) = {inside} but must equal 1 on (-epsilon, epsilon)",
                    u * epsilon
                )));
            }
            let v = lam.eval(u * sigma);
            if !(v.norm() <= bound) {
                return Err(Error::InvalidMethod(format!(
                    "|lambda({})| = {} exceeds bound {bound}",
                    u * sigma,
                    v.norm()
                )));
            }
        }
        Ok(Self {
            sigma,
            epsilon,
            lam,
            projection: false,
        })
    }

    /// Partial-sum projection onto `W_σ` (`λ ≡ 1`).
    pub fn projection(sigma: f64) -> Result<Self> {
        let mut m = Self::new(sigma, 0.5 * sigma, Multiplier::identity(), 1.0)?;
        m.projection = true;
        Ok(m)
    }

    /// `λ ≡ 1` on `[-ε, ε]`, then a raised-cosine rolloff reaching 0 at `|t| = σ`.
    pub fn plateau(sigma: f64, epsilon: f64) -> Result<Self> {
        let lam = Multiplier::new(format!("plateau({epsilon}, {sigma})"), move |t: f64| {
            let a = t.abs();
            let v = if a <= epsilon {
                1.0
            } else if a >= sigma {
                0.0
            } else {
                0.5 * (1.0 + (std::f64::consts::PI * (a - epsilon) / (sigma - epsilon)).cos())
            };
            Complex64::new(v, 0.0)
        });
        Self::new(sigma, epsilon, lam, 1.0)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn is_projection(&self) -> bool {
        self.projection
    }

    /// `λ(t)` for `|t| < σ`, zero outside.
    pub fn lambda(&self, t: f64) -> Complex64 {
        if t.abs() < self.sigma {
            self.lam.eval(t)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Residual symbol `θ(t) = 1 - λ(t)` inside `(-σ, σ)`, `1` outside.
    pub fn theta(&self, t: f64) -> Complex64 {
        if t.abs() < self.sigma {
            Complex64::new(1.0, 0.0) - self.lam.eval(t)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }
}

/// Splits `x` into `Λx` and `x - Λx`.
pub fn apply_linear_method(method: &LinearMethod, x: &SpectralElement) -> (SpectralElement, SpectralElement) {
    let mut approx = Vec::new();
    let mut residual = Vec::new();
    for a in x.atoms() {
        let l = method.lambda(a.frequency);
        let kept = l * a.amp;
        approx.push(Atom {
            frequency: a.frequency,
            amp: kept,
        });
        residual.push(Atom {
            frequency: a.frequency,
            amp: a.amp - kept,
        });
    }
    (SpectralElement::canonical(approx), SpectralElement::canonical(residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn duplicates_merge() {
        let x = SpectralElement::new([(1.0, c(1.0, 0.0)), (1.0, c(2.0, 0.0))]).unwrap();
        assert_eq!(
            x.atoms(),
            &[Atom {
                frequency: 1.0,
                amp: c(3.0, 0.0)
            }]
        );
    }

    #[test]
    fn empty_is_zero() {
        let x = SpectralElement::new([]).unwrap();
        assert!(x.is_zero());
        assert_eq!(x.norm(), 0.0);
    }

    #[test]
    fn atoms_are_sorted() {
        let x = SpectralElement::new([(2.0, c(0.0, 1.0)), (-1.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(x.atoms()[0].frequency, -1.0);
        assert_eq!(x.atoms()[1].frequency, 2.0);
        assert_eq!(x.norm_sqr(), 2.0);
    }

    #[test]
    fn cancelling_atoms_vanish() {
        let x = SpectralElement::new([(1.0, c(1.0, 0.0)), (1.0, c(-1.0, 0.0))]).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn invalid_atom_rejected() {
        assert!(matches!(
            SpectralElement::new([(f64::NAN, c(1.0, 0.0))]),
            Err(Error::InvalidAtom { .. })
        ));
        assert!(matches!(
            SpectralElement::new([(1.0, c(f64::INFINITY, 0.0))]),
            Err(Error::InvalidAtom { .. })
        ));
    }

    #[test]
    fn inner_products() {
        let x = SpectralElement::new([(1.0, c(1.0, 0.0))]).unwrap();
        let f = SpectralElement::new([(1.0, c(0.0, 1.0))]).unwrap();
        assert_eq!(inner(&x, &f), c(0.0, -1.0));
        let g = SpectralElement::new([(2.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(inner(&x, &g), c(0.0, 0.0));
        let y = SpectralElement::new([(0.0, c(3.0, 0.0))]).unwrap();
        assert_eq!(inner(&y, &y), c(9.0, 0.0));
    }

    #[test]
    fn multipliers() {
        let x = SpectralElement::new([(2.0, c(1.0, 0.0)), (-3.0, c(0.5, 0.5))]).unwrap();
        assert_eq!(apply_multiplier(&Multiplier::identity(), &x).unwrap(), x);

        let a = Multiplier::new("t", |t| c(t, 0.0));
        let y = SpectralElement::new([(2.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(
            apply_multiplier(&a, &y).unwrap().atoms(),
            &[Atom {
                frequency: 2.0,
                amp: c(2.0, 0.0)
            }]
        );

        let u = SpectralElement::new([(1.0, c(1.0, 0.0))]).unwrap();
        let r = apply_multiplier(&Multiplier::translation(PI), &u).unwrap();
        assert!((r.amplitude(1.0) - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_multiplier_reports_frequency() {
        let x = SpectralElement::new([(0.0, c(1.0, 0.0)), (1.0, c(1.0, 0.0))]).unwrap();
        let inv = Multiplier::new("1/t", |t| c(1.0 / t, 0.0));
        assert_eq!(
            apply_multiplier(&inv, &x).unwrap_err(),
            Error::MultiplierSingular { lambda: 0.0 }
        );
    }

    #[test]
    fn translations() {
        let x = SpectralElement::new([(1.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(translate(&x, 0.0), x);
        let y = translate(&x, PI / 2.0);
        assert!((y.amplitude(1.0) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_and_tail() {
        let x = SpectralElement::new([(1.0, c(2.0, 0.0))]).unwrap();
        assert_eq!(best_approx_error(&x, 2.0), 0.0);
        let x = SpectralElement::new([(3.0, c(2.0, 0.0))]).unwrap();
        assert_eq!(best_approx_error(&x, 2.0), 2.0);
        let x = SpectralElement::new([(1.0, c(1.0, 0.0)), (5.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(best_approx_error(&x, 2.0), 1.0);

        let x = SpectralElement::new([(1.0, c(1.0, 0.0)), (3.0, c(1.0, 0.0))]).unwrap();
        assert_eq!(
            project(&x, 2.0).atoms(),
            &[Atom {
                frequency: 1.0,
                amp: c(1.0, 0.0)
            }]
        );
        assert_eq!(project(&x, 10.0), x);
        let edge = SpectralElement::new([(2.0, c(1.0, 0.0))]).unwrap();
        assert!(project(&edge, 2.0).is_zero());
        assert_eq!(best_approx_error(&edge, 2.0), 1.0);
    }

    #[test]
    fn linear_methods() {
        let sigma = 4.0;
        let x = SpectralElement::new([(1.0, c(1.0, 2.0)), (-3.5, c(0.3, 0.0)), (7.0, c(0.0, -1.0))]).unwrap();
        let proj = LinearMethod::projection(sigma).unwrap();
        let (_, res) = apply_linear_method(&proj, &x);
        assert_eq!(res, x.sub(&project(&x, sigma)));

        let plat = LinearMethod::plateau(sigma, 1.5).unwrap();
        let inside = SpectralElement::new([(1.0, c(1.0, 0.0)), (-1.2, c(0.0, 1.0))]).unwrap();
        assert!(apply_linear_method(&plat, &inside).1.is_zero());

        let outside = SpectralElement::new([(sigma + 1.0, c(0.7, -0.2))]).unwrap();
        assert_eq!(apply_linear_method(&plat, &outside).1, outside);
    }

    #[test]
    fn method_validation() {
        assert!(LinearMethod::plateau(1.0, 1.0).is_err());
        assert!(LinearMethod::plateau(1.0, 0.0).is_err());
        let bad = Multiplier::new("half", |_| c(0.5, 0.0));
        assert!(LinearMethod::new(2.0, 1.0, bad, 1.0).is_err());
        let big = Multiplier::new("big", |t: f64| c(if t.abs() < 1.0 { 1.0 } else { 3.0 }, 0.0));
        assert!(LinearMethod::new(2.0, 1.0, big, 2.0).is_err());
    }

    #[test]
    fn text_format() {
        let x = SpectralElement::parse("# header\n1.5 1 -2\n-3 0.25 0\n\n").unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(SpectralElement::parse(&x.to_string()).unwrap(), x);
        let err = SpectralElement::parse("1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = SpectralElement::parse("0 0 0\n1 a 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
