//! Generalized moduli of continuity and sharp Jackson–Stechkin type
//! inequalities for elements of a Hilbert space with finite atomic spectral
//! measure.
//!
//! An element is a finite sum `x = Σ a_k e_{λ_k}` of atoms; the group of
//! translations acts by `U_t x = Σ e^{iλ_k t} a_k e_{λ_k}` and `W_σ` is the
//! span of atoms with `|λ| < σ`.
//!
//! Runnable examples live in `examples/`:
//!
//! - `spectral_elements`: construction, multipliers, projection, Parseval tail
//! - `generalized_differences`: symbols `ψ`, mean values, class `Ψ`
//! - `gamma_kernel`: the kernel `Γ(V; t)` and the quantities `𝓗`, `𝓖`
//! - `moduli`: `ω_sup`, `ω_{2,V}` and `ω_{p,V}`
//! - `functional_bounds`: operator and functional inequalities with extremals
//! - `jackson_bounds`: norm and Jackson bounds, sharpness
//! - `classical_constants`: the constants `1/√2`, `C(2m,m)^{-1/2}`, `χ` scan
//! - `weight_admissibility`: `V*` and `V̂`
//! - `run_config`: batch checks from a TOML file

// `!(a <= b)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod inequalities;
pub mod kernel;
pub mod moduli;
pub mod quadrature;
pub mod runner;
pub mod sampling;
pub mod search;
pub mod spectral;
pub mod symbols;
pub mod weights;

pub use error::{Error, Result};
pub use kernel::GammaKernel;
pub use spectral::{LinearMethod, Multiplier, SpectralElement};
pub use symbols::{classical_symbol, SymbolPair};
pub use weights::{named_weight, NamedWeight, Weight};
