//! `E_σ(x) ≤ 𝓖^{-1/2} ω(x; δ)` for several exponents, the norm bound for a
//! plateau method, and a single atom that attains the bound.

use std::f64::consts::PI;

use hilbert_jackson::inequalities::{jackson_bound, norm_bound, sharpness_search};
use hilbert_jackson::kernel::GammaKernel;
use hilbert_jackson::sampling::{random_real, trial_rng};
use hilbert_jackson::symbols::classical_symbol;
use hilbert_jackson::weights::{named_weight, NamedWeight};
use hilbert_jackson::LinearMethod;

fn main() -> hilbert_jackson::Result<()> {
    let k = GammaKernel::new(named_weight(NamedWeight::VStar), classical_symbol(2)?);
    let sigma = 3.0;
    let delta = 7.0 * PI / 5.0 / sigma;
    let x = random_real(&mut trial_rng(11, 0), 16);

    for p in [2.0, 4.0, f64::INFINITY] {
        let r = jackson_bound(&x, sigma, &k, delta, p, None, 1e-9)?;
        println!(
            "p = {p:>3}: E = {:.6} <= {:.6}  ratio {:.4} {}",
            r.lhs, r.rhs, r.ratio, r.verdict
        );
    }

    let plateau = LinearMethod::plateau(sigma, 1.5)?;
    let r = norm_bound(&x, &plateau, &k, delta, None, 1e-9)?;
    println!("plateau method: |x - Lx| = {:.6} <= {:.6} {}", r.lhs, r.rhs, r.verdict);

    let s = sharpness_search(sigma, &k, delta, None, 1e-9)?;
    println!("single atom at {}: ratio {:.12}", s.grid_meta["g_argmin"], s.ratio);
    println!("{}", s.grid_meta["window_note"]);
    Ok(())
}
