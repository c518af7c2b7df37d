//! The kernel `Γ(V; t) = ∫₀¹ ψ(ts) V(s) ds` and window estimates of `𝓖`.

use std::f64::consts::PI;

use hilbert_jackson::kernel::{script_g, script_h, GammaKernel};
use hilbert_jackson::runner::emit_gamma_profile;
use hilbert_jackson::symbols::classical_symbol;
use hilbert_jackson::weights::{named_weight, NamedWeight};

fn main() -> hilbert_jackson::Result<()> {
    let k = GammaKernel::new(named_weight(NamedWeight::Uniform), classical_symbol(1)?);
    for t in [0.5, PI, 10.0] {
        println!(
            "Gamma({t:.4}) = {:.12}, closed form {:.12}",
            k.gamma(t)?,
            2.0 * (1.0 - t.sin() / t)
        );
    }
    println!("H(1, pi) = {}", script_h(&k, 1.0, PI)?.value);

    for (w, m, gamma) in [
        (NamedWeight::Chernykh1, 1, PI),
        (NamedWeight::Chernykh2, 2, 2.0 * PI),
        (NamedWeight::VStar, 2, 7.0 * PI / 5.0),
        (NamedWeight::VHat, 3, PI),
    ] {
        let k = GammaKernel::new(named_weight(w), classical_symbol(m)?);
        let g = script_g(&k, 1.0, gamma, None)?;
        println!(
            "{:<24} G(1, {gamma:.4}) = {:.9} at t = {:.4}",
            k.label(),
            g.value,
            g.argmin
        );
        for (end, min) in &g.cumulative_minima {
            println!("    window to {end:>8.2}: {min:.12}");
        }
    }

    print!("{}", emit_gamma_profile(&k, 0.0, 4.0 * PI, 9, None)?);
    Ok(())
}
