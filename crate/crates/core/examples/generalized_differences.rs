//! Symbols `ψ = |φ(e^{it})|²`, mean values `𝓘(ψ)`, membership in `Ψ`, and
//! the difference operator `Δ_t^φ` against the binomial formula.

use hilbert_jackson::sampling::{random_periodic, trial_rng};
use hilbert_jackson::symbols::{
    binomial_difference, classical_symbol, generalized_difference, is_in_psi, mean_value, SymbolPair,
};
use num_complex::Complex64;

fn main() -> hilbert_jackson::Result<()> {
    for m in 1..=4 {
        let s = classical_symbol(m)?;
        let r = is_in_psi(&s, 1024)?;
        println!(
            "{:<12} I(psi) = {:>8.4}  in Psi: {}  worst mean margin {:.3e}",
            s.label(),
            mean_value(&s)?,
            r.member,
            r.worst_mean_margin
        );
    }

    // φ(z) = z² - 1 gives ψ(t) = 4 sin² t
    let dilated = SymbolPair::from_phi("z^2-1", |z: Complex64| z * z - 1.0, true, 1e-12)?;
    let r = is_in_psi(&dilated, 1024)?;
    println!(
        "{}: I = {:.4}, in Psi: {} {:?}",
        dilated.label(),
        mean_value(&dilated)?,
        r.member,
        r.violations
    );

    let x = random_periodic(&mut trial_rng(1, 0), 8);
    let s3 = classical_symbol(3)?;
    for t in [0.1, 0.7, 2.0] {
        let d = generalized_difference(&s3, &x, t)?;
        let b = binomial_difference(3, &x, t);
        println!(
            "t = {t}: |D_t x| = {:.6}, multiplier vs binomial {:.1e}",
            d.norm(),
            d.max_deviation(&b)
        );
    }
    Ok(())
}
