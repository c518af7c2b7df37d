//! The three moduli of one element: `ω_sup`, `ω_{2,V}` and `ω_{p,V}`.

use hilbert_jackson::kernel::GammaKernel;
use hilbert_jackson::moduli::{omega_2v, omega_pv, omega_sup};
use hilbert_jackson::sampling::{random_real, trial_rng};
use hilbert_jackson::symbols::classical_symbol;
use hilbert_jackson::weights::{named_weight, NamedWeight};

fn main() -> hilbert_jackson::Result<()> {
    let x = random_real(&mut trial_rng(3, 0), 10);
    let s = classical_symbol(2)?;
    let v = named_weight(NamedWeight::VHat);
    let k = GammaKernel::new(v.clone(), s.clone());

    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "delta", "w_2V", "w_4V", "w_64V", "w_1024V", "w_sup"
    );
    for delta in [0.05, 0.2, 0.5, 1.0, 2.0] {
        println!(
            "{delta:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            omega_2v(&x, &k, delta)?,
            omega_pv(&x, &s, &v, 4.0, delta)?,
            omega_pv(&x, &s, &v, 64.0, delta)?,
            omega_pv(&x, &s, &v, 1024.0, delta)?,
            omega_sup(&x, &s, delta).value
        );
    }
    Ok(())
}
