//! Atomic elements, multipliers, translations and the best approximation
//! error `E_σ`.

use std::f64::consts::PI;

use hilbert_jackson::spectral::{apply_multiplier, best_approx_error, project, translate, Multiplier};
use hilbert_jackson::SpectralElement;
use num_complex::Complex64;

fn main() -> hilbert_jackson::Result<()> {
    let x = SpectralElement::new([
        (0.5, Complex64::new(1.0, 0.0)),
        (-2.0, Complex64::new(0.0, 2.0)),
        (3.5, Complex64::new(-1.0, 1.0)),
        (0.5, Complex64::new(0.5, 0.0)),
    ])?;
    println!("x (canonical, duplicates merged):\n{x}");
    println!("|x| = {:.6}", x.norm());

    let a = Multiplier::new("A", |t| Complex64::new(t, 0.0));
    println!("A x:\n{}", apply_multiplier(&a, &x)?);

    let shifted = translate(&x, PI / 3.0);
    println!("|U_t x| = {:.6} (unitary)", shifted.norm());

    for sigma in [1.0, 2.0, 2.5, 4.0] {
        let p = project(&x, sigma);
        let e = best_approx_error(&x, sigma);
        println!(
            "sigma = {sigma}: {} atoms kept, E = {e:.6}, |Px|^2 + E^2 - |x|^2 = {:.1e}",
            p.len(),
            p.norm_sqr() + e * e - x.norm_sqr()
        );
    }

    // round trip through the `frequency re im` text format
    let back = SpectralElement::parse(&x.to_string())?;
    assert_eq!(back, x);
    Ok(())
}
