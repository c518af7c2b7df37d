//! The operator inequality on diagonal pairs and the functional bound for a
//! linear method, each with its extremal element.

use std::f64::consts::PI;

use hilbert_jackson::inequalities::{
    functional_bound, functional_extremal, operator_extremal, verify_operator_inequality, DiagonalOperatorPair,
};
use hilbert_jackson::kernel::GammaKernel;
use hilbert_jackson::sampling::{random_real, random_vector, trial_rng};
use hilbert_jackson::symbols::classical_symbol;
use hilbert_jackson::weights::{named_weight, NamedWeight};
use hilbert_jackson::LinearMethod;

fn main() -> hilbert_jackson::Result<()> {
    let mut rng = trial_rng(5, 0);
    let ops = DiagonalOperatorPair::random(&mut rng, 6);
    let x = random_vector(&mut rng, 6);
    let f = random_vector(&mut rng, 6);
    let r = verify_operator_inequality(&ops, &x, &f, 1e-12)?;
    println!("operator: |(Tx, f)| = {:.6} <= {:.6} ({})", r.lhs, r.rhs, r.verdict);
    let xt = operator_extremal(&ops, &f)?;
    println!(
        "operator extremal ratio {:.15}",
        verify_operator_inequality(&ops, &xt, &f, 1e-12)?.ratio
    );

    let k = GammaKernel::new(named_weight(NamedWeight::VHat), classical_symbol(2)?);
    let sigma = 4.0;
    let delta = PI / sigma;
    let x = random_real(&mut rng, 12);
    let f = x.add(&random_real(&mut rng, 6));
    for method in [LinearMethod::projection(sigma)?, LinearMethod::plateau(sigma, 1.0)?] {
        let r = functional_bound(&x, &f, &method, &k, delta, 1e-9)?;
        let xt = functional_extremal(&f, &method, &k, delta)?;
        let e = functional_bound(&xt, &f, &method, &k, delta, 1e-9)?;
        println!(
            "epsilon = {}: ratio {:.6} ({}), at the extremal {:.12}",
            method.epsilon(),
            r.ratio,
            r.verdict,
            e.ratio
        );
    }
    Ok(())
}
