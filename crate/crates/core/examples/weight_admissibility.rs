//! The weights `V*` (from the profile `Z`) and `V̂`: admissibility margins
//! and end-to-end bounds on random elements of the line.

use hilbert_jackson::inequalities::{v_hat_check, v_star_check, CampaignOptions};
use hilbert_jackson::weights::{named_weight, NamedWeight, Z_NORM};

fn main() -> hilbert_jackson::Result<()> {
    let v = named_weight(NamedWeight::VStar);
    println!("|Z|_1 = {Z_NORM:.15} (47/1029), V*(1/2) = {:.6}", v.eval(0.5));

    let opts = CampaignOptions::default();
    for report in [
        v_star_check(&[1, 2, 3], 100, 7, &opts)?,
        v_hat_check(&[1, 2, 3], 100, 8, &opts)?,
    ] {
        println!("{} (all passed: {})", report.check, report.passed);
        for e in &report.entries {
            let a = &e.admissibility;
            print!(
                "  m = {}: G = {:.6} vs {} I = {:.4}",
                e.m, a.g.value, a.factor, a.mean_value
            );
            for c in &e.campaigns {
                print!(", p {} ratio {:.3}", c.grid_meta["p"], c.ratio);
            }
            println!();
        }
    }
    Ok(())
}
