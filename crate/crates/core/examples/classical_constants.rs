//! Sharp constants for best approximation by trigonometric polynomials:
//! `1/√2`, `C(2m,m)^{-1/2}`, the bound `√(m+1)/2^m`, and the smallest step
//! observed to work with `C(2m,m)^{-1/2}`.

use std::f64::consts::PI;

use hilbert_jackson::inequalities::{chernykh_check, chi_bound_check, minimal_delta_scan, CampaignOptions};

fn main() -> hilbert_jackson::Result<()> {
    let opts = CampaignOptions::default();
    for m in 1..=3 {
        let r = chernykh_check(m, 4, 300, 1, &opts)?;
        println!(
            "m = {m}: constant {:.6}, G gives {}, worst E/(c w) = {:.4}, sharpness {} ({})",
            r.constant, r.grid_meta["g_implied_constant"], r.ratio, r.grid_meta["sharpness_ratio"], r.verdict
        );
    }
    for m in [2, 3] {
        let r = chi_bound_check(m, 5, 200, 2, 1e-9)?;
        println!(
            "chi bound m = {m}: constant {:.6}, worst ratio {:.4} ({})",
            r.constant, r.ratio, r.verdict
        );
    }
    let grid: Vec<f64> = (1..=40).map(|k| k as f64 * PI / 20.0).collect();
    let scan = minimal_delta_scan(2, 3, 300, 3, &grid)?;
    for row in scan.rows.iter().step_by(4) {
        println!("delta = {:.3} pi: max ratio {:.4}", row.delta / PI, row.max_ratio);
    }
    if let Some(d) = scan.minimal_delta {
        println!("observed minimal delta {:.3} pi (bound 1.4 pi)", d / PI);
    }
    Ok(())
}
