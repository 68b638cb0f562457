//! Evaluates `E^gamma_{alpha,beta}(-x^alpha)` three ways.

use mlcm_core::mittag_leffler::ml_series;
use mlcm_core::pollard::{ml_via_pollard, PollardParams};
use mlcm_core::spectral::ml_via_spectral;

fn main() -> mlcm_core::Result<()> {
    let p = PollardParams::new(0.5, 1.2, 1.5)?;
    let q = p.ml_params();
    println!(
        "{:>6} {:>22} {:>22} {:>22}",
        "x", "series", "pollard", "spectral"
    );
    for x in [0.25, 1.0, 2.0, 3.0] {
        let series = ml_series(&q, -f64::sqrt(x))?;
        let pollard = ml_via_pollard(&p, 1.0, x)?;
        let spectral = ml_via_spectral(&p, 1.0, x)? * x.powf(1.0 - p.beta);
        println!("{x:>6} {series:>22.17} {pollard:>22.17} {spectral:>22.17}");
    }
    Ok(())
}
