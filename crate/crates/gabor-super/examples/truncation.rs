//! How fast do partial Gabor sums converge?
//!
//! Reconstruction sums over the whole lattice. Truncating to a centered
//! box of translates and modulations leaves an error that the dual
//! pair's localization controls; the profile below tracks that error in
//! a weighted amalgam norm as the box grows to the full lattice.
//!
//! ```sh
//! cargo run --example truncation
//! ```

use gabor_super::amalgam::{Exponent, Weight};
use gabor_super::duality::{dual_window, truncation_error_profile};
use gabor_super::gabor::GaborLattice;
use gabor_super::signal::gaussian_window;

fn main() -> gabor_super::Result<()> {
    let len = 64;
    let lat = GaborLattice::new(8, 8, len)?;
    let g = gaussian_window(len, 0.5, 16.0);
    let gamma = dual_window(&g, lat, 1e-12)?;

    // a smooth, localized payload: a modulated bump away from the origin
    let f = gaussian_window(len, 20.25, 30.0).modulate(11);
    let f = f.scale(num_complex::Complex64::new(1.0 / f.norm(), 0.0));

    let v = Weight::constant(len);
    let profile = truncation_error_profile(
        &f,
        &g,
        &gamma,
        lat,
        Exponent::new(2.0)?,
        Exponent::new(2.0)?,
        &v,
    )?;

    println!("box radius (translates, modulations) -> amalgam error");
    for e in &profile.entries {
        let bar_len = (48.0 * e.err.max(1e-16).log10().max(-16.0).abs() / 16.0) as usize;
        println!(
            "  ({:2}, {:2})  {:.6e}  {}",
            e.k_radius,
            e.m_radius,
            e.err,
            "#".repeat(bar_len)
        );
    }
    let last = profile.entries.last().expect("profile is never empty");
    println!(
        "full box ({} x {} lattice points): error {:.3e}",
        lat.n_time(),
        lat.n_freq(),
        last.err
    );
    Ok(())
}
