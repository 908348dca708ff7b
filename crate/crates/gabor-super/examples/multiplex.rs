//! Two independent signals, one coefficient sequence.
//!
//! A window with two channels turns the pair of signals into a single
//! scalar Gabor coefficient sequence — each coefficient already sums
//! over channels. When the vector window generates a frame, the dual
//! vector window pulls the individual signals back out of that one
//! sequence.
//!
//! ```sh
//! cargo run --example multiplex
//! ```

use gabor_super::duality::{dual_window, frame_bounds};
use gabor_super::gabor::{analyze, synthesize, GaborLattice};
use gabor_super::signal::{gaussian_window, random_signal, VectorSignal};

fn main() -> gabor_super::Result<()> {
    let len = 16;
    let lat = GaborLattice::new(2, 2, len)?;

    // one channel gets a Gaussian bump, the other the same bump shifted
    // and modulated, so the channels are genuinely different
    let bump = gaussian_window(len, 0.5, 6.0);
    let other = bump.translate(5).modulate(3);
    let g = VectorSignal::from_channels(&[bump, other])?;

    let bounds = frame_bounds(&g, lat, 1e-12)?;
    println!(
        "vector window, n=2: frame bounds ({:.4}, {:.4})",
        bounds.lower, bounds.upper
    );

    // two unrelated payloads
    let f1 = random_signal(len, 1, 41);
    let f2 = random_signal(len, 1, 42);
    let f = VectorSignal::from_channels(&[f1.clone(), f2.clone()])?;

    // encode: a single scalar sequence of n_time * n_freq numbers
    let c = analyze(&f, &g, lat)?;
    println!(
        "encoded 2 x {len} samples into {} scalar coefficients",
        lat.n_time() * lat.n_freq()
    );

    // decode with the dual vector window
    let gamma = dual_window(&g, lat, 1e-12)?;
    let recovered = synthesize(&c, &gamma, lat)?;
    for (i, original) in [f1, f2].iter().enumerate() {
        let err = recovered.channel(i).sub(original)?.max_abs();
        println!("channel {i}: max recovery error {err:.3e}");
    }

    // the coefficients really are shared: zeroing the second channel of
    // the window changes every coefficient, not a disjoint half
    let g_half = VectorSignal::from_channels(&[
        g.channel(0),
        VectorSignal::zeros(len, 1),
    ])?;
    let c_half = analyze(&f, &g_half, lat)?;
    let mut changed = 0;
    for k in 0..lat.n_time() {
        for m in 0..lat.n_freq() {
            if (c.at(k, m) - c_half.at(k, m)).norm() > 1e-12 {
                changed += 1;
            }
        }
    }
    println!(
        "dropping one window channel changes {changed} of {} coefficients",
        lat.n_time() * lat.n_freq()
    );
    Ok(())
}
