//! Compute the canonical dual of a Gaussian window and use the pair to
//! take a signal apart and put it back together.
//!
//! ```sh
//! cargo run --example dual_window
//! ```

use num_complex::Complex64;

use gabor_super::duality::{dual_window, frame_bounds, painless_dual};
use gabor_super::gabor::{analyze, synthesize, GaborLattice};
use gabor_super::signal::{gaussian_window, random_signal, VectorSignal};
use gabor_super::walnut::wexler_raz_check;

fn main() -> gabor_super::Result<()> {
    let len = 64;
    let lat = GaborLattice::new(4, 4, len)?;
    let g = gaussian_window(len, 0.5, 16.0);

    let bounds = frame_bounds(&g, lat, 1e-12)?;
    println!(
        "lattice a={} b={} L={}  redundancy {:.2}",
        lat.a(),
        lat.b(),
        lat.len(),
        lat.redundancy()
    );
    println!(
        "frame bounds A={:.6} B={:.6}  condition {:.3}",
        bounds.lower,
        bounds.upper,
        bounds.condition()
    );

    let gamma = dual_window(&g, lat, 1e-12)?;
    let wr = wexler_raz_check(&g, &gamma, lat, 1e-9)?;
    println!(
        "bracket biorthogonality: max deviation {:.3e} -> {}",
        wr.max_dev,
        if wr.pass { "dual pair" } else { "NOT dual" }
    );

    // round trip: analyze with g, synthesize with the dual
    let f = random_signal(len, 1, 7);
    let c = analyze(&f, &g, lat)?;
    let back = synthesize(&c, &gamma, lat)?;
    let err = back.sub(&f)?.norm() / f.norm();
    println!("reconstruction error (analysis by g, synthesis by dual): {err:.3e}");

    // and in the opposite roles
    let c2 = analyze(&f, &gamma, lat)?;
    let back2 = synthesize(&c2, &g, lat)?;
    println!(
        "reconstruction error (roles swapped):                   {:.3e}",
        back2.sub(&f)?.norm() / f.norm()
    );

    // a compactly supported window at the same density has a closed-form
    // dual: the frame operator degenerates to a pointwise multiplier
    let mut v = vec![Complex64::new(0.0, 0.0); len];
    let step = lat.walnut_step();
    for x in v.iter_mut().take(step) {
        *x = Complex64::new(1.0, 0.0);
    }
    let boxcar = VectorSignal::from_scalar(v);
    let closed = painless_dual(&boxcar, lat)?;
    let iterative = dual_window(&boxcar, lat, 1e-13)?;
    println!(
        "short support: closed-form vs solver dual agree to {:.3e}",
        closed.sub(&iterative)?.max_abs()
    );
    Ok(())
}
