//! Inverting inside the shift algebra.
//!
//! The frame operator of a short-support or smooth window is a sparse
//! sum of matrix-weighted translates. Its inverse is again such a sum —
//! supported on the same stride, with symbols that fall off away from
//! the zero shift. The example inverts one, inspects the decay, and
//! uses the inverse to reproduce the dual window.
//!
//! ```sh
//! cargo run --example spectral_inversion
//! ```

use gabor_super::amalgam::Weight;
use gabor_super::duality::dual_window;
use gabor_super::gabor::GaborLattice;
use gabor_super::shiftalg::{algebra_norm, spectral_invert, ShiftOperator};
use gabor_super::signal::gaussian_window;
use gabor_super::walnut::correlations;

fn main() -> gabor_super::Result<()> {
    let len = 32;
    let lat = GaborLattice::new(2, 8, len)?;
    let g = gaussian_window(len, 0.5, 16.0);

    let fam = correlations(&g, &g, lat)?;
    let op = ShiftOperator::from_correlations(&fam);
    println!(
        "frame operator as a shift sum: {} terms on stride {}",
        op.num_terms(),
        lat.walnut_step()
    );

    let w = Weight::polynomial(len, 1.0)?;
    println!("algebra norm (weighted): {:.4}", algebra_norm(&op, &w)?.value);

    let inv = spectral_invert(&op, &w, 1e-8)?;
    println!(
        "inverted: condition {:.2}, verified round-trip {:.3e}",
        inv.condition, inv.roundtrip
    );
    println!("inverse symbol sizes by shift (weight shown for scale):");
    for e in &inv.decay {
        println!(
            "  x={:2}  dist {:2}  |m_x| = {:.6e}   w(x) = {:.1}",
            e.shift, e.dist, e.sym_norm, e.weight
        );
    }

    // the inverse applied to the window is the dual window
    let via_algebra = inv.inverse.apply(&g)?;
    let via_solver = dual_window(&g, lat, 1e-12)?;
    println!(
        "inverse(op) g  vs  solver dual: max deviation {:.3e}",
        via_algebra.sub(&via_solver)?.max_abs()
    );

    // algebra sanity: composing with the inverse lands near the identity
    let prod = op.compose(&inv.inverse)?;
    let id = ShiftOperator::identity(len, 1);
    let dev = prod.to_dense().sub(&id.to_dense()).max_norm();
    println!("op . inverse vs identity (dense check): {dev:.3e}");
    Ok(())
}
