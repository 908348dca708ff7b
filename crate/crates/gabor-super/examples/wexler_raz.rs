//! Duality as a finite table: a window pair generates dual frames
//! exactly when its bracket matrix over the adjoint lattice is the
//! identity at the origin and zero elsewhere.
//!
//! The example computes that table for a genuine dual pair, then
//! perturbs the candidate dual and watches both the table and the frame
//! operator drift away from the identity together.
//!
//! ```sh
//! cargo run --example wexler_raz
//! ```

use num_complex::Complex64;

use gabor_super::duality::dual_window;
use gabor_super::gabor::GaborLattice;
use gabor_super::signal::{gaussian_window, random_signal};
use gabor_super::walnut::{correlations, janssen_coeffs, walnut_apply, wexler_raz_check};

fn main() -> gabor_super::Result<()> {
    let len = 32;
    let lat = GaborLattice::new(4, 4, len)?;
    let g = gaussian_window(len, 0.5, 12.0);
    let gamma = dual_window(&g, lat, 1e-12)?;

    let table = janssen_coeffs(&g, &gamma, lat)?;
    println!("bracket table ({} x {} blocks):", lat.a(), lat.b());
    for j in 0..lat.a() {
        let row: Vec<String> = (0..lat.b())
            .map(|k| format!("{:9.2e}", table.at(j, k).op_norm()))
            .collect();
        println!("  j={j}: [{}]", row.join(", "));
    }
    let wr = wexler_raz_check(&g, &gamma, lat, 1e-9)?;
    println!("deviation from the delta table: {:.3e} ({})", wr.max_dev, verdict(wr.pass));

    // now break duality slightly and check both sides of the equivalence
    let noise = random_signal(len, 1, 99);
    let eps = 1e-3 / noise.max_abs();
    let perturbed = gamma.add(&noise.scale(Complex64::new(eps, 0.0)))?;

    let wr_bad = wexler_raz_check(&g, &perturbed, lat, 1e-6)?;
    let fam = correlations(&g, &perturbed, lat)?;
    let f = random_signal(len, 1, 100);
    let sf = walnut_apply(&fam, &f)?;
    let op_dev = sf.sub(&f)?.max_abs();
    println!(
        "after a 1e-3 perturbation: table deviation {:.3e} ({}), |Sf - f| = {:.3e}",
        wr_bad.max_dev,
        verdict(wr_bad.pass),
        op_dev
    );
    println!("the table and the operator agree on what duality means");
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "dual"
    } else {
        "not dual"
    }
}
