//! Weighted mixed norms: measure a signal block by block, then sum the
//! block norms with a weight. The example evaluates a few norms and
//! spot-checks the inequalities the rest of the crate leans on.
//!
//! ```sh
//! cargo run --example amalgam_norms
//! ```

use gabor_super::amalgam::{
    amalgam_norm, moderate_constant, periodization_bound_check, translation_norm_check,
    AmalgamParams, Exponent, Weight,
};
use gabor_super::signal::{gaussian_window, random_signal};

fn main() -> gabor_super::Result<()> {
    let len = 32;
    let block = 4;
    let f = gaussian_window(len, 0.5, 10.0);

    let v = Weight::polynomial(len, 1.0)?;
    println!("weight (1 + wrap distance)^1, first half: {:?}", &v.values()[..len / 2]);
    println!("submultiplicative: {}", v.is_submultiplicative());
    println!(
        "moderate against itself: constant {:.3}",
        moderate_constant(&v, &v)?
    );

    for (p, q) in [(1.0, 1.0), (2.0, 2.0), (1.0, 2.0), (2.0, 1.0)] {
        let prm = AmalgamParams::new(
            Exponent::new(p)?,
            Exponent::new(q)?,
            block,
            v.clone(),
        );
        println!(
            "  ({p}, {q}) amalgam norm of the bump: {:.6}",
            amalgam_norm(&f, &prm)?
        );
    }
    let sup = AmalgamParams::new(Exponent::Infinite, Exponent::Infinite, block, v.clone());
    println!("  (inf, inf): {:.6}", amalgam_norm(&f, &sup)?);

    // sampling a window along a coarse grid is controlled by its
    // block-summed size
    let chk = periodization_bound_check(&f, block)?;
    println!(
        "periodization: lhs {:.4} <= rhs {:.4} ({})",
        chk.lhs,
        chk.rhs,
        ok(chk.pass)
    );

    // translating by whole blocks moves weight mass predictably
    let w = Weight::polynomial(len, 1.0)?;
    let prm = AmalgamParams::new(Exponent::new(2.0)?, Exponent::new(1.0)?, block, v);
    for shift in [0i64, 4, 8, 16] {
        let chk = translation_norm_check(&f, shift, &prm, &w)?;
        println!(
            "translation by {shift:2}: lhs {:.4} <= rhs {:.4} ({})",
            chk.lhs,
            chk.rhs,
            ok(chk.pass)
        );
    }

    // the pairing inequality against the conjugate-exponent norm with
    // the reciprocal weight
    let g = random_signal(len, 1, 5);
    let wv = Weight::polynomial(len, 0.5)?;
    let prm_f = AmalgamParams::new(Exponent::new(1.0)?, Exponent::new(2.0)?, block, wv.clone());
    let prm_g = AmalgamParams::new(
        Exponent::new(1.0)?.conjugate(),
        Exponent::new(2.0)?.conjugate(),
        block,
        wv.reciprocal(),
    );
    let pairing = f.inner(&g)?.norm();
    let bound = amalgam_norm(&f, &prm_f)? * amalgam_norm(&g, &prm_g)?;
    println!(
        "pairing: |<f, g>| = {:.4} <= {:.4} ({})",
        pairing,
        bound,
        ok(pairing <= bound)
    );
    Ok(())
}

fn ok(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "VIOLATED"
    }
}
