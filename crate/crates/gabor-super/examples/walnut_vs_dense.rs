//! The frame operator two ways: the structured short-sum form against
//! the dense matrix assembled atom by atom.
//!
//! The structured form needs `L·b` small matrix products per apply, the
//! dense one `(L·n)^2` — same numbers, very different cost.
//!
//! ```sh
//! cargo run --release --example walnut_vs_dense
//! ```

use std::time::Instant;

use gabor_super::gabor::{frame_operator_direct, GaborLattice};
use gabor_super::signal::random_signal;
use gabor_super::walnut::{correlations, walnut_apply};

fn main() -> gabor_super::Result<()> {
    // agreement at a size where the dense oracle is cheap
    let lat = GaborLattice::new(4, 8, 32)?;
    let g = random_signal(32, 2, 11);
    let gamma = random_signal(32, 2, 12);
    let f = random_signal(32, 2, 13);

    let fam = correlations(&g, &gamma, lat)?;
    let fast = walnut_apply(&fam, &f)?;
    let dense = frame_operator_direct(&g, &gamma, lat)?;
    let slow = dense.apply(&f)?;
    println!(
        "L=32 n=2: structured vs dense apply, max deviation {:.3e}",
        fast.sub(&slow)?.max_abs()
    );
    println!(
        "correlation family: {} shifts of stride {}, {} of them nonzero",
        fam.n_shifts(),
        lat.walnut_step(),
        (0..fam.n_shifts())
            .filter(|&k| (0..lat.len()).any(|l| !fam.at(k, l).is_zero()))
            .count()
    );

    // timing at a size where it matters
    let len = 2048;
    let lat = GaborLattice::new(32, 16, len)?;
    let g = gabor_super::signal::gaussian_window(len, 0.5, len as f64 / 4.0);
    let fam = correlations(&g, &g, lat)?;
    let dense = fam.to_dense();
    let f = random_signal(len, 1, 14);

    let mut out = walnut_apply(&fam, &f)?;
    let start = Instant::now();
    for _ in 0..10 {
        out = walnut_apply(&fam, &out)?;
    }
    let t_structured = start.elapsed() / 10;

    let mut out2 = dense.apply(&f)?;
    let start = Instant::now();
    for _ in 0..10 {
        out2 = dense.apply(&out2)?;
    }
    let t_dense = start.elapsed() / 10;

    println!(
        "L={len}: structured {t_structured:?} vs dense {t_dense:?} per apply ({:.0}x)",
        t_dense.as_secs_f64() / t_structured.as_secs_f64()
    );
    Ok(())
}
