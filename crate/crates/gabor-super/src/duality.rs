//! Frame bounds, dual windows, and reconstruction diagnostics.
//!
//! The frame-type operator of a window is Hermitian positive
//! semi-definite, so its extreme eigenvalues are the sharp frame bounds.
//! Small problems get a full eigendecomposition of the assembled dense
//! matrix; large ones are handled matrix-free by power iteration against
//! the structured apply. Dual windows solve `S gamma = g`, by conjugate
//! gradients by default or by the classical fixed-point iteration
//! `x <- x + 2/(A+B) (g - S x)` on request.

use num_complex::Complex64;

use crate::amalgam::{amalgam_norm, AmalgamParams, Exponent, Weight};
use crate::error::{Error, Result};
use crate::gabor::{analyze, GaborCoefficients, GaborLattice};
use crate::signal::{wrap_dist, VectorSignal};
use crate::walnut::{correlations, walnut_apply, wexler_raz_check, CorrelationFamily};

/// Windows whose lower bound falls at or below this are not treated as
/// frames.
pub const FRAME_TOL: f64 = 1e-10;

/// Deviation allowed when a pair must be dual before a computation makes
/// sense.
pub const DUAL_PAIR_TOL: f64 = 1e-6;

/// Largest flattened dimension solved by full eigendecomposition; above
/// this, bounds come from power iteration.
const DENSE_EIG_MAX_DIM: usize = 1024;

/// Iteration cap for the solvers, as a multiple of the flattened
/// dimension.
const SOLVER_CAP_FACTOR: usize = 10;

#[derive(Debug, Clone, Copy)]
pub struct FrameBounds {
    /// Sharp lower frame bound (smallest eigenvalue).
    pub lower: f64,
    /// Sharp upper frame bound (largest eigenvalue).
    pub upper: f64,
    pub is_frame: bool,
}

impl FrameBounds {
    pub fn condition(&self) -> f64 {
        if self.lower > 0.0 {
            self.upper / self.lower
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMethod {
    /// Assemble the dense matrix and take its full Hermitian spectrum.
    Dense,
    /// Power iteration for the top, shifted power iteration for the
    /// bottom, matrix-free via the structured apply.
    PowerIteration,
    /// Dense up to a size cutoff, power iteration beyond it.
    Auto,
}

/// Sharp frame bounds of the system generated by `g` on `lat`.
///
/// `tol` is the relative accuracy of the iterative path; the dense path
/// is exact to rounding.
pub fn frame_bounds(g: &VectorSignal, lat: GaborLattice, tol: f64) -> Result<FrameBounds> {
    frame_bounds_with(g, lat, tol, BoundsMethod::Auto)
}

pub fn frame_bounds_with(
    g: &VectorSignal,
    lat: GaborLattice,
    tol: f64,
    method: BoundsMethod,
) -> Result<FrameBounds> {
    lat.check_signal(g)?;
    let fam = correlations(g, g, lat)?;
    let dim = lat.len() * g.channels();
    let dense = match method {
        BoundsMethod::Dense => true,
        BoundsMethod::PowerIteration => false,
        BoundsMethod::Auto => dim <= DENSE_EIG_MAX_DIM,
    };
    let (lower, upper) = if dense {
        fam.to_dense().hermitian_eig_range()
    } else {
        power_bounds(&fam, dim, tol)
    };
    Ok(FrameBounds {
        lower,
        upper,
        is_frame: lower > FRAME_TOL,
    })
}

fn power_bounds(fam: &CorrelationFamily, dim: usize, tol: f64) -> (f64, f64) {
    let nch = fam.channels();
    let len = fam.lattice().len();
    let matvec = |x: &[Complex64]| -> Vec<Complex64> {
        let mut f = VectorSignal::zeros(len, nch);
        for l in 0..len {
            for i in 0..nch {
                f.set(l, i, x[l * nch + i]);
            }
        }
        walnut_apply(fam, &f).expect("shape fixed by construction").data().to_vec()
    };
    let iters = (dim * 20).max(2000);
    let upper = crate::dense::power_iteration_psd(dim, &matvec, tol, iters);
    // shift so the smallest eigenvalue becomes the largest of c*I - S
    let c = upper * (1.0 + 10.0 * tol) + tol;
    let shifted = |x: &[Complex64]| -> Vec<Complex64> {
        let sx = matvec(x);
        x.iter()
            .zip(sx.iter())
            .map(|(xi, si)| Complex64::new(c, 0.0) * xi - si)
            .collect()
    };
    let top_shifted = crate::dense::power_iteration_psd(dim, &shifted, tol, iters);
    let lower = (c - top_shifted).max(0.0);
    (lower, upper)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualMethod {
    ConjugateGradient,
    /// `x <- x + 2/(A+B) (g - S x)`; kept for cross-checking the solver.
    FrameIteration,
}

/// Dual window plus the solve diagnostics the batch front end reports.
#[derive(Debug, Clone)]
pub struct DualWindowOutcome {
    pub window: VectorSignal,
    pub bounds: FrameBounds,
    pub iters: usize,
}

/// Canonical dual window `S^(-1) g`, solved matrix-free.
///
/// Errors with [`Error::NotAFrame`] when the lower bound is numerically
/// zero and [`Error::NoConvergence`] when the iteration cap
/// (10x the flattened dimension) is hit, which for conjugate gradients
/// only happens in pathologically conditioned cases.
pub fn dual_window(g: &VectorSignal, lat: GaborLattice, tol: f64) -> Result<VectorSignal> {
    dual_window_with(g, lat, tol, DualMethod::ConjugateGradient)
}

pub fn dual_window_with(
    g: &VectorSignal,
    lat: GaborLattice,
    tol: f64,
    method: DualMethod,
) -> Result<VectorSignal> {
    dual_window_full(g, lat, tol, method).map(|out| out.window)
}

pub fn dual_window_full(
    g: &VectorSignal,
    lat: GaborLattice,
    tol: f64,
    method: DualMethod,
) -> Result<DualWindowOutcome> {
    let bounds = frame_bounds(g, lat, tol.min(1e-10))?;
    if !bounds.is_frame {
        return Err(Error::NotAFrame {
            lower: bounds.lower,
        });
    }
    let fam = correlations(g, g, lat)?;
    let (window, iters) = match method {
        DualMethod::ConjugateGradient => cg_solve(&fam, g, tol)?,
        DualMethod::FrameIteration => frame_iteration_solve(&fam, g, tol, &bounds)?,
    };
    Ok(DualWindowOutcome {
        window,
        bounds,
        iters,
    })
}

/// Conjugate gradients on the Hermitian positive definite system
/// `S x = rhs`, with the structured apply as the only access to `S`.
/// Returns the solution and the iteration count.
fn cg_solve(
    fam: &CorrelationFamily,
    rhs: &VectorSignal,
    tol: f64,
) -> Result<(VectorSignal, usize)> {
    let cap = SOLVER_CAP_FACTOR * rhs.len() * rhs.channels();
    let target = tol * rhs.norm();
    let mut x = VectorSignal::zeros(rhs.len(), rhs.channels());
    let mut r = rhs.clone();
    let mut p = r.clone();
    let mut rz = r.norm().powi(2);
    if rz.sqrt() <= target {
        return Ok((x, 0));
    }
    for it in 0..cap {
        let ap = walnut_apply(fam, &p)?;
        let pap = p.inner(&ap)?.re;
        if pap <= 0.0 {
            // loss of positivity: the window is not a frame after all
            return Err(Error::NotAFrame { lower: pap });
        }
        let alpha = rz / pap;
        x = x.add(&p.scale(Complex64::new(alpha, 0.0)))?;
        r = r.sub(&ap.scale(Complex64::new(alpha, 0.0)))?;
        let rz_new = r.norm().powi(2);
        if rz_new.sqrt() <= target {
            return Ok((x, it + 1));
        }
        let beta = rz_new / rz;
        p = r.add(&p.scale(Complex64::new(beta, 0.0)))?;
        rz = rz_new;
        if it + 1 == cap {
            return Err(Error::NoConvergence {
                iters: cap,
                residual: rz_new.sqrt(),
            });
        }
    }
    unreachable!("loop either returns or errors at the cap");
}

fn frame_iteration_solve(
    fam: &CorrelationFamily,
    rhs: &VectorSignal,
    tol: f64,
    bounds: &FrameBounds,
) -> Result<(VectorSignal, usize)> {
    let cap = SOLVER_CAP_FACTOR * rhs.len() * rhs.channels();
    let target = tol * rhs.norm();
    let relax = Complex64::new(2.0 / (bounds.lower + bounds.upper), 0.0);
    let mut x = VectorSignal::zeros(rhs.len(), rhs.channels());
    for it in 0..cap {
        let res = rhs.sub(&walnut_apply(fam, &x)?)?;
        if res.norm() <= target {
            return Ok((x, it));
        }
        x = x.add(&res.scale(relax))?;
    }
    let res = rhs.sub(&walnut_apply(fam, &x)?)?;
    if res.norm() <= target {
        Ok((x, cap))
    } else {
        Err(Error::NoConvergence {
            iters: cap,
            residual: res.norm(),
        })
    }
}

/// Closed-form dual for windows supported on one stretch of at most
/// `L/b` samples.
///
/// In that regime the frame operator multiplies pointwise by
/// `D(l) = (L/b) * sum_k g(l - k*a) (x) g(l - k*a)`, so the dual is
/// `gamma(l) = D(l)^(-1) g(l)`. Errors: [`Error::SupportTooWide`] when no
/// cyclic interval of `L/b` samples covers the support, and
/// [`Error::SingularWeight`] when some `D(l)` is not invertible (the
/// window then fails to be a frame).
pub fn painless_dual(g: &VectorSignal, lat: GaborLattice) -> Result<VectorSignal> {
    lat.check_signal(g)?;
    let len = lat.len();
    let support: Vec<usize> = (0..len)
        .filter(|&l| g.row(l).iter().any(|z| z.re != 0.0 || z.im != 0.0))
        .collect();
    if support.is_empty() {
        return Err(Error::SingularWeight { index: 0 });
    }
    // minimal covering arc = L minus the largest gap between support points
    let mut max_gap = 0usize;
    for i in 0..support.len() {
        let next = support[(i + 1) % support.len()];
        let gap = (next + len - support[i]) % len;
        max_gap = max_gap.max(if support.len() == 1 { len - 1 } else { gap - 1 });
    }
    let cover = len - max_gap.min(len - 1);
    let step = lat.walnut_step();
    if cover > step {
        return Err(Error::SupportTooWide {
            support: cover,
            max: step,
        });
    }
    let fam = correlations(g, g, lat)?;
    let nch = g.channels();
    let scale = Complex64::new(step as f64, 0.0);
    let mut gamma = VectorSignal::zeros(len, nch);
    for l in 0..len {
        let d = fam.at(0, l).scale(scale);
        let (lo, hi) = d.hermitian_eig_range();
        if !(lo > 1e-12 * hi.max(1.0e-300)) || hi <= 0.0 {
            return Err(Error::SingularWeight { index: l });
        }
        let inv = d.try_inverse().ok_or(Error::SingularWeight { index: l })?;
        let row = inv.mul_vec(g.row(l));
        for (i, v) in row.into_iter().enumerate() {
            gamma.set(l, i, v);
        }
    }
    Ok(gamma)
}

/// One truncation box and its reconstruction error.
#[derive(Debug, Clone, Copy)]
pub struct TruncationEntry {
    /// Cyclic radius in the translate index.
    pub k_radius: usize,
    /// Cyclic radius in the modulation index.
    pub m_radius: usize,
    pub err: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceProfile {
    pub entries: Vec<TruncationEntry>,
}

/// Reconstruction error of partial lattice sums over growing centered
/// boxes, measured in the amalgam norm with block `a` and weight `v`.
///
/// Requires `(g, gamma)` to pass the bracket duality test at
/// [`DUAL_PAIR_TOL`]; the final entry uses the whole lattice, where the
/// error is reconstruction error proper and must vanish to rounding.
pub fn truncation_error_profile(
    f: &VectorSignal,
    g: &VectorSignal,
    gamma: &VectorSignal,
    lat: GaborLattice,
    p: Exponent,
    q: Exponent,
    v: &Weight,
) -> Result<ConvergenceProfile> {
    lat.check_signal(f)?;
    let wr = wexler_raz_check(g, gamma, lat, DUAL_PAIR_TOL)?;
    if !wr.pass {
        return Err(Error::NotDualPair {
            max_dev: wr.max_dev,
        });
    }
    let c = analyze(f, g, lat)?;
    let (nt, nf) = (lat.n_time(), lat.n_freq());
    let k_cap = nt / 2;
    let m_cap = nf / 2;
    let rmax = k_cap.max(m_cap);
    // group lattice points by the radius at which their box first
    // contains them, then accumulate partial sums incrementally
    let mut by_radius: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rmax + 1];
    for k in 0..nt {
        for m in 0..nf {
            let r = wrap_dist(k as i64, nt).max(wrap_dist(m as i64, nf));
            by_radius[r].push((k, m));
        }
    }
    let prm = AmalgamParams::new(p, q, lat.a(), v.clone());
    let mut partial = VectorSignal::zeros(f.len(), f.channels());
    let mut entries = Vec::with_capacity(rmax + 1);
    for (r, points) in by_radius.iter().enumerate() {
        partial = add_atoms(partial, &c, gamma, lat, points)?;
        let err = amalgam_norm(&f.sub(&partial)?, &prm)?;
        entries.push(TruncationEntry {
            k_radius: r.min(k_cap),
            m_radius: r.min(m_cap),
            err,
        });
    }
    Ok(ConvergenceProfile { entries })
}

fn add_atoms(
    mut acc: VectorSignal,
    c: &GaborCoefficients,
    gamma: &VectorSignal,
    lat: GaborLattice,
    points: &[(usize, usize)],
) -> Result<VectorSignal> {
    for &(k, m) in points {
        let atom = lat.atom(gamma, k, m);
        acc = acc.add(&atom.scale(c.at(k, m)))?;
    }
    Ok(acc)
}

/// Apply `S^(-1)` to a signal, twice over: a conjugate-gradient solve
/// against the structured operator, and the structured operator of the
/// canonical dual pair, which represents the same inverse. The two
/// routes must agree to `tol` (scaled by the result size) or the call
/// reports an internal inconsistency. The solver route is returned.
pub fn inverse_frame_apply(
    f: &VectorSignal,
    g: &VectorSignal,
    lat: GaborLattice,
    tol: f64,
) -> Result<VectorSignal> {
    lat.check_signal(f)?;
    let bounds = frame_bounds(g, lat, (tol * 1e-2).min(1e-10))?;
    if !bounds.is_frame {
        return Err(Error::NotAFrame {
            lower: bounds.lower,
        });
    }
    // solve tighter than the agreement tolerance so conditioning does not
    // eat the margin
    let inner_tol = (tol / (4.0 * bounds.condition())).max(1e-15);
    let fam = correlations(g, g, lat)?;
    let (solved, _) = cg_solve(&fam, f, inner_tol)?;
    let (dual, _) = cg_solve(&fam, g, inner_tol)?;
    let dual_fam = correlations(&dual, &dual, lat)?;
    let via_dual = walnut_apply(&dual_fam, f)?;
    let dev = solved.sub(&via_dual)?.norm();
    let scale = 1.0f64.max(solved.norm()).max(via_dual.norm());
    if dev > tol * scale {
        return Err(Error::InternalConsistency {
            what: "inverse apply routes disagree",
            dev,
        });
    }
    Ok(solved)
}
