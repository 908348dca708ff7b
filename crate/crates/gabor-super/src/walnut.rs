//! Structured representations of the frame-type operator.
//!
//! The dense operator of [`crate::gabor::frame_operator_direct`] admits
//! two factored forms, both built from window correlations instead of
//! lattice sums:
//!
//! * the correlation (Walnut-type) form: a bank of `b` matrix-valued
//!   sequences `G[n]`, each `a`-periodic in the sample index, acting by
//!   `(S f)(l) = (L/b) * sum_n G[n][l] f(l - n*L/b)`. Applying it costs
//!   `O(L * b * n^2)` against the dense `O((L*n)^2)` matvec;
//! * the bracket (Janssen-type) form: a table of `a*b` matrices over the
//!   adjoint lattice (shifts by multiples of `L/b`, modulations by
//!   multiples of `L/a`), with `S = sum B[j][n] o M_(j*L/a) T_(n*L/b)`.
//!
//! Both normalizations were calibrated once against the dense operator
//! (see the unit tests) and are hard-coded here. The bracket table also
//! carries the duality test: the pair `(g, gamma)` generates dual frames
//! exactly when the table is the identity at the origin and zero
//! elsewhere.

use num_complex::Complex64;

use crate::amalgam::Weight;
use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::gabor::GaborLattice;
use crate::signal::{unit_phase, HMatrix, VectorSignal};

fn check_pair(g: &VectorSignal, gamma: &VectorSignal, lat: GaborLattice) -> Result<()> {
    lat.check_signal(g)?;
    lat.check_signal(gamma)?;
    if g.channels() != gamma.channels() {
        return Err(Error::DimensionMismatch {
            l_lhs: g.len(),
            n_lhs: g.channels(),
            l_rhs: gamma.len(),
            n_rhs: gamma.channels(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Correlation form
// ---------------------------------------------------------------------------

/// The bank of window correlations behind the structured frame operator.
///
/// `G[n][l] = sum_k gamma(l - k*a) (x) g(l - k*a - n*L/b)` as an
/// `n x n` matrix, for `n` in `0..b` and `l` in `0..L`; each `G[n]` is
/// `a`-periodic in `l`.
#[derive(Debug, Clone)]
pub struct CorrelationFamily {
    lat: GaborLattice,
    channels: usize,
    // sym[shift_index * len + l]
    sym: Vec<HMatrix>,
}

impl CorrelationFamily {
    pub fn lattice(&self) -> GaborLattice {
        self.lat
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Number of distinct correlation shifts (`b`).
    pub fn n_shifts(&self) -> usize {
        self.lat.b()
    }

    pub fn at(&self, n: usize, l: usize) -> &HMatrix {
        &self.sym[n * self.lat.len() + l]
    }

    /// Whether every correlation of nonzero shift vanishes; the frame
    /// operator is then a pointwise matrix multiplier.
    pub fn is_painless(&self, tol: f64) -> bool {
        (1..self.n_shifts()).all(|n| {
            (0..self.lat.len()).all(|l| self.at(n, l).max_abs() <= tol)
        })
    }

    /// Dense matrix of the operator this family represents. Cheap
    /// (`O(L * b * n^2)` nonzero entries), used by the eigenvalue and
    /// benchmark paths; equality with the naive lattice sum is an
    /// invariant covered by tests.
    pub fn to_dense(&self) -> DenseOperator {
        let (len, nch) = (self.lat.len(), self.channels);
        let step = self.lat.walnut_step();
        let scale = Complex64::new(step as f64, 0.0);
        let mut op = DenseOperator::zeros(len, nch);
        for n in 0..self.n_shifts() {
            let shift = (n * step) % len;
            for l in 0..len {
                let src = (l + len - shift) % len;
                let m = self.at(n, l);
                for i in 0..nch {
                    for j in 0..nch {
                        op.entry_add(l, i, src, j, m.at(i, j) * scale);
                    }
                }
            }
        }
        op
    }
}

/// Build the correlation family of a window pair on a lattice.
///
/// `g` is the analysis window, `gamma` the synthesis window; the slot
/// order matches [`crate::gabor::frame_operator_direct`].
pub fn correlations(
    g: &VectorSignal,
    gamma: &VectorSignal,
    lat: GaborLattice,
) -> Result<CorrelationFamily> {
    check_pair(g, gamma, lat)?;
    let (len, nch) = (lat.len(), g.channels());
    let step = lat.walnut_step();
    let mut sym = vec![HMatrix::zeros(nch); lat.b() * len];
    for n in 0..lat.b() {
        let off = (n * step) % len;
        for l in 0..len {
            let m = &mut sym[n * len + l];
            for k in 0..lat.n_time() {
                let t = (l + len - (k * lat.a()) % len) % len;
                let s = (t + len - off) % len;
                // gamma(t) (x) g(s): matrix gamma(t) g(s)^*
                let gr = gamma.row(t);
                let gs = g.row(s);
                for i in 0..nch {
                    if gr[i].re == 0.0 && gr[i].im == 0.0 {
                        continue;
                    }
                    for j in 0..nch {
                        let v = m.at(i, j) + gr[i] * gs[j].conj();
                        m.set(i, j, v);
                    }
                }
            }
        }
    }
    Ok(CorrelationFamily {
        lat,
        channels: nch,
        sym,
    })
}

/// Apply the structured frame operator:
/// `(S f)(l) = (L/b) * sum_n G[n][l] f(l - n*L/b)`.
pub fn walnut_apply(fam: &CorrelationFamily, f: &VectorSignal) -> Result<VectorSignal> {
    fam.lat.check_signal(f)?;
    if f.channels() != fam.channels {
        return Err(Error::DimensionMismatch {
            l_lhs: fam.lat.len(),
            n_lhs: fam.channels,
            l_rhs: f.len(),
            n_rhs: f.channels(),
        });
    }
    let (len, nch) = (fam.lat.len(), fam.channels);
    let step = fam.lat.walnut_step();
    let mut out = VectorSignal::zeros(len, nch);
    for n in 0..fam.n_shifts() {
        let shift = (n * step) % len;
        for l in 0..len {
            let src = (l + len - shift) % len;
            fam.at(n, l).mul_vec_into(f.row(src), out.row_mut(l));
        }
    }
    let scale = Complex64::new(step as f64, 0.0);
    Ok(out.scale(scale))
}

/// Weighted sum of correlation sup-norms,
/// `sum_n  max_l ||G[n][l]||_op * w(n*L/b)`.
///
/// Finite whenever the windows are; the companion bound
/// [`correlation_bound_constant`] controls it by window amalgam norms for
/// submultiplicative `w`.
pub fn correlation_weight_sum(fam: &CorrelationFamily, w: &Weight) -> Result<f64> {
    if w.len() != fam.lat.len() {
        return Err(Error::WeightLengthMismatch {
            got: w.len(),
            expected: fam.lat.len(),
        });
    }
    let step = fam.lat.walnut_step();
    let mut total = 0.0;
    for n in 0..fam.n_shifts() {
        // a-periodicity: scanning one period suffices, but the full scan
        // is cheap and stays obviously right
        let sup = (0..fam.lat.len())
            .map(|l| fam.at(n, l).op_norm())
            .fold(0.0, f64::max);
        total += sup * w.at((n * step) as i64);
    }
    Ok(total)
}

/// Constant `C` with
/// `correlation_weight_sum(G) <= C * ||g|| * ||gamma||`
/// in the `(inf, 1)` amalgam norm with block `a` and weight `w`, valid
/// for submultiplicative `w`.
///
/// Derivation: bound each window value by its block sup, pay `w` on a
/// block anchor plus two boundary hops of at most `a - 1` samples each,
/// and count how many correlation shifts can land in one block
/// (`a*b/L + 1` at most). Hence the factor
/// `(max_(0<=r<a) w(r))^2 * (a*b/L + 1)`.
pub fn correlation_bound_constant(lat: GaborLattice, w: &Weight) -> Result<f64> {
    if w.len() != lat.len() {
        return Err(Error::WeightLengthMismatch {
            got: w.len(),
            expected: lat.len(),
        });
    }
    let wa = (0..lat.a()).map(|r| w.at(r as i64)).fold(0.0, f64::max);
    let density = (lat.a() * lat.b()) as f64 / lat.len() as f64;
    Ok(wa * wa * (density + 1.0))
}

// ---------------------------------------------------------------------------
// Bracket form
// ---------------------------------------------------------------------------

/// Bracket table over the adjoint lattice.
///
/// `B[j][n] = (L/(a*b)) * sum_l gamma(l) (x) (M_(j*L/a) T_(n*L/b) g)(l)`
/// for `j` in `0..a`, `n` in `0..b`. The scale makes the table
/// reconstruct the frame operator with no further constant, and turns the
/// duality test into comparison with the delta table.
#[derive(Debug, Clone)]
pub struct JanssenTable {
    lat: GaborLattice,
    channels: usize,
    // table[j * b + n]
    table: Vec<HMatrix>,
}

impl JanssenTable {
    pub fn lattice(&self) -> GaborLattice {
        self.lat
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn at(&self, j: usize, n: usize) -> &HMatrix {
        &self.table[j * self.lat.b() + n]
    }

    /// Dense matrix of `sum B[j][n] o M_(j*L/a) T_(n*L/b)`.
    pub fn to_dense(&self) -> DenseOperator {
        let (len, nch) = (self.lat.len(), self.channels);
        let step = self.lat.walnut_step();
        let mstep = self.lat.n_time();
        let mut op = DenseOperator::zeros(len, nch);
        for j in 0..self.lat.a() {
            for n in 0..self.lat.b() {
                let m = self.at(j, n);
                if m.is_zero() {
                    continue;
                }
                let shift = (n * step) % len;
                for l in 0..len {
                    let src = (l + len - shift) % len;
                    let phase = unit_phase((j * mstep) as i64 * l as i64, len);
                    for i in 0..nch {
                        for i2 in 0..nch {
                            op.entry_add(l, i, src, i2, m.at(i, i2) * phase);
                        }
                    }
                }
            }
        }
        op
    }

    /// Apply without materializing the dense matrix.
    pub fn apply(&self, f: &VectorSignal) -> Result<VectorSignal> {
        self.lat.check_signal(f)?;
        let (len, nch) = (self.lat.len(), self.channels);
        let step = self.lat.walnut_step();
        let mstep = self.lat.n_time();
        let mut out = VectorSignal::zeros(len, nch);
        for j in 0..self.lat.a() {
            for n in 0..self.lat.b() {
                let m = self.at(j, n);
                if m.is_zero() {
                    continue;
                }
                let shift = (n * step) % len;
                for l in 0..len {
                    let src = (l + len - shift) % len;
                    let phase = unit_phase((j * mstep) as i64 * l as i64, len);
                    let mv = m.mul_vec(f.row(src));
                    let row = out.row_mut(l);
                    for (o, v) in row.iter_mut().zip(mv.iter()) {
                        *o += v * phase;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Build the bracket table of a window pair.
pub fn janssen_coeffs(
    g: &VectorSignal,
    gamma: &VectorSignal,
    lat: GaborLattice,
) -> Result<JanssenTable> {
    check_pair(g, gamma, lat)?;
    let (len, nch) = (lat.len(), g.channels());
    let step = lat.walnut_step();
    let mstep = lat.n_time();
    let scale = Complex64::new(len as f64 / (lat.a() * lat.b()) as f64, 0.0);
    let mut table = vec![HMatrix::zeros(nch); lat.a() * lat.b()];
    for j in 0..lat.a() {
        for n in 0..lat.b() {
            let m = &mut table[j * lat.b() + n];
            let shift = (n * step) % len;
            for l in 0..len {
                let src = (l + len - shift) % len;
                let phase = unit_phase((j * mstep) as i64 * l as i64, len);
                let gr = gamma.row(l);
                let gs = g.row(src);
                for i in 0..nch {
                    for i2 in 0..nch {
                        // gamma(l) (x) (M T g)(l), conjugate on the second slot
                        let v = m.at(i, i2) + gr[i] * (gs[i2] * phase).conj();
                        m.set(i, i2, v);
                    }
                }
            }
            m.scale_assign(scale);
        }
    }
    Ok(JanssenTable {
        lat,
        channels: nch,
        table,
    })
}

/// Result of the bracket duality test.
#[derive(Debug, Clone, Copy)]
pub struct WexlerRazCheck {
    /// Largest spectral-norm deviation of the table from the delta table
    /// (identity at the origin, zero elsewhere).
    pub max_dev: f64,
    pub pass: bool,
}

/// Biorthogonality test over the adjoint lattice: passes at `tol` exactly
/// when the windows reconstruct each other, i.e. the frame-type operator
/// of the pair is the identity.
pub fn wexler_raz_check(
    g: &VectorSignal,
    gamma: &VectorSignal,
    lat: GaborLattice,
    tol: f64,
) -> Result<WexlerRazCheck> {
    let table = janssen_coeffs(g, gamma, lat)?;
    let nch = table.channels;
    let id = HMatrix::identity(nch);
    let mut max_dev: f64 = 0.0;
    for j in 0..lat.a() {
        for n in 0..lat.b() {
            let dev = if j == 0 && n == 0 {
                table.at(j, n).sub(&id).op_norm()
            } else {
                table.at(j, n).op_norm()
            };
            max_dev = max_dev.max(dev);
        }
    }
    Ok(WexlerRazCheck {
        max_dev,
        pass: max_dev <= tol,
    })
}

// ---------------------------------------------------------------------------
// Direct sums of scalar systems
// ---------------------------------------------------------------------------

/// Apply per-channel frame operators to a direct-sum signal.
///
/// `windows[i]` is the scalar pair `(g_i, gamma_i)` with its own lattice
/// for channel `i`; the result assembles `S_i f_i` channel by channel,
/// realizing the block-diagonal operator `(+)_i S_i` on the direct sum.
/// All lattices must share the signal length. With a single shared
/// lattice this is the additive decomposition of the superframe operator
/// over its channel subsystems.
pub fn multiwindow_apply(
    windows: &[(VectorSignal, VectorSignal, GaborLattice)],
    f: &VectorSignal,
) -> Result<VectorSignal> {
    if windows.len() != f.channels() {
        return Err(Error::ChannelMismatch {
            expected: f.channels(),
            got: windows.len(),
        });
    }
    let mut parts = Vec::with_capacity(windows.len());
    for (i, (g, gamma, lat)) in windows.iter().enumerate() {
        if g.channels() != 1 || gamma.channels() != 1 {
            return Err(Error::ChannelMismatch {
                expected: 1,
                got: g.channels().max(gamma.channels()),
            });
        }
        if lat.len() != f.len() {
            return Err(Error::LatticeMismatch {
                a: lat.a(),
                b: lat.b(),
                len: lat.len(),
                expected: f.len(),
            });
        }
        let fam = correlations(g, gamma, *lat)?;
        parts.push(walnut_apply(&fam, &f.channel(i))?);
    }
    VectorSignal::from_channels(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabor::frame_operator_direct;
    use crate::signal::random_signal;

    fn boxcar(len: usize, support: usize) -> VectorSignal {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        for x in v.iter_mut().take(support) {
            *x = Complex64::new(1.0, 0.0);
        }
        VectorSignal::from_scalar(v)
    }

    #[test]
    fn correlations_of_boxcar_pair() {
        // L=4, a=b=2, g = gamma = [1,1,0,0]: G[0] == 1, G[1] == 0
        let lat = GaborLattice::new(2, 2, 4).unwrap();
        let g = boxcar(4, 2);
        let fam = correlations(&g, &g, lat).unwrap();
        for l in 0..4 {
            assert!((fam.at(0, l).at(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
            assert!(fam.at(1, l).max_abs() < 1e-14);
        }
        assert!(fam.is_painless(1e-14));
    }

    #[test]
    fn correlations_are_a_periodic() {
        let lat = GaborLattice::new(4, 2, 16).unwrap();
        let g = random_signal(16, 2, 60);
        let gamma = random_signal(16, 2, 61);
        let fam = correlations(&g, &gamma, lat).unwrap();
        for n in 0..lat.b() {
            for l in 0..16 {
                let dev = fam.at(n, l).sub(fam.at(n, (l + 4) % 16)).max_abs();
                assert!(dev < 1e-12);
            }
        }
    }

    #[test]
    fn walnut_matches_dense_oracle() {
        for (l, n, a, b, seed) in [
            (8usize, 1usize, 2usize, 2usize, 70u64),
            (8, 2, 2, 4, 71),
            (12, 3, 3, 2, 72),
            (16, 1, 4, 8, 73),
        ] {
            let lat = GaborLattice::new(a, b, l).unwrap();
            let g = random_signal(l, n, seed);
            let gamma = random_signal(l, n, seed + 1000);
            let f = random_signal(l, n, seed + 2000);
            let fam = correlations(&g, &gamma, lat).unwrap();
            let fast = walnut_apply(&fam, &f).unwrap();
            let dense = frame_operator_direct(&g, &gamma, lat).unwrap();
            let slow = dense.apply(&f).unwrap();
            let dev = fast.sub(&slow).unwrap().max_abs();
            assert!(dev < 1e-10, "walnut vs dense at L={l} n={n} a={a} b={b}: {dev}");
            // and the assembled dense matrix agrees entrywise
            let dev2 = fam.to_dense().sub(&dense).max_norm();
            assert!(dev2 < 1e-10, "assembled dense mismatch {dev2}");
        }
    }

    #[test]
    fn painless_apply_is_pointwise_multiplication() {
        let lat = GaborLattice::new(2, 2, 4).unwrap();
        let g = boxcar(4, 2);
        let fam = correlations(&g, &g, lat).unwrap();
        let f = random_signal(4, 1, 74);
        let sf = walnut_apply(&fam, &f).unwrap();
        let dev = sf.sub(&f.scale(Complex64::new(2.0, 0.0))).unwrap().max_abs();
        assert!(dev < 1e-12, "S should act as 2*I, dev {dev}");
    }

    #[test]
    fn janssen_matches_dense_oracle() {
        for (l, n, a, b, seed) in [
            (8usize, 1usize, 2usize, 2usize, 80u64),
            (8, 2, 4, 2, 81),
            (12, 1, 2, 3, 82),
            (16, 2, 4, 4, 83),
        ] {
            let lat = GaborLattice::new(a, b, l).unwrap();
            let g = random_signal(l, n, seed);
            let gamma = random_signal(l, n, seed + 1000);
            let table = janssen_coeffs(&g, &gamma, lat).unwrap();
            let dense = frame_operator_direct(&g, &gamma, lat).unwrap();
            let dev = table.to_dense().sub(&dense).max_norm();
            assert!(dev < 1e-10, "janssen vs dense at L={l} n={n} a={a} b={b}: {dev}");
            let f = random_signal(l, n, seed + 2000);
            let dev2 = table
                .apply(&f)
                .unwrap()
                .sub(&dense.apply(&f).unwrap())
                .unwrap()
                .max_abs();
            assert!(dev2 < 1e-10);
        }
    }

    #[test]
    fn janssen_full_lattice_delta_pair_is_single_identity_bracket() {
        // g = delta, gamma = delta/4 on the full lattice of L=4: the frame
        // operator is the identity and the table must be the delta table
        let lat = GaborLattice::new(1, 1, 4).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[0] = Complex64::new(1.0, 0.0);
        let g = VectorSignal::from_scalar(v);
        let gamma = g.scale(Complex64::new(0.25, 0.0));
        let t = janssen_coeffs(&g, &gamma, lat).unwrap();
        assert!((t.at(0, 0).at(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn wexler_raz_on_boxcar_pairs() {
        let lat = GaborLattice::new(2, 2, 4).unwrap();
        let g = boxcar(4, 2);
        let dual = g.scale(Complex64::new(0.5, 0.0));
        let chk = wexler_raz_check(&g, &dual, lat, 1e-10).unwrap();
        assert!(chk.pass, "max_dev {}", chk.max_dev);
        // undualized pair: B[0][0] = 2, so the deviation is 1
        let chk2 = wexler_raz_check(&g, &g, lat, 1e-10).unwrap();
        assert!(!chk2.pass);
        assert!((chk2.max_dev - 1.0).abs() < 1e-12);
        // zero synthesis window: the origin bracket misses the identity by 1
        let zero = VectorSignal::zeros(4, 1);
        let chk3 = wexler_raz_check(&g, &zero, lat, 1e-10).unwrap();
        assert!(!chk3.pass);
        assert!((chk3.max_dev - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multiwindow_assembles_per_channel_operators() {
        // two channels, two different lattices on the same length
        let l = 16;
        let lat1 = GaborLattice::new(2, 2, l).unwrap();
        let lat2 = GaborLattice::new(4, 2, l).unwrap();
        let g1 = random_signal(l, 1, 90);
        let d1 = random_signal(l, 1, 91);
        let g2 = random_signal(l, 1, 92);
        let d2 = random_signal(l, 1, 93);
        let f = random_signal(l, 2, 94);
        let out = multiwindow_apply(
            &[(g1.clone(), d1.clone(), lat1), (g2.clone(), d2.clone(), lat2)],
            &f,
        )
        .unwrap();
        for (i, (g, d, lat)) in [(g1, d1, lat1), (g2, d2, lat2)].iter().enumerate() {
            let dense = frame_operator_direct(g, d, *lat).unwrap();
            let want = dense.apply(&f.channel(i)).unwrap();
            let dev = out.channel(i).sub(&want).unwrap().max_abs();
            assert!(dev < 1e-10, "channel {i} deviation {dev}");
        }
        // channel count mismatch is rejected
        let bad = multiwindow_apply(&[], &f);
        assert!(matches!(bad, Err(Error::ChannelMismatch { .. })));
    }

    #[test]
    fn correlation_weight_sum_painless_example() {
        let lat = GaborLattice::new(2, 2, 4).unwrap();
        let g = boxcar(4, 2);
        let fam = correlations(&g, &g, lat).unwrap();
        let w = Weight::constant(4);
        let s = correlation_weight_sum(&fam, &w).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        let c = correlation_bound_constant(lat, &w).unwrap();
        assert!((c - 2.0).abs() < 1e-12);
    }
}
