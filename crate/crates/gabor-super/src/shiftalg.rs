//! Weighted shifts with matrix symbols: the operator algebra behind the
//! structured frame operator.
//!
//! An operator here is a finite sum `f -> sum_x m_x(l) f(l - x)` over
//! shifts `x` with a matrix-valued symbol `m_x` per shift. The family is
//! closed under composition and adjoints, every dense matrix on the
//! cyclic group decomposes into one (the shifts are the block
//! diagonals), and inverses of well-conditioned members stay inside with
//! controlled symbol decay — which is what makes inverting the frame
//! operator by symbol extraction legitimate.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::amalgam::Weight;
use crate::dense::{power_iteration_psd, DenseOperator};
use crate::error::{Error, Result};
use crate::signal::{random_signal, unit_phase, wrap_dist, HMatrix, VectorSignal};
use crate::walnut::CorrelationFamily;

/// Relative size below which extracted inverse symbols are discarded as
/// rounding noise.
const PRUNE_REL_TOL: f64 = 1e-13;

/// Smallest-to-largest singular value ratio below which inversion is
/// refused.
const SINGULAR_REL_TOL: f64 = 1e-12;

/// Agreement required between the two symbol-extraction routes.
const EXTRACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ShiftOperator {
    len: usize,
    channels: usize,
    // shift -> symbol, one n x n matrix per sample
    terms: BTreeMap<usize, Vec<HMatrix>>,
}

impl ShiftOperator {
    pub fn new(len: usize, channels: usize) -> Self {
        ShiftOperator {
            len,
            channels,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(len: usize, channels: usize) -> Self {
        let mut op = ShiftOperator::new(len, channels);
        op.terms
            .insert(0, vec![HMatrix::identity(channels); len]);
        op
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn shifts(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn symbol(&self, x: usize) -> Option<&[HMatrix]> {
        self.terms.get(&(x % self.len)).map(|v| v.as_slice())
    }

    /// Insert (or replace) the symbol at shift `x`. Symbols that are
    /// identically zero are dropped rather than stored.
    pub fn set_symbol(&mut self, x: usize, symbol: Vec<HMatrix>) -> Result<()> {
        if symbol.len() != self.len || symbol.iter().any(|m| m.dim() != self.channels) {
            return Err(Error::DimensionMismatch {
                l_lhs: self.len,
                n_lhs: self.channels,
                l_rhs: symbol.len(),
                n_rhs: symbol.first().map_or(0, HMatrix::dim),
            });
        }
        if symbol.iter().all(HMatrix::is_zero) {
            self.terms.remove(&(x % self.len));
        } else {
            self.terms.insert(x % self.len, symbol);
        }
        Ok(())
    }

    /// The structured frame operator as a member of the algebra: one
    /// term per correlation shift `n * (L/b)` with symbol
    /// `(L/b) * G[n]`. Identically zero correlations contribute no term.
    pub fn from_correlations(fam: &CorrelationFamily) -> Self {
        let lat = fam.lattice();
        let step = lat.walnut_step();
        let scale = Complex64::new(step as f64, 0.0);
        let mut op = ShiftOperator::new(lat.len(), fam.channels());
        for shift_idx in 0..fam.n_shifts() {
            let symbol: Vec<HMatrix> = (0..lat.len())
                .map(|l| fam.at(shift_idx, l).scale(scale))
                .collect();
            // shapes match by construction
            op.set_symbol((shift_idx * step) % lat.len(), symbol)
                .expect("correlation symbols have the operator's shape");
        }
        op
    }

    pub fn apply(&self, f: &VectorSignal) -> Result<VectorSignal> {
        if f.len() != self.len || f.channels() != self.channels {
            return Err(Error::DimensionMismatch {
                l_lhs: self.len,
                n_lhs: self.channels,
                l_rhs: f.len(),
                n_rhs: f.channels(),
            });
        }
        let mut out = VectorSignal::zeros(self.len, self.channels);
        for (&x, symbol) in &self.terms {
            for l in 0..self.len {
                let src = (l + self.len - x) % self.len;
                let row: Vec<Complex64> = f.row(src).to_vec();
                symbol[l].mul_vec_into(&row, out.row_mut(l));
            }
        }
        Ok(out)
    }

    /// Product of two operators: the symbol of the result at shift `x`
    /// collects `m_y(l) n_{x-y}(l - y)` over the shifts `y` of the left
    /// factor.
    pub fn compose(&self, rhs: &ShiftOperator) -> Result<ShiftOperator> {
        if rhs.len != self.len || rhs.channels != self.channels {
            return Err(Error::DimensionMismatch {
                l_lhs: self.len,
                n_lhs: self.channels,
                l_rhs: rhs.len,
                n_rhs: rhs.channels,
            });
        }
        let mut out = ShiftOperator::new(self.len, self.channels);
        for (&y, m) in &self.terms {
            for (&z, n) in &rhs.terms {
                let x = (y + z) % self.len;
                let entry = out
                    .terms
                    .entry(x)
                    .or_insert_with(|| vec![HMatrix::zeros(self.channels); self.len]);
                for l in 0..self.len {
                    let shifted = (l + self.len - y) % self.len;
                    entry[l].add_assign(&m[l].mul_mat(&n[shifted]));
                }
            }
        }
        out.drop_zero_terms();
        Ok(out)
    }

    /// Adjoint: the term at shift `x` is the pointwise adjoint of
    /// `m_{-x}` evaluated at `l - x`.
    pub fn involution(&self) -> ShiftOperator {
        let mut out = ShiftOperator::new(self.len, self.channels);
        for (&y, m) in &self.terms {
            let x = (self.len - y) % self.len;
            let symbol: Vec<HMatrix> = (0..self.len)
                .map(|l| m[(l + self.len - x) % self.len].adjoint())
                .collect();
            out.terms.insert(x, symbol);
        }
        out
    }

    pub fn to_dense(&self) -> DenseOperator {
        let n = self.channels;
        let mut dense = DenseOperator::zeros(self.len, n);
        for (&x, symbol) in &self.terms {
            for l in 0..self.len {
                let src = (l + self.len - x) % self.len;
                for i in 0..n {
                    for j in 0..n {
                        dense.entry_add(l, i, src, j, symbol[l].at(i, j));
                    }
                }
            }
        }
        dense
    }

    /// Drop terms whose symbols are all below `rel_tol` times the
    /// largest symbol norm, then exact zeros.
    pub fn prune(&mut self, rel_tol: f64) {
        let peak = self
            .terms
            .values()
            .map(|s| symbol_sup_norm(s))
            .fold(0.0f64, f64::max);
        let cut = rel_tol * peak;
        self.terms.retain(|_, s| symbol_sup_norm(s) > cut);
    }

    fn drop_zero_terms(&mut self) {
        self.terms.retain(|_, s| !s.iter().all(HMatrix::is_zero));
    }
}

fn symbol_sup_norm(symbol: &[HMatrix]) -> f64 {
    symbol.iter().map(HMatrix::op_norm).fold(0.0, f64::max)
}

/// Decompose a dense matrix into its shift components.
///
/// The component at shift `x` is computed two ways and the routes must
/// agree entrywise to 1e-12, or the call reports an internal
/// inconsistency: (1) averaging the modulation conjugates
/// `M_y A M_{-y}` against the character `e^(-2 pi i y x / L)` — on the
/// cyclic group the phase average collapses to an exact per-entry factor
/// that kills every other block diagonal — and (2) reading the `x`-th
/// block diagonal directly. The returned terms reconstruct the input
/// exactly.
pub fn extract_coeffs(dense: &DenseOperator) -> Result<ShiftOperator> {
    let len = dense.len();
    let n = dense.channels();
    // character average (1/L) sum_y e^(2 pi i y d / L), compensated so
    // the nonzero-d sums are honest rounding residue, not accumulation
    // error
    let char_avg: Vec<Complex64> = (0..len)
        .map(|d| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut carry = Complex64::new(0.0, 0.0);
            for y in 0..len {
                let term = unit_phase((y * d) as i64, len) - carry;
                let t = sum + term;
                carry = (t - sum) - term;
                sum = t;
            }
            sum / len as f64
        })
        .collect();
    let scale = 1.0 + dense.max_norm();
    let mut op = ShiftOperator::new(len, n);
    let mut worst = 0.0f64;
    for x in 0..len {
        let mut symbol = vec![HMatrix::zeros(n); len];
        for l in 0..len {
            let src = (l + len - x) % len;
            for i in 0..n {
                for j in 0..n {
                    symbol[l].set(i, j, dense.at(l, i, src, j));
                }
            }
        }
        // the averaged projection of the kernel must match the
        // single-diagonal read everywhere, including the blocks it is
        // supposed to annihilate
        for l in 0..len {
            for l2 in 0..len {
                let weight = char_avg[(l + len - l2 + len - x) % len];
                let on_diagonal = l2 == (l + len - x) % len;
                for i in 0..n {
                    for j in 0..n {
                        let averaged = dense.at(l, i, l2, j) * weight;
                        let read = if on_diagonal {
                            symbol[l].at(i, j)
                        } else {
                            Complex64::new(0.0, 0.0)
                        };
                        worst = worst.max((averaged - read).norm());
                    }
                }
            }
        }
        op.set_symbol(x, symbol)?;
    }
    if worst > EXTRACT_TOL * scale {
        return Err(Error::InternalConsistency {
            what: "shift-coefficient extraction routes disagree",
            dev: worst,
        });
    }
    Ok(op)
}

#[derive(Debug, Clone)]
pub struct AlgebraNorm {
    pub value: f64,
    pub weight: Weight,
}

/// Weighted algebra norm: sum over shifts of the sup of the symbol's
/// spectral norms, weighted by `w` at the shift. Submultiplicative under
/// composition whenever `w` is.
pub fn algebra_norm(op: &ShiftOperator, w: &Weight) -> Result<AlgebraNorm> {
    if w.len() != op.len() {
        return Err(Error::WeightLengthMismatch {
            got: w.len(),
            expected: op.len(),
        });
    }
    let value = op
        .terms
        .iter()
        .map(|(&x, s)| symbol_sup_norm(s) * w.at(x as i64))
        .sum();
    Ok(AlgebraNorm {
        value,
        weight: w.clone(),
    })
}

/// One shift of an inverse decomposition: symbol size against wrap
/// distance, with the weight attached.
#[derive(Debug, Clone, Copy)]
pub struct DecayEntry {
    pub shift: usize,
    pub dist: usize,
    pub sym_norm: f64,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct SpectralInverse {
    pub inverse: ShiftOperator,
    /// Two-norm condition estimate of the dense operator.
    pub condition: f64,
    /// Relative error of the verifying round trip.
    pub roundtrip: f64,
    pub decay: Vec<DecayEntry>,
}

/// Invert an operator inside the algebra: invert the dense matrix,
/// extract shift coefficients of the inverse, discard rounding-level
/// symbols, and verify the round trip on a seeded random signal.
///
/// Errors with [`Error::Singular`] when the smallest singular value
/// falls below 1e-12 of the largest, and [`Error::Tolerance`] when the
/// verified round trip misses `tol`.
pub fn spectral_invert(op: &ShiftOperator, w: &Weight, tol: f64) -> Result<SpectralInverse> {
    if w.len() != op.len() {
        return Err(Error::WeightLengthMismatch {
            got: w.len(),
            expected: op.len(),
        });
    }
    let dense = op.to_dense();
    let dim = op.len() * op.channels();
    let inv = dense
        .try_inverse()
        .ok_or(Error::Singular { cond: f64::INFINITY })?;
    // sigma_max(A) and sigma_max(A^-1) give the two-norm condition and
    // the singularity gate sigma_min = 1/sigma_max(A^-1)
    let sig_max = singular_top(&dense, dim);
    let sig_inv_top = singular_top(&inv, dim);
    let sig_min = if sig_inv_top > 0.0 {
        1.0 / sig_inv_top
    } else {
        f64::INFINITY
    };
    let cond = sig_max * sig_inv_top;
    if sig_min < SINGULAR_REL_TOL * sig_max {
        return Err(Error::Singular { cond });
    }
    let mut inverse = extract_coeffs(&inv)?;
    // symbols at rounding level are inversion noise; dropping them keeps
    // the decay report about structure
    inverse.prune(PRUNE_REL_TOL);
    let probe = random_signal(op.len(), op.channels(), 0x5eed);
    let back = inverse.apply(&op.apply(&probe)?)?;
    let roundtrip = back.sub(&probe)?.norm() / probe.norm();
    if roundtrip > tol {
        return Err(Error::Tolerance {
            requested: tol,
            achieved: roundtrip,
        });
    }
    let decay = inverse
        .terms
        .iter()
        .map(|(&x, s)| DecayEntry {
            shift: x,
            dist: wrap_dist(x as i64, op.len()),
            sym_norm: symbol_sup_norm(s),
            weight: w.at(x as i64),
        })
        .collect();
    Ok(SpectralInverse {
        inverse,
        condition: cond,
        roundtrip,
        decay,
    })
}

fn singular_top(a: &DenseOperator, dim: usize) -> f64 {
    // power iteration on A^H A yields sigma_max^2
    let gram = a.adjoint().compose(a);
    let matvec = |x: &[Complex64]| -> Vec<Complex64> {
        let mut f = VectorSignal::zeros(a.len(), a.channels());
        for l in 0..a.len() {
            for i in 0..a.channels() {
                f.set(l, i, x[l * a.channels() + i]);
            }
        }
        gram.apply(&f).expect("shapes fixed").data().to_vec()
    };
    power_iteration_psd(dim, &matvec, 1e-12, (dim * 20).max(2000)).sqrt()
}

#[derive(Debug, Clone, Copy)]
pub struct RhoEigenCheck {
    pub pass: bool,
    pub dev: f64,
}

/// Verify that a single-term operator transforms under modulation
/// conjugation by the pure phase its shift dictates:
/// `M_y C M_{-y} = e^(2 pi i y x / L) C`.
///
/// The deviation is measured on dense matrices built literally from
/// both sides.
pub fn rho_eigen_check(op: &ShiftOperator, y: i64) -> Result<RhoEigenCheck> {
    if op.num_terms() != 1 {
        return Err(Error::MultiTerm {
            terms: op.num_terms(),
        });
    }
    let x = op.shifts().next().expect("one term") as i64;
    let len = op.len();
    let dense = op.to_dense();
    let mod_pos = modulation_dense(len, op.channels(), y);
    let mod_neg = modulation_dense(len, op.channels(), -y);
    let conjugated = mod_pos.compose(&dense).compose(&mod_neg);
    let phase = unit_phase(y * x, len);
    let dev = conjugated.sub(&dense.scale(phase)).max_norm();
    Ok(RhoEigenCheck {
        pass: dev <= 1e-12 * (1.0 + dense.max_norm()),
        dev,
    })
}

fn modulation_dense(len: usize, channels: usize, y: i64) -> DenseOperator {
    let mut out = DenseOperator::zeros(len, channels);
    for l in 0..len {
        let ph = unit_phase(y * l as i64, len);
        for i in 0..channels {
            out.entry_set(l, i, l, i, ph);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabor::GaborLattice;
    use crate::signal::gaussian_window;
    use crate::walnut::{correlations, walnut_apply};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar_const_symbol(len: usize, value: f64) -> Vec<HMatrix> {
        let mut m = HMatrix::zeros(1);
        m.set(0, 0, Complex64::new(value, 0.0));
        vec![m; len]
    }

    fn random_operator(len: usize, channels: usize, max_terms: usize, seed: u64) -> ShiftOperator {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut op = ShiftOperator::new(len, channels);
        let terms = rng.gen_range(1..=max_terms);
        for _ in 0..terms {
            let x = rng.gen_range(0..len);
            let symbol: Vec<HMatrix> = (0..len)
                .map(|_| {
                    let mut m = HMatrix::zeros(channels);
                    for i in 0..channels {
                        for j in 0..channels {
                            m.set(
                                i,
                                j,
                                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                            );
                        }
                    }
                    m
                })
                .collect();
            op.set_symbol(x, symbol).unwrap();
        }
        op
    }

    #[test]
    fn apply_matches_definition() {
        let f = random_signal(8, 1, 7);
        let mut doubler = ShiftOperator::new(8, 1);
        doubler.set_symbol(0, scalar_const_symbol(8, 2.0)).unwrap();
        let out = doubler.apply(&f).unwrap();
        assert!(out.sub(&f.scale(Complex64::new(2.0, 0.0))).unwrap().max_abs() < 1e-15);

        let mut shifter = ShiftOperator::new(8, 1);
        shifter.set_symbol(1, scalar_const_symbol(8, 1.0)).unwrap();
        let out = shifter.apply(&f).unwrap();
        assert!(out.sub(&f.translate(1)).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn correlation_terms_reproduce_structured_apply() {
        let lat = GaborLattice::new(2, 4, 16).unwrap();
        let g = random_signal(16, 2, 21);
        let fam = correlations(&g, &g, lat).unwrap();
        let op = ShiftOperator::from_correlations(&fam);
        let f = random_signal(16, 2, 22);
        let via_op = op.apply(&f).unwrap();
        let via_fam = walnut_apply(&fam, &f).unwrap();
        assert!(via_op.sub(&via_fam).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn compose_follows_group_law_and_dense_product() {
        let mut t1 = ShiftOperator::new(8, 1);
        t1.set_symbol(1, scalar_const_symbol(8, 1.0)).unwrap();
        let t2 = t1.compose(&t1).unwrap();
        assert_eq!(t2.shifts().collect::<Vec<_>>(), vec![2]);

        for seed in 0..6 {
            let a = random_operator(8, 2, 4, 300 + seed);
            let b = random_operator(8, 2, 4, 400 + seed);
            let lhs = a.compose(&b).unwrap().to_dense();
            let rhs = a.to_dense().compose(&b.to_dense());
            assert!(lhs.sub(&rhs).max_norm() < 1e-12);
        }
    }

    #[test]
    fn involution_matches_dense_adjoint() {
        let mut t1 = ShiftOperator::new(8, 1);
        t1.set_symbol(1, scalar_const_symbol(8, 1.0)).unwrap();
        let star = t1.involution();
        assert_eq!(star.shifts().collect::<Vec<_>>(), vec![7]);

        for seed in 0..6 {
            let a = random_operator(8, 3, 5, 500 + seed);
            let lhs = a.involution().to_dense();
            let rhs = a.to_dense().adjoint();
            assert!(lhs.sub(&rhs).max_norm() < 1e-12);
        }
    }

    #[test]
    fn extraction_recovers_terms() {
        let id = extract_coeffs(&DenseOperator::identity(6, 1)).unwrap();
        assert_eq!(id.shifts().collect::<Vec<_>>(), vec![0]);
        assert!(id.symbol(0).unwrap()[3].at(0, 0).re == 1.0);

        let mut t1 = ShiftOperator::new(6, 2);
        t1.set_symbol(1, vec![HMatrix::identity(2); 6]).unwrap();
        let back = extract_coeffs(&t1.to_dense()).unwrap();
        assert_eq!(back.shifts().collect::<Vec<_>>(), vec![1]);

        for seed in 0..4 {
            let a = random_operator(8, 2, 5, 600 + seed);
            let back = extract_coeffs(&a.to_dense()).unwrap();
            assert!(back.to_dense().sub(&a.to_dense()).max_norm() < 1e-13);
            assert_eq!(back.shifts().collect::<Vec<_>>(), a.shifts().collect::<Vec<_>>());
        }
    }

    #[test]
    fn extraction_of_pointwise_multiplier_has_single_term() {
        // boxcar over half the period at critical density: the
        // structured operator is the constant multiplier 2
        let lat = GaborLattice::new(2, 2, 4).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 4];
        v[0] = Complex64::new(1.0, 0.0);
        v[1] = Complex64::new(1.0, 0.0);
        let g = VectorSignal::from_scalar(v);
        let fam = correlations(&g, &g, lat).unwrap();
        let op = ShiftOperator::from_correlations(&fam);
        let back = extract_coeffs(&op.to_dense()).unwrap();
        assert_eq!(back.shifts().collect::<Vec<_>>(), vec![0]);
        for l in 0..4 {
            assert!((back.symbol(0).unwrap()[l].at(0, 0) - Complex64::new(2.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn algebra_norm_examples() {
        let w = Weight::constant(8);
        let id = ShiftOperator::identity(8, 2);
        assert!((algebra_norm(&id, &w).unwrap().value - 1.0).abs() < 1e-15);
        let zero = ShiftOperator::new(8, 2);
        assert_eq!(algebra_norm(&zero, &w).unwrap().value, 0.0);

        let wp = Weight::polynomial(8, 1.0).unwrap();
        for seed in 0..8 {
            let a = random_operator(8, 2, 3, 700 + seed);
            let b = random_operator(8, 2, 3, 800 + seed);
            let na = algebra_norm(&a, &wp).unwrap().value;
            let nb = algebra_norm(&b, &wp).unwrap().value;
            let nab = algebra_norm(&a.compose(&b).unwrap(), &wp).unwrap().value;
            assert!(nab <= na * nb * (1.0 + 1e-12));
        }
    }

    #[test]
    fn spectral_invert_scalar_cases() {
        let w = Weight::constant(8);
        let mut two = ShiftOperator::new(8, 1);
        two.set_symbol(0, scalar_const_symbol(8, 2.0)).unwrap();
        let inv = spectral_invert(&two, &w, 1e-10).unwrap();
        assert_eq!(inv.inverse.shifts().collect::<Vec<_>>(), vec![0]);
        assert!((inv.inverse.symbol(0).unwrap()[0].at(0, 0).re - 0.5).abs() < 1e-13);

        let id = ShiftOperator::identity(8, 1);
        let inv = spectral_invert(&id, &w, 1e-10).unwrap();
        assert!((inv.inverse.symbol(0).unwrap()[0].at(0, 0).re - 1.0).abs() < 1e-13);
        assert!(inv.roundtrip < 1e-12);

        let zero = ShiftOperator::new(8, 1);
        assert!(matches!(
            spectral_invert(&zero, &w, 1e-10),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn structured_inverse_stays_on_walnut_shifts_and_decays() {
        let lat = GaborLattice::new(2, 8, 32).unwrap();
        let g = gaussian_window(32, 0.0, 16.0);
        let fam = correlations(&g, &g, lat).unwrap();
        let op = ShiftOperator::from_correlations(&fam);
        let w = Weight::constant(32);
        let inv = spectral_invert(&op, &w, 1e-8).unwrap();
        assert!(inv.roundtrip <= 1e-10);
        let step = lat.walnut_step();
        for x in inv.inverse.shifts() {
            assert_eq!(x % step, 0, "inverse must live on the correlation shifts");
        }
        // group by wrap distance; sizes must not increase outward
        let mut by_dist: BTreeMap<usize, f64> = BTreeMap::new();
        for e in &inv.decay {
            let cur = by_dist.entry(e.dist).or_insert(0.0);
            *cur = cur.max(e.sym_norm);
        }
        let profile: Vec<f64> = by_dist.values().copied().collect();
        for pair in profile.windows(2) {
            assert!(pair[1] <= pair[0] * 1.1, "profile {profile:?}");
        }
    }

    #[test]
    fn inverse_of_frame_operator_sends_window_to_dual() {
        let lat = GaborLattice::new(2, 2, 16).unwrap();
        let g = gaussian_window(16, 0.0, 8.0);
        let fam = correlations(&g, &g, lat).unwrap();
        let op = ShiftOperator::from_correlations(&fam);
        let inv = spectral_invert(&op, &Weight::constant(16), 1e-8).unwrap();
        let via_algebra = inv.inverse.apply(&g).unwrap();
        let dual = crate::duality::dual_window(&g, lat, 1e-12).unwrap();
        assert!(via_algebra.sub(&dual).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn modulation_conjugation_scales_by_character() {
        let id = ShiftOperator::identity(8, 1);
        let chk = rho_eigen_check(&id, 3).unwrap();
        // phases cancel to a rounding-level residue, not an exact zero
        assert!(chk.pass && chk.dev < 1e-15);

        let mut t1 = ShiftOperator::new(8, 1);
        t1.set_symbol(1, scalar_const_symbol(8, 1.0)).unwrap();
        let chk = rho_eigen_check(&t1, 4).unwrap();
        assert!(chk.pass, "phase at half period is -1, dev {}", chk.dev);

        let op = random_operator(8, 2, 1, 900);
        let mut single = ShiftOperator::new(8, 2);
        single
            .set_symbol(3, op.symbol(op.shifts().next().unwrap()).unwrap().to_vec())
            .unwrap();
        for y in 0..8 {
            assert!(rho_eigen_check(&single, y).unwrap().pass);
        }

        let mut multi = ShiftOperator::new(8, 1);
        multi.set_symbol(0, scalar_const_symbol(8, 1.0)).unwrap();
        multi.set_symbol(1, scalar_const_symbol(8, 1.0)).unwrap();
        assert!(matches!(
            rho_eigen_check(&multi, 1),
            Err(Error::MultiTerm { terms: 2 })
        ));
    }
}
