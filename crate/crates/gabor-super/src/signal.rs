//! Vector-valued signals on a cyclic index set.
//!
//! A [`VectorSignal`] is a function from `{0, .., len-1}` (indices taken
//! mod `len`) into `C^channels`. All time-frequency machinery in this
//! crate is built from three elementary operations on such signals:
//! cyclic translation, modulation by a character, and the channel-summed
//! inner product. [`HMatrix`] holds the small `channels x channels`
//! complex matrices that show up once windows take values in `C^n`
//! rather than `C`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// `e^(2*pi*i * num/den)` with the angle reduced first, so large indices
/// do not lose precision.
pub(crate) fn unit_phase(num: i64, den: usize) -> Complex64 {
    let den_i = den as i64;
    let r = num.rem_euclid(den_i);
    Complex64::from_polar(1.0, TAU * (r as f64) / (den as f64))
}

/// Wrap-around distance on the cyclic index set: `min(l mod L, L - l mod L)`.
pub fn wrap_dist(l: i64, len: usize) -> usize {
    let r = l.rem_euclid(len as i64) as usize;
    r.min(len - r)
}

// ---------------------------------------------------------------------------
// VectorSignal
// ---------------------------------------------------------------------------

/// A signal of length `len` with values in `C^channels`.
///
/// Storage is row-major: sample `l` occupies
/// `data[l*channels .. (l+1)*channels]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSignal {
    len: usize,
    channels: usize,
    data: Vec<Complex64>,
}

impl VectorSignal {
    /// Zero signal of the given shape.
    pub fn zeros(len: usize, channels: usize) -> Self {
        assert!(len > 0 && channels > 0, "empty signal shape");
        VectorSignal {
            len,
            channels,
            data: vec![Complex64::new(0.0, 0.0); len * channels],
        }
    }

    /// Scalar (single-channel) signal from a list of samples.
    pub fn from_scalar(samples: Vec<Complex64>) -> Self {
        assert!(!samples.is_empty(), "empty signal");
        VectorSignal {
            len: samples.len(),
            channels: 1,
            data: samples,
        }
    }

    /// Scalar signal with real sample values.
    pub fn from_real(samples: &[f64]) -> Self {
        Self::from_scalar(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Signal from per-sample rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        assert!(!rows.is_empty(), "empty signal");
        let channels = rows[0].len();
        assert!(channels > 0, "empty channel vector");
        let mut data = Vec::with_capacity(rows.len() * channels);
        for row in &rows {
            assert_eq!(row.len(), channels, "ragged rows");
            data.extend_from_slice(row);
        }
        VectorSignal {
            len: rows.len(),
            channels,
            data,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// The `C^n` value at sample `l` (no index wrapping).
    pub fn row(&self, l: usize) -> &[Complex64] {
        &self.data[l * self.channels..(l + 1) * self.channels]
    }

    pub fn row_mut(&mut self, l: usize) -> &mut [Complex64] {
        &mut self.data[l * self.channels..(l + 1) * self.channels]
    }

    /// The value at sample `l` (wrapped mod `len`), channel `i`.
    pub fn at(&self, l: i64, i: usize) -> Complex64 {
        let l = l.rem_euclid(self.len as i64) as usize;
        self.data[l * self.channels + i]
    }

    pub fn set(&mut self, l: usize, i: usize, v: Complex64) {
        self.data[l * self.channels + i] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn same_shape(&self, other: &VectorSignal) -> Result<()> {
        if self.len != other.len || self.channels != other.channels {
            return Err(Error::DimensionMismatch {
                l_lhs: self.len,
                n_lhs: self.channels,
                l_rhs: other.len,
                n_rhs: other.channels,
            });
        }
        Ok(())
    }

    /// Cyclic translation: `(T_x f)(l) = f((l - x) mod len)`.
    ///
    /// Any integer shift is accepted; only its residue mod `len` matters.
    pub fn translate(&self, x: i64) -> VectorSignal {
        let n = self.channels;
        let shift = x.rem_euclid(self.len as i64) as usize;
        let mut out = VectorSignal::zeros(self.len, n);
        for l in 0..self.len {
            let src = (l + self.len - shift) % self.len;
            out.data[l * n..(l + 1) * n].copy_from_slice(&self.data[src * n..(src + 1) * n]);
        }
        out
    }

    /// Modulation: `(M_m f)(l) = e^(2*pi*i*m*l/len) f(l)`, applied to every
    /// channel alike.
    pub fn modulate(&self, m: i64) -> VectorSignal {
        let n = self.channels;
        let mut out = self.clone();
        for l in 0..self.len {
            let phase = unit_phase(m * l as i64, self.len);
            for v in out.data[l * n..(l + 1) * n].iter_mut() {
                *v *= phase;
            }
        }
        out
    }

    /// Channel-summed inner product `sum_l <f(l), g(l)>`, conjugate-linear
    /// in `g`.
    pub fn inner(&self, other: &VectorSignal) -> Result<Complex64> {
        self.same_shape(other)?;
        Ok(dot(&self.data, &other.data))
    }

    /// `sqrt(inner(f, f))`.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> VectorSignal {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &VectorSignal) -> Result<VectorSignal> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(other.data.iter()) {
            *v += w;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &VectorSignal) -> Result<VectorSignal> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(other.data.iter()) {
            *v -= w;
        }
        Ok(out)
    }

    /// Extract channel `i` as a scalar signal.
    pub fn channel(&self, i: usize) -> VectorSignal {
        assert!(i < self.channels);
        let samples = (0..self.len).map(|l| self.data[l * self.channels + i]).collect();
        VectorSignal::from_scalar(samples)
    }

    /// Assemble a direct-sum signal from per-channel scalar signals of
    /// equal length.
    pub fn from_channels(parts: &[VectorSignal]) -> Result<VectorSignal> {
        assert!(!parts.is_empty());
        let len = parts[0].len;
        let mut out = VectorSignal::zeros(len, parts.len());
        for (i, p) in parts.iter().enumerate() {
            if p.len != len || p.channels != 1 {
                return Err(Error::DimensionMismatch {
                    l_lhs: len,
                    n_lhs: 1,
                    l_rhs: p.len,
                    n_rhs: p.channels,
                });
            }
            for l in 0..len {
                out.data[l * parts.len() + i] = p.data[l];
            }
        }
        Ok(out)
    }

    /// Euclidean norm of the channel vector at each sample, as a real
    /// sequence. This is the scalar profile that mixed-norm spaces weigh.
    pub fn pointwise_norms(&self) -> Vec<f64> {
        (0..self.len)
            .map(|l| self.row(l).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }
}

/// Inner product of two raw channel vectors, conjugate-linear in `y`.
pub fn inner_h(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    dot(x, y)
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// Rank-one action `(x (*) y)(z) = <z, y> x` on channel vectors.
pub fn rank_one_apply(x: &[Complex64], y: &[Complex64], z: &[Complex64]) -> Result<Vec<Complex64>> {
    if y.len() != z.len() {
        return Err(Error::DimensionMismatch {
            l_lhs: 1,
            n_lhs: y.len(),
            l_rhs: 1,
            n_rhs: z.len(),
        });
    }
    let c = dot(z, y);
    Ok(x.iter().map(|v| v * c).collect())
}

// ---------------------------------------------------------------------------
// HMatrix
// ---------------------------------------------------------------------------

/// A dense `n x n` complex matrix acting on channel vectors.
///
/// These stay tiny (`n` is the channel count), so the representation is a
/// flat row-major buffer and the heavier factorizations go through
/// nalgebra.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    n: usize,
    e: Vec<Complex64>,
}

impl HMatrix {
    pub fn zeros(n: usize) -> Self {
        HMatrix {
            n,
            e: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = HMatrix::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Outer product `x y^*`; this is the matrix of the rank-one operator
    /// `z -> <z, y> x`.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Self {
        let n = x.len();
        debug_assert_eq!(n, y.len());
        let mut m = HMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.e[i * n + j] = x[i] * y[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.e[i * self.n + j] = v;
    }

    pub fn add_assign(&mut self, other: &HMatrix) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.e.iter_mut().zip(other.e.iter()) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &HMatrix) -> HMatrix {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.e.iter_mut().zip(other.e.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> HMatrix {
        let mut out = self.clone();
        for a in out.e.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn scale_assign(&mut self, c: Complex64) {
        for a in self.e.iter_mut() {
            *a *= c;
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(self.n, v.len());
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self.e[i * self.n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Accumulate `self * v` into `out` without allocating.
    pub fn mul_vec_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(self.n, v.len());
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.n {
                acc += self.e[i * self.n + j] * v[j];
            }
            out[i] += acc;
        }
    }

    pub fn mul_mat(&self, other: &HMatrix) -> HMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = HMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                for j in 0..n {
                    out.e[i * n + j] += a * other.e[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> HMatrix {
        let n = self.n;
        let mut out = HMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.e[i * n + j].conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Spectral norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        if self.n == 1 {
            return self.e[0].norm();
        }
        self.to_nalgebra()
            .svd(false, false)
            .singular_values
            .iter()
            .fold(0.0, |acc, &s| acc.max(s))
    }

    pub fn try_inverse(&self) -> Option<HMatrix> {
        if self.n == 1 {
            let z = self.e[0];
            if z.norm() == 0.0 {
                return None;
            }
            let mut m = HMatrix::zeros(1);
            m.e[0] = z.inv();
            return Some(m);
        }
        self.to_nalgebra().try_inverse().map(|inv| HMatrix::from_nalgebra(&inv))
    }

    /// Eigenvalue range of a Hermitian matrix.
    pub fn hermitian_eig_range(&self) -> (f64, f64) {
        if self.n == 1 {
            let v = self.e[0].re;
            return (v, v);
        }
        let eig = self.to_nalgebra().symmetric_eigen();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in eig.eigenvalues.iter() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.e)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> HMatrix {
        let n = m.nrows();
        let mut out = HMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.e[i * n + j] = m[(i, j)];
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Window and test-signal builders
// ---------------------------------------------------------------------------

/// Periodized Gaussian bump `exp(-pi * d(l, center)^2 / spread)` as a
/// scalar signal, where `d` is the wrap-around distance. `center` may sit
/// between samples; a half-sample offset is the usual way to avoid the
/// degenerate symmetry of the critically sampled case.
pub fn gaussian_window(len: usize, center: f64, spread: f64) -> VectorSignal {
    assert!(spread > 0.0);
    let lf = len as f64;
    let samples = (0..len)
        .map(|l| {
            let mut d = (l as f64 - center).abs() % lf;
            if d > lf / 2.0 {
                d = lf - d;
            }
            Complex64::new((-std::f64::consts::PI * d * d / spread).exp(), 0.0)
        })
        .collect();
    VectorSignal::from_scalar(samples)
}

/// Seeded standard-normal complex signal; the same seed always yields the
/// same samples.
pub fn random_signal(len: usize, channels: usize, seed: u64) -> VectorSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = VectorSignal::zeros(len, channels);
    for l in 0..len {
        for i in 0..channels {
            // Box-Muller keeps the dependency surface small and the draws
            // reproducible across rand versions.
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let r = (-2.0 * u1.ln()).sqrt();
            let re = r * (TAU * u2).cos();
            let u3: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u4: f64 = rng.gen_range(0.0..1.0);
            let r2 = (-2.0 * u3.ln()).sqrt();
            let im = r2 * (TAU * u4).cos();
            out.set(l, i, Complex64::new(re, im));
        }
    }
    out
}
