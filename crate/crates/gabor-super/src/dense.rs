//! Dense operators on the flattened signal space.
//!
//! A signal of length `len` with `channels` channels is flattened to a
//! vector of dimension `len * channels` (sample-major), and a
//! [`DenseOperator`] is an explicit matrix on that space. Dense matrices
//! are the crate's reference representation: structured fast paths are
//! checked against them rather than trusted. Factorizations are delegated
//! to nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::VectorSignal;

#[derive(Debug, Clone)]
pub struct DenseOperator {
    len: usize,
    channels: usize,
    mat: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn zeros(len: usize, channels: usize) -> Self {
        let d = len * channels;
        DenseOperator {
            len,
            channels,
            mat: DMatrix::zeros(d, d),
        }
    }

    pub fn identity(len: usize, channels: usize) -> Self {
        let d = len * channels;
        DenseOperator {
            len,
            channels,
            mat: DMatrix::identity(d, d),
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

    pub fn dim(&self) -> usize {
        self.len * self.channels
    }

    /// Entry in signal coordinates: row `(l, i)`, column `(l2, i2)`.
    pub fn at(&self, l: usize, i: usize, l2: usize, i2: usize) -> Complex64 {
        self.mat[(l * self.channels + i, l2 * self.channels + i2)]
    }

    pub fn entry_add(&mut self, l: usize, i: usize, l2: usize, i2: usize, v: Complex64) {
        self.mat[(l * self.channels + i, l2 * self.channels + i2)] += v;
    }

    pub fn entry_set(&mut self, l: usize, i: usize, l2: usize, i2: usize, v: Complex64) {
        self.mat[(l * self.channels + i, l2 * self.channels + i2)] = v;
    }

    /// Rank-one update `self += u v^*` over flattened vectors.
    pub fn add_outer(&mut self, u: &[Complex64], v: &[Complex64]) {
        let d = self.dim();
        debug_assert_eq!(u.len(), d);
        debug_assert_eq!(v.len(), d);
        for r in 0..d {
            let ur = u[r];
            if ur.re == 0.0 && ur.im == 0.0 {
                continue;
            }
            for c in 0..d {
                self.mat[(r, c)] += ur * v[c].conj();
            }
        }
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
        let x = DVector::from_column_slice(f.data());
        let y = &self.mat * x;
        let mut out = VectorSignal::zeros(self.len, self.channels);
        for l in 0..self.len {
            for i in 0..self.channels {
                out.set(l, i, y[l * self.channels + i]);
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &DenseOperator) -> DenseOperator {
        debug_assert_eq!(self.dim(), other.dim());
        DenseOperator {
            len: self.len,
            channels: self.channels,
            mat: &self.mat * &other.mat,
        }
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            len: self.len,
            channels: self.channels,
            mat: self.mat.adjoint(),
        }
    }

    pub fn sub(&self, other: &DenseOperator) -> DenseOperator {
        debug_assert_eq!(self.dim(), other.dim());
        DenseOperator {
            len: self.len,
            channels: self.channels,
            mat: &self.mat - &other.mat,
        }
    }

    pub fn scale(&self, c: Complex64) -> DenseOperator {
        DenseOperator {
            len: self.len,
            channels: self.channels,
            mat: self.mat.map(|z| z * c),
        }
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - I`.
    pub fn identity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut dev: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut z = self.mat[(r, c)];
                if r == c {
                    z -= Complex64::new(1.0, 0.0);
                }
                dev = dev.max(z.norm());
            }
        }
        dev
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim();
        let mut dev: f64 = 0.0;
        for r in 0..d {
            for c in r..d {
                dev = dev.max((self.mat[(r, c)] - self.mat[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// Extreme eigenvalues of a Hermitian matrix via full decomposition.
    pub fn hermitian_eig_range(&self) -> (f64, f64) {
        let eig = self.mat.clone().symmetric_eigen();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in eig.eigenvalues.iter() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    /// All eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let eig = self.mat.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    pub fn try_inverse(&self) -> Option<DenseOperator> {
        self.mat.clone().try_inverse().map(|mat| DenseOperator {
            len: self.len,
            channels: self.channels,
            mat,
        })
    }

    /// Largest singular value, by power iteration on `A^* A`.
    pub fn spectral_norm_estimate(&self, tol: f64, max_iters: usize) -> f64 {
        let d = self.dim();
        // deterministic start vector with all Fourier modes populated
        let mut v = DVector::from_fn(d, |i, _| {
            Complex64::new(1.0 + (i as f64 + 1.0).sin() * 0.25, (i as f64 * 0.7).cos() * 0.25)
        });
        v /= Complex64::new(v.norm(), 0.0);
        let mut prev = 0.0f64;
        for _ in 0..max_iters {
            let w = self.mat.adjoint() * (&self.mat * &v);
            let nw = w.norm();
            if nw == 0.0 {
                return 0.0;
            }
            let est = nw.sqrt();
            v = w / Complex64::new(nw, 0.0);
            if (est - prev).abs() <= tol * est.max(1e-300) {
                return est;
            }
            prev = est;
        }
        prev
    }
}

/// Largest eigenvalue of a Hermitian positive semi-definite operator given
/// only through its action. Deterministic start vector; relative
/// stopping tolerance.
pub fn power_iteration_psd<F>(dim: usize, matvec: F, tol: f64, max_iters: usize) -> f64
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let mut v: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::new(1.0 + (i as f64 + 1.0).sin() * 0.25, (i as f64 * 0.7).cos() * 0.25))
        .collect();
    let norm = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nv = norm(&v);
    for z in v.iter_mut() {
        *z /= nv;
    }
    let mut prev = 0.0f64;
    for _ in 0..max_iters {
        let w = matvec(&v);
        // Rayleigh quotient; for PSD matrices this converges monotonically
        let rq: f64 = w
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a * b.conj()).re)
            .sum();
        let nw = norm(&w);
        if nw == 0.0 {
            return 0.0;
        }
        for (z, wz) in v.iter_mut().zip(w.iter()) {
            *z = wz / nw;
        }
        if (rq - prev).abs() <= tol * rq.abs().max(1e-300) {
            return rq;
        }
        prev = rq;
    }
    prev
}
