//! Time-frequency lattices, the coefficient transform and its adjoint,
//! and the direct (dense) frame operator.
//!
//! A lattice with steps `(a, b)` on a length-`L` signal uses the `L/a`
//! cyclic translates by multiples of `a` and the `L/b` modulations by
//! multiples of `b`. The dense frame operator built here sums one
//! rank-one term per lattice point and is deliberately naive: it is the
//! reference the structured representations elsewhere in the crate are
//! tested against.

use num_complex::Complex64;

use crate::amalgam::{Exponent, Weight};
use crate::dense::DenseOperator;
use crate::error::{Error, Result};
use crate::signal::{unit_phase, VectorSignal};

/// Integer time-frequency lattice: time step `a` and frequency step `b`,
/// both dividing the signal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaborLattice {
    a: usize,
    b: usize,
    len: usize,
}

impl GaborLattice {
    pub fn new(a: usize, b: usize, len: usize) -> Result<GaborLattice> {
        if a == 0 || b == 0 || len == 0 || len % a != 0 || len % b != 0 {
            return Err(Error::InvalidLattice { a, b, len });
        }
        Ok(GaborLattice { a, b, len })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of lattice translates, `L/a`.
    pub fn n_time(&self) -> usize {
        self.len / self.a
    }

    /// Number of lattice modulations, `L/b`.
    pub fn n_freq(&self) -> usize {
        self.len / self.b
    }

    /// Translation step of the structured frame-operator representation,
    /// `L/b` samples. Numerically equal to [`Self::n_freq`] but plays the
    /// role of a time shift, so it gets its own name.
    pub fn walnut_step(&self) -> usize {
        self.len / self.b
    }

    /// Redundancy `L / (a*b)` of the lattice per channel: the coefficient
    /// count over the flattened dimension for scalar signals.
    pub fn redundancy(&self) -> f64 {
        self.len as f64 / (self.a * self.b) as f64
    }

    pub fn check_signal(&self, f: &VectorSignal) -> Result<()> {
        if f.len() != self.len {
            return Err(Error::LatticeMismatch {
                a: self.a,
                b: self.b,
                len: self.len,
                expected: f.len(),
            });
        }
        Ok(())
    }

    /// The lattice atom `M_(m*b) T_(k*a) g`.
    pub fn atom(&self, g: &VectorSignal, k: usize, m: usize) -> VectorSignal {
        g.translate((k * self.a) as i64).modulate((m * self.b) as i64)
    }
}

/// Coefficient array of a lattice transform: `c[k][m]` indexed by
/// translate `k` and modulation `m`, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborCoefficients {
    lat: GaborLattice,
    c: Vec<Complex64>,
}

impl GaborCoefficients {
    pub fn zeros(lat: GaborLattice) -> GaborCoefficients {
        GaborCoefficients {
            lat,
            c: vec![Complex64::new(0.0, 0.0); lat.n_time() * lat.n_freq()],
        }
    }

    pub fn lattice(&self) -> GaborLattice {
        self.lat
    }

    pub fn at(&self, k: usize, m: usize) -> Complex64 {
        self.c[k * self.lat.n_freq() + m]
    }

    pub fn set(&mut self, k: usize, m: usize, v: Complex64) {
        self.c[k * self.lat.n_freq() + m] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.c
    }

    /// Plain `l^2` norm of the coefficient array.
    pub fn l2_norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Coefficient transform `c[k][m] = <f, M_(m*b) T_(k*a) g>`.
///
/// Cost is one inner product per lattice point; the fast structured paths
/// live in the frame-operator representations, not here.
pub fn analyze(f: &VectorSignal, g: &VectorSignal, lat: GaborLattice) -> Result<GaborCoefficients> {
    lat.check_signal(f)?;
    lat.check_signal(g)?;
    if f.channels() != g.channels() {
        return Err(Error::DimensionMismatch {
            l_lhs: f.len(),
            n_lhs: f.channels(),
            l_rhs: g.len(),
            n_rhs: g.channels(),
        });
    }
    let (len, n) = (lat.len(), f.channels());
    let mut out = GaborCoefficients::zeros(lat);
    for k in 0..lat.n_time() {
        let shift = (k * lat.a) % len;
        for m in 0..lat.n_freq() {
            // <f, M T g> = sum_l e^(-2 pi i m b l / L) <f(l), g(l - ka)>
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..len {
                let src = (l + len - shift) % len;
                let mut ip = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    ip += f.row(l)[i] * g.row(src)[i].conj();
                }
                acc += ip * unit_phase(-((m * lat.b) as i64) * l as i64, len);
            }
            out.set(k, m, acc);
        }
    }
    Ok(out)
}

/// Adjoint of [`analyze`]: `sum_(k,m) c[k][m] M_(m*b) T_(k*a) g`.
pub fn synthesize(c: &GaborCoefficients, g: &VectorSignal, lat: GaborLattice) -> Result<VectorSignal> {
    lat.check_signal(g)?;
    if c.lat != lat {
        return Err(Error::LatticeMismatch {
            a: lat.a,
            b: lat.b,
            len: lat.len,
            expected: c.lat.len,
        });
    }
    let (len, n) = (lat.len(), g.channels());
    let mut out = VectorSignal::zeros(len, n);
    for k in 0..lat.n_time() {
        let shift = (k * lat.a) % len;
        for l in 0..len {
            let src = (l + len - shift) % len;
            // sum over m of c[k][m] e^(2 pi i m b l / L), then spread over channels
            let mut sum = Complex64::new(0.0, 0.0);
            for m in 0..lat.n_freq() {
                sum += c.at(k, m) * unit_phase(((m * lat.b) as i64) * l as i64, len);
            }
            for i in 0..n {
                let v = out.at(l as i64, i) + sum * g.row(src)[i];
                out.set(l, i, v);
            }
        }
    }
    Ok(out)
}

/// Dense frame-type operator `f -> sum_(k,m) <f, M T g> M T gamma`, built
/// by summing one rank-one term per lattice point.
///
/// Quadratic storage and quartic-ish work; this is the oracle
/// representation, kept free of the structure that the fast paths exploit.
pub fn frame_operator_direct(
    g: &VectorSignal,
    gamma: &VectorSignal,
    lat: GaborLattice,
) -> Result<DenseOperator> {
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
    let mut op = DenseOperator::zeros(lat.len(), g.channels());
    for k in 0..lat.n_time() {
        for m in 0..lat.n_freq() {
            let ag = lat.atom(g, k, m);
            let agam = lat.atom(gamma, k, m);
            op.add_outer(agam.data(), ag.data());
        }
    }
    Ok(op)
}

/// Mixed-norm size of a coefficient array.
///
/// Each translate index `k` carries the trigonometric polynomial
/// `m_k(x) = sum_m c[k][m] e^(2 pi i m x / (L/b))` on one window of
/// `L/b` points; its `l^p` norm under normalized counting measure is
/// weighted by `v(k*a)` and the results are combined in `l^q`. The
/// normalization makes the `p = q = 2`, `v == 1` case agree with the
/// plain `l^2` norm of the coefficients, which pins the constant in the
/// frame-bound sandwich.
pub fn coeff_norm_spq(
    c: &GaborCoefficients,
    p: Exponent,
    q: Exponent,
    v: &Weight,
) -> Result<f64> {
    let lat = c.lat;
    if v.len() != lat.len() {
        return Err(Error::WeightLengthMismatch {
            got: v.len(),
            expected: lat.len(),
        });
    }
    let mlen = lat.walnut_step();
    let nf = lat.n_freq();
    let mut outer_terms = Vec::with_capacity(lat.n_time());
    for k in 0..lat.n_time() {
        let mut vals = Vec::with_capacity(mlen);
        for x in 0..mlen {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..nf {
                acc += c.at(k, m) * unit_phase((m * x) as i64, mlen);
            }
            vals.push(acc.norm());
        }
        let block_norm = match p {
            Exponent::Infinite => vals.iter().copied().fold(0.0, f64::max),
            Exponent::Finite(p) => {
                let mean = vals.iter().map(|v| v.powf(p)).sum::<f64>() / mlen as f64;
                mean.powf(1.0 / p)
            }
        };
        outer_terms.push(block_norm * v.at((k * lat.a) as i64));
    }
    Ok(match q {
        Exponent::Infinite => outer_terms.into_iter().fold(0.0, f64::max),
        Exponent::Finite(q) => outer_terms
            .into_iter()
            .map(|t| t.powf(q))
            .sum::<f64>()
            .powf(1.0 / q),
    })
}
