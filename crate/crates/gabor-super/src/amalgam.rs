//! Weighted mixed-norm machinery on the cyclic index set.
//!
//! A [`Weight`] is a positive symmetric sequence on `{0, .., len-1}`;
//! submultiplicativity is established by exhaustive scan at construction,
//! not assumed. The growth-rate side condition that matters on the real
//! line is automatic here: on a finite cyclic group every weight value is
//! hit periodically, so `w(k*x)^(1/k) -> 1` always holds and
//! [`Weight::satisfies_growth_condition`] simply records that.
//!
//! [`amalgam_norm`] measures a signal by an inner `l^p` norm over
//! length-`block` windows anchored at 0 and an outer weighted `l^q` norm
//! across windows, the weight evaluated at each window's anchor. With
//! `p = q` and a trivial weight this collapses to the global `l^p` norm,
//! which is one of the unit tests.

use crate::error::{Error, Result};
use crate::signal::VectorSignal;

// ---------------------------------------------------------------------------
// Exponents
// ---------------------------------------------------------------------------

/// An `l^p` exponent in `[1, inf]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Exponent> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent { value: p });
        }
        if p.is_infinite() {
            Ok(Exponent::Infinite)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    /// Conjugate exponent: `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Infinite => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinite,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// Accepts a number or `inf`; used by the command-line front end.
    pub fn parse(s: &str) -> Result<Exponent> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "oo" {
            return Ok(Exponent::Infinite);
        }
        let p: f64 = t.parse().map_err(|_| Error::InvalidExponent { value: f64::NAN })?;
        Exponent::new(p)
    }
}

/// `l^p` fold over a sequence of non-negative terms.
fn lp_norm<I: Iterator<Item = f64>>(vals: I, p: Exponent) -> f64 {
    match p {
        Exponent::Infinite => vals.fold(0.0, f64::max),
        Exponent::Finite(p) if p == 1.0 => vals.sum(),
        Exponent::Finite(p) if p == 2.0 => vals.map(|v| v * v).sum::<f64>().sqrt(),
        Exponent::Finite(p) => vals.map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    Constant,
    /// `w(l) = (1 + d(l))^s` with `d` the wrap-around distance.
    Polynomial {
        s: f64,
    },
    Custom,
}

/// A positive, symmetric weight on the cyclic index set.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    len: usize,
    values: Vec<f64>,
    kind: WeightKind,
    submultiplicative: bool,
}

const WEIGHT_REL_TOL: f64 = 1e-12;

impl Weight {
    /// The trivial weight `w == 1`.
    pub fn constant(len: usize) -> Weight {
        assert!(len > 0);
        Weight {
            len,
            values: vec![1.0; len],
            kind: WeightKind::Constant,
            submultiplicative: true,
        }
    }

    /// Polynomial weight of order `s >= 0`. Submultiplicative because the
    /// wrap-around distance is subadditive and
    /// `1 + d1 + d2 <= (1 + d1)(1 + d2)`.
    pub fn polynomial(len: usize, s: f64) -> Result<Weight> {
        assert!(len > 0);
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::InvalidExponent { value: s });
        }
        let values = (0..len)
            .map(|l| {
                let d = l.min(len - l) as f64;
                (1.0 + d).powf(s)
            })
            .collect();
        Ok(Weight {
            len,
            values,
            kind: WeightKind::Polynomial { s },
            submultiplicative: true,
        })
    }

    /// Arbitrary values, rejected unless positive and symmetric.
    /// Submultiplicativity is decided by scanning all index pairs.
    pub fn custom(values: Vec<f64>) -> Result<Weight> {
        let len = values.len();
        assert!(len > 0);
        for (l, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonPositiveWeight { index: l });
            }
        }
        for l in 0..len {
            let m = (len - l) % len;
            let (a, b) = (values[l], values[m]);
            if (a - b).abs() > WEIGHT_REL_TOL * a.max(b) {
                return Err(Error::AsymmetricWeight { index: l });
            }
        }
        let submultiplicative = scan_submultiplicative(&values);
        Ok(Weight {
            len,
            values,
            kind: WeightKind::Custom,
            submultiplicative,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Weight value at any integer, reduced mod `len`.
    pub fn at(&self, x: i64) -> f64 {
        self.values[x.rem_euclid(self.len as i64) as usize]
    }

    pub fn is_submultiplicative(&self) -> bool {
        self.submultiplicative
    }

    /// Always true on a finite cyclic group; see the module docs.
    pub fn satisfies_growth_condition(&self) -> bool {
        true
    }

    /// The pointwise reciprocal, used as the conjugate weight in duality
    /// pairings. Positivity and symmetry survive; submultiplicativity is
    /// re-scanned.
    pub fn reciprocal(&self) -> Weight {
        let values: Vec<f64> = self.values.iter().map(|v| 1.0 / v).collect();
        let submultiplicative = scan_submultiplicative(&values);
        Weight {
            len: self.len,
            values,
            kind: WeightKind::Custom,
            submultiplicative,
        }
    }
}

fn scan_submultiplicative(values: &[f64]) -> bool {
    let len = values.len();
    for x in 0..len {
        for y in 0..len {
            let z = (x + y) % len;
            if values[z] > values[x] * values[y] * (1.0 + WEIGHT_REL_TOL) {
                return false;
            }
        }
    }
    true
}

/// Least `C` with `v(x + y) <= C * w(x) * v(y)` over all index pairs,
/// found by exhaustive scan.
pub fn moderate_constant(v: &Weight, w: &Weight) -> Result<f64> {
    if v.len != w.len {
        return Err(Error::WeightLengthMismatch {
            got: w.len,
            expected: v.len,
        });
    }
    let len = v.len;
    let mut c: f64 = 0.0;
    for x in 0..len {
        for y in 0..len {
            let z = (x + y) % len;
            c = c.max(v.values[z] / (w.values[x] * v.values[y]));
        }
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// Amalgam norms
// ---------------------------------------------------------------------------

/// Parameters of a weighted amalgam norm: inner exponent `p` over
/// length-`block` windows, outer exponent `q` across windows, weight
/// evaluated at window anchors.
#[derive(Debug, Clone)]
pub struct AmalgamParams {
    pub p: Exponent,
    pub q: Exponent,
    pub block: usize,
    pub weight: Weight,
}

impl AmalgamParams {
    pub fn new(p: Exponent, q: Exponent, block: usize, weight: Weight) -> AmalgamParams {
        AmalgamParams { p, q, block, weight }
    }

    pub fn unweighted(p: Exponent, q: Exponent, block: usize, len: usize) -> AmalgamParams {
        AmalgamParams {
            p,
            q,
            block,
            weight: Weight::constant(len),
        }
    }

    fn validate(&self, len: usize) -> Result<()> {
        if self.block == 0 || len % self.block != 0 {
            return Err(Error::InvalidBlock {
                block: self.block,
                len,
            });
        }
        if self.weight.len() != len {
            return Err(Error::WeightLengthMismatch {
                got: self.weight.len(),
                expected: len,
            });
        }
        Ok(())
    }
}

/// Weighted amalgam norm of a vector-valued signal.
///
/// Window `k` covers samples `[k*block, (k+1)*block)`; its `l^p` norm of
/// the pointwise channel norms is weighted by `weight(k*block)` and the
/// results are combined in `l^q`.
pub fn amalgam_norm(f: &VectorSignal, prm: &AmalgamParams) -> Result<f64> {
    prm.validate(f.len())?;
    let h = f.pointwise_norms();
    let nblocks = f.len() / prm.block;
    let weighted = (0..nblocks).map(|k| {
        let start = k * prm.block;
        let bn = lp_norm(h[start..start + prm.block].iter().copied(), prm.p);
        bn * prm.weight.at(start as i64)
    });
    Ok(lp_norm(weighted, prm.q))
}

/// Outcome of a one-sided norm inequality check.
#[derive(Debug, Clone, Copy)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

const CHECK_SLACK: f64 = 1e-12;

/// Covering bound for lattice periodizations: the sup over `l` of
/// `sum_k ||g(l - k*a)||` against `(1/a + 1)` times the `(inf, 1)` amalgam
/// norm with block `a`. Each residue class meets every window exactly
/// once, so the inequality holds with room to spare; the stated constant
/// is kept for compatibility with the covering argument it comes from.
pub fn periodization_bound_check(g: &VectorSignal, a: usize) -> Result<BoundCheck> {
    let len = g.len();
    if a == 0 || len % a != 0 {
        return Err(Error::InvalidBlock { block: a, len });
    }
    let h = g.pointwise_norms();
    let n = len / a;
    let mut lhs: f64 = 0.0;
    for l in 0..len {
        let mut s = 0.0;
        for k in 0..n {
            let idx = (l + len - (k * a) % len) % len;
            s += h[idx];
        }
        lhs = lhs.max(s);
    }
    let prm = AmalgamParams::unweighted(Exponent::Infinite, Exponent::Finite(1.0), a, len);
    let rhs = (1.0 / a as f64 + 1.0) * amalgam_norm(g, &prm)?;
    Ok(BoundCheck {
        lhs,
        rhs,
        pass: lhs <= rhs + CHECK_SLACK,
    })
}

/// Translation bound `||T_x f|| <= C_v * w(x) * ||f||` in the amalgam norm
/// given by `prm`, with `C_v` the moderateness constant of `prm.weight`
/// against `w`.
///
/// The inequality is guaranteed when `x` is a multiple of `prm.block` (the
/// translated blocks then line up with untranslated ones); for other
/// shifts the check still evaluates both sides but nothing guarantees a
/// pass, and simple block-straddling examples do fail it.
pub fn translation_norm_check(
    f: &VectorSignal,
    x: i64,
    prm: &AmalgamParams,
    w: &Weight,
) -> Result<BoundCheck> {
    prm.validate(f.len())?;
    if w.len() != f.len() {
        return Err(Error::WeightLengthMismatch {
            got: w.len(),
            expected: f.len(),
        });
    }
    let lhs = amalgam_norm(&f.translate(x), prm)?;
    let cv = moderate_constant(&prm.weight, w)?;
    let rhs = cv * w.at(x) * amalgam_norm(f, prm)?;
    Ok(BoundCheck {
        lhs,
        rhs,
        pass: lhs <= rhs + CHECK_SLACK,
    })
}
