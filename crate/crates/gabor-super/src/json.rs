//! On-disk JSON schemas for the batch front end.
//!
//! Complex numbers are `[re, im]` pairs throughout. Signals carry their
//! length and channel count explicitly; coefficient files carry the
//! lattice so they are self-describing.

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::amalgam::Weight;
use crate::error::{Error, Result};
use crate::gabor::{GaborCoefficients, GaborLattice};
use crate::signal::{HMatrix, VectorSignal};
use crate::shiftalg::ShiftOperator;
use crate::walnut::{CorrelationFamily, JanssenTable};

type Pair = [f64; 2];

fn to_pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn from_pair(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// `{"L": …, "n": …, "data": [[ [re,im] × n ] × L]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalJson {
    #[serde(rename = "L")]
    pub len: usize,
    pub n: usize,
    pub data: Vec<Vec<Pair>>,
}

impl SignalJson {
    pub fn from_signal(f: &VectorSignal) -> Self {
        SignalJson {
            len: f.len(),
            n: f.channels(),
            data: (0..f.len())
                .map(|l| f.row(l).iter().copied().map(to_pair).collect())
                .collect(),
        }
    }

    pub fn to_signal(&self) -> Result<VectorSignal> {
        if self.data.len() != self.len || self.data.iter().any(|row| row.len() != self.n) {
            return Err(Error::DimensionMismatch {
                l_lhs: self.len,
                n_lhs: self.n,
                l_rhs: self.data.len(),
                n_rhs: self.data.first().map_or(0, Vec::len),
            });
        }
        let mut f = VectorSignal::zeros(self.len, self.n);
        for (l, row) in self.data.iter().enumerate() {
            for (i, &p) in row.iter().enumerate() {
                f.set(l, i, from_pair(p));
            }
        }
        Ok(f)
    }
}

/// `{"a": …, "b": …, "L": …, "c": [[ [re,im] × M ] × N]}` — rows are
/// translates, columns modulations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffJson {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "L")]
    pub len: usize,
    pub c: Vec<Vec<Pair>>,
}

impl CoeffJson {
    pub fn from_coeffs(c: &GaborCoefficients) -> Self {
        let lat = c.lattice();
        CoeffJson {
            a: lat.a(),
            b: lat.b(),
            len: lat.len(),
            c: (0..lat.n_time())
                .map(|k| (0..lat.n_freq()).map(|m| to_pair(c.at(k, m))).collect())
                .collect(),
        }
    }

    pub fn to_coeffs(&self) -> Result<GaborCoefficients> {
        let lat = GaborLattice::new(self.a, self.b, self.len)?;
        if self.c.len() != lat.n_time() || self.c.iter().any(|row| row.len() != lat.n_freq()) {
            return Err(Error::DimensionMismatch {
                l_lhs: lat.n_time(),
                n_lhs: lat.n_freq(),
                l_rhs: self.c.len(),
                n_rhs: self.c.first().map_or(0, Vec::len),
            });
        }
        let mut out = GaborCoefficients::zeros(lat);
        for (k, row) in self.c.iter().enumerate() {
            for (m, &p) in row.iter().enumerate() {
                out.set(k, m, from_pair(p));
            }
        }
        Ok(out)
    }
}

/// `{"L": …, "kind": "constant"|"polynomial"|"custom", "s": …?,
/// "values": […]?}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightJson {
    #[serde(rename = "L")]
    pub len: usize,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl WeightJson {
    pub fn from_weight(w: &Weight) -> Self {
        let (kind, s, values) = match w.kind() {
            crate::amalgam::WeightKind::Constant => ("constant", None, None),
            crate::amalgam::WeightKind::Polynomial { s } => ("polynomial", Some(s), None),
            crate::amalgam::WeightKind::Custom => ("custom", None, Some(w.values().to_vec())),
        };
        WeightJson {
            len: w.len(),
            kind: kind.to_string(),
            s,
            values,
        }
    }

    pub fn to_weight(&self) -> Result<Weight> {
        match self.kind.as_str() {
            "constant" => Ok(Weight::constant(self.len)),
            "polynomial" => Weight::polynomial(self.len, self.s.unwrap_or(0.0)),
            "custom" => {
                let values = self.values.clone().ok_or(Error::WeightLengthMismatch {
                    got: 0,
                    expected: self.len,
                })?;
                if values.len() != self.len {
                    return Err(Error::WeightLengthMismatch {
                        got: values.len(),
                        expected: self.len,
                    });
                }
                Weight::custom(values)
            }
            _ => Err(Error::WeightLengthMismatch {
                got: 0,
                expected: self.len,
            }),
        }
    }
}

/// One shift term: `{"x": …, "symbol": [[n×n pairs] × L]}` where each
/// sample holds an n×n matrix in row-major `[re,im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftTermJson {
    pub x: usize,
    pub symbol: Vec<Vec<Vec<Pair>>>,
}

/// `{"L": …?, "n": …?, "terms": […]}`; length and channel count are
/// inferred from the first symbol when absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftOpJson {
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub terms: Vec<ShiftTermJson>,
}

impl ShiftOpJson {
    pub fn from_operator(op: &ShiftOperator) -> Self {
        ShiftOpJson {
            len: Some(op.len()),
            n: Some(op.channels()),
            terms: op
                .shifts()
                .map(|x| {
                    let symbol = op.symbol(x).expect("listed shift");
                    ShiftTermJson {
                        x,
                        symbol: symbol.iter().map(matrix_to_json).collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn to_operator(&self) -> Result<ShiftOperator> {
        let first = self.terms.first();
        let len = self
            .len
            .or(first.map(|t| t.symbol.len()))
            .unwrap_or_default();
        let n = self
            .n
            .or(first.and_then(|t| t.symbol.first().map(Vec::len)))
            .unwrap_or_default();
        if len == 0 || n == 0 {
            return Err(Error::DimensionMismatch {
                l_lhs: len,
                n_lhs: n,
                l_rhs: 0,
                n_rhs: 0,
            });
        }
        let mut op = ShiftOperator::new(len, n);
        for term in &self.terms {
            let mut symbol = Vec::with_capacity(len);
            for mat in &term.symbol {
                symbol.push(matrix_from_json(mat, n)?);
            }
            op.set_symbol(term.x, symbol)?;
        }
        Ok(op)
    }
}

fn matrix_to_json(m: &HMatrix) -> Vec<Vec<Pair>> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| to_pair(m.at(i, j))).collect())
        .collect()
}

fn matrix_from_json(rows: &[Vec<Pair>], n: usize) -> Result<HMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            l_lhs: n,
            n_lhs: n,
            l_rhs: rows.len(),
            n_rhs: rows.first().map_or(0, Vec::len),
        });
    }
    let mut m = HMatrix::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            m.set(i, j, from_pair(p));
        }
    }
    Ok(m)
}

/// Correlation dump: the symbol family of the structured frame
/// operator, one entry per time shift.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationDumpJson {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "L")]
    pub len: usize,
    pub n: usize,
    /// Shift stride between consecutive entries (`L/b`).
    pub step: usize,
    /// `correlations[k]` is the symbol at time shift `k * step`, stored
    /// like a shift-term symbol.
    pub correlations: Vec<Vec<Vec<Vec<Pair>>>>,
}

impl CorrelationDumpJson {
    pub fn from_family(fam: &CorrelationFamily) -> Self {
        let lat = fam.lattice();
        CorrelationDumpJson {
            a: lat.a(),
            b: lat.b(),
            len: lat.len(),
            n: fam.channels(),
            step: lat.walnut_step(),
            correlations: (0..fam.n_shifts())
                .map(|k| (0..lat.len()).map(|l| matrix_to_json(fam.at(k, l))).collect())
                .collect(),
        }
    }
}

/// Bracket-coefficient dump over the adjoint lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JanssenDumpJson {
    pub a: usize,
    pub b: usize,
    #[serde(rename = "L")]
    pub len: usize,
    pub n: usize,
    /// `table[j][k]` is the n×n bracket matrix at modulation `j * L/a`,
    /// time shift `k * L/b`.
    pub table: Vec<Vec<Vec<Vec<Pair>>>>,
}

impl JanssenDumpJson {
    pub fn from_table(t: &JanssenTable) -> Self {
        let lat = t.lattice();
        JanssenDumpJson {
            a: lat.a(),
            b: lat.b(),
            len: lat.len(),
            n: t.channels(),
            table: (0..lat.a())
                .map(|j| (0..lat.b()).map(|k| matrix_to_json(t.at(j, k))).collect())
                .collect(),
        }
    }
}

/// Frame-bound report emitted by the `bounds` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsJson {
    #[serde(rename = "A")]
    pub lower: f64,
    #[serde(rename = "B")]
    pub upper: f64,
    pub cond: f64,
    pub is_frame: bool,
}

/// Metadata block accompanying a computed dual window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualMetaJson {
    #[serde(rename = "A")]
    pub lower: f64,
    #[serde(rename = "B")]
    pub upper: f64,
    pub cond: f64,
    pub cg_iters: usize,
    pub wr_max_dev: f64,
}
