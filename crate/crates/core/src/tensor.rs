//! Dense tensors over Q(i): products, linear combinations, standard and
//! Koszul flattenings, and catalecticant matrices of binary forms.
//!
//! Storage is row-major with the last index fastest; multi-indices over
//! subsets of modes are enumerated lexicographically, which pins every
//! flattening matrix down to a unique entry layout.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::GaussianRational;
use crate::linalg::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0:?} vs {1:?}")]
    DimMismatch(Vec<usize>, Vec<usize>),
    #[error("entry count {got} does not match dims {dims:?}")]
    BadShape { dims: Vec<usize>, got: usize },
    #[error("tensor must have order >= 1 and every dim >= 1, got {0:?}")]
    BadDims(Vec<usize>),
    #[error("row modes must be a nonempty proper subset of the modes")]
    BadRowModes,
    #[error("mode index {0} out of range for order {1}")]
    ModeOutOfRange(usize, usize),
    #[error("koszul flattening requires an order-3 tensor, got order {0}")]
    NotOrder3(usize),
    #[error("koszul pivot mode must have dimension >= 2, got {0}")]
    PivotTooSmall(usize),
    #[error("koszul pivot and contracted modes must be distinct")]
    PivotEqualsContracted,
    #[error("binary form of degree 2*{delta} needs {expect} coefficients, got {got}")]
    CatalecticantLength { delta: usize, expect: usize, got: usize },
    #[error("empty linear combination")]
    EmptyCombination,
    #[error("invalid tensor text: {0}")]
    Parse(String),
}

/// Which flattening matrix to form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatteningSpec {
    /// Contraction against the duals of `row_modes`; rows are indexed by
    /// the multi-index over `row_modes`, columns by the remaining modes.
    Standard { row_modes: BTreeSet<usize> },
    /// The map A (x) B* -> Lambda^2 A (x) C obtained from the standard
    /// contraction on `contracted_mode` followed by skew-symmetrization
    /// on `pivot_mode`.
    Koszul {
        pivot_mode: usize,
        contracted_mode: usize,
    },
}

impl FlatteningSpec {
    pub fn standard(row_modes: impl IntoIterator<Item = usize>) -> Self {
        Self::Standard {
            row_modes: row_modes.into_iter().collect(),
        }
    }

    pub fn koszul(pivot_mode: usize, contracted_mode: usize) -> Self {
        Self::Koszul {
            pivot_mode,
            contracted_mode,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Standard { row_modes } => {
                let modes: Vec<String> = row_modes.iter().map(|m| m.to_string()).collect();
                format!("standard{{{}}}", modes.join(","))
            }
            Self::Koszul {
                pivot_mode,
                contracted_mode,
            } => format!("koszul{{pivot={pivot_mode},contract={contracted_mode}}}"),
        }
    }
}

/// Dense tensor of order `dims.len()` over Q(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dims: Vec<usize>,
    entries: Vec<GaussianRational>,
}

impl Tensor {
    pub fn zeros(dims: Vec<usize>) -> Result<Self, TensorError> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(TensorError::BadDims(dims));
        }
        let len = dims.iter().product();
        Ok(Self {
            dims,
            entries: vec![GaussianRational::zero(); len],
        })
    }

    pub fn new(dims: Vec<usize>, entries: Vec<GaussianRational>) -> Result<Self, TensorError> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(TensorError::BadDims(dims));
        }
        let len: usize = dims.iter().product();
        if entries.len() != len {
            return Err(TensorError::BadShape {
                dims,
                got: entries.len(),
            });
        }
        Ok(Self { dims, entries })
    }

    /// Outer product of one vector per mode.
    pub fn rank_one(factors: &[Vec<GaussianRational>]) -> Result<Self, TensorError> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        let mut t = Self::zeros(dims)?;
        let total = t.entries.len();
        for flat in 0..total {
            let idx = t.unflatten(flat);
            let mut v = GaussianRational::one();
            for (mode, &i) in idx.iter().enumerate() {
                v *= &factors[mode][i];
            }
            t.entries[flat] = v;
        }
        Ok(t)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    fn flatten_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut flat = 0;
        for (i, d) in idx.iter().zip(&self.dims) {
            debug_assert!(i < d);
            flat = flat * d + i;
        }
        flat
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for (k, d) in self.dims.iter().enumerate().rev() {
            idx[k] = flat % d;
            flat /= d;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &GaussianRational {
        &self.entries[self.flatten_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: GaussianRational) {
        let k = self.flatten_index(idx);
        self.entries[k] = v;
    }

    pub fn add_at(&mut self, idx: &[usize], v: &GaussianRational) {
        let k = self.flatten_index(idx);
        self.entries[k] += v;
    }

    /// dims = concat of the factor dims; entry[(i,j)] = S[i] * T[j].
    pub fn tensor_product(&self, rhs: &Tensor) -> Tensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        let mut entries = Vec::with_capacity(self.entries.len() * rhs.entries.len());
        for a in &self.entries {
            for b in &rhs.entries {
                entries.push(a * b);
            }
        }
        Tensor { dims, entries }
    }

    pub fn scale(&self, c: &GaussianRational) -> Tensor {
        Tensor {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// True when every standard flattening has rank <= 1; for a nonzero
    /// tensor that is exactly rank one. Singleton row modes suffice.
    pub fn is_rank_one(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.order() == 1 {
            return true;
        }
        (0..self.order()).all(|m| {
            self.flatten(&FlatteningSpec::standard([m]))
                .map(|f| f.rank() <= 1)
                .unwrap_or(false)
        })
    }

    /// Standard or Koszul flattening matrix.
    pub fn flatten(&self, spec: &FlatteningSpec) -> Result<ExactMatrix, TensorError> {
        match spec {
            FlatteningSpec::Standard { row_modes } => self.standard_flattening(row_modes),
            FlatteningSpec::Koszul {
                pivot_mode,
                contracted_mode,
            } => self.koszul_flattening(*pivot_mode, *contracted_mode),
        }
    }

    fn standard_flattening(&self, row_modes: &BTreeSet<usize>) -> Result<ExactMatrix, TensorError> {
        let order = self.order();
        for &m in row_modes {
            if m >= order {
                return Err(TensorError::ModeOutOfRange(m, order));
            }
        }
        if row_modes.is_empty() || row_modes.len() == order {
            return Err(TensorError::BadRowModes);
        }
        let col_modes: Vec<usize> = (0..order).filter(|m| !row_modes.contains(m)).collect();
        let row_modes: Vec<usize> = row_modes.iter().copied().collect();
        let rows: usize = row_modes.iter().map(|&m| self.dims[m]).product();
        let cols: usize = col_modes.iter().map(|&m| self.dims[m]).product();
        let mut mat = ExactMatrix::zeros(rows, cols);
        let mut idx = vec![0usize; order];
        for (flat, v) in self.entries.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // decode flat into idx without reallocating
            let mut rem = flat;
            for (k, d) in self.dims.iter().enumerate().rev() {
                idx[k] = rem % d;
                rem /= d;
            }
            let mut r = 0;
            for &m in &row_modes {
                r = r * self.dims[m] + idx[m];
            }
            let mut c = 0;
            for &m in &col_modes {
                c = c * self.dims[m] + idx[m];
            }
            mat.set(r, c, v.clone());
        }
        Ok(mat)
    }

    /// Matrix of T_B^{wedge A} for an order-3 tensor: rows indexed by
    /// {a_p ^ a_q (x) c_k : p < q} with (p,q) lexicographic and then k,
    /// columns by {a_s (x) beta_j} lexicographic. The entry in row
    /// ((p,q),k), column (s,j) is +t[q,j,k] when s = p, -t[p,j,k] when
    /// s = q, and 0 otherwise.
    fn koszul_flattening(
        &self,
        pivot_mode: usize,
        contracted_mode: usize,
    ) -> Result<ExactMatrix, TensorError> {
        let order = self.order();
        if order != 3 {
            return Err(TensorError::NotOrder3(order));
        }
        for &m in &[pivot_mode, contracted_mode] {
            if m >= 3 {
                return Err(TensorError::ModeOutOfRange(m, 3));
            }
        }
        if pivot_mode == contracted_mode {
            return Err(TensorError::PivotEqualsContracted);
        }
        let output_mode = 3 - pivot_mode - contracted_mode;
        let m = self.dims[pivot_mode];
        let nb = self.dims[contracted_mode];
        let nc = self.dims[output_mode];
        if m < 2 {
            return Err(TensorError::PivotTooSmall(m));
        }
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|p| ((p + 1)..m).map(move |q| (p, q)))
            .collect();
        let rows = pairs.len() * nc;
        let cols = m * nb;
        let mut mat = ExactMatrix::zeros(rows, cols);
        let mut idx = [0usize; 3];
        for (pair_pos, &(p, q)) in pairs.iter().enumerate() {
            for k in 0..nc {
                let r = pair_pos * nc + k;
                idx[output_mode] = k;
                for j in 0..nb {
                    idx[contracted_mode] = j;
                    // s = p contributes +t[q, j, k]
                    idx[pivot_mode] = q;
                    let tq = self.get(&[idx[0], idx[1], idx[2]]).clone();
                    if !tq.is_zero() {
                        mat.set(r, p * nb + j, tq);
                    }
                    // s = q contributes -t[p, j, k]
                    idx[pivot_mode] = p;
                    let tp = self.get(&[idx[0], idx[1], idx[2]]);
                    if !tp.is_zero() {
                        mat.set(r, q * nb + j, -tp);
                    }
                }
            }
        }
        Ok(mat)
    }

    /// Text form: header `tensor K d1 .. dK`, then one nonzero entry per
    /// line as K zero-based indices followed by a scalar token.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "tensor {} {}\n",
            self.order(),
            self.dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        for (flat, v) in self.entries.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.unflatten(flat);
            for i in idx {
                out.push_str(&i.to_string());
                out.push(' ');
            }
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TensorError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (_, header) = lines
            .next()
            .ok_or_else(|| TensorError::Parse("empty input".into()))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("tensor") {
            return Err(TensorError::Parse("missing `tensor` header".into()));
        }
        let order: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| TensorError::Parse("bad order".into()))?;
        let dims: Vec<usize> = toks
            .map(|t| {
                t.parse()
                    .map_err(|_| TensorError::Parse(format!("bad dimension `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if dims.len() != order {
            return Err(TensorError::Parse(format!(
                "header declares order {order} but lists {} dims",
                dims.len()
            )));
        }
        let mut t = Tensor::zeros(dims)?;
        for (lineno, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != order + 1 {
                return Err(TensorError::Parse(format!(
                    "line {}: expected {} indices and a scalar",
                    lineno + 1,
                    order
                )));
            }
            let mut idx = Vec::with_capacity(order);
            for (m, tok) in toks[..order].iter().enumerate() {
                let i: usize = tok.parse().map_err(|_| {
                    TensorError::Parse(format!("line {}: bad index `{tok}`", lineno + 1))
                })?;
                if i >= t.dims[m] {
                    return Err(TensorError::Parse(format!(
                        "line {}: index {i} out of range for mode {m}",
                        lineno + 1
                    )));
                }
                idx.push(i);
            }
            let v: GaussianRational = toks[order].parse().map_err(|_| {
                TensorError::Parse(format!("line {}: bad scalar `{}`", lineno + 1, toks[order]))
            })?;
            t.add_at(&idx, &v);
        }
        Ok(t)
    }
}

/// Exact entrywise linear combination of same-shaped tensors.
pub fn linear_combination(
    terms: &[(GaussianRational, &Tensor)],
) -> Result<Tensor, TensorError> {
    let (_, first) = terms.first().ok_or(TensorError::EmptyCombination)?;
    let mut out = Tensor::zeros(first.dims.to_vec())?;
    for (c, t) in terms {
        if t.dims != out.dims {
            return Err(TensorError::DimMismatch(out.dims.clone(), t.dims.clone()));
        }
        for (acc, v) in out.entries.iter_mut().zip(&t.entries) {
            *acc += &(v * c);
        }
    }
    Ok(out)
}

/// The (delta+1) x (delta+1) catalecticant matrix of a binary form of
/// degree 2*delta given by its 2*delta+1 monomial coefficients
/// (coefficient of x^(2d-j) y^j at position j): entry (i,j) is the
/// coefficient of x^(2d-i-j) y^(i+j), making the matrix Hankel.
pub fn catalecticant(
    coeffs: &[GaussianRational],
    delta: usize,
) -> Result<ExactMatrix, TensorError> {
    let expect = 2 * delta + 1;
    if coeffs.len() != expect {
        return Err(TensorError::CatalecticantLength {
            delta,
            expect,
            got: coeffs.len(),
        });
    }
    Ok(ExactMatrix::from_fn(delta + 1, delta + 1, |i, j| {
        coeffs[i + j].clone()
    }))
}
