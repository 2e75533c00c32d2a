//! Exact dense matrices over Q(i).
//!
//! Rank and determinant use fraction-free (Bareiss-style) elimination
//! with full pivoting on nonzero entries, so results are exact and
//! independent of row/column order. Determinants of matrices whose
//! entries are univariate polynomials are computed by evaluation at
//! small integer nodes followed by interpolation.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::GaussianRational;
use crate::poly::{PolyError, UnivariatePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry count {got} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },
    #[error("polynomial matrix entry degree {got} exceeds stated bound {bound}")]
    DegreeBound { got: usize, bound: usize },
    #[error("invalid matrix text: {0}")]
    Parse(String),
}

/// Dense matrix over Q(i), row-major storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<GaussianRational>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::BadShape {
                rows: self.rows,
                cols: rhs.cols,
                got: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = GaussianRational::zero();
            for k in 0..self.cols {
                acc += &(self.get(r, k) * rhs.get(k, c));
            }
            acc
        }))
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    /// Exact determinant. Errors on non-square input.
    pub fn determinant(&self) -> Result<GaussianRational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(GaussianRational::one());
        }
        let (rank, last_pivot, sign) = self.clone().eliminate();
        if rank < n {
            return Ok(GaussianRational::zero());
        }
        Ok(if sign < 0 { -last_pivot } else { last_pivot })
    }

    /// Bareiss fraction-free elimination with full pivoting. Returns
    /// (rank, last pivot, row/col swap sign). After k steps the pivot
    /// equals the k-th leading minor of the permuted matrix, so for a
    /// full-rank square matrix the final pivot is det up to sign.
    fn eliminate(mut self) -> (usize, GaussianRational, i32) {
        let (rows, cols) = (self.rows, self.cols);
        let steps = rows.min(cols);
        let mut prev = GaussianRational::one();
        let mut sign = 1;
        let mut rank = 0;
        for k in 0..steps {
            let mut pivot = None;
            'search: for r in k..rows {
                for c in k..cols {
                    if !self.get(r, c).is_zero() {
                        pivot = Some((r, c));
                        break 'search;
                    }
                }
            }
            let (pr, pc) = match pivot {
                Some(p) => p,
                None => break,
            };
            if pr != k {
                self.swap_rows(pr, k);
                sign = -sign;
            }
            if pc != k {
                self.swap_cols(pc, k);
                sign = -sign;
            }
            let pk = self.get(k, k).clone();
            for r in k + 1..rows {
                let rk = self.get(r, k).clone();
                for c in k + 1..cols {
                    let num = &(self.get(r, c) * &pk) - &(&rk * self.get(k, c));
                    // exact in the fraction-free scheme
                    let v = num.checked_div(&prev).expect("bareiss pivot is nonzero");
                    self.set(r, c, v);
                }
                self.set(r, k, GaussianRational::zero());
            }
            prev = pk;
            rank = k + 1;
        }
        (rank, prev, sign)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Text form: header `matrix R C`, then R lines of C scalar tokens.
    pub fn to_text(&self) -> String {
        let mut out = format!("matrix {} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LinalgError> {
        let parse = |s: &str| -> Result<usize, LinalgError> {
            s.parse()
                .map_err(|_| LinalgError::Parse(format!("bad dimension `{s}`")))
        };
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LinalgError::Parse("empty input".into()))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("matrix") {
            return Err(LinalgError::Parse("missing `matrix` header".into()));
        }
        let rows = parse(toks.next().unwrap_or(""))?;
        let cols = parse(toks.next().unwrap_or(""))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for line in lines {
            for tok in line.split_whitespace() {
                let v: GaussianRational = tok
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("bad scalar `{tok}`")))?;
                entries.push(v);
            }
        }
        Self::new(rows, cols, entries)
    }
}

/// Determinant of a square matrix of univariate polynomials, computed by
/// evaluating at `n * degree_bound + 1` distinct rational nodes
/// (0, 1, -1, 2, -2, ...) and interpolating. `degree_bound` is a per-entry
/// degree bound; it defaults to the maximum entry degree.
pub fn poly_matrix_determinant(
    m: &[Vec<UnivariatePoly>],
    degree_bound: Option<usize>,
) -> Result<UnivariatePoly, LinalgError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(LinalgError::NotSquare {
            rows: n,
            cols: m.iter().map(|r| r.len()).max().unwrap_or(0),
        });
    }
    if n == 0 {
        return Ok(UnivariatePoly::constant(GaussianRational::one()));
    }
    let max_deg = m
        .iter()
        .flatten()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let bound = degree_bound.unwrap_or(max_deg);
    if max_deg > bound {
        return Err(LinalgError::DegreeBound {
            got: max_deg,
            bound,
        });
    }
    let nodes_needed = n * bound + 1;
    let mut points = Vec::with_capacity(nodes_needed);
    for idx in 0..nodes_needed {
        // 0, 1, -1, 2, -2, ...
        let v = if idx == 0 {
            0
        } else if idx % 2 == 1 {
            ((idx + 1) / 2) as i64
        } else {
            -((idx / 2) as i64)
        };
        let node = GaussianRational::from_int(v);
        let mat = ExactMatrix::from_fn(n, n, |r, c| m[r][c].evaluate(&node));
        let det = mat.determinant()?;
        points.push((node, det));
    }
    UnivariatePoly::interpolate(&points).map_err(|e: PolyError| LinalgError::Parse(e.to_string()))
}
