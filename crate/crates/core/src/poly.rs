//! Sparse exact polynomials over Q(i).
//!
//! `UnivariatePoly` carries the restrictions of hypersurface equations to
//! lines (the variable is the line parameter), with root multiplicity at
//! zero and squarefree distinct-root counting via exact gcd.
//! `MultivariatePoly` holds the hypersurface equations themselves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("point has {got} coordinates, polynomial has {expect} variables")]
    PointLength { got: usize, expect: usize },
    #[error("degenerate line: direction is proportional to the base point")]
    DegenerateLine,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("interpolation nodes are not distinct")]
    RepeatedNode,
    #[error("invalid polynomial text: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// univariate
// ---------------------------------------------------------------------------

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of x^k and
/// trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<GaussianRational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: GaussianRational, deg: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn evaluate(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
                .collect(),
        )
    }

    /// Leading coefficient scaled to 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.checked_inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean remainder; panics if `divisor` is zero.
    pub fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor
            .leading()
            .unwrap()
            .checked_inv()
            .expect("nonzero leading coefficient");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let factor = r.leading().unwrap() * &lead_inv;
            let shifted = divisor.mul(&Self::monomial(factor, rd - dd));
            r = r.sub(&shifted);
        }
        r
    }

    /// Monic gcd over Q(i) by the Euclidean algorithm with monic
    /// normalization at every step.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.monic();
        let mut b = rhs.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Index of the lowest nonzero coefficient; the order of vanishing of
    /// the polynomial at 0. Errors on the zero polynomial (for line
    /// restrictions that signals a line inside the hypersurface).
    pub fn multiplicity_at_zero(&self) -> Result<usize, PolyError> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(PolyError::IdenticallyZero)
    }

    /// Number of distinct complex roots: deg(g) - deg(gcd(g, g')).
    pub fn distinct_root_count(&self) -> Result<usize, PolyError> {
        let deg = self.degree().ok_or(PolyError::IdenticallyZero)?;
        if deg == 0 {
            return Ok(0);
        }
        let g = self.gcd(&self.derivative());
        Ok(deg - g.degree().unwrap_or(0))
    }

    /// Lagrange interpolation through exact points with distinct nodes.
    pub fn interpolate(points: &[(GaussianRational, GaussianRational)]) -> Result<Self, PolyError> {
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in &points[..i] {
                if xi == xj {
                    return Err(PolyError::RepeatedNode);
                }
            }
        }
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(GaussianRational::one());
            let mut denom = GaussianRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Self::new(vec![-xj, GaussianRational::one()]));
                denom *= &(xi - xj);
            }
            let w = yi.checked_div(&denom).expect("distinct nodes");
            acc = acc.add(&basis.scale(&w));
        }
        Ok(acc)
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains('+') || cs[1..].contains('-');
            if !first {
                write!(f, "{}", if needs_parens || !cs.starts_with('-') { "+" } else { "" })?;
            }
            first = false;
            let body = if needs_parens { format!("({cs})") } else { cs };
            match k {
                0 => write!(f, "{body}")?,
                1 if body == "1" => write!(f, "t")?,
                1 if body == "-1" => write!(f, "-t")?,
                1 => write!(f, "{body}*t")?,
                _ if body == "1" => write!(f, "t^{k}")?,
                _ if body == "-1" => write!(f, "-t^{k}")?,
                _ => write!(f, "{body}*t^{k}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// multivariate
// ---------------------------------------------------------------------------

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, GaussianRational>,
}

impl MultivariatePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable x_i as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, GaussianRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * x^exps`, merging with an existing term and dropping the
    /// term if it cancels. Panics on wrong exponent-vector length.
    pub fn add_term(&mut self, exps: Vec<u32>, c: GaussianRational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let merged = &*o.get() + &c;
                if merged.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_nvars(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.nvars != rhs.nvars {
            return Err(PolyError::NvarsMismatch(self.nvars, rhs.nvars));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_nvars(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_nvars(rhs)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                got: point.len(),
                expect: self.nvars,
            });
        }
        let mut acc = GaussianRational::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut ne = exps.clone();
            ne[var] = e - 1;
            out.add_term(ne, c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    /// Max total degree over the stored terms; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// Some(d) when every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Restriction to the line `t -> f(base + t*direction)` for a
    /// homogeneous polynomial. t = 0 corresponds to `base`.
    pub fn restrict_to_line(
        &self,
        base: &[GaussianRational],
        direction: &[GaussianRational],
    ) -> Result<UnivariatePoly, PolyError> {
        if base.len() != self.nvars {
            return Err(PolyError::PointLength {
                got: base.len(),
                expect: self.nvars,
            });
        }
        if direction.len() != self.nvars {
            return Err(PolyError::PointLength {
                got: direction.len(),
                expect: self.nvars,
            });
        }
        if !self.is_zero() && self.homogeneous_degree().is_none() {
            return Err(PolyError::NotHomogeneous);
        }
        if proportional(base, direction) {
            return Err(PolyError::DegenerateLine);
        }
        // per-variable linear factors base_i + t*dir_i
        let lines: Vec<UnivariatePoly> = base
            .iter()
            .zip(direction)
            .map(|(b, d)| UnivariatePoly::new(vec![b.clone(), d.clone()]))
            .collect();
        let mut acc = UnivariatePoly::zero();
        for (exps, c) in &self.terms {
            let mut term = UnivariatePoly::constant(c.clone());
            for (line, &e) in lines.iter().zip(exps) {
                for _ in 0..e {
                    term = term.mul(line);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// True when u and v span a space of dimension < 2 (either is zero or all
/// 2x2 minors vanish).
pub fn proportional(u: &[GaussianRational], v: &[GaussianRational]) -> bool {
    if u.iter().all(GaussianRational::is_zero) || v.iter().all(GaussianRational::is_zero) {
        return true;
    }
    for i in 0..u.len() {
        for j in i + 1..v.len() {
            let minor = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if !minor.is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

impl MultivariatePoly {
    /// Text form: header `poly NVARS`, one term per line (NVARS exponents
    /// then the coefficient token). Term order does not matter on input
    /// and duplicate exponent vectors are summed.
    pub fn to_text(&self) -> String {
        let mut out = format!("poly {}\n", self.nvars);
        for (exps, c) in &self.terms {
            for e in exps {
                out.push_str(&e.to_string());
                out.push(' ');
            }
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, PolyError> {
        let polys = parse_poly_blocks(text)?;
        match polys.len() {
            1 => Ok(polys.into_iter().next().unwrap()),
            n => Err(PolyError::Parse(format!("expected 1 polynomial, found {n}"))),
        }
    }
}

/// Parses a file made of one or more `poly NVARS` blocks.
pub fn parse_poly_blocks(text: &str) -> Result<Vec<MultivariatePoly>, PolyError> {
    let mut polys: Vec<MultivariatePoly> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let first = toks.next().unwrap();
        if first == "poly" {
            let nvars: usize = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| PolyError::Parse(format!("line {}: bad header", lineno + 1)))?;
            polys.push(MultivariatePoly::zero(nvars));
            continue;
        }
        let current = polys
            .last_mut()
            .ok_or_else(|| PolyError::Parse(format!("line {}: term before header", lineno + 1)))?;
        let nvars = current.nvars();
        let mut exps = Vec::with_capacity(nvars);
        let mut tok = first;
        for k in 0..nvars {
            let e: u32 = tok.parse().map_err(|_| {
                PolyError::Parse(format!("line {}: bad exponent `{tok}`", lineno + 1))
            })?;
            exps.push(e);
            if k + 1 < nvars {
                tok = toks.next().ok_or_else(|| {
                    PolyError::Parse(format!("line {}: too few fields", lineno + 1))
                })?;
            }
        }
        let coef_tok = toks
            .next()
            .ok_or_else(|| PolyError::Parse(format!("line {}: missing coefficient", lineno + 1)))?;
        if toks.next().is_some() {
            return Err(PolyError::Parse(format!(
                "line {}: trailing fields",
                lineno + 1
            )));
        }
        let c: GaussianRational = coef_tok
            .parse()
            .map_err(|_| PolyError::Parse(format!("line {}: bad scalar `{coef_tok}`", lineno + 1)))?;
        current.add_term(exps, c);
    }
    if polys.is_empty() {
        return Err(PolyError::Parse("no `poly` header found".into()));
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn up(coeffs: &[i64]) -> UnivariatePoly {
        UnivariatePoly::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn multiplicity_examples() {
        // -4e^9 - 9e^8 - 4e^7 has a zero of multiplicity 7 at 0
        let mut coeffs = vec![0i64; 10];
        coeffs[7] = -4;
        coeffs[8] = -9;
        coeffs[9] = -4;
        assert_eq!(up(&coeffs).multiplicity_at_zero().unwrap(), 7);
        assert_eq!(up(&[0, 1]).multiplicity_at_zero().unwrap(), 1);
        assert_eq!(up(&[5]).multiplicity_at_zero().unwrap(), 0);
        assert_eq!(
            UnivariatePoly::zero().multiplicity_at_zero(),
            Err(PolyError::IdenticallyZero)
        );
    }

    #[test]
    fn distinct_roots_examples() {
        // e^7 (4e^2 + 9e + 4): discriminant 81 - 64 = 17 != 0, so 3 distinct roots
        let p = up(&[4, 9, 4]).mul(&UnivariatePoly::monomial(GaussianRational::one(), 7));
        assert_eq!(p.distinct_root_count().unwrap(), 3);
        // (e-1)^2
        assert_eq!(up(&[1, -2, 1]).distinct_root_count().unwrap(), 1);
        // e^2 + 1
        assert_eq!(up(&[1, 0, 1]).distinct_root_count().unwrap(), 2);
        assert!(UnivariatePoly::zero().distinct_root_count().is_err());
    }

    #[test]
    fn restrict_simple_product() {
        // f = x0*x1 in 2 vars, base (1,0), direction (0,1) -> t
        let f = MultivariatePoly::var(2, 0).mul(&MultivariatePoly::var(2, 1)).unwrap();
        let r = f
            .restrict_to_line(
                &[g("1"), g("0")],
                &[g("0"), g("1")],
            )
            .unwrap();
        assert_eq!(r, up(&[0, 1]));
    }

    #[test]
    fn restrict_rejects_degenerate_line() {
        let f = MultivariatePoly::var(2, 0);
        let e = f.restrict_to_line(&[g("1"), g("2")], &[g("2"), g("4")]);
        assert_eq!(e, Err(PolyError::DegenerateLine));
        let e = f.restrict_to_line(&[g("1"), g("2")], &[g("0"), g("0")]);
        assert_eq!(e, Err(PolyError::DegenerateLine));
    }

    #[test]
    fn mv_mul_difference_of_squares() {
        let x = MultivariatePoly::var(2, 0);
        let y = MultivariatePoly::var(2, 1);
        let sum = x.add(&y).unwrap();
        let diff = x.sub(&y).unwrap();
        let prod = sum.mul(&diff).unwrap();
        let expect = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let f = MultivariatePoly::var(2, 0);
        let h = MultivariatePoly::var(3, 0);
        assert!(matches!(f.add(&h), Err(PolyError::NvarsMismatch(2, 3))));
    }

    #[test]
    fn poly_text_round_trip_and_duplicate_merge() {
        let mut f = MultivariatePoly::zero(3);
        f.add_term(vec![2, 0, 0], g("1/2"));
        f.add_term(vec![0, 1, 1], g("-i"));
        let text = f.to_text();
        assert_eq!(MultivariatePoly::from_text(&text).unwrap(), f);
        // duplicates are summed on load
        let dup = "poly 2\n1 0 1\n1 0 2\n0 1 -1\n0 1 1\n";
        let p = MultivariatePoly::from_text(dup).unwrap();
        let mut expect = MultivariatePoly::zero(2);
        expect.add_term(vec![1, 0], g("3"));
        assert_eq!(p, expect);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = up(&[1, -3, 0, 2]);
        let pts: Vec<_> = (-2..=2)
            .map(|v| {
                let x = GaussianRational::from_int(v);
                let y = p.evaluate(&x);
                (x, y)
            })
            .collect();
        assert_eq!(UnivariatePoly::interpolate(&pts).unwrap(), p);
        let dup = vec![pts[0].clone(), pts[0].clone()];
        assert_eq!(
            UnivariatePoly::interpolate(&dup),
            Err(PolyError::RepeatedNode)
        );
    }

    #[test]
    fn gcd_is_monic_and_correct() {
        // gcd((x-1)^2 (x+2), (x-1)(x+3)) = x - 1
        let a = up(&[1, -2, 1]).mul(&up(&[2, 1]));
        let b = up(&[-1, 1]).mul(&up(&[3, 1]));
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
    }
}
