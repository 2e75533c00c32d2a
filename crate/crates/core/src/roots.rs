//! Rational root search over Q(i).
//!
//! After clearing denominators a root u/v (in lowest terms over the
//! Gaussian integers) must satisfy u | c_0 and v | c_n in Z[i], so the
//! candidates are quotients of divisors, up to units. Divisors are
//! enumerated from the Gaussian prime factorization, which reduces to
//! factoring the integer norm.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::GaussianRational;
use crate::poly::UnivariatePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("coefficient norm {0} is too large for exact divisor enumeration")]
    NormTooLarge(BigUint),
}

/// Gaussian integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Gi {
    re: BigInt,
    im: BigInt,
}

impl Gi {
    fn new(re: BigInt, im: BigInt) -> Self {
        Self { re, im }
    }

    fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigUint {
        (&self.re * &self.re + &self.im * &self.im)
            .to_biguint()
            .expect("norm is nonnegative")
    }

    fn mul(&self, rhs: &Gi) -> Gi {
        Gi::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn conj(&self) -> Gi {
        Gi::new(self.re.clone(), -self.im.clone())
    }

    /// Exact quotient when rhs divides self.
    fn checked_div(&self, rhs: &Gi) -> Option<Gi> {
        let n = BigInt::from(rhs.norm());
        let prod = self.mul(&rhs.conj());
        let (qr, rr) = prod.re.div_rem(&n);
        let (qi, ri) = prod.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Gi::new(qr, qi))
        } else {
            None
        }
    }

    /// Rounded division for the Euclidean algorithm: remainder norm is
    /// strictly smaller than norm(rhs).
    fn div_round(&self, rhs: &Gi) -> Gi {
        let n = BigInt::from(rhs.norm());
        let prod = self.mul(&rhs.conj());
        let two = BigInt::from(2);
        let round = |v: &BigInt| -> BigInt {
            // floor((2v + n) / 2n) is v/n rounded to the nearest integer
            (v * &two + &n).div_floor(&(&n * &two))
        };
        Gi::new(round(&prod.re), round(&prod.im))
    }

    fn sub(&self, rhs: &Gi) -> Gi {
        Gi::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn gcd(&self, rhs: &Gi) -> Gi {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    /// Canonical associate: rotate by units so that re > 0 and im >= 0
    /// (first quadrant, excluding the positive imaginary axis).
    fn canonical(&self) -> Gi {
        let mut v = self.clone();
        for _ in 0..3 {
            if v.re.is_positive() && !v.im.is_negative() {
                break;
            }
            v = v.mul(&Gi::new(BigInt::zero(), BigInt::one())); // multiply by i
        }
        v
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 22;

fn factor_norm(n: BigUint) -> Result<Vec<(u64, u32)>, RootError> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut big = n;
    // pull small factors until the cofactor fits in u64
    let mut p = 2u64;
    while big.to_u64().is_none() {
        if p > TRIAL_DIVISION_LIMIT {
            return Err(RootError::NormTooLarge(big));
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&big % &bp).is_zero() {
            big /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut small = big.to_u64().expect("fits after reduction");
    while p.checked_mul(p).is_some_and(|sq| sq <= small) {
        if p > TRIAL_DIVISION_LIMIT {
            return Err(RootError::NormTooLarge(BigUint::from(small)));
        }
        let mut e = 0;
        while small % p == 0 {
            small /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if small > 1 {
        out.push((small, 1));
    }
    Ok(out)
}

/// A Gaussian prime above the rational prime p.
fn gaussian_prime_above(p: u64) -> Vec<Gi> {
    if p == 2 {
        return vec![Gi::new(BigInt::one(), BigInt::one())];
    }
    if p % 4 == 3 {
        return vec![Gi::from_int(p as i64)];
    }
    // p = 1 mod 4: find a with a^2 = -1 mod p via a = x^((p-1)/4) for the
    // first non-residue x, then pi = gcd(p, a + i)
    let bp = BigInt::from(p);
    let mut a = None;
    for x in 2u64.. {
        let cand = BigInt::from(x).modpow(&BigInt::from((p - 1) / 4), &bp);
        if (&cand * &cand % &bp + &bp) % &bp == &bp - 1 {
            a = Some(cand);
            break;
        }
        if x > 1000 {
            break;
        }
    }
    let a = a.expect("p = 1 mod 4 has a square root of -1");
    let pi = Gi::new(bp, BigInt::zero()).gcd(&Gi::new(a, BigInt::one()));
    let pi = pi.canonical();
    let conj = pi.conj().canonical();
    vec![pi, conj]
}

/// All divisors of a nonzero Gaussian integer, one per associate class.
fn gaussian_divisors(c: &Gi) -> Result<Vec<Gi>, RootError> {
    let norm = c.norm();
    let mut prime_powers: Vec<(Gi, u32)> = Vec::new();
    let mut rest = c.clone();
    for (p, _) in factor_norm(norm)? {
        for pi in gaussian_prime_above(p) {
            let mut e = 0;
            while let Some(q) = rest.checked_div(&pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                prime_powers.push((pi, e));
            }
        }
    }
    // rest is now a unit
    debug_assert!(rest.norm().is_one(), "leftover non-unit factor");
    let mut divisors = vec![Gi::from_int(1)];
    for (pi, e) in prime_powers {
        let mut extended = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            extended.push(acc.clone());
            for _ in 0..e {
                acc = acc.mul(&pi);
                extended.push(acc.clone());
            }
        }
        divisors = extended;
    }
    Ok(divisors)
}

fn gi_quotient(u: &Gi, v: &Gi) -> GaussianRational {
    // u / v = u * conj(v) / norm(v)
    let n = BigInt::from(v.norm());
    let prod = u.mul(&v.conj());
    GaussianRational::new(
        BigRational::new(prod.re, n.clone()),
        BigRational::new(prod.im, n),
    )
}

/// Clears denominators, returning Gaussian-integer coefficients.
fn integral_coeffs(g: &UnivariatePoly) -> Vec<Gi> {
    let mut lcm = BigInt::one();
    for c in g.coeffs() {
        lcm = lcm.lcm(c.re().denom());
        lcm = lcm.lcm(c.im().denom());
    }
    g.coeffs()
        .iter()
        .map(|c| {
            let re = c.re().numer() * (&lcm / c.re().denom());
            let im = c.im().numer() * (&lcm / c.im().denom());
            Gi::new(re, im)
        })
        .collect()
}

/// All roots of `g` that lie in Q(i), sorted by (re, im); a root of
/// multiplicity m appears once. Roots outside Q(i) are not reported.
pub fn gaussian_rational_roots(g: &UnivariatePoly) -> Result<Vec<GaussianRational>, RootError> {
    if g.is_zero() {
        return Err(RootError::IdenticallyZero);
    }
    let mut roots: Vec<GaussianRational> = Vec::new();
    let mult0 = g.multiplicity_at_zero().expect("nonzero");
    if mult0 > 0 {
        roots.push(GaussianRational::zero());
    }
    // strip x^mult0
    let reduced = UnivariatePoly::new(g.coeffs()[mult0..].to_vec());
    let deg = reduced.degree().unwrap_or(0);
    if deg >= 1 {
        let coeffs = integral_coeffs(&reduced);
        let c0 = coeffs.first().expect("nonzero constant term").clone();
        let cn = coeffs.last().expect("nonzero leading term").clone();
        if deg == 1 {
            let root = GaussianRational::zero()
                - gi_quotient(&c0, &cn);
            roots.push(root);
        } else {
            let units = [
                Gi::from_int(1),
                Gi::new(BigInt::zero(), BigInt::one()),
                Gi::from_int(-1),
                Gi::new(BigInt::zero(), -BigInt::one()),
            ];
            let num_divs = gaussian_divisors(&c0)?;
            let den_divs = gaussian_divisors(&cn)?;
            for u in &num_divs {
                for v in &den_divs {
                    for unit in &units {
                        let cand = gi_quotient(&u.mul(unit), v);
                        if reduced.evaluate(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.re().cmp(b.re()).then_with(|| a.im().cmp(b.im())));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn poly_from_roots(roots: &[&str], lead: &str) -> UnivariatePoly {
        let mut p = UnivariatePoly::constant(g(lead));
        for r in roots {
            let factor = UnivariatePoly::new(vec![-g(r), GaussianRational::one()]);
            p = p.mul(&factor);
        }
        p
    }

    #[test]
    fn finds_integer_and_gaussian_roots() {
        let p = poly_from_roots(&["0", "1", "-2", "i"], "3");
        let roots = gaussian_rational_roots(&p).unwrap();
        let expect: Vec<GaussianRational> =
            ["-2", "0", "i", "1"].iter().map(|s| g(s)).collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn finds_fractional_gaussian_roots() {
        // (2x - 1)(3x - (1+i)) -> roots 1/2 and (1+i)/3
        let p = UnivariatePoly::new(vec![g("-1"), g("2")])
            .mul(&UnivariatePoly::new(vec![g("-1-i"), g("3")]));
        let roots = gaussian_rational_roots(&p).unwrap();
        assert!(roots.contains(&g("1/2")));
        assert!(roots.contains(&g("1/3+1/3*i")));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn ignores_irrational_roots() {
        // x^2 - 2 has no rational roots; x^2 + 2x - 1 neither
        let p = UnivariatePoly::new(vec![g("-2"), g("0"), g("1")]);
        assert!(gaussian_rational_roots(&p).unwrap().is_empty());
        // but x^2 + 1 has +-i
        let p = UnivariatePoly::new(vec![g("1"), g("0"), g("1")]);
        let roots = gaussian_rational_roots(&p).unwrap();
        assert_eq!(roots, vec![g("-i"), g("i")]);
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = poly_from_roots(&["1", "1", "-1/2"], "4");
        let roots = gaussian_rational_roots(&p).unwrap();
        assert_eq!(roots, vec![g("-1/2"), g("1")]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            gaussian_rational_roots(&UnivariatePoly::zero()),
            Err(RootError::IdenticallyZero)
        );
    }
}
