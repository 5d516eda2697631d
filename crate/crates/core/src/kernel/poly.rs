//! Univariate polynomials over the rationals and the integers.
//!
//! [`Poly`] is the working type for certificate construction: coefficients
//! are exact rationals, index `i` holds the coefficient of `t^i`, trailing
//! zeros are always stripped. [`IntPoly`] is the integer form used by root
//! isolation after denominators have been cleared.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Polynomial in one variable with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c0 + c1 * t`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::from_coeffs(vec![c0, c1])
    }

    /// Builds `prod (t - r)` over the given rationals.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::linear(-r.clone(), Rational::one())
        })
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep coefficients small
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Polynomial with integer coefficients, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Clears denominators and divides out the content. The scaling factor
    /// is positive, so signs of values are preserved.
    pub fn from_poly(p: &Poly) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly::from_coeffs(coeffs).primitive()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Divides by the (positive) gcd of the coefficients.
    pub fn primitive(self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly { coeffs: self.coeffs.into_iter().map(|c| c / &g).collect() }
    }

    /// Primitive with a positive leading coefficient. Same roots, possibly
    /// opposite sign.
    pub fn canonical(self) -> Self {
        let p = self.primitive();
        if p.coeffs.last().is_some_and(Signed::is_negative) {
            IntPoly { coeffs: p.coeffs.into_iter().map(|c| -c).collect() }
        } else {
            p
        }
    }

    /// Sign of `p(x)` evaluated exactly in integers.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        // sum c_i n^i d^(n-i) has the sign of p(n/d) since d > 0
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc.sign_ordering()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `max |c_i / c_n| + 1`, rounded up: every real root lies in `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigInt {
        let lc = self.coeffs.last().expect("zero polynomial").abs();
        let mut best = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = (c.abs() + &lc - 1) / &lc;
            if q > best {
                best = q;
            }
        }
        best + 1
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        let b = Poly::from_ints(&[-1, 0, 3]);
        let s = &a + &b;
        assert_eq!(s, Poly::from_ints(&[0, 2, 3]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!(&a * &b, Poly::from_ints(&[-1, -2, 3, 6]));
    }

    #[test]
    fn division_and_gcd() {
        let p = Poly::from_roots(&[q(1, 2), q(1, 3), q(2, 1)]);
        let d = Poly::from_roots(&[q(1, 3), q(5, 1)]);
        let g = p.gcd(&d);
        assert_eq!(g, Poly::from_roots(&[q(1, 3)]));
        let (qt, r) = p.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(qt.monic(), Poly::from_roots(&[q(1, 2), q(2, 1)]));
    }

    #[test]
    fn integer_form_preserves_sign() {
        let p = Poly::from_coeffs(vec![q(-1, 6), q(0, 1), q(-2, 3)]);
        let ip = IntPoly::from_poly(&p);
        assert_eq!(ip.coeffs(), &[BigInt::from(-1), BigInt::from(0), BigInt::from(-4)]);
        for x in [q(0, 1), q(7, 3), q(-1, 2)] {
            assert_eq!(ip.sign_at(&x), p.eval(&x).cmp(&Rational::zero()));
        }
        let c = ip.canonical();
        assert_eq!(c.coeffs(), &[BigInt::from(1), BigInt::from(0), BigInt::from(4)]);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = IntPoly::from_poly(&Poly::from_roots(&[q(-7, 2), q(3, 1)]));
        let b = Rational::from_integer(p.cauchy_bound());
        assert!(b > q(7, 2));
    }
}
