//! Real algebraic numbers as (square-free integer polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::isolate::descartes_int;
use super::poly::{IntPoly, Poly};
use crate::Rational;

/// Number of bisection rounds before equality is decided with a gcd.
pub const GCD_AFTER_ROUNDS: u32 = 64;

/// A real root of a square-free integer polynomial.
///
/// Either `exact` is set (and `lo == hi == exact`), or the open interval
/// `(lo, hi)` contains exactly one root of `defining` and the polynomial is
/// nonzero with opposite signs at both endpoints.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: Arc<IntPoly>,
    lo: Rational,
    hi: Rational,
    exact: Option<Rational>,
}

impl AlgebraicReal {
    pub fn from_rational(r: Rational) -> Self {
        let poly = IntPoly::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]).canonical();
        AlgebraicReal { defining: Arc::new(poly), lo: r.clone(), hi: r.clone(), exact: Some(r) }
    }

    pub fn from_integer(n: i64) -> Self {
        AlgebraicReal::from_rational(Rational::from_integer(n.into()))
    }

    /// `defining` must be square-free with exactly one root in `(lo, hi)` and
    /// a sign change across it.
    pub(crate) fn isolated(defining: Arc<IntPoly>, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        debug_assert_eq!(
            defining.sign_at(&lo).reverse(),
            defining.sign_at(&hi),
            "endpoints must straddle the root"
        );
        AlgebraicReal { defining, lo, hi, exact: None }
    }

    /// Exact rational root of `defining`.
    pub(crate) fn exact_root(defining: Arc<IntPoly>, r: Rational) -> Self {
        AlgebraicReal { defining, lo: r.clone(), hi: r.clone(), exact: Some(r) }
    }

    pub fn defining_int(&self) -> &IntPoly {
        &self.defining
    }

    pub fn defining(&self) -> Poly {
        self.defining.to_poly()
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn exact(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// One bisection step. Detects an exact hit on the midpoint.
    pub fn bisect(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let s = self.defining.sign_at(&mid);
        if s == Ordering::Equal {
            self.lo = mid.clone();
            self.hi = mid.clone();
            self.exact = Some(mid);
        } else if s == self.defining.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Same number, isolating interval no wider than `width`.
    pub fn refine(&self, width: &Rational) -> AlgebraicReal {
        assert!(width.is_positive(), "refinement width must be positive");
        let mut out = self.clone();
        out.refine_in_place(width);
        out
    }

    pub fn refine_in_place(&mut self, width: &Rational) {
        while self.exact.is_none() && &self.width() > width {
            self.bisect();
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(x) = &self.exact {
            return x.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        let s = self.defining.sign_at(r);
        if s == Ordering::Equal {
            Ordering::Equal
        } else if s == self.defining.sign_at(&self.lo) {
            // no sign change in (lo, r]: the root is to the right of r
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Total order on the real values.
    pub fn compare(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(x) = &self.exact {
            return other.cmp_rational(x).reverse();
        }
        if let Some(y) = &other.exact {
            return self.cmp_rational(y);
        }
        if self.hi <= other.lo {
            return Ordering::Less;
        }
        if other.hi <= self.lo {
            return Ordering::Greater;
        }
        let same = Arc::ptr_eq(&self.defining, &other.defining) || self.defining == other.defining;
        let mut a = self.clone();
        let mut b = other.clone();
        let mut rounds = 0u32;
        let mut gcd_tried = false;
        loop {
            if a.exact.is_some() || b.exact.is_some() {
                return a.compare(&b);
            }
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
            let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
            if same {
                // each interval holds exactly one root of the shared polynomial
                if a.defining.sign_at(&lo) != a.defining.sign_at(&hi) {
                    return Ordering::Equal;
                }
            } else if rounds >= GCD_AFTER_ROUNDS && !gcd_tried {
                gcd_tried = true;
                let g = IntPoly::from_poly(&a.defining.to_poly().gcd(&b.defining.to_poly()));
                // g divides both, so it is nonzero at every interval endpoint
                if g.degree().unwrap_or(0) > 0 && g.sign_at(&lo) != g.sign_at(&hi) {
                    return Ordering::Equal;
                }
            }
            if a.width() >= b.width() {
                a.bisect();
            } else {
                b.bisect();
            }
            rounds += 1;
        }
    }

    /// Sign of `q` at this number.
    pub fn sign_of(&self, q: &IntPoly) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        if let Some(x) = &self.exact {
            return q.sign_at(x);
        }
        let mut x = self.clone();
        let mut rounds = 0u32;
        let mut gcd_tried = false;
        loop {
            if let Some(r) = &x.exact {
                return q.sign_at(r);
            }
            if descartes_int(q, &x.lo, &x.hi) == 0 {
                let mid = (&x.lo + &x.hi) / Rational::from_integer(2.into());
                return q.sign_at(&mid);
            }
            if rounds >= 8 && !gcd_tried {
                gcd_tried = true;
                let g = IntPoly::from_poly(&q.to_poly().gcd(&x.defining.to_poly()));
                if g.degree().unwrap_or(0) > 0 && g.sign_at(&x.lo) != g.sign_at(&x.hi) {
                    return Ordering::Equal;
                }
            }
            x.bisect();
            rounds += 1;
        }
    }

    /// Sign of a rational polynomial at this number.
    pub fn sign_of_poly(&self, p: &Poly) -> Ordering {
        self.sign_of(&IntPoly::from_poly(p))
    }

    /// A rational no larger than the value.
    pub fn lower_bound(&self) -> &Rational {
        &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        rational_to_f64(&mid)
    }

    /// Locates the value on the dyadic grid of step `2^-bits`. The answer
    /// depends only on the value and the defining polynomial, not on how
    /// the isolating interval was obtained.
    pub fn grid_cell(&self, bits: u32) -> GridCell {
        let scale = BigInt::one() << bits;
        let step = |k: &BigInt| Rational::new(k.clone(), scale.clone());
        let scaled_lo = &self.lo * Rational::from_integer(scale.clone());
        let scaled_hi = &self.hi * Rational::from_integer(scale.clone());
        let mut k_lo = scaled_lo.floor().to_integer();
        let mut k_hi = scaled_hi.ceil().to_integer();
        // establish the strict bracket k_lo/2^m < x < k_hi/2^m
        match self.cmp_rational(&step(&k_lo)) {
            Ordering::Equal => return GridCell::Exact(step(&k_lo)),
            Ordering::Less => unreachable!("grid point below the interval"),
            Ordering::Greater => {}
        }
        match self.cmp_rational(&step(&k_hi)) {
            Ordering::Equal => return GridCell::Exact(step(&k_hi)),
            Ordering::Greater => unreachable!("grid point above the interval"),
            Ordering::Less => {}
        }
        let two = BigInt::from(2);
        while &k_hi - &k_lo > BigInt::one() {
            let mid: BigInt = (&k_lo + &k_hi) / &two;
            match self.cmp_rational(&step(&mid)) {
                Ordering::Equal => return GridCell::Exact(step(&mid)),
                Ordering::Greater => k_lo = mid,
                Ordering::Less => k_hi = mid,
            }
        }
        GridCell::Between(step(&k_lo), step(&k_hi))
    }
}

/// Position of an algebraic number on a dyadic grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridCell {
    Exact(Rational),
    Between(Rational, Rational),
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Rational> for AlgebraicReal {
    fn from(r: Rational) -> Self {
        AlgebraicReal::from_rational(r)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {} in ({}, {})", self.defining, self.lo, self.hi),
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // scale to keep precision for large numerators/denominators
    let n = r.numer();
    let d = r.denom();
    let shift = (n.bits() as i64 - d.bits() as i64) - 60;
    let (nn, dd) = if shift > 0 {
        (n.clone(), d << shift as usize)
    } else {
        (n << (-shift) as usize, d.clone())
    };
    let q = nn / dd;
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Decimal scientific notation with `digits` significant digits, truncated
/// toward zero. Deterministic, no floating point involved.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // estimate exponent then correct
    let mut e: i64 = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2)
        .floor() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let m = (a / pow10(e - digits as i64 + 1)).floor().to_integer();
    let s = m.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&s[..1]);
    if s.len() > 1 {
        out.push('.');
        out.push_str(&s[1..]);
    }
    out.push('e');
    out.push_str(&e.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::isolate::isolate_int;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt_of(n: i64) -> AlgebraicReal {
        let p = Arc::new(IntPoly::from_coeffs(vec![BigInt::from(-n), 0.into(), 1.into()]));
        let roots = isolate_int(&p, &q(0, 1), &q(n, 1));
        assert_eq!(roots.len(), 1);
        roots.into_iter().next().unwrap()
    }

    #[test]
    fn sqrt2_below_three_halves() {
        assert_eq!(sqrt_of(2).compare(&AlgebraicReal::from_rational(q(3, 2))), Ordering::Less);
    }

    #[test]
    fn equal_values_with_different_polynomials() {
        let half_lin = AlgebraicReal::from_rational(q(1, 2));
        // positive root of 4t^2 - 1, isolated away from the grid point
        let p = Arc::new(IntPoly::from_coeffs(vec![BigInt::from(-1), 0.into(), 4.into()]));
        let other = AlgebraicReal::isolated(p, q(1, 3), q(2, 3));
        assert_eq!(half_lin.compare(&other), Ordering::Equal);
        assert_eq!(other.compare(&half_lin), Ordering::Equal);
    }

    #[test]
    fn equal_irrationals_need_gcd() {
        // sqrt2 as root of t^2 - 2 and of (t^2 - 2)(t - 5)
        let a = sqrt_of(2);
        let p = IntPoly::from_poly(&(&Poly::from_ints(&[-2, 0, 1]) * &Poly::from_ints(&[-5, 1])));
        let b = AlgebraicReal::isolated(Arc::new(p), q(13, 10), q(3, 2));
        assert_eq!(a.compare(&b), Ordering::Equal);
    }

    #[test]
    fn sqrt2_below_sqrt3() {
        assert_eq!(sqrt_of(2).compare(&sqrt_of(3)), Ordering::Less);
        assert_eq!(sqrt_of(3).compare(&sqrt_of(2)), Ordering::Greater);
    }

    #[test]
    fn refine_respects_width() {
        let s2 = sqrt_of(2);
        let r = s2.refine(&q(1, 8));
        assert!(r.width() <= q(1, 8));
        assert!(r.lo() >= &q(0, 1) && r.hi() <= &q(2, 1));
        let exact = AlgebraicReal::from_rational(q(3, 7)).refine(&q(1, 1000));
        assert_eq!(exact.exact(), Some(&q(3, 7)));
        let s3 = sqrt_of(3).refine(&q(1, 100));
        assert!(s3.lo() < &q(173, 100) && s3.hi() > &q(173, 100));
    }

    #[test]
    fn sign_of_polynomial_at_root() {
        let s2 = sqrt_of(2);
        let t_minus_1 = IntPoly::from_coeffs(vec![BigInt::from(-1), 1.into()]);
        assert_eq!(s2.sign_of(&t_minus_1), Ordering::Greater);
        let twice = IntPoly::from_coeffs(vec![BigInt::from(-4), 0.into(), 2.into()]);
        assert_eq!(s2.sign_of(&twice), Ordering::Equal);
    }

    #[test]
    fn grid_cell_is_path_independent() {
        let a = sqrt_of(2);
        let b = a.refine(&q(1, 1_000_000));
        assert_eq!(a.grid_cell(40), b.grid_cell(40));
        assert_eq!(AlgebraicReal::from_rational(q(1, 4)).grid_cell(8), GridCell::Exact(q(1, 4)));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&q(1, 3), 5), "3.3333e-1");
        assert_eq!(format_decimal(&q(-250, 1), 3), "-2.50e2");
        assert_eq!(format_decimal(&q(1, 1), 1), "1e0");
        assert_eq!(format_decimal(&q(0, 1), 4), "0");
    }
}
