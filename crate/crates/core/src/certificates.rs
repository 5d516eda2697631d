//! Certificate polynomials for points moving along straight segments.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::kernel::Poly;
use crate::predicates::{self, Point, Ring, V3};
use crate::Rational;

/// One straight piece of a trajectory: `start` at `t_lo`, `end` at `t_hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMotion {
    pub start: Point,
    pub end: Point,
    pub t_lo: Rational,
    pub t_hi: Rational,
}

impl LinearMotion {
    pub fn new(start: Point, end: Point, t_lo: Rational, t_hi: Rational) -> Self {
        assert!(t_lo < t_hi, "empty motion interval");
        LinearMotion { start, end, t_lo, t_hi }
    }

    pub fn stationary(p: Point, t_lo: Rational, t_hi: Rational) -> Self {
        LinearMotion::new(p.clone(), p, t_lo, t_hi)
    }

    pub fn position(&self, t: &Rational) -> Point {
        let s = (t - &self.t_lo) / (&self.t_hi - &self.t_lo);
        std::array::from_fn(|i| &self.start[i] + &s * (&self.end[i] - &self.start[i]))
    }

    /// Coordinates as polynomials in absolute time.
    pub fn coords(&self) -> V3<Poly> {
        let span = &self.t_hi - &self.t_lo;
        std::array::from_fn(|i| {
            let slope = (&self.end[i] - &self.start[i]) / &span;
            let c0 = &self.start[i] - &slope * &self.t_lo;
            Poly::linear(c0, slope)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertKind {
    /// Five finite points become co-spherical.
    Flip5,
    /// Four finite points become coplanar next to the vertex at infinity.
    Flip4,
    RadiusEdge,
    RadiusTriangle,
    RadiusTet,
}

impl CertKind {
    pub fn name(self) -> &'static str {
        match self {
            CertKind::Flip5 => "flip5",
            CertKind::Flip4 => "flip4",
            CertKind::RadiusEdge => "radius-edge",
            CertKind::RadiusTriangle => "radius-triangle",
            CertKind::RadiusTet => "radius-tet",
        }
    }

    pub fn is_flip(self) -> bool {
        matches!(self, CertKind::Flip5 | CertKind::Flip4)
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense integer polynomial; the certificates are evaluated in this ring
/// to avoid normalising rationals at every step.
#[derive(Clone, Debug)]
struct Z(Vec<BigInt>);

impl Ring for Z {
    fn zero() -> Self {
        Z(Vec::new())
    }
    fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(&short.0) {
            *a += b;
        }
        Z(v)
    }
    fn sub(&self, o: &Self) -> Self {
        let mut v = self.0.clone();
        v.resize(self.0.len().max(o.0.len()), BigInt::zero());
        for (a, b) in v.iter_mut().zip(&o.0) {
            *a -= b;
        }
        Z(v)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Z(Vec::new());
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Z(v)
    }
    fn scalar(r: &Rational) -> Self {
        assert!(r.is_integer(), "scalar must be integral after scaling");
        Z(vec![r.to_integer()])
    }
}

impl Z {
    fn into_poly(self) -> Poly {
        Poly::from_coeffs(self.0.into_iter().map(Rational::from_integer).collect())
    }
}

/// Coordinates of all motions multiplied by one positive integer `L`
/// that clears every denominator, and `alpha2 * L^2`, also integral.
/// The certificates are homogeneous, so this only scales them by a
/// positive constant.
fn scaled<const N: usize>(m: [&LinearMotion; N], alpha2: &Rational) -> ([V3<Z>; N], Rational) {
    let lines: [V3<(Rational, Rational)>; N] = m.map(|m| {
        let span = &m.t_hi - &m.t_lo;
        std::array::from_fn(|i| {
            let slope = (&m.end[i] - &m.start[i]) / &span;
            (&m.start[i] - &slope * &m.t_lo, slope)
        })
    });
    let mut l = alpha2.denom().clone();
    for line in &lines {
        for (c0, c1) in line {
            l = l.lcm(c0.denom()).lcm(c1.denom());
        }
    }
    let lr = Rational::from_integer(l.clone());
    let coords = lines.map(|line| {
        line.map(|(c0, c1)| Z(vec![(c0 * &lr).to_integer(), (c1 * &lr).to_integer()]))
    });
    (coords, alpha2 * &lr * &lr)
}

fn no_alpha() -> Rational {
    Rational::one()
}

/// Lifted determinant of five moving points; degree at most 5.
pub fn flip_certificate_5(m: [&LinearMotion; 5]) -> Poly {
    let (p, _) = scaled(m, &no_alpha());
    predicates::lifted(&p[0], &p[1], &p[2], &p[3], &p[4]).into_poly()
}

/// Orientation of four moving points; degree at most 3.
pub fn flip_certificate_4(m: [&LinearMotion; 4]) -> Poly {
    let (p, _) = scaled(m, &no_alpha());
    predicates::orient(&p[0], &p[1], &p[2], &p[3]).into_poly()
}

/// `|u - v|^2 - 4 alpha^2`, up to a positive factor; degree at most 2.
pub fn radius_certificate_edge(m1: &LinearMotion, m2: &LinearMotion, alpha2: &Rational) -> Poly {
    let ([a, b], a2) = scaled([m1, m2], alpha2);
    predicates::edge_radius(&a, &b, &a2).into_poly()
}

/// Product-of-side-lengths form; degree at most 6.
pub fn radius_certificate_triangle(
    m1: &LinearMotion,
    m2: &LinearMotion,
    m3: &LinearMotion,
    alpha2: &Rational,
) -> Poly {
    let ([a, b, c], a2) = scaled([m1, m2, m3], alpha2);
    predicates::triangle_radius(&a, &b, &c, &a2).into_poly()
}

/// Circumcenter-minor form; degree at most 10. A positive multiple of the
/// degree 6 form times `|(u - w) x (v - w)|^2`.
pub fn radius_certificate_triangle_deg10(
    m1: &LinearMotion,
    m2: &LinearMotion,
    m3: &LinearMotion,
    alpha2: &Rational,
) -> Poly {
    let ([a, b, c], a2) = scaled([m1, m2, m3], alpha2);
    predicates::triangle_radius_minors(&a, &b, &c, &a2).into_poly()
}

/// Degree at most 8; positive iff the circumradius exceeds alpha.
pub fn radius_certificate_tet(m: [&LinearMotion; 4], alpha2: &Rational) -> Poly {
    let (p, a2) = scaled(m, alpha2);
    predicates::tet_radius([&p[0], &p[1], &p[2], &p[3]], &a2).into_poly()
}

/// Negative while `x` is strictly inside the diametral ball of `uv`.
pub fn gabriel_edge(u: &LinearMotion, v: &LinearMotion, x: &LinearMotion) -> Poly {
    let ([a, b, c], _) = scaled([u, v, x], &no_alpha());
    predicates::edge_ball(&a, &b, &c).into_poly()
}

/// Negative while `x` is strictly inside the smallest ball through `u, v, w`.
pub fn gabriel_triangle(u: &LinearMotion, v: &LinearMotion, w: &LinearMotion, x: &LinearMotion) -> Poly {
    let ([a, b, c, d], _) = scaled([u, v, w, x], &no_alpha());
    predicates::triangle_ball(&a, &b, &c, &d).into_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(x: i64, y: i64, z: i64) -> Point {
        [x, y, z].map(|v| Rational::from_integer(v.into()))
    }

    fn fixed(x: Point) -> LinearMotion {
        LinearMotion::stationary(x, q(0, 1), q(1, 1))
    }

    #[test]
    fn motion_coords_match_position() {
        let m = LinearMotion::new(p(1, 2, 3), p(-1, 0, 7), q(1, 4), q(3, 4));
        let cs = m.coords();
        for t in [q(1, 4), q(1, 2), q(2, 3), q(3, 4)] {
            let pos = m.position(&t);
            for i in 0..3 {
                assert_eq!(cs[i].eval(&t), pos[i]);
            }
        }
    }

    #[test]
    fn cospherical_stationary_flip5_is_zero() {
        let pts = [p(1, 0, 0), p(-1, 0, 0), p(0, 1, 0), p(0, -1, 0), p(0, 0, 1)];
        let ms: Vec<_> = pts.into_iter().map(fixed).collect();
        assert!(flip_certificate_5([&ms[0], &ms[1], &ms[2], &ms[3], &ms[4]]).is_zero());
    }

    #[test]
    fn plane_crossing_flip4() {
        let a = fixed(p(0, 0, 0));
        let b = fixed(p(1, 0, 0));
        let cc = fixed(p(0, 1, 0));
        let d = LinearMotion::new(p(0, 0, 1), p(0, 0, -1), q(0, 1), q(1, 1));
        let f = flip_certificate_4([&a, &b, &cc, &d]);
        assert_eq!(f.degree(), Some(1));
        assert!(f.eval(&q(1, 2)).is_zero());
    }

    #[test]
    fn radius_edge_examples() {
        let u = fixed(p(0, 0, 0));
        let v = LinearMotion::new(p(0, 0, 0), p(1, 0, 0), q(0, 1), q(1, 1));
        assert_eq!(radius_certificate_edge(&u, &v, &q(1, 1)), Poly::from_ints(&[-4, 0, 1]));
        let v = LinearMotion::new(p(1, 0, 0), p(2, 0, 0), q(0, 1), q(1, 1));
        let r = radius_certificate_edge(&u, &v, &q(1, 1));
        assert!(r.eval(&q(1, 1)).is_zero());
        let w = fixed(p(2, 0, 0));
        assert!(radius_certificate_edge(&u, &w, &q(1, 1)).is_zero());
    }

    #[test]
    fn scaling_tet_has_root_at_zero() {
        let corner = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)];
        let ms: Vec<_> = corner
            .iter()
            .map(|x| {
                let end = x.clone().map(|c| c * Rational::from_integer(2.into()));
                LinearMotion::new(x.clone(), end, q(0, 1), q(1, 1))
            })
            .collect();
        let r = radius_certificate_tet([&ms[0], &ms[1], &ms[2], &ms[3]], &q(3, 4));
        assert!(r.eval(&q(0, 1)).is_zero());
        assert!(r.eval(&q(1, 2)) > q(0, 1));
        assert!(r.degree().unwrap() <= 8);
    }

    #[test]
    fn deg10_is_deg6_times_area() {
        let u = LinearMotion::new(p(0, 0, 0), p(1, 2, 0), q(0, 1), q(1, 1));
        let v = LinearMotion::new(p(3, 0, 1), p(2, -1, 0), q(0, 1), q(1, 1));
        let w = LinearMotion::new(p(0, 4, 0), p(1, 1, 5), q(0, 1), q(1, 1));
        let a2 = q(5, 2);
        let six = radius_certificate_triangle(&u, &v, &w, &a2);
        let ten = radius_certificate_triangle_deg10(&u, &v, &w, &a2);
        let (uc, vc, wc) = (u.coords(), v.coords(), w.coords());
        let n = predicates::cross(&predicates::vsub(&uc, &wc), &predicates::vsub(&vc, &wc));
        let den = predicates::dot(&n, &n);
        assert_eq!(ten.monic(), (&six * &den).monic());
        assert!(six.degree().unwrap() <= 6);
        assert!(ten.degree().unwrap() <= 10);
    }
}
