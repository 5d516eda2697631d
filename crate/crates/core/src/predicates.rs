//! Determinant formulas shared by the static predicates and the time-varying
//! certificates. Every formula is written once over [`Ring`] and instantiated
//! with rationals (fixed time) or polynomials (moving points).

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::Poly;
use crate::Rational;

pub type Point = [Rational; 3];

pub trait Ring: Clone {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scalar(r: &Rational) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scalar(r: &Rational) -> Self {
        r.clone()
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scalar(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
}

pub type V3<R> = [R; 3];

pub fn vsub<R: Ring>(a: &V3<R>, b: &V3<R>) -> V3<R> {
    [a[0].sub(&b[0]), a[1].sub(&b[1]), a[2].sub(&b[2])]
}

pub fn dot<R: Ring>(a: &V3<R>, b: &V3<R>) -> R {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn cross<R: Ring>(a: &V3<R>, b: &V3<R>) -> V3<R> {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn vscale<R: Ring>(k: &R, a: &V3<R>) -> V3<R> {
    [k.mul(&a[0]), k.mul(&a[1]), k.mul(&a[2])]
}

pub fn det3<R: Ring>(a: &V3<R>, b: &V3<R>, c: &V3<R>) -> R {
    dot(a, &cross(b, c))
}

/// `det[b - a; c - a; d - a]`, positive for the corner tetrahedron
/// `(0,0,0), (1,0,0), (0,1,0), (0,0,1)`.
pub fn orient<R: Ring>(a: &V3<R>, b: &V3<R>, c: &V3<R>, d: &V3<R>) -> R {
    det3(&vsub(b, a), &vsub(c, a), &vsub(d, a))
}

/// Lifted 5x5 determinant with rows `[1, x, y, z, |p|^2]`, reduced to a
/// 4x4 determinant relative to `e`. Negative when `e` lies inside the
/// circumsphere of a positively oriented `a, b, c, d`.
pub fn lifted<R: Ring>(a: &V3<R>, b: &V3<R>, c: &V3<R>, d: &V3<R>, e: &V3<R>) -> R {
    let rows: Vec<(V3<R>, R)> = [a, b, c, d]
        .iter()
        .map(|p| {
            let q = vsub(p, e);
            let n = dot(&q, &q);
            (q, n)
        })
        .collect();
    // expand along the lifted column
    let mut acc = R::zero();
    for skip in 0..4 {
        let minor: Vec<&V3<R>> = (0..4).filter(|&i| i != skip).map(|i| &rows[i].0).collect();
        let term = rows[skip].1.mul(&det3(minor[0], minor[1], minor[2]));
        // cofactor sign for entry (skip, 3) of a 4x4 matrix
        acc = if (skip + 3) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// `4 R^2 - 4 alpha^2` scaled to be polynomial: `|u - v|^2 - 4 alpha^2`.
pub fn edge_radius<R: Ring>(u: &V3<R>, v: &V3<R>, alpha2: &Rational) -> R {
    let d = vsub(u, v);
    dot(&d, &d).sub(&R::scalar(&(alpha2 * Rational::from_integer(4.into()))))
}

/// `|u-v|^2 |u-w|^2 |v-w|^2 - 4 alpha^2 |(u-w) x (v-w)|^2`.
pub fn triangle_radius<R: Ring>(u: &V3<R>, v: &V3<R>, w: &V3<R>, alpha2: &Rational) -> R {
    let a = vsub(u, w);
    let b = vsub(v, w);
    let c = vsub(u, v);
    let n = cross(&a, &b);
    let prod = dot(&c, &c).mul(&dot(&a, &a)).mul(&dot(&b, &b));
    let four_a2 = R::scalar(&(alpha2 * Rational::from_integer(4.into())));
    prod.sub(&four_a2.mul(&dot(&n, &n)))
}

/// Cramer numerators and denominator for twice the circumcenter of a
/// triangle, relative to `w`.
fn triangle_center<R: Ring>(u: &V3<R>, v: &V3<R>, w: &V3<R>) -> (V3<R>, R) {
    let a = vsub(u, w);
    let b = vsub(v, w);
    let n = cross(&a, &b);
    let rhs = [dot(&a, &a), dot(&b, &b), R::zero()];
    cramer(&[a, b, n], &rhs)
}

/// Solves `M x = rhs` as `x = num / den` without division.
fn cramer<R: Ring>(m: &[V3<R>; 3], rhs: &V3<R>) -> (V3<R>, R) {
    let den = det3(&m[0], &m[1], &m[2]);
    let col = |k: usize| -> R {
        let r: Vec<V3<R>> = (0..3)
            .map(|i| {
                let mut row = m[i].clone();
                row[k] = rhs[i].clone();
                row
            })
            .collect();
        det3(&r[0], &r[1], &r[2])
    };
    ([col(0), col(1), col(2)], den)
}

/// `|num|^2 - 4 alpha^2 den^2` for the triangle circumcenter minors.
pub fn triangle_radius_minors<R: Ring>(u: &V3<R>, v: &V3<R>, w: &V3<R>, alpha2: &Rational) -> R {
    let (num, den) = triangle_center(u, v, w);
    let four_a2 = R::scalar(&(alpha2 * Rational::from_integer(4.into())));
    dot(&num, &num).sub(&four_a2.mul(&den.mul(&den)))
}

/// `|num|^2 - 4 alpha^2 den^2` for the tetrahedron circumcenter relative to
/// its last vertex.
pub fn tet_radius<R: Ring>(p: [&V3<R>; 4], alpha2: &Rational) -> R {
    let a = vsub(p[0], p[3]);
    let b = vsub(p[1], p[3]);
    let c = vsub(p[2], p[3]);
    let rhs = [dot(&a, &a), dot(&b, &b), dot(&c, &c)];
    let (num, den) = cramer(&[a, b, c], &rhs);
    let four_a2 = R::scalar(&(alpha2 * Rational::from_integer(4.into())));
    dot(&num, &num).sub(&four_a2.mul(&den.mul(&den)))
}

/// Negative iff `x` lies strictly inside the diametral ball of `uv`.
pub fn edge_ball<R: Ring>(u: &V3<R>, v: &V3<R>, x: &V3<R>) -> R {
    dot(&vsub(x, u), &vsub(x, v))
}

/// Negative iff `x` lies strictly inside the smallest ball through `u, v, w`.
/// Only meaningful while the triangle is not degenerate.
pub fn triangle_ball<R: Ring>(u: &V3<R>, v: &V3<R>, w: &V3<R>, x: &V3<R>) -> R {
    let a = vsub(u, w);
    let b = vsub(v, w);
    let n = cross(&a, &b);
    let big = cross(&vsub(&vscale(&dot(&a, &a), &b), &vscale(&dot(&b, &b), &a)), &n);
    let y = vsub(x, w);
    dot(&n, &n).mul(&dot(&y, &y)).sub(&dot(&y, &big))
}

fn sign(r: &Rational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Sign of [`orient`] at fixed positions.
pub fn orientation(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    sign(&orient(a, b, c, d))
}

/// `Greater` if `e` is strictly inside the circumsphere of `a, b, c, d`,
/// `Less` if strictly outside, `Equal` if on it. Errors on a flat tetrahedron.
pub fn in_sphere(a: &Point, b: &Point, c: &Point, d: &Point, e: &Point) -> Result<Ordering> {
    let o = orientation(a, b, c, d);
    if o == Ordering::Equal {
        return Err(Error::DegenerateSimplex("flat tetrahedron".into()));
    }
    let l = sign(&lifted(a, b, c, d, e));
    Ok(if o == Ordering::Greater { l.reverse() } else { l })
}

fn circumradius_check(pts: &[&Point], alpha2: &Rational) -> Result<Ordering> {
    match pts.len() {
        2 => {
            if pts[0] == pts[1] {
                return Err(Error::DegenerateSimplex("coincident edge endpoints".into()));
            }
            Ok(sign(&edge_radius(pts[0], pts[1], alpha2)))
        }
        3 => {
            let n = cross(&vsub(pts[0], pts[2]), &vsub(pts[1], pts[2]));
            if dot(&n, &n).is_zero() {
                return Err(Error::DegenerateSimplex("collinear triangle".into()));
            }
            Ok(sign(&triangle_radius(pts[0], pts[1], pts[2], alpha2)))
        }
        4 => {
            if orientation(pts[0], pts[1], pts[2], pts[3]) == Ordering::Equal {
                return Err(Error::DegenerateSimplex("flat tetrahedron".into()));
            }
            Ok(sign(&tet_radius([pts[0], pts[1], pts[2], pts[3]], alpha2)))
        }
        n => Err(Error::DegenerateSimplex(format!("{n} vertices"))),
    }
}

/// Circumradius at most `sqrt(alpha2)`.
pub fn is_short(pts: &[&Point], alpha2: &Rational) -> Result<bool> {
    Ok(circumradius_check(pts, alpha2)? != Ordering::Greater)
}

/// No point of `others` strictly inside the smallest circumball of `pts`.
/// Points equal to a vertex of the simplex are ignored.
pub fn is_gabriel(pts: &[&Point], others: &[&Point]) -> Result<bool> {
    circumradius_check(pts, &Rational::from_integer(1.into()))?;
    let inside = |x: &Point| -> Result<bool> {
        Ok(match pts.len() {
            2 => edge_ball(pts[0], pts[1], x).is_negative(),
            3 => triangle_ball(pts[0], pts[1], pts[2], x).is_negative(),
            _ => in_sphere(pts[0], pts[1], pts[2], pts[3], x)? == Ordering::Greater,
        })
    };
    for x in others {
        if pts.iter().any(|p| p == x) {
            continue;
        }
        if inside(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point {
        [x, y, z].map(|c| Rational::from_integer(c.into()))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn corner_tet_orientation_and_sphere() {
        let (a, b, c, d) = (p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1));
        assert_eq!(orientation(&a, &b, &c, &d), Ordering::Greater);
        let e = [q(1, 4), q(1, 4), q(1, 4)];
        assert!(lifted(&a, &b, &c, &d, &e).is_negative());
        assert_eq!(in_sphere(&a, &b, &c, &d, &e).unwrap(), Ordering::Greater);
        assert_eq!(in_sphere(&b, &a, &c, &d, &e).unwrap(), Ordering::Greater);
        assert_eq!(in_sphere(&a, &b, &c, &d, &p(2, 2, 2)).unwrap(), Ordering::Less);
        assert_eq!(in_sphere(&a, &b, &c, &d, &p(1, 1, 1)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn shortness_examples() {
        let one = q(1, 1);
        assert!(is_short(&[&p(0, 0, 0), &p(1, 0, 0)], &one).unwrap());
        let corner = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)];
        let r: Vec<&Point> = corner.iter().collect();
        assert!(!is_short(&r, &q(1, 2)).unwrap());
        assert!(is_short(&r, &q(3, 4)).unwrap());
        assert!(tet_radius([r[0], r[1], r[2], r[3]], &q(3, 4)).is_zero());
        assert!(tet_radius([r[0], r[1], r[2], r[3]], &one).is_negative());
        // right triangle: circumradius^2 = 1/2
        let tri = [&corner[0], &corner[1], &corner[2]];
        assert_eq!(triangle_radius(tri[0], tri[1], tri[2], &one), q(-2, 1));
        assert!(triangle_radius(tri[0], tri[1], tri[2], &q(1, 2)).is_zero());
        assert!(is_short(&tri, &q(1, 2)).unwrap());
        assert!(!is_short(&tri, &q(49, 100)).unwrap());
    }

    #[test]
    fn equilateral_boundary_is_short() {
        // side sqrt 2, circumradius^2 = 2/3
        let (a, b, c) = (p(1, 0, 0), p(0, 1, 0), p(0, 0, 1));
        assert!(is_short(&[&a, &b, &c], &q(2, 3)).unwrap());
        assert!(!is_short(&[&a, &b, &c], &q(665, 1000)).unwrap());
    }

    #[test]
    fn gabriel_examples() {
        let u = p(0, 0, 0);
        let v = p(2, 0, 0);
        assert!(is_gabriel(&[&u, &v], &[&p(1, 5, 0)]).unwrap());
        assert!(!is_gabriel(&[&u, &v], &[&[q(1, 1), q(1, 2), q(0, 1)]]).unwrap());
        let w = p(0, 2, 0);
        // circumcenter (1,1,0), radius^2 = 2
        assert!(!is_gabriel(&[&u, &v, &w], &[&[q(1, 1), q(1, 1), q(1, 1)]]).unwrap());
        assert!(is_gabriel(&[&u, &v, &w], &[&p(1, 1, 2)]).unwrap());
        assert!(matches!(is_gabriel(&[&u, &v, &p(4, 0, 0)], &[]), Err(Error::DegenerateSimplex(_))));
    }

    #[test]
    fn minors_match_product_form_on_rationals() {
        let u = [q(1, 3), q(2, 1), q(-1, 2)];
        let v = [q(0, 1), q(5, 7), q(1, 1)];
        let w = [q(-2, 1), q(1, 5), q(3, 4)];
        let a2 = q(7, 3);
        let den = {
            let n = cross(&vsub(&u, &w), &vsub(&v, &w));
            dot(&n, &n)
        };
        assert_eq!(triangle_radius_minors(&u, &v, &w, &a2), den * triangle_radius(&u, &v, &w, &a2));
    }
}
