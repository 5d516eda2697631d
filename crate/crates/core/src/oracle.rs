//! Brute-force reference answers at a fixed rational time: the Delaunay
//! tetrahedralization by testing every quadruple, and the alpha complex as
//! the closure of the short Gabriel Delaunay simplices.
//!
//! Deliberately independent of the incremental code paths: coordinates are
//! scaled to integers, the empty-sphere test is a 5x5 determinant expanded
//! along its column of ones, and circumcenters come from Gaussian
//! elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::predicates::Point;
use crate::simplex::{Simplex, VertexId, INFINITE};
use crate::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StaticComplex {
    /// Delaunay tetrahedra, hull facets joined to the vertex at infinity.
    pub tets: BTreeSet<Simplex>,
    /// Edges, triangles and tetrahedra of the alpha complex.
    pub alpha: BTreeSet<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateConfiguration(pub String);

struct Scaled {
    ids: Vec<VertexId>,
    exact: Vec<[BigInt; 3]>,
    approx: Vec<[f64; 3]>,
    /// Largest centered coordinate magnitude of `approx`.
    reach: f64,
    /// Common denominator of all coordinates.
    scale: BigInt,
}

fn scale_points(pos: &BTreeMap<VertexId, Point>) -> Scaled {
    let mut l = BigInt::one();
    for p in pos.values() {
        for c in p {
            l = l.lcm(c.denom());
        }
    }
    let ids: Vec<VertexId> = pos.keys().copied().collect();
    let exact: Vec<[BigInt; 3]> =
        pos.values().map(|p| std::array::from_fn(|i| (&p[i] * &l).to_integer())).collect();
    let n = exact.len().max(1) as f64;
    let f: Vec<[f64; 3]> = exact.iter().map(|p| p.clone().map(|c| big_f64(&c, &l))).collect();
    let center: [f64; 3] = std::array::from_fn(|i| f.iter().map(|p| p[i]).sum::<f64>() / n);
    let approx: Vec<[f64; 3]> = f.iter().map(|p| std::array::from_fn(|i| p[i] - center[i])).collect();
    let reach = approx.iter().flat_map(|p| p.iter().map(|c| c.abs())).fold(0.0, f64::max) * (1.0 + 1e-12) + 1e-300;
    Scaled { ids, exact, approx, reach, scale: l }
}

fn big_f64(n: &BigInt, d: &BigInt) -> f64 {
    Rational::new(n.clone(), d.clone()).to_f64().unwrap_or(f64::NAN)
}

fn sign_big(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn det3_big(m: [[&BigInt; 3]; 3]) -> BigInt {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det3_f(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

impl Scaled {
    /// Sign of `det[b - a; c - a; d - a]`.
    fn orient(&self, a: usize, b: usize, c: usize, d: usize) -> i8 {
        let p = &self.approx;
        let row = |x: usize| -> [f64; 3] { std::array::from_fn(|i| p[x][i] - p[a][i]) };
        let v = det3_f([row(b), row(c), row(d)]);
        if v.abs() > 1e-9 * self.reach.powi(3) {
            return if v > 0.0 { 1 } else { -1 };
        }
        let e = &self.exact;
        let row = |x: usize| -> [BigInt; 3] { std::array::from_fn(|i| &e[x][i] - &e[a][i]) };
        let (rb, rc, rd) = (row(b), row(c), row(d));
        sign_big(&det3_big([
            [&rb[0], &rb[1], &rb[2]],
            [&rc[0], &rc[1], &rc[2]],
            [&rd[0], &rd[1], &rd[2]],
        ]))
    }

    /// Sign of the 5x5 determinant with rows `[1, x, y, z, |p|^2]`.
    fn lifted(&self, v: [usize; 5]) -> i8 {
        let p = &self.approx;
        let m = v[4];
        let rows: Vec<[f64; 4]> = v[..4]
            .iter()
            .map(|&x| {
                let d: [f64; 3] = std::array::from_fn(|i| p[x][i] - p[m][i]);
                [d[0], d[1], d[2], d[0] * d[0] + d[1] * d[1] + d[2] * d[2]]
            })
            .collect();
        let mut acc = 0.0;
        for skip in 0..4 {
            let minor: Vec<[f64; 3]> =
                (0..4).filter(|&i| i != skip).map(|i| [rows[i][0], rows[i][1], rows[i][2]]).collect();
            let s = if (skip + 3) % 2 == 0 { 1.0 } else { -1.0 };
            acc += s * rows[skip][3] * det3_f([minor[0], minor[1], minor[2]]);
        }
        if acc.abs() > 1e-8 * self.reach.powi(5) {
            return if acc > 0.0 { 1 } else { -1 };
        }
        sign_big(&self.lifted_exact(v))
    }

    fn lifted_exact(&self, v: [usize; 5]) -> BigInt {
        let rows: Vec<[BigInt; 5]> = v
            .iter()
            .map(|&x| {
                let p = &self.exact[x];
                let n = &p[0] * &p[0] + &p[1] * &p[1] + &p[2] * &p[2];
                [BigInt::one(), p[0].clone(), p[1].clone(), p[2].clone(), n]
            })
            .collect();
        let idx: Vec<usize> = (0..5).collect();
        // expansion along column 0, which is all ones
        let mut acc = BigInt::zero();
        for r in 0..5 {
            let sub: Vec<&[BigInt; 5]> = idx.iter().filter(|&&i| i != r).map(|&i| &rows[i]).collect();
            let d = det4_big(&sub);
            if r % 2 == 0 {
                acc += d;
            } else {
                acc -= d;
            }
        }
        acc
    }
}

/// Determinant of columns 1..5 of four rows.
fn det4_big(rows: &[&[BigInt; 5]]) -> BigInt {
    let mut acc = BigInt::zero();
    for c in 0..4 {
        let cols: Vec<usize> = (1..5).filter(|&k| k != c + 1).collect();
        let m: [[&BigInt; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| &rows[i + 1][cols[j]]));
        let term = &rows[0][c + 1] * det3_big(m);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Delaunay tetrahedra and alpha complex of `pos` for radius `sqrt(alpha2)`.
pub fn static_complex(
    pos: &BTreeMap<VertexId, Point>,
    alpha2: &Rational,
) -> Result<StaticComplex, DegenerateConfiguration> {
    let s = scale_points(pos);
    let n = s.ids.len();
    let mut tets = BTreeSet::new();
    if n < 4 {
        return Ok(StaticComplex::default());
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let o = s.orient(i, j, k, l);
                    if o == 0 {
                        continue;
                    }
                    let mut empty = true;
                    for m in 0..n {
                        if m == i || m == j || m == k || m == l {
                            continue;
                        }
                        let d = s.lifted([i, j, k, l, m]);
                        if d == 0 {
                            return Err(DegenerateConfiguration(format!(
                                "co-spherical points {:?}",
                                [i, j, k, l, m].map(|x| s.ids[x])
                            )));
                        }
                        // inside iff the lifted determinant and orientation disagree
                        if d != o {
                            empty = false;
                            break;
                        }
                    }
                    if empty {
                        tets.insert(Simplex::new(&[s.ids[i], s.ids[j], s.ids[k], s.ids[l]]));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut side = 0i8;
                let mut hull = true;
                for m in 0..n {
                    if m == i || m == j || m == k {
                        continue;
                    }
                    let o = s.orient(i, j, k, m);
                    if o == 0 {
                        return Err(DegenerateConfiguration(format!(
                            "coplanar points {:?}",
                            [i, j, k, m].map(|x| s.ids[x])
                        )));
                    }
                    if side == 0 {
                        side = o;
                    } else if side != o {
                        hull = false;
                        break;
                    }
                }
                if hull {
                    tets.insert(Simplex::new(&[s.ids[i], s.ids[j], s.ids[k], INFINITE]));
                }
            }
        }
    }
    let alpha = alpha_complex(&s, &tets, alpha2);
    Ok(StaticComplex { tets, alpha })
}

fn alpha_complex(s: &Scaled, tets: &BTreeSet<Simplex>, alpha2: &Rational) -> BTreeSet<Simplex> {
    let index: BTreeMap<VertexId, usize> = s.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut simplices = BTreeSet::new();
    for t in tets.iter().filter(|t| t.is_finite()) {
        simplices.extend(t.closure());
    }
    // squared radius bound in scaled coordinates, as a fraction
    let bound = alpha2 * Rational::from_integer(&s.scale * &s.scale);
    let mut alpha = BTreeSet::new();
    for sigma in &simplices {
        if alpha.contains(sigma) {
            continue;
        }
        let vs: Vec<usize> = sigma.as_slice().iter().map(|v| index[v]).collect();
        let o = &s.exact[vs[0]];
        let (num, den) = circumball(&vs.iter().map(|&i| &s.exact[i]).collect::<Vec<_>>());
        // center = o + num / den, squared radius = |num|^2 / den^2
        let r2 = norm2(&num);
        if &r2 * bound.denom() > bound.numer() * &den * &den {
            continue;
        }
        let gabriel = (0..s.exact.len()).filter(|i| !vs.contains(i)).all(|i| {
            let y: [BigInt; 3] = std::array::from_fn(|k| (&s.exact[i][k] - &o[k]) * &den - &num[k]);
            norm2(&y) >= r2
        });
        if gabriel {
            alpha.extend(sigma.closure());
        }
    }
    alpha
}

fn norm2(a: &[BigInt; 3]) -> BigInt {
    a.iter().map(|c| c * c).sum()
}

/// Center of the smallest sphere through the points, as `p[0] + num / den`
/// with `den > 0`.
fn circumball(p: &[&[BigInt; 3]]) -> ([BigInt; 3], BigInt) {
    let o = p[0];
    let d: Vec<[BigInt; 3]> = p[1..].iter().map(|q| std::array::from_fn(|i| &q[i] - &o[i])).collect();
    // unknown x = center - o: 2 d_i . x = |d_i|^2, constrained to span(d)
    let mut rows: Vec<[BigInt; 4]> = Vec::new();
    for di in &d {
        rows.push([&di[0] * 2, &di[1] * 2, &di[2] * 2, norm2(di)]);
    }
    // orthogonal complement of span(d) pins x inside the affine hull
    let normals: Vec<[BigInt; 3]> = match d.len() {
        1 => complement_line(&d[0]),
        2 => vec![cross(&d[0], &d[1])],
        _ => vec![],
    };
    for [a, b, c] in normals {
        rows.push([a, b, c, BigInt::zero()]);
    }
    solve3(rows)
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn complement_line(d: &[BigInt; 3]) -> Vec<[BigInt; 3]> {
    let axes: [[BigInt; 3]; 3] =
        std::array::from_fn(|k| std::array::from_fn(|i| if i == k { BigInt::one() } else { BigInt::zero() }));
    let mut out: Vec<[BigInt; 3]> = Vec::new();
    for a in &axes {
        let c = cross(d, a);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(prev) = out.first() {
            if cross(prev, &c).iter().all(|x| x.is_zero()) {
                continue;
            }
        }
        out.push(c);
        if out.len() == 2 {
            break;
        }
    }
    out
}

/// Fraction-free Gauss-Jordan elimination on a 3x4 augmented matrix.
fn solve3(mut m: Vec<[BigInt; 4]>) -> ([BigInt; 3], BigInt) {
    assert_eq!(m.len(), 3, "circumball system must be square");
    let mut prev = BigInt::one();
    for k in 0..3 {
        let piv = (k..3).find(|&r| !m[r][k].is_zero()).expect("degenerate simplex in oracle");
        m.swap(k, piv);
        for i in (0..3).filter(|&i| i != k) {
            for j in (0..4).filter(|&j| j != k) {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    debug_assert!(m[0][0] == prev && m[1][1] == prev);
    let sign = if prev.is_negative() { -BigInt::one() } else { BigInt::one() };
    (std::array::from_fn(|i| &m[i][3] * &sign), prev * sign)
}
