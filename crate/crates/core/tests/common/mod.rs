#![allow(dead_code)]

use medusa_core::generate::{generate, GeneratorParams};
use medusa_core::kinetic::Config;
use medusa_core::{Rational, TrajectorySet};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// One generated dataset of the seeded suite.
#[derive(Clone, Debug)]
pub struct Case {
    pub seed: u64,
    pub params: GeneratorParams,
    pub alpha2: Rational,
}

impl Case {
    pub fn input(&self) -> TrajectorySet {
        generate(self.seed, &self.params).expect("generator input")
    }

    pub fn config(&self) -> Config {
        Config::new(self.alpha2.clone())
    }
}

/// Twenty datasets with 8 to 20 trajectories and 2 to 8 linear pieces,
/// some sorting, some with trajectories entering and leaving.
pub fn suite() -> Vec<Case> {
    (1..=20u64)
        .map(|s| {
            let n = 8 + (s as usize * 7) % 13;
            let bends = 2 + (s as usize * 5) % 7;
            let mut params = GeneratorParams::new(n, bends, 4 + (s % 2) as u32, s % 2 == 0);
            if s % 3 == 0 {
                params.churn = 30;
            }
            Case { seed: s, params, alpha2: q(1 + (s % 3) as i64, 1) }
        })
        .collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, range: i64, den: i64) -> Rational {
    q(rng.gen_range(-range * den..=range * den), den)
}

pub fn random_point<R: Rng>(rng: &mut R) -> [Rational; 3] {
    std::array::from_fn(|_| random_rational(rng, 5, 7))
}

/// Squared circumradius of 2, 3 or 4 affinely independent points,
/// by Gauss-Jordan elimination on the equidistance equations.
pub fn circumradius2(p: &[&[Rational; 3]]) -> Rational {
    let o = p[0];
    let d: Vec<[Rational; 3]> = p[1..].iter().map(|x| std::array::from_fn(|i| &x[i] - &o[i])).collect();
    let two = q(2, 1);
    let mut rows: Vec<Vec<Rational>> = d
        .iter()
        .map(|di| {
            let mut r: Vec<Rational> = di.iter().map(|c| c * &two).collect();
            r.push(di.iter().map(|c| c * c).sum());
            r
        })
        .collect();
    // pin the center to the affine hull with equations n . x = 0
    let cross = |a: &[Rational; 3], b: &[Rational; 3]| -> [Rational; 3] {
        [
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ]
    };
    let zero = q(0, 1);
    match d.len() {
        1 => {
            let axes = [[q(1, 1), q(0, 1), q(0, 1)], [q(0, 1), q(1, 1), q(0, 1)], [q(0, 1), q(0, 1), q(1, 1)]];
            let mut normals: Vec<[Rational; 3]> = Vec::new();
            for a in &axes {
                let c = cross(&d[0], a);
                let independent = match normals.first() {
                    None => c.iter().any(|x| *x != zero),
                    Some(f) => cross(f, &c).iter().any(|x| *x != zero),
                };
                if independent && normals.len() < 2 {
                    normals.push(c);
                }
            }
            for n in normals {
                let mut r = n.to_vec();
                r.push(zero.clone());
                rows.push(r);
            }
        }
        2 => {
            let mut r = cross(&d[0], &d[1]).to_vec();
            r.push(zero.clone());
            rows.push(r);
        }
        _ => {}
    }
    for col in 0..3 {
        let piv = (col..3).find(|&r| rows[r][col] != zero).expect("independent points");
        rows.swap(col, piv);
        let inv = q(1, 1) / &rows[col][col];
        for k in 0..4 {
            rows[col][k] = &rows[col][k] * &inv;
        }
        for r in 0..3 {
            if r != col {
                let f = rows[r][col].clone();
                for k in 0..4 {
                    let v = &f * &rows[col][k];
                    rows[r][k] -= v;
                }
            }
        }
    }
    (0..3).map(|i| &rows[i][3] * &rows[i][3]).sum()
}
