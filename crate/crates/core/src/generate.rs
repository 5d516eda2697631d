//! Seeded synthetic inputs: points start on a jittered cubical grid and
//! move piecewise linearly on a common rhythm of bend times.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::predicates::Point;
use crate::trajectory::{Trajectory, TrajectorySet};
use crate::Rational;

/// Coordinates are multiples of `1 / RESOLUTION`.
pub const RESOLUTION: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub n: usize,
    /// Number of linear pieces; bends happen at `j / bends`.
    pub bends: usize,
    /// Edge length of the initial cube.
    pub box_size: u32,
    /// Even ids drift toward the center and odd ids away from it.
    pub sorting: bool,
    /// Percentage of trajectories that live on only part of `[0, 1]`.
    pub churn: u32,
}

impl GeneratorParams {
    pub fn new(n: usize, bends: usize, box_size: u32, sorting: bool) -> Self {
        GeneratorParams { n, bends, box_size, sorting, churn: 0 }
    }

    /// Parses `n,bends,box,sorting[,churn]`, with `sorting` one of
    /// `0`, `1`, `true`, `false`.
    pub fn parse(s: &str) -> Option<Self> {
        let f: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(4..=5).contains(&f.len()) {
            return None;
        }
        let sorting = match f[3] {
            "1" | "true" => true,
            "0" | "false" => false,
            _ => return None,
        };
        let churn = if f.len() == 5 { f[4].parse().ok()? } else { 0 };
        Some(GeneratorParams {
            n: f[0].parse().ok()?,
            bends: f[1].parse().ok()?,
            box_size: f[2].parse().ok()?,
            sorting,
            churn,
        })
    }
}

/// Trajectories always alive, so that enough points remain at every time.
const PERMANENT: usize = 5;
const ATTEMPTS: usize = 100;

pub fn generate(seed: u64, p: &GeneratorParams) -> Result<TrajectorySet> {
    if p.n == 0 || p.bends == 0 || p.box_size == 0 || p.churn > 100 {
        return Err(Error::InvalidTrajectory(format!("bad generator parameters {p:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let times: Vec<Rational> =
        (0..=p.bends).map(|j| Rational::new((j as i64).into(), (p.bends as i64).into())).collect();
    for _ in 0..ATTEMPTS {
        let set = TrajectorySet { times: times.clone(), trajectories: attempt(&mut rng, p, &times) };
        match set.validate() {
            Ok(()) => return Ok(set),
            Err(Error::DuplicatePoint(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidTrajectory("could not generate non-colliding trajectories".into()))
}

fn attempt(rng: &mut ChaCha8Rng, p: &GeneratorParams, times: &[Rational]) -> Vec<Trajectory> {
    let side = (1..).find(|s: &usize| s * s * s >= p.n).unwrap();
    let unit = p.box_size as i64 * RESOLUTION;
    let spacing = unit / side as i64;
    let center = unit / 2;
    let jitter = spacing / 4;
    let noise = spacing * 3 / 20;
    let mut out = Vec::with_capacity(p.n);
    for id in 0..p.n {
        let cell = [id % side, (id / side) % side, id / (side * side)];
        let mut pos: [i64; 3] =
            cell.map(|c| c as i64 * spacing + spacing / 2 + rng.gen_range(-jitter..=jitter));
        let mut path = vec![pos];
        for _ in 0..p.bends {
            for c in &mut pos {
                let mut step = rng.gen_range(-noise..=noise);
                if p.sorting {
                    let pull = (center - *c) as f64 / p.bends as f64;
                    let drift = if id % 2 == 0 { 0.35 * pull } else { -0.25 * pull };
                    step += drift.round().to_i64().unwrap_or(0);
                }
                *c += step;
            }
            path.push(pos);
        }
        let (a, b) = if id >= PERMANENT && p.bends >= 2 && rng.gen_range(0..100) < p.churn {
            loop {
                let a = rng.gen_range(0..p.bends);
                let b = rng.gen_range(a + 1..=p.bends);
                if a > 0 || b < p.bends {
                    break (a, b);
                }
            }
        } else {
            (0, p.bends)
        };
        let points: Vec<Point> = path[a..=b]
            .iter()
            .map(|q| q.map(|c| Rational::new(c.into(), RESOLUTION.into())))
            .collect();
        out.push(Trajectory { id: id as u32, times: times[a..=b].to_vec(), points });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_trajectories;

    #[test]
    fn shape_and_determinism() {
        let p = GeneratorParams::new(8, 2, 4, false);
        let a = generate(1, &p).unwrap();
        assert_eq!(a.trajectories.len(), 8);
        assert!(a.trajectories.iter().all(|t| t.points.len() == 3));
        assert_eq!(write_trajectories(&a), write_trajectories(&generate(1, &p).unwrap()));
        assert_ne!(write_trajectories(&a), write_trajectories(&generate(2, &p).unwrap()));
    }

    #[test]
    fn churn_gives_partial_domains() {
        let p = GeneratorParams { churn: 100, ..GeneratorParams::new(12, 4, 4, true) };
        let set = generate(3, &p).unwrap();
        let partial = set.trajectories.iter().filter(|t| t.points.len() < 5).count();
        assert_eq!(partial, 12 - PERMANENT);
    }

    #[test]
    fn parse_params() {
        assert_eq!(GeneratorParams::parse("20,20,5,true"), Some(GeneratorParams::new(20, 20, 5, true)));
        assert_eq!(GeneratorParams::parse("8,2,4,0,30").map(|p| p.churn), Some(30));
        assert_eq!(GeneratorParams::parse("8,2,4"), None);
    }
}
