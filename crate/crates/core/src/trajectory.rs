//! Piecewise-linear trajectories sharing a global sequence of bend times.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::certificates::LinearMotion;
use crate::error::{Error, Result};
use crate::predicates::Point;
use crate::simplex::VertexId;
use crate::Rational;

/// Breakpoints of one trajectory. Its domain is `[times[0], times[last]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub id: VertexId,
    pub times: Vec<Rational>,
    pub points: Vec<Point>,
}

impl Trajectory {
    pub fn start(&self) -> &Rational {
        &self.times[0]
    }

    pub fn end(&self) -> &Rational {
        self.times.last().expect("non-empty trajectory")
    }

    pub fn segments(&self) -> usize {
        self.times.len() - 1
    }

    /// The piece in effect from `t` onward: `[t_k, t_k+1]` with
    /// `t_k <= t < t_k+1`, or the last piece at the end of the domain.
    pub fn motion_at(&self, t: &Rational) -> LinearMotion {
        let k = match self.times.partition_point(|x| x <= t) {
            0 => 0,
            k => (k - 1).min(self.segments() - 1),
        };
        LinearMotion::new(
            self.points[k].clone(),
            self.points[k + 1].clone(),
            self.times[k].clone(),
            self.times[k + 1].clone(),
        )
    }

    pub fn position(&self, t: &Rational) -> Point {
        self.motion_at(t).position(t)
    }
}

/// A complete input: global bend times and the trajectories using them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrajectorySet {
    pub times: Vec<Rational>,
    pub trajectories: Vec<Trajectory>,
}

impl TrajectorySet {
    /// Checks the structural rules and that no two trajectories ever meet.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidTrajectory(m));
        if self.times.len() < 2 {
            return bad("need at least two global times".into());
        }
        if self.times[0] != Rational::zero() || *self.times.last().unwrap() != Rational::one() {
            return bad("global times must run from 0 to 1".into());
        }
        if self.times.windows(2).any(|w| w[0] >= w[1]) {
            return bad("global times must increase".into());
        }
        let mut ids = BTreeSet::new();
        for tr in &self.trajectories {
            if !ids.insert(tr.id) || tr.id == crate::INFINITE {
                return bad(format!("trajectory id {} is repeated or reserved", tr.id));
            }
            if tr.times.len() < 2 || tr.times.len() != tr.points.len() {
                return bad(format!("trajectory {} needs a position at each of at least two times", tr.id));
            }
            let a = self.times.iter().position(|x| x == tr.start());
            match a {
                Some(a) if self.times[a..].starts_with(&tr.times) => {}
                _ => return bad(format!("trajectory {} must use consecutive global times", tr.id)),
            }
        }
        for (i, u) in self.trajectories.iter().enumerate() {
            for v in &self.trajectories[i + 1..] {
                if let Some(t) = meeting_time(u, v) {
                    return Err(Error::DuplicatePoint(u.id.min(v.id), u.id.max(v.id), t.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn by_id(&self, id: VertexId) -> Option<&Trajectory> {
        self.trajectories.iter().find(|t| t.id == id)
    }
}

/// First time in the common domain at which the two trajectories coincide.
pub fn meeting_time(u: &Trajectory, v: &Trajectory) -> Option<Rational> {
    let lo = u.start().max(v.start()).clone();
    let hi = u.end().min(v.end()).clone();
    if lo > hi {
        return None;
    }
    let mut cuts: Vec<Rational> =
        u.times.iter().chain(&v.times).filter(|t| **t >= lo && **t <= hi).cloned().collect();
    cuts.sort();
    cuts.dedup();
    for w in cuts.windows(2) {
        let (mu, mv) = (u.motion_at(&w[0]), v.motion_at(&w[0]));
        let (cu, cv) = (mu.coords(), mv.coords());
        // difference is linear in t; it vanishes iff all coordinates agree on a root
        let mut root: Option<Rational> = None;
        let mut always = true;
        let mut never = false;
        for i in 0..3 {
            let d = &cu[i] - &cv[i];
            match d.degree() {
                None => {}
                Some(0) => never = true,
                _ => {
                    always = false;
                    let r = -d.coeff(0) / d.coeff(1);
                    match &root {
                        Some(x) if *x != r => never = true,
                        _ => root = Some(r),
                    }
                }
            }
        }
        if never {
            continue;
        }
        if always {
            return Some(w[0].clone());
        }
        if let Some(r) = root {
            if r >= w[0] && r <= w[1] {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(x: i64, y: i64, z: i64) -> Point {
        [x, y, z].map(|c| Rational::from_integer(c.into()))
    }

    fn traj(id: u32, times: &[Rational], pts: &[Point]) -> Trajectory {
        Trajectory { id, times: times.to_vec(), points: pts.to_vec() }
    }

    #[test]
    fn motion_lookup() {
        let t = traj(0, &[q(0, 1), q(1, 2), q(1, 1)], &[p(0, 0, 0), p(2, 0, 0), p(2, 2, 0)]);
        assert_eq!(t.motion_at(&q(0, 1)).t_hi, q(1, 2));
        assert_eq!(t.motion_at(&q(1, 2)).t_lo, q(1, 2));
        assert_eq!(t.motion_at(&q(1, 1)).t_lo, q(1, 2));
        assert_eq!(t.position(&q(1, 4)), p(1, 0, 0));
        assert_eq!(t.position(&q(3, 4)), p(2, 1, 0));
    }

    #[test]
    fn crossing_detected() {
        let times = [q(0, 1), q(1, 1)];
        let u = traj(0, &times, &[p(0, 0, 0), p(2, 2, 2)]);
        let v = traj(1, &times, &[p(2, 2, 2), p(0, 0, 0)]);
        assert_eq!(meeting_time(&u, &v), Some(q(1, 2)));
        let w = traj(2, &times, &[p(0, 1, 0), p(2, 3, 2)]);
        assert_eq!(meeting_time(&u, &w), None);
        let set = TrajectorySet { times: times.to_vec(), trajectories: vec![u, v] };
        assert!(matches!(set.validate(), Err(Error::DuplicatePoint(0, 1, _))));
    }

    #[test]
    fn domain_rules() {
        let times = vec![q(0, 1), q(1, 2), q(1, 1)];
        let ok = traj(0, &[q(1, 2), q(1, 1)], &[p(0, 0, 0), p(1, 0, 0)]);
        let set = TrajectorySet { times: times.clone(), trajectories: vec![ok] };
        set.validate().unwrap();
        let skip = traj(0, &[q(0, 1), q(1, 1)], &[p(0, 0, 0), p(1, 0, 0)]);
        let set = TrajectorySet { times, trajectories: vec![skip] };
        assert!(set.validate().is_err());
    }
}
