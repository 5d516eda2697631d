//! Plain-text trajectory files.
//!
//! ```text
//! trajectories 2
//! times 0 1/2 1
//! traj 0 0 1
//! 0 0 0 0
//! 1/2 1 0 0
//! 1 1 1 0
//! traj 1 1/2 1
//! 1/2 0 1 1
//! 1 0 0 1
//! ```
//!
//! Each trajectory lists its position at every global time of its domain.
//! Blank lines and text after `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::predicates::Point;
use crate::trajectory::{Trajectory, TrajectorySet};
use crate::Rational;

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.parse().ok()?;
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Renders `r` as `p/q` with `q >= 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let line = line.split('#').next().unwrap_or("");
            let words: Vec<&str> = line.split_whitespace().collect();
            if !words.is_empty() {
                self.last = i + 1;
                return Some((i + 1, words));
            }
        }
        None
    }

    fn expect(&mut self) -> Result<(usize, Vec<&'a str>)> {
        self.next().ok_or(Error::Parse { line: self.last + 1, msg: "unexpected end of file".into() })
    }
}

fn rat(line: usize, w: &str) -> Result<Rational> {
    parse_rational(w).ok_or_else(|| Error::Parse { line, msg: format!("not a rational number: {w:?}") })
}

/// Parses and validates a trajectory file.
pub fn parse_trajectories(text: &str) -> Result<TrajectorySet> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };
    let err = |line, msg: &str| Err(Error::Parse { line, msg: msg.to_string() });
    let (ln, w) = lines.expect()?;
    if w.len() != 2 || w[0] != "trajectories" {
        return err(ln, "expected `trajectories <count>`");
    }
    let count: usize = match w[1].parse() {
        Ok(n) => n,
        Err(_) => return err(ln, "bad trajectory count"),
    };
    let (ln, w) = lines.expect()?;
    if w[0] != "times" {
        return err(ln, "expected `times t0 ... tk`");
    }
    let times = w[1..].iter().map(|x| rat(ln, x)).collect::<Result<Vec<_>>>()?;
    let mut trajectories = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, w) = lines.expect()?;
        if w.len() != 4 || w[0] != "traj" {
            return err(ln, "expected `traj <id> <start> <end>`");
        }
        let id: u32 = match w[1].parse() {
            Ok(n) => n,
            Err(_) => return err(ln, "bad trajectory id"),
        };
        let (a, b) = (rat(ln, w[2])?, rat(ln, w[3])?);
        let Some(i) = times.iter().position(|t| *t == a) else {
            return err(ln, "domain start is not a global time");
        };
        let Some(j) = times.iter().position(|t| *t == b) else {
            return err(ln, "domain end is not a global time");
        };
        if j <= i {
            return err(ln, "empty domain");
        }
        let mut points: Vec<Point> = Vec::with_capacity(j - i + 1);
        for t in &times[i..=j] {
            let (ln, w) = lines.expect()?;
            if w.len() != 4 {
                return err(ln, "expected `<t> <x> <y> <z>`");
            }
            if rat(ln, w[0])? != *t {
                return err(ln, &format!("expected a position at time {}", format_rational(t)));
            }
            points.push([rat(ln, w[1])?, rat(ln, w[2])?, rat(ln, w[3])?]);
        }
        trajectories.push(Trajectory { id, times: times[i..=j].to_vec(), points });
    }
    if let Some((ln, _)) = lines.next() {
        return err(ln, "trailing content after the last trajectory");
    }
    let set = TrajectorySet { times, trajectories };
    set.validate()?;
    Ok(set)
}

pub fn write_trajectories(set: &TrajectorySet) -> String {
    let mut out = String::new();
    writeln!(out, "trajectories {}", set.trajectories.len()).unwrap();
    let times: Vec<String> = set.times.iter().map(format_rational).collect();
    writeln!(out, "times {}", times.join(" ")).unwrap();
    for tr in &set.trajectories {
        writeln!(out, "traj {} {} {}", tr.id, format_rational(tr.start()), format_rational(tr.end())).unwrap();
        for (t, p) in tr.times.iter().zip(&tr.points) {
            let [x, y, z] = p.each_ref().map(format_rational);
            writeln!(out, "{} {x} {y} {z}", format_rational(t)).unwrap();
        }
    }
    out
}
