//! Space-time record of the alpha complex: one cell per lifetime of each
//! simplex, plus zero-length cells joining the configurations before and
//! after flips, insertions and deletions.

use std::collections::BTreeMap;
use std::fmt;

use crate::kernel::AlgebraicReal;
use crate::simplex::Simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Initial,
    Radius,
    Flip,
    Insert,
    Delete,
    FlipFill,
    InsertFill,
    DeleteFill,
    Final,
}

impl Origin {
    pub fn tag(self) -> &'static str {
        match self {
            Origin::Initial => "INITIAL",
            Origin::Radius => "RADIUS",
            Origin::Flip => "FLIP",
            Origin::Insert => "INSERT",
            Origin::Delete => "DELETE",
            Origin::FlipFill => "FLIP_FILL",
            Origin::InsertFill => "INSERT_FILL",
            Origin::DeleteFill => "DELETE_FILL",
            Origin::Final => "FINAL",
        }
    }

    pub fn from_tag(s: &str) -> Option<Origin> {
        Some(match s {
            "INITIAL" => Origin::Initial,
            "RADIUS" => Origin::Radius,
            "FLIP" => Origin::Flip,
            "INSERT" => Origin::Insert,
            "DELETE" => Origin::Delete,
            "FLIP_FILL" => Origin::FlipFill,
            "INSERT_FILL" => Origin::InsertFill,
            "DELETE_FILL" => Origin::DeleteFill,
            "FINAL" => Origin::Final,
            _ => return None,
        })
    }

    pub fn is_fill(self) -> bool {
        matches!(self, Origin::FlipFill | Origin::InsertFill | Origin::DeleteFill)
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A finished lifetime `[birth, death]` of one copy of a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MedusaCell {
    pub simplex: Simplex,
    pub birth: AlgebraicReal,
    pub death: AlgebraicReal,
    /// What created the copy.
    pub origin: Origin,
    /// What ended it.
    pub finished_by: Origin,
}

impl MedusaCell {
    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }
}

/// Active and finished lists.
#[derive(Clone, Debug, Default)]
pub struct MedusaBuilder {
    active: BTreeMap<Simplex, (AlgebraicReal, Origin)>,
    output: Vec<MedusaCell>,
}

impl MedusaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn active(&self) -> &BTreeMap<Simplex, (AlgebraicReal, Origin)> {
        &self.active
    }

    pub fn output(&self) -> &[MedusaCell] {
        &self.output
    }

    pub fn is_active(&self, s: &Simplex) -> bool {
        self.active.contains_key(s)
    }

    pub fn open(&mut self, s: Simplex, t: &AlgebraicReal, origin: Origin) -> Result<(), String> {
        if self.active.insert(s, (t.clone(), origin)).is_some() {
            return Err(format!("simplex {s} opened twice"));
        }
        Ok(())
    }

    pub fn close(&mut self, s: &Simplex, t: &AlgebraicReal, by: Origin) -> Result<(), String> {
        let (birth, origin) = self.active.remove(s).ok_or_else(|| format!("closing inactive simplex {s}"))?;
        if birth > *t {
            return Err(format!("simplex {s} would die before it is born"));
        }
        self.output.push(MedusaCell { simplex: *s, birth, death: t.clone(), origin, finished_by: by });
        Ok(())
    }

    /// A cell that exists only at the instant `t`.
    pub fn instant(&mut self, s: Simplex, t: &AlgebraicReal, origin: Origin) {
        self.output.push(MedusaCell { simplex: s, birth: t.clone(), death: t.clone(), origin, finished_by: origin });
    }

    /// Closes every active cell at `t` and returns the complete medusa,
    /// sorted by birth and then by vertex ids.
    pub fn finish(mut self, t: &AlgebraicReal) -> Medusa {
        let active = std::mem::take(&mut self.active);
        for (s, (birth, origin)) in active {
            self.output.push(MedusaCell { simplex: s, birth, death: t.clone(), origin, finished_by: Origin::Final });
        }
        let mut cells = self.output;
        cells.sort_by(|a, b| {
            a.birth
                .cmp(&b.birth)
                .then_with(|| a.simplex.cmp(&b.simplex))
                .then_with(|| a.death.cmp(&b.death))
                .then_with(|| a.origin.cmp(&b.origin))
        });
        Medusa { cells }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Medusa {
    pub cells: Vec<MedusaCell>,
}

impl Medusa {
    /// Structural checks: well-ordered lifetimes, zero-length fills with the
    /// right number of vertices, and pairwise disjoint lifetimes for the
    /// copies of each simplex.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut by_simplex: BTreeMap<Simplex, Vec<&MedusaCell>> = BTreeMap::new();
        for c in &self.cells {
            if c.birth > c.death {
                problems.push(format!("{} has birth after death", c.simplex));
            }
            if c.origin.is_fill() {
                if c.birth != c.death {
                    problems.push(format!("fill cell {} has positive length", c.simplex));
                }
                if c.origin == Origin::FlipFill && c.simplex.len() != 5 {
                    problems.push(format!("flip fill {} does not have five vertices", c.simplex));
                }
            } else {
                by_simplex.entry(c.simplex).or_default().push(c);
            }
        }
        for (s, mut cs) in by_simplex {
            cs.sort_by(|a, b| a.birth.cmp(&b.birth));
            for w in cs.windows(2) {
                if w[1].birth < w[0].death {
                    problems.push(format!("copies of {s} overlap"));
                }
            }
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64, d: i64) -> AlgebraicReal {
        AlgebraicReal::from_rational(crate::Rational::new(n.into(), d.into()))
    }

    #[test]
    fn lifetimes_and_copies() {
        let mut m = MedusaBuilder::new();
        let e = Simplex::new(&[0, 1]);
        m.open(e, &t(0, 1), Origin::Initial).unwrap();
        m.close(&e, &t(1, 3), Origin::Radius).unwrap();
        m.open(e, &t(1, 2), Origin::Radius).unwrap();
        assert!(m.close(&Simplex::new(&[0, 2]), &t(1, 2), Origin::Radius).is_err());
        m.instant(Simplex::new(&[0, 1, 2, 3, 4]), &t(2, 3), Origin::FlipFill);
        let med = m.finish(&t(1, 1));
        assert_eq!(med.cells.len(), 3);
        assert!(med.check().is_empty());
        assert_eq!(med.cells[0].death, t(1, 3));
        assert_eq!(med.cells[1].finished_by, Origin::Final);
        assert_eq!(med.cells[2].origin, Origin::FlipFill);
    }

    #[test]
    fn overlap_detected() {
        let e = Simplex::new(&[0, 1]);
        let cell = |a, b| MedusaCell { simplex: e, birth: t(a, 4), death: t(b, 4), origin: Origin::Radius, finished_by: Origin::Radius };
        let med = Medusa { cells: vec![cell(0, 2), cell(1, 3)] };
        assert_eq!(med.check().len(), 1);
    }
}
