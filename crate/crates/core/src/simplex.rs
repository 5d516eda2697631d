use std::cmp::Ordering;
use std::fmt;

pub type VertexId = u32;

/// The vertex at infinity closing the triangulation into a 3-sphere.
pub const INFINITE: VertexId = u32::MAX;

/// A sorted set of at most five vertex ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    len: u8,
    v: [VertexId; 5],
}

impl Simplex {
    pub fn new(ids: &[VertexId]) -> Self {
        assert!(!ids.is_empty() && ids.len() <= 5, "simplex size {}", ids.len());
        let mut v = [0; 5];
        v[..ids.len()].copy_from_slice(ids);
        v[..ids.len()].sort_unstable();
        debug_assert!(v[..ids.len()].windows(2).all(|w| w[0] < w[1]), "repeated vertex in {ids:?}");
        Simplex { len: ids.len() as u8, v }
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex::new(&[v])
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.v[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.as_slice().contains(&x)
    }

    pub fn is_finite(&self) -> bool {
        !self.contains(INFINITE)
    }

    pub fn with(&self, x: VertexId) -> Simplex {
        let mut ids = self.as_slice().to_vec();
        ids.push(x);
        Simplex::new(&ids)
    }

    pub fn without(&self, x: VertexId) -> Simplex {
        let ids: Vec<_> = self.as_slice().iter().copied().filter(|&y| y != x).collect();
        Simplex::new(&ids)
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.len == 1 {
            return Vec::new();
        }
        self.as_slice().iter().map(|&x| self.without(x)).collect()
    }

    /// All faces of dimension at least one, including the simplex itself.
    pub fn closure(&self) -> Vec<Simplex> {
        let s = self.as_slice();
        let n = s.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let ids: Vec<_> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
            out.push(Simplex::new(&ids));
        }
        out
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.as_slice().iter().all(|&x| other.contains(x))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &x) in self.as_slice().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if x == INFINITE {
                f.write_str("inf")?;
            } else {
                write!(f, "{x}")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_counts() {
        let t = Simplex::new(&[3, 1, 2, 0]);
        assert_eq!(t.as_slice(), &[0, 1, 2, 3]);
        assert_eq!(t.closure().len(), 11);
        assert_eq!(t.facets().len(), 4);
        assert!(Simplex::new(&[1, 2]).is_face_of(&t));
        assert!(!Simplex::new(&[1, INFINITE]).is_finite());
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(Simplex::new(&[0, 5]) < Simplex::new(&[1]));
        assert!(Simplex::new(&[0, 1]) < Simplex::new(&[0, 1, 2]));
    }
}
